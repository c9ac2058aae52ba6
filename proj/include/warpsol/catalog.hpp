#pragma once

// Built-in scenarios. They are stored as scenario JSON and go through the same
// loader as files on disk.

#include "warpsol/scenario.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace warpsol {

namespace detail {

inline const std::map<std::string, std::string_view, std::less<>>& catalog_sources() {
  static const std::map<std::string, std::string_view, std::less<>> sources = {
      {"euclidean-flat", R"json({
  "name": "euclidean-flat",
  "description": "Euclidean R^3: every curvature and soliton residual vanishes",
  "manifolds": [
    {"name": "E3", "coords": ["x", "y", "z"], "domain": [[-2, 2], [-2, 2], [-2, 2]],
     "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], "signature": [3, 0]}
  ],
  "fields": [
    {"name": "position", "chart": "E3", "vector": ["x", "y", "z"]},
    {"name": "dx", "chart": "E3", "vector": ["1", "0", "0"]},
    {"name": "half_norm", "chart": "E3", "scalar": "(x^2 + y^2 + z^2)/2"}
  ],
  "suites": [
    {"type": "curvature", "manifold": "E3", "expect": {"flat": true}, "tolerance": 1e-12},
    {"type": "fd_check", "manifold": "E3"},
    {"type": "einstein", "manifold": "E3", "expect": {"constant": 0}, "tolerance": 1e-12},
    {"type": "soliton", "manifold": "E3", "field": "position", "potential": "half_norm",
     "lambda": 1.3333333333333333, "pressure": 0, "tolerance": 1e-12},
    {"type": "classify", "manifold": "E3", "field": "dx", "expect": {"kind": "killing", "sigma": 0}, "tolerance": 1e-12},
    {"type": "classify", "manifold": "E3", "field": "position",
     "expect": {"kind": "concurrent", "sigma": 2, "alpha": 1}, "tolerance": 1e-12}
  ]
})json"},

      {"sphere-unit", R"json({
  "name": "sphere-unit",
  "description": "Round unit 2-sphere: Ric = g, r = 2, K = 1; rotations are Killing",
  "manifolds": [
    {"name": "S2", "coords": ["theta", "phi"], "domain": [[0, 3.141592653589793], [0, 6.283185307179586]],
     "metric": [["1", "0"], ["0", "sin(theta)^2"]], "signature": [2, 0]}
  ],
  "fields": [
    {"name": "rotation", "chart": "S2", "vector": ["0", "1"]}
  ],
  "suites": [
    {"type": "curvature", "manifold": "S2", "expect": {"einstein": 1, "scalar": 2, "sectional": 1}},
    {"type": "fd_check", "manifold": "S2"},
    {"type": "einstein", "manifold": "S2", "expect": {"constant": 1}},
    {"type": "classify", "manifold": "S2", "field": "rotation", "expect": {"kind": "killing", "sigma": 0}},
    {"type": "soliton", "manifold": "S2", "field": "rotation", "lambda": 1.5, "pressure": 0}
  ]
})json"},

      {"hyperbolic-halfplane", R"json({
  "name": "hyperbolic-halfplane",
  "description": "Upper half-plane with K = -1, and the rescaled chart 2/y^2 with r = -1",
  "manifolds": [
    {"name": "H2", "coords": ["x", "y"], "domain": [[-2, 2], [0.5, 3]],
     "metric": [["1/y^2", "0"], ["0", "1/y^2"]], "signature": [2, 0]},
    {"name": "H2_scaled", "coords": ["x", "y"], "domain": [[-2, 2], [0.5, 3]],
     "metric": [["2/y^2", "0"], ["0", "2/y^2"]], "signature": [2, 0]}
  ],
  "fields": [
    {"name": "translation", "chart": "H2", "vector": ["1", "0"]},
    {"name": "dilation", "chart": "H2", "vector": ["x", "y"]}
  ],
  "suites": [
    {"type": "curvature", "manifold": "H2", "expect": {"einstein": -1, "scalar": -2, "sectional": -1}},
    {"type": "fd_check", "manifold": "H2"},
    {"type": "curvature", "manifold": "H2_scaled", "expect": {"einstein": -0.5, "scalar": -1, "sectional": -0.5}},
    {"type": "fd_check", "manifold": "H2_scaled"},
    {"type": "classify", "manifold": "H2", "field": "translation", "expect": {"kind": "killing"}},
    {"type": "classify", "manifold": "H2", "field": "dilation", "expect": {"kind": "killing"}}
  ]
})json"},

      {"polar-warped", R"json({
  "name": "polar-warped",
  "description": "Flat plane as (0.5,3) x_r S^1",
  "manifolds": [
    {"name": "R", "coords": ["r"], "domain": [[0.5, 3]], "metric": [["1"]], "signature": [1, 0]},
    {"name": "S1", "coords": ["theta"], "domain": [[0, 6.283185307179586]], "metric": [["1"]], "signature": [1, 0]}
  ],
  "warped": [
    {"name": "polar", "base": "R", "fiber": "S1", "f": "r"}
  ],
  "fields": [
    {"name": "radial", "chart": "R", "vector": ["r"]},
    {"name": "spin", "chart": "S1", "vector": ["1"]}
  ],
  "suites": [
    {"type": "curvature", "manifold": "polar", "expect": {"flat": true}},
    {"type": "fd_check", "manifold": "polar"},
    {"type": "einstein", "manifold": "polar", "expect": {"constant": 0}},
    {"type": "lemma11", "warped": "polar"},
    {"type": "lie_split", "warped": "polar", "base_field": "radial", "fiber_field": "spin"}
  ]
})json"},

      {"sphere-as-warped", R"json({
  "name": "sphere-as-warped",
  "description": "Unit sphere as (0,pi) x_{sin} S^1",
  "manifolds": [
    {"name": "I", "coords": ["theta"], "domain": [[0, 3.141592653589793]], "metric": [["1"]], "signature": [1, 0]},
    {"name": "S1", "coords": ["phi"], "domain": [[0, 6.283185307179586]], "metric": [["1"]], "signature": [1, 0]}
  ],
  "warped": [
    {"name": "S2", "base": "I", "fiber": "S1", "f": "sin(theta)"}
  ],
  "fields": [
    {"name": "base_field", "chart": "I", "vector": ["sin(theta)"]},
    {"name": "spin", "chart": "S1", "vector": ["1"]}
  ],
  "suites": [
    {"type": "curvature", "manifold": "S2", "expect": {"einstein": 1, "scalar": 2, "sectional": 1}},
    {"type": "fd_check", "manifold": "S2"},
    {"type": "lemma11", "warped": "S2"},
    {"type": "lie_split", "warped": "S2", "base_field": "base_field", "fiber_field": "spin"}
  ]
})json"},

      {"sphere-lemma11", R"json({
  "name": "sphere-lemma11",
  "description": "Warped-product connection and Ricci identities on the warped unit sphere",
  "manifolds": [
    {"name": "I", "coords": ["theta"], "domain": [[0, 3.141592653589793]], "metric": [["1"]], "signature": [1, 0]},
    {"name": "S1", "coords": ["phi"], "domain": [[0, 6.283185307179586]], "metric": [["1"]], "signature": [1, 0]}
  ],
  "warped": [
    {"name": "S2", "base": "I", "fiber": "S1", "f": "sin(theta)"}
  ],
  "suites": [
    {"type": "lemma11", "warped": "S2"}
  ]
})json"},

      {"direct-product-concurrent", R"json({
  "name": "direct-product-concurrent",
  "description": "R^2 x_1 R^2 with concurrent position fields on both factors",
  "manifolds": [
    {"name": "B", "coords": ["x1", "x2"], "domain": [[-2, 2], [-2, 2]], "metric": [["1", "0"], ["0", "1"]], "signature": [2, 0]},
    {"name": "F", "coords": ["y1", "y2"], "domain": [[-2, 2], [-2, 2]], "metric": [["1", "0"], ["0", "1"]], "signature": [2, 0]}
  ],
  "warped": [
    {"name": "M", "base": "B", "fiber": "F", "f": "1"}
  ],
  "fields": [
    {"name": "xi_B", "chart": "B", "vector": ["x1", "x2"]},
    {"name": "xi_F", "chart": "F", "vector": ["y1", "y2"]},
    {"name": "xi", "chart": "M", "vector": ["x1", "x2", "y1", "y2"]},
    {"name": "half_norm", "chart": "M", "scalar": "(x1^2 + x2^2 + y1^2 + y2^2)/2"}
  ],
  "suites": [
    {"type": "concurrent", "warped": "M", "base_field": "xi_B", "fiber_field": "xi_F",
     "lambda": 1.25, "pressure": 0, "tolerance": 1e-10},
    {"type": "soliton", "manifold": "M", "field": "xi", "potential": "half_norm", "lambda": 1.25, "pressure": 0}
  ]
})json"},

      {"grw-static", R"json({
  "name": "grw-static",
  "description": "Static GRW spacetime -dt^2 + dx^2 + dy^2 with phi = t",
  "manifolds": [
    {"name": "E2", "coords": ["x", "y"], "domain": [[-2, 2], [-2, 2]], "metric": [["1", "0"], ["0", "1"]], "signature": [2, 0]}
  ],
  "warped": [
    {"name": "static", "grw": true, "time": "t", "interval": [0.5, 3], "fiber": "E2", "f": "1"}
  ],
  "fields": [
    {"name": "phi", "chart": "static/base", "scalar": "t"}
  ],
  "suites": [
    {"type": "curvature", "manifold": "static", "expect": {"flat": true}},
    {"type": "grw", "warped": "static", "potential": "phi", "lambda": 0.5, "pressure": 0}
  ]
})json"},

      {"grw-milne", R"json({
  "name": "grw-milne",
  "description": "Milne-type GRW spacetime -dt^2 + t^2 (dx^2 + dy^2)/y^2, flat",
  "manifolds": [
    {"name": "H2", "coords": ["x", "y"], "domain": [[-2, 2], [0.5, 3]], "metric": [["1/y^2", "0"], ["0", "1/y^2"]], "signature": [2, 0]}
  ],
  "warped": [
    {"name": "milne", "grw": true, "time": "t", "interval": [0.5, 3], "fiber": "H2", "f": "t"}
  ],
  "fields": [
    {"name": "phi", "chart": "milne/base", "scalar": "t^2/2"}
  ],
  "suites": [
    {"type": "curvature", "manifold": "milne", "expect": {"flat": true}},
    {"type": "fd_check", "manifold": "milne"},
    {"type": "grw", "warped": "milne", "potential": "phi", "lambda": 1.5, "pressure": 0}
  ]
})json"},

      {"grw-exponential", R"json({
  "name": "grw-exponential",
  "description": "GRW with f = exp(t) over flat R^2: the Ricci relation needs a t-dependent lambda",
  "manifolds": [
    {"name": "E2", "coords": ["x", "y"], "domain": [[-2, 2], [-2, 2]], "metric": [["1", "0"], ["0", "1"]], "signature": [2, 0]}
  ],
  "warped": [
    {"name": "expo", "grw": true, "time": "t", "interval": [0.5, 3], "fiber": "E2", "f": "exp(t)"}
  ],
  "fields": [
    {"name": "phi", "chart": "expo/base", "scalar": "exp(t)"}
  ],
  "suites": [
    {"type": "grw", "warped": "expo", "potential": "phi", "lambda": 1.5, "pressure": 0}
  ]
})json"},

      {"grw-affine", R"json({
  "name": "grw-affine",
  "description": "GRW with affine f = 2t + 1 over the curvature -4 plane: Einstein (flat)",
  "manifolds": [
    {"name": "H2", "coords": ["x", "y"], "domain": [[-2, 2], [0.5, 3]],
     "metric": [["1/(4*y^2)", "0"], ["0", "1/(4*y^2)"]], "signature": [2, 0]}
  ],
  "warped": [
    {"name": "affine", "grw": true, "time": "t", "interval": [0.5, 3], "fiber": "H2", "f": "2*t + 1"}
  ],
  "fields": [
    {"name": "phi", "chart": "affine/base", "scalar": "t^2 + t"}
  ],
  "suites": [
    {"type": "einstein", "manifold": "affine", "expect": {"constant": 0}, "tolerance": 1e-6},
    {"type": "grw", "warped": "affine", "potential": "phi", "lambda": 2.5, "pressure": 0}
  ]
})json"},

      {"thm21-direct-product", R"json({
  "name": "thm21-direct-product",
  "description": "Induced base and fiber solitons of R^2 x_1 R^2 with position fields",
  "manifolds": [
    {"name": "B", "coords": ["x1", "x2"], "domain": [[-2, 2], [-2, 2]], "metric": [["1", "0"], ["0", "1"]], "signature": [2, 0]},
    {"name": "F", "coords": ["y1", "y2"], "domain": [[-2, 2], [-2, 2]], "metric": [["1", "0"], ["0", "1"]], "signature": [2, 0]}
  ],
  "warped": [
    {"name": "M", "base": "B", "fiber": "F", "f": "1"}
  ],
  "fields": [
    {"name": "xi_B", "chart": "B", "vector": ["x1", "x2"]},
    {"name": "xi_F", "chart": "F", "vector": ["y1", "y2"]}
  ],
  "suites": [
    {"type": "induced_solitons", "warped": "M", "base_field": "xi_B", "fiber_field": "xi_F",
     "lambda": 1.25, "pressure": 0},
    {"type": "lie_split", "warped": "M", "base_field": "xi_B", "fiber_field": "xi_F"}
  ]
})json"},

      {"thm22-constant-warping", R"json({
  "name": "thm22-constant-warping",
  "description": "Gradient soliton on R^2 x_2 R^2 with phi = (|x|^2 + 4|y|^2)/2",
  "manifolds": [
    {"name": "B", "coords": ["x1", "x2"], "domain": [[-2, 2], [-2, 2]], "metric": [["1", "0"], ["0", "1"]], "signature": [2, 0]},
    {"name": "F", "coords": ["y1", "y2"], "domain": [[-2, 2], [-2, 2]], "metric": [["1", "0"], ["0", "1"]], "signature": [2, 0]}
  ],
  "warped": [
    {"name": "M", "base": "B", "fiber": "F", "f": "2"}
  ],
  "fields": [
    {"name": "phi", "chart": "M", "scalar": "(x1^2 + x2^2)/2 + 4*(y1^2 + y2^2)/2"}
  ],
  "suites": [
    {"type": "gradient_induced_solitons", "warped": "M", "potential": "phi", "lambda": 1.25, "pressure": 0},
    {"type": "soliton", "manifold": "M", "potential": "phi", "lambda": 1.25, "pressure": 0}
  ]
})json"},

      {"thm22-nonconstant-warping", R"json({
  "name": "thm22-nonconstant-warping",
  "description": "Gradient soliton r^2/2 on the polar plane: the fiber check does not apply",
  "manifolds": [
    {"name": "R", "coords": ["r"], "domain": [[0.5, 3]], "metric": [["1"]], "signature": [1, 0]},
    {"name": "S1", "coords": ["theta"], "domain": [[0, 6.283185307179586]], "metric": [["1"]], "signature": [1, 0]}
  ],
  "warped": [
    {"name": "polar", "base": "R", "fiber": "S1", "f": "r"}
  ],
  "fields": [
    {"name": "phi", "chart": "polar", "scalar": "r^2/2"}
  ],
  "suites": [
    {"type": "gradient_induced_solitons", "warped": "polar", "potential": "phi", "lambda": 1.5, "pressure": 0}
  ]
})json"},

      {"killing-sphere", R"json({
  "name": "killing-sphere",
  "description": "Killing soliton field on the warped unit sphere: Einstein with c = mu/2",
  "manifolds": [
    {"name": "I", "coords": ["theta"], "domain": [[0, 3.141592653589793]], "metric": [["1"]], "signature": [1, 0]},
    {"name": "S1", "coords": ["phi"], "domain": [[0, 6.283185307179586]], "metric": [["1"]], "signature": [1, 0]}
  ],
  "warped": [
    {"name": "S2", "base": "I", "fiber": "S1", "f": "sin(theta)"}
  ],
  "fields": [
    {"name": "zero", "chart": "I", "vector": ["0"]},
    {"name": "spin", "chart": "S1", "vector": ["1"]}
  ],
  "suites": [
    {"type": "killing_conformal", "warped": "S2", "base_field": "zero", "fiber_field": "spin",
     "lambda": 1.5, "pressure": 0}
  ]
})json"},

      {"conformal-product", R"json({
  "name": "conformal-product",
  "description": "Homothetic soliton field on R x_1 R: Ric = (mu/2 - rho) g with rho = 1",
  "manifolds": [
    {"name": "X", "coords": ["x"], "domain": [[-2, 2]], "metric": [["1"]], "signature": [1, 0]},
    {"name": "Y", "coords": ["y"], "domain": [[-2, 2]], "metric": [["1"]], "signature": [1, 0]}
  ],
  "warped": [
    {"name": "P", "base": "X", "fiber": "Y", "f": "1"}
  ],
  "fields": [
    {"name": "xi_B", "chart": "X", "vector": ["x"]},
    {"name": "xi_F", "chart": "Y", "vector": ["y"]}
  ],
  "suites": [
    {"type": "killing_conformal", "warped": "P", "base_field": "xi_B", "fiber_field": "xi_F",
     "lambda": 1.5, "pressure": 0}
  ]
})json"},

      {"warping-condition-cone", R"json({
  "name": "warping-condition-cone",
  "description": "Euclidean R^3 as (0.5,3) x_t S^2 with xi = t d/dt + d/dphi",
  "manifolds": [
    {"name": "T", "coords": ["t"], "domain": [[0.5, 3]], "metric": [["1"]], "signature": [1, 0]},
    {"name": "S2", "coords": ["theta", "phi"], "domain": [[0, 3.141592653589793], [0, 6.283185307179586]],
     "metric": [["1", "0"], ["0", "sin(theta)^2"]], "signature": [2, 0]}
  ],
  "warped": [
    {"name": "cone", "base": "T", "fiber": "S2", "f": "t"}
  ],
  "fields": [
    {"name": "xi_B", "chart": "T", "vector": ["t"]},
    {"name": "xi_F", "chart": "S2", "vector": ["0", "1"]}
  ],
  "suites": [
    {"type": "warping_condition", "warped": "cone", "base_field": "xi_B", "fiber_field": "xi_F",
     "lambda": 1.3333333333333333, "pressure": 0},
    {"type": "lemma11", "warped": "cone"}
  ]
})json"},
  };
  return sources;
}

}  // namespace detail

inline std::vector<std::string> catalog() {
  std::vector<std::string> names;
  for (const auto& [name, _] : detail::catalog_sources()) names.push_back(name);
  return names;
}

inline std::string_view catalog_source(std::string_view name) {
  const auto& src = detail::catalog_sources();
  auto it = src.find(name);
  if (it == src.end()) throw ValidationError(std::string(name), "no such catalog scenario");
  return it->second;
}

inline Scenario catalog_scenario(std::string_view name) {
  return parse_scenario(std::string(catalog_source(name)), "catalog:" + std::string(name));
}

}  // namespace warpsol
