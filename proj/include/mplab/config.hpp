#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mplab/quadrature.hpp"
#include "mplab/symbol.hpp"

namespace mplab {

struct ProjectionSpec {
  std::string label;
  GroupAlgebraMatrix p;
};

// Parsed experiment configuration, schema
// {n, basis:{K, M, dK}, group:{preset, k} | {generators, max_order},
//  projections:[{type:"isotypic", character:...} | {type:"explicit", components:...} | {type:"identity", size}],
//  quadrature:{radial, angular, simplex, r0, r1, profile}, tolerances:{compare, residual, loop},
//  representation:{K:[...]}, bott:{radius, density, rotation_steps}}
struct ExperimentConfig {
  int n = 1;
  int K = 32;
  int M = 8;
  int dK = 8;
  GroupPtr group;
  std::vector<ProjectionSpec> projections;
  QuadratureScheme quadrature;
  PsiProfile profile;
  double compare_tol = 1e-3;
  double residual_tol = 1e-5;
  double loop_tol = 1e-8;
  std::vector<int> representation_levels{16, 24, 40};
  double bott_radius = 1.0;
  int bott_density = 40;
  int rotation_steps = 33;
  nlohmann::json source;  // the input, echoed into reports
};

// Every problem with the input raises Error(InvalidArgument) or the error of the
// failing group/projection check.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// complex values are written as [re, im]
cplx parse_complex(const nlohmann::json& j);
nlohmann::json complex_json(cplx z);

}  // namespace mplab
