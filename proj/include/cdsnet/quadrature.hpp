#pragma once

#include <vector>

namespace cdsnet {

// Gauss-Hermite rule for expectations under the standard normal law:
//   E[g(Z)] ~= sum_k weights[k] * g(nodes[k]),  Z ~ N(0,1).
// Exact for polynomials of degree <= 2n-1. Nodes ascending, weights sum to 1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_hermite_normal(int n);

}  // namespace cdsnet
