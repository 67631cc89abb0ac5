#pragma once

#include <functional>
#include <vector>

#include "abelpow/linalg.hpp"

namespace abelpow::quadrature {

/// Nodes and weights; weights are normalized so that they integrate the
/// constant 1 exactly against the (probability) weight function.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Generalized Gauss-Laguerre rule for the weight u^a e^{-u} / Gamma(a + 1)
/// on [0, inf). Nodes from the Jacobi matrix; weights from the orthonormal
/// recurrence with running rescaling, so tiny weights keep relative accuracy.
Rule gauss_laguerre(int node_count, double a = 0.0);

/// Composite Simpson on [lo, hi] with an even number of intervals.
Rule composite_simpson(int intervals, double lo, double hi);

/// sum_{i in [0, count)} term(i), split pairwise in a fixed order so the
/// rounding pattern does not depend on anything but count.
linalg::ComplexMatrix pairwise_sum(std::size_t count, const std::function<linalg::ComplexMatrix(std::size_t)>& term);

}  // namespace abelpow::quadrature
