#pragma once

#include <complex>
#include <initializer_list>
#include <random>

#include "abelpow/error.hpp"
#include "abelpow/linalg.hpp"

namespace testing {

using abelpow::linalg::Complex;
using abelpow::linalg::ComplexMatrix;
using abelpow::linalg::Index;

inline ComplexMatrix diag(std::initializer_list<Complex> values) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  Index i = 0;
  for (const auto& v : values) m(i, i) = v, ++i;
  return m;
}

inline ComplexMatrix rows(std::initializer_list<std::initializer_list<Complex>> r) {
  ComplexMatrix m(static_cast<Index>(r.size()), static_cast<Index>(r.begin()->size()));
  Index i = 0;
  for (const auto& row : r) {
    Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline ComplexMatrix jordan2() { return rows({{1.0, 1.0}, {0.0, 1.0}}); }

inline ComplexMatrix gaussian(std::mt19937_64& rng, Index n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

inline double norm2(const ComplexMatrix& a) { return abelpow::linalg::operator_norm(a); }

template <class F>
abelpow::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const abelpow::Error& e) {
    return e.code();
  }
  FAIL("expected an abelpow::Error");
  return abelpow::ErrorCode::InvalidArgument;
}

}  // namespace testing
