#pragma once

// Seeded generator of matrices with a prescribed Jordan structure,
// T = S J S^{-1}. The structure is known by construction, so instances are
// honest positives or negatives for the certificates.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "abelpow/linalg.hpp"

namespace abelpow::instances {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::Index;

enum class InstanceKind {
  /// 1 is absent or semisimple; the rest of the spectrum is in Re z <= 1.
  semisimple_at_one,
  /// A Jordan block of size >= 2 at 1.
  jordan_at_one,
  /// One eigenvalue with Re z > 1, placed so |f_{1/2}(z)| > 1.
  spectrum_escapes,
};

constexpr std::string_view to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::semisimple_at_one: return "semisimple_at_one";
    case InstanceKind::jordan_at_one: return "jordan_at_one";
    case InstanceKind::spectrum_escapes: return "spectrum_escapes";
  }
  return "?";
}

struct JordanBlock {
  Complex eigenvalue;
  Index size = 1;
};

struct InstanceOptions {
  Index min_dim = 2;
  Index max_dim = 16;
  /// cond(S) is drawn log-uniformly in [1, max_condition].
  double max_condition = 1e2;
  /// Keep every eigenvalue in the closed unit disk (unimodular ones
  /// semisimple), so ||T^n/n|| -> 0 holds as well.
  bool power_bounded = false;
};

struct Instance {
  std::uint64_t seed = 0;
  InstanceKind kind = InstanceKind::semisimple_at_one;
  std::vector<JordanBlock> blocks;
  double condition = 1.0;
  ComplexMatrix similarity;
  ComplexMatrix t;
  /// S P S^{-1} with P selecting the eigenvalue-1 blocks; meaningful only
  /// for semisimple_at_one.
  ComplexMatrix projection;
};

/// Kind is chosen from the seed unless forced.
Instance generate_instance(std::uint64_t seed, const InstanceOptions& opts = {});
Instance generate_instance(std::uint64_t seed, InstanceKind kind, const InstanceOptions& opts = {});

/// Haar-like unitary from the QR factor of a complex Gaussian matrix.
ComplexMatrix random_unitary(std::mt19937_64& rng, Index n);

/// U diag(sigma) V^* with singular values log-spaced in [1, condition].
ComplexMatrix random_similarity(std::mt19937_64& rng, Index n, double condition);

ComplexMatrix jordan_matrix(const std::vector<JordanBlock>& blocks);

/// S J S^{-1}.
ComplexMatrix conjugate(const ComplexMatrix& s, const ComplexMatrix& j);

struct StableGeneratorOptions {
  Index min_dim = 2;
  Index max_dim = 16;
  double max_condition = 10.0;
  /// Real parts in [re_min, re_max], imaginary parts in [-im_max, im_max].
  double re_min = -0.4;
  double re_max = -0.1;
  double im_max = 0.2;
  /// Number of eigenvalues pinned at 0 (semisimple); 0 gives a stable B.
  Index zero_multiplicity = 0;
};

/// Diagonalizable generator B = S D S^{-1} with spectrum in the given box.
ComplexMatrix generate_generator(std::uint64_t seed, const StableGeneratorOptions& opts = {});

}  // namespace abelpow::instances
