#include "abelpow/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace abelpow::instances {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Index uniform_index(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

Index draw_block_size(std::mt19937_64& rng, Index room) {
  const double u = uniform(rng, 0.0, 1.0);
  const Index size = u < 0.6 ? 1 : (u < 0.9 ? 2 : 3);
  return std::min(size, room);
}

// One block away from 1, inside Re z <= 1 (or inside the closed unit disk
// when power_bounded). Eigenvalues on the boundary are kept semisimple.
JordanBlock draw_block(std::mt19937_64& rng, Index room, bool power_bounded) {
  const double u = uniform(rng, 0.0, 1.0);
  const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  if (power_bounded) {
    if (u < 0.2) {
      return {std::polar(1.0, sign * uniform(rng, 0.6, std::numbers::pi)), 1};
    }
    return {std::polar(uniform(rng, 0.0, 0.5), uniform(rng, -std::numbers::pi, std::numbers::pi)),
            draw_block_size(rng, room)};
  }
  if (u < 0.2) return {Complex(1.0, sign * uniform(rng, 0.5, 2.0)), 1};
  return {Complex(uniform(rng, -3.0, 0.5), uniform(rng, -2.0, 2.0)), draw_block_size(rng, room)};
}

void fill_blocks(std::mt19937_64& rng, std::vector<JordanBlock>& blocks, Index room, bool power_bounded) {
  while (room > 0) {
    const JordanBlock b = draw_block(rng, room, power_bounded);
    blocks.push_back(b);
    room -= b.size;
  }
}

}  // namespace

ComplexMatrix random_unitary(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * linalg::identity(n);
}

ComplexMatrix random_similarity(std::mt19937_64& rng, Index n, double condition) {
  require(condition >= 1.0, "random_similarity: condition must be >= 1");
  const ComplexMatrix u = random_unitary(rng, n);
  const ComplexMatrix v = random_unitary(rng, n);
  Eigen::VectorXcd sigma(n);
  for (Index i = 0; i < n; ++i) {
    const double frac = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    sigma(i) = std::pow(condition, frac);
  }
  return u * sigma.asDiagonal() * v.adjoint();
}

ComplexMatrix jordan_matrix(const std::vector<JordanBlock>& blocks) {
  Index n = 0;
  for (const auto& b : blocks) n += b.size;
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  Index offset = 0;
  for (const auto& b : blocks) {
    for (Index i = 0; i < b.size; ++i) {
      j(offset + i, offset + i) = b.eigenvalue;
      if (i + 1 < b.size) j(offset + i, offset + i + 1) = 1.0;
    }
    offset += b.size;
  }
  return j;
}

ComplexMatrix conjugate(const ComplexMatrix& s, const ComplexMatrix& j) {
  const ComplexMatrix s_inv = linalg::solve_linear(s, linalg::identity(s.rows()));
  return s * j * s_inv;
}

Instance generate_instance(std::uint64_t seed, const InstanceOptions& opts) {
  std::mt19937_64 rng(seed);
  const auto pick = std::uniform_int_distribution<int>(0, 2)(rng);
  return generate_instance(seed, static_cast<InstanceKind>(pick), opts);
}

Instance generate_instance(std::uint64_t seed, InstanceKind kind, const InstanceOptions& opts) {
  require(opts.min_dim >= 2 && opts.max_dim >= opts.min_dim, "generate_instance: bad dimension range");
  require(opts.max_condition >= 1.0, "generate_instance: max_condition must be >= 1");
  // Offset so the kind draw of the seed-only overload does not alias the stream.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Instance inst;
  inst.seed = seed;
  inst.kind = kind;

  const Index n = uniform_index(rng, opts.min_dim, opts.max_dim);
  Index room = n;
  switch (kind) {
    case InstanceKind::semisimple_at_one: {
      const Index ones = uniform_index(rng, 0, std::min<Index>(3, n));
      for (Index i = 0; i < ones; ++i) inst.blocks.push_back({Complex(1.0, 0.0), 1});
      room -= ones;
      break;
    }
    case InstanceKind::jordan_at_one: {
      const Index size = std::min<Index>(n, uniform_index(rng, 2, 3));
      inst.blocks.push_back({Complex(1.0, 0.0), size});
      room -= size;
      if (room > 0 && uniform(rng, 0.0, 1.0) < 0.5) {
        inst.blocks.push_back({Complex(1.0, 0.0), 1});
        room -= 1;
      }
      break;
    }
    case InstanceKind::spectrum_escapes: {
      const double r = uniform(rng, 0.1, 0.8);
      const double phi = uniform(rng, -std::numbers::pi, std::numbers::pi);
      inst.blocks.push_back({Complex(2.0, 0.0) + std::polar(r, phi), 1});
      room -= 1;
      const Index ones = uniform_index(rng, 0, std::min<Index>(2, room));
      for (Index i = 0; i < ones; ++i) inst.blocks.push_back({Complex(1.0, 0.0), 1});
      room -= ones;
      break;
    }
  }
  fill_blocks(rng, inst.blocks, room, opts.power_bounded);

  inst.condition = std::exp(uniform(rng, 0.0, std::log(opts.max_condition)));
  inst.similarity = random_similarity(rng, n, inst.condition);
  inst.t = conjugate(inst.similarity, jordan_matrix(inst.blocks));

  ComplexMatrix selector = ComplexMatrix::Zero(n, n);
  Index offset = 0;
  for (const auto& b : inst.blocks) {
    if (b.eigenvalue == Complex(1.0, 0.0) && b.size == 1) selector(offset, offset) = 1.0;
    offset += b.size;
  }
  inst.projection = conjugate(inst.similarity, selector);
  return inst;
}

ComplexMatrix generate_generator(std::uint64_t seed, const StableGeneratorOptions& opts) {
  require(opts.min_dim >= 1 && opts.max_dim >= opts.min_dim, "generate_generator: bad dimension range");
  require(opts.zero_multiplicity <= opts.min_dim, "generate_generator: too many zero eigenvalues");
  std::mt19937_64 rng(seed);
  const Index n = uniform_index(rng, opts.min_dim, opts.max_dim);
  Eigen::VectorXcd diag(n);
  for (Index i = 0; i < n; ++i) {
    diag(i) = i < opts.zero_multiplicity
                  ? Complex{}
                  : Complex(uniform(rng, opts.re_min, opts.re_max), uniform(rng, -opts.im_max, opts.im_max));
  }
  const double condition = std::exp(uniform(rng, 0.0, std::log(opts.max_condition)));
  const ComplexMatrix s = random_similarity(rng, n, condition);
  return conjugate(s, diag.asDiagonal().toDenseMatrix());
}

}  // namespace abelpow::instances
