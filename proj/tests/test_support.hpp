#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "ncprism/matkernel.hpp"

namespace ncprism::testing {

inline Complex omega(std::size_t k, long long j = 1) {
  const double angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(k);
  return {std::cos(angle), std::sin(angle)};
}

inline ComplexMatrix diag(std::initializer_list<Complex> values) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                                        static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (auto v : values) m(i, i) = v, ++i;
  return m;
}

inline ComplexMatrix scalar(Complex z) { return ComplexMatrix::Constant(1, 1, z); }

inline double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

// Commutant dimension by rank of the real-linear system, via full-pivot LU
// rather than the SVD used by the library.
inline std::size_t oracle_commutant_dim(const std::vector<ComplexMatrix>& mats) {
  const Eigen::Index n = mats.front().rows();
  ComplexMatrix system(static_cast<Eigen::Index>(mats.size()) * n * n, n * n);
  for (std::size_t s = 0; s < mats.size(); ++s) {
    const ComplexMatrix& a = mats[s];
    // vec(XA - AX) = (A^T (x) I - I (x) A) vec(X), written out entrywise.
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) {
        const Eigen::Index row = static_cast<Eigen::Index>(s) * n * n + c * n + r;
        system.row(row).setZero();
        for (Eigen::Index t = 0; t < n; ++t) {
          system(row, t * n + r) += a(t, c);         // (XA)_{rc} = sum_t X_{rt} A_{tc}
          system(row, c * n + t) -= a(r, t);         // (AX)_{rc} = sum_t A_{rt} X_{tc}
        }
      }
  }
  Eigen::FullPivLU<ComplexMatrix> lu(system);
  lu.setThreshold(1e-9);
  return static_cast<std::size_t>(n * n - lu.rank());
}

// Order of the permutation group generated by `gens` acting on {0..n-1}.
inline std::size_t permutation_group_order(const std::vector<std::vector<std::size_t>>& gens) {
  const std::size_t n = gens.front().size();
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<std::size_t>> seen{id};
  std::vector<std::vector<std::size_t>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        std::vector<std::size_t> composed(n);
        for (std::size_t i = 0; i < n; ++i) composed[i] = g[p[i]];
        if (seen.insert(composed).second) next.push_back(std::move(composed));
      }
    frontier = std::move(next);
  }
  return seen.size();
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace ncprism::testing
