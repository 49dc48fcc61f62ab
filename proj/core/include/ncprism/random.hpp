#pragma once

#include <cstdint>
#include <random>

#include "ncprism/matkernel.hpp"

namespace ncprism {

/// Seeded generators for random test inputs. All draws go through a single
/// std::mt19937_64 so a seed reproduces a whole run.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  std::size_t index(std::size_t n);  // uniform in [0, n)
  ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols);

  /// Haar-distributed unitary.
  ComplexMatrix unitary(Eigen::Index n);
  /// Random isometry C^n -> C^m (m >= n).
  ComplexMatrix isometry(Eigen::Index m, Eigen::Index n);
  /// Random Hermitian matrix with operator norm exactly `norm`.
  ComplexMatrix hermitian_with_norm(Eigen::Index n, double norm);
  /// Random PSD matrix.
  ComplexMatrix psd(Eigen::Index n);
  /// Random density matrix (PSD, trace one).
  ComplexMatrix density(Eigen::Index n);
  /// Random symmetry U diag(+-1) U*.
  ComplexMatrix symmetry(Eigen::Index n);

  /// Z* N Z with N diagonal over random k-th roots of unity of size m and Z
  /// a random isometry C^n -> C^m; its numerical range lies in Conv C_k.
  ComplexMatrix polygon_compression(std::size_t k, Eigen::Index m, Eigen::Index n);

  /// Random matrix scaled so that W(a) lies in Conv C_k; `fill` in (0, 1]
  /// is the fraction of the admissible scale used (1 touches the boundary).
  ComplexMatrix polygon_point(std::size_t k, Eigen::Index n, double fill);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ncprism
