#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ncprism/error.hpp"

namespace ncprism {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Numerical tolerances shared by every construction.
///
/// `alg_tol` bounds identities of exact block constructions, `spec_tol`
/// bounds identities that pass through an eigensolver, and `psd_clamp` is
/// the width of the window [-psd_clamp, 0) in which eigenvalues are snapped
/// to zero before a square root is taken.
struct ToleranceConfig {
  double alg_tol = 1e-10;
  double spec_tol = 1e-8;
  double psd_clamp = 1e-12;

  /// Throws InvalidToleranceConfig unless 0 < psd_clamp <= alg_tol <= spec_tol < 1.
  void validate() const;
};

// Norms and structural predicates.
double op_norm(const ComplexMatrix& a);
double frobenius(const ComplexMatrix& a);
double hermitian_defect(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_square(const ComplexMatrix& a) noexcept;
bool is_finite(const ComplexMatrix& a) noexcept;
bool is_normal(const ComplexMatrix& a, double tol);

void require_finite(const ComplexMatrix& a, const char* what);
void require_square(const ComplexMatrix& a, const char* what);
void require_hermitian(const ComplexMatrix& a, double tol, const char* what);

ComplexMatrix hermitian_part(const ComplexMatrix& a);
/// Re a = (a + a*)/2 and Im a = (a - a*)/(2i); both Hermitian.
ComplexMatrix real_part(const ComplexMatrix& a);
ComplexMatrix imag_part(const ComplexMatrix& a);

ComplexMatrix identity(Eigen::Index n);
ComplexMatrix matrix_power(const ComplexMatrix& a, std::size_t exponent);

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // columns are eigenvectors
};

/// Eigendecomposition of the Hermitian part of `h`.
HermitianEigen hermitian_eigen(const ComplexMatrix& h);
double min_eigenvalue(const ComplexMatrix& h);
double max_eigenvalue(const ComplexMatrix& h);

/// Nearest Hermitian matrix with spectrum >= floor (Frobenius distance).
ComplexMatrix project_spectrum_above(const ComplexMatrix& h, double floor);

/// Positive square root of a PSD matrix.
///
/// Eigenvalues in [-psd_clamp, 0) are clamped to zero. Throws NotHermitian or
/// NotPSD when the preconditions fail.
ComplexMatrix psd_sqrt(const ComplexMatrix& h, const ToleranceConfig& tol = {});

struct Commutant {
  std::size_t dimension = 0;
  std::vector<ComplexMatrix> basis;  // Frobenius-orthonormal
};

/// Null space of X -> (XA - AX) over all A in `mats`.
///
/// Singular values below spec_tol * n count as zero. A dimension of one
/// certifies that the set is irreducible.
Commutant commutant(std::span<const ComplexMatrix> mats, const ToleranceConfig& tol = {});
std::size_t commutant_dimension(std::span<const ComplexMatrix> mats,
                                const ToleranceConfig& tol = {});

/// lambda_max(sum_j direction_j * tuple_j), the support function of the
/// joint numerical range of a Hermitian tuple.
double support_value(std::span<const ComplexMatrix> tuple, std::span<const double> direction,
                     const ToleranceConfig& tol = {});

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks);

/// Isometry C^n -> C^total that includes into the first n coordinates.
ComplexMatrix block_inclusion(Eigen::Index n, Eigen::Index total);

bool is_isometry(const ComplexMatrix& z, double tol);

/// Z* A Z. Throws NotIsometry unless Z*Z = I within alg_tol.
ComplexMatrix compress(const ComplexMatrix& a, const ComplexMatrix& z,
                       const ToleranceConfig& tol = {});

/// True iff U is unitary and U^k = I (both within spec_tol, the power
/// identity scaled by k).
bool check_order(const ComplexMatrix& u, std::size_t k, const ToleranceConfig& tol = {});

/// ||U^k - I|| and ||U*U - I||, reported for diagnostics.
double order_residual(const ComplexMatrix& u, std::size_t k);
double unitarity_residual(const ComplexMatrix& u);

}  // namespace ncprism
