#include "ncprism/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace ncprism {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidToleranceConfig: return "InvalidToleranceConfig";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::NotSymmetry: return "NotSymmetry";
    case ErrorCode::NotSelfadjoint: return "NotSelfadjoint";
    case ErrorCode::NormExceedsOne: return "NormExceedsOne";
    case ErrorCode::NumericalRangeOutsideTriangle: return "NumericalRangeOutsideTriangle";
    case ErrorCode::InvalidPovm: return "InvalidPovm";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::SizeBudgetExceeded: return "SizeBudgetExceeded";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::RelationCheckFailed: return "RelationCheckFailed";
    case ErrorCode::UnsupportedQ: return "UnsupportedQ";
    case ErrorCode::NoIrreduciblePolynomial: return "NoIrreduciblePolynomial";
    case ErrorCode::AssemblyFailed: return "AssemblyFailed";
    case ErrorCode::InvalidDensity: return "InvalidDensity";
    case ErrorCode::WrongLevel: return "WrongLevel";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

void ToleranceConfig::validate() const {
  if (!(0.0 < psd_clamp && psd_clamp <= alg_tol && alg_tol <= spec_tol && spec_tol < 1.0)) {
    std::ostringstream os;
    os << "require 0 < psd_clamp <= alg_tol <= spec_tol < 1, got psd_clamp=" << psd_clamp
       << " alg_tol=" << alg_tol << " spec_tol=" << spec_tol;
    throw Error(ErrorCode::InvalidToleranceConfig, os.str());
  }
}

double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 || a.cols() == 1) return a.norm();
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double frobenius(const ComplexMatrix& a) { return a.norm(); }

double hermitian_defect(const ComplexMatrix& a) {
  if (!is_square(a)) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).norm();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return is_square(a) && hermitian_defect(a) <= tol * std::max(1.0, a.norm());
}

bool is_square(const ComplexMatrix& a) noexcept { return a.rows() == a.cols(); }

bool is_finite(const ComplexMatrix& a) noexcept {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

bool is_normal(const ComplexMatrix& a, double tol) {
  if (!is_square(a)) return false;
  return (a * a.adjoint() - a.adjoint() * a).norm() <= tol * std::max(1.0, a.squaredNorm());
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!is_finite(a)) throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN/Inf entries");
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!is_square(a)) {
    std::ostringstream os;
    os << what << " must be square, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::ShapeMismatch, os.str());
  }
}

void require_hermitian(const ComplexMatrix& a, double tol, const char* what) {
  require_square(a, what);
  require_finite(a, what);
  if (!is_hermitian(a, tol)) {
    std::ostringstream os;
    os << what << " is not Hermitian (defect " << hermitian_defect(a) << ")";
    throw Error(ErrorCode::NotHermitian, os.str());
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return (a + a.adjoint()) * 0.5; }

ComplexMatrix real_part(const ComplexMatrix& a) { return (a + a.adjoint()) * 0.5; }

ComplexMatrix imag_part(const ComplexMatrix& a) { return (a - a.adjoint()) / Complex(0.0, 2.0); }

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix matrix_power(const ComplexMatrix& a, std::size_t exponent) {
  ComplexMatrix result = identity(a.rows());
  ComplexMatrix base = a;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h));
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const ComplexMatrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

ComplexMatrix project_spectrum_above(const ComplexMatrix& h, double floor) {
  const auto eig = hermitian_eigen(h);
  if (eig.values.size() == 0 || eig.values(0) >= floor) return hermitian_part(h);
  const Eigen::VectorXd clipped = eig.values.cwiseMax(floor);
  return eig.vectors * clipped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h, const ToleranceConfig& tol) {
  require_hermitian(h, tol.alg_tol, "psd_sqrt input");
  const auto eig = hermitian_eigen(h);
  Eigen::VectorXd roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lambda = eig.values(i);
    if (lambda < -tol.psd_clamp) {
      std::ostringstream os;
      os << "eigenvalue " << lambda << " below -psd_clamp (" << -tol.psd_clamp << ")";
      throw Error(ErrorCode::NotPSD, os.str());
    }
    roots(i) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  ComplexMatrix s = eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return hermitian_part(s);
}

namespace {

// vec(XA - AX) = (A^T (x) I - I (x) A) vec(X) for column-major vec.
ComplexMatrix commutator_operator(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  const ComplexMatrix id = identity(n);
  return kron(a.transpose(), id) - kron(id, a);
}

}  // namespace

Commutant commutant(std::span<const ComplexMatrix> mats, const ToleranceConfig& tol) {
  if (mats.empty()) throw Error(ErrorCode::ShapeMismatch, "commutant of an empty set");
  const Eigen::Index n = mats.front().rows();
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n)
      throw Error(ErrorCode::ShapeMismatch, "commutant inputs must be square of equal size");
  }
  const Eigen::Index n2 = n * n;
  ComplexMatrix stacked(static_cast<Eigen::Index>(mats.size()) * n2, n2);
  for (std::size_t i = 0; i < mats.size(); ++i)
    stacked.middleRows(static_cast<Eigen::Index>(i) * n2, n2) = commutator_operator(mats[i]);

  // Reduce the tall system to its square R factor; R has the same right
  // singular vectors and singular values.
  ComplexMatrix square;
  if (stacked.rows() > n2) {
    Eigen::HouseholderQR<ComplexMatrix> qr(stacked);
    square = qr.matrixQR().topRows(n2).triangularView<Eigen::Upper>();
  } else {
    square = stacked;
  }
  const double cutoff = tol.spec_tol * static_cast<double>(n);
  auto null_vectors = [&](const auto& svd) {
    std::vector<ComplexVector> vs;
    const Eigen::VectorXd& sigma = svd.singularValues();
    for (Eigen::Index j = 0; j < n2; ++j)
      if (sigma(j) < cutoff) vs.push_back(svd.matrixV().col(j));
    return vs;
  };
  std::vector<ComplexVector> vs = null_vectors(Eigen::BDCSVD<ComplexMatrix>(square, Eigen::ComputeFullV));
  // BDCSVD can return inaccurate singular vectors on rank-deficient input;
  // every null vector is re-checked and Jacobi is used if any fails.
  const bool accurate = std::all_of(vs.begin(), vs.end(), [&](const ComplexVector& v) {
    return (square * v).norm() < cutoff;
  });
  if (!accurate) vs = null_vectors(Eigen::JacobiSVD<ComplexMatrix>(square, Eigen::ComputeFullV));

  Commutant out;
  for (const auto& v : vs) out.basis.emplace_back(Eigen::Map<const ComplexMatrix>(v.data(), n, n));
  out.dimension = out.basis.size();
  return out;
}

std::size_t commutant_dimension(std::span<const ComplexMatrix> mats, const ToleranceConfig& tol) {
  return commutant(mats, tol).dimension;
}

double support_value(std::span<const ComplexMatrix> tuple, std::span<const double> direction,
                     const ToleranceConfig& tol) {
  if (tuple.empty()) throw Error(ErrorCode::ShapeMismatch, "support_value of an empty tuple");
  if (tuple.size() != direction.size())
    throw Error(ErrorCode::ShapeMismatch, "direction length differs from tuple length");
  const Eigen::Index n = tuple.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    if (tuple[j].rows() != n || tuple[j].cols() != n)
      throw Error(ErrorCode::ShapeMismatch, "tuple entries must be square of equal size");
    require_hermitian(tuple[j], tol.alg_tol, "tuple entry");
    sum += direction[j] * tuple[j];
  }
  return max_eigenvalue(sum);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ComplexMatrix out = ComplexMatrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

ComplexMatrix block_inclusion(Eigen::Index n, Eigen::Index total) {
  if (total < n) throw Error(ErrorCode::ShapeMismatch, "inclusion target smaller than source");
  ComplexMatrix z = ComplexMatrix::Zero(total, n);
  z.topRows(n).setIdentity();
  return z;
}

bool is_isometry(const ComplexMatrix& z, double tol) {
  return (z.adjoint() * z - identity(z.cols())).norm() <= tol * std::max<double>(1.0, static_cast<double>(z.cols()));
}

ComplexMatrix compress(const ComplexMatrix& a, const ComplexMatrix& z, const ToleranceConfig& tol) {
  require_square(a, "compress operand");
  if (z.rows() != a.rows())
    throw Error(ErrorCode::ShapeMismatch, "isometry rows must equal operand size");
  if (!is_isometry(z, tol.alg_tol)) {
    std::ostringstream os;
    os << "Z*Z - I has norm " << (z.adjoint() * z - identity(z.cols())).norm();
    throw Error(ErrorCode::NotIsometry, os.str());
  }
  return z.adjoint() * a * z;
}

double unitarity_residual(const ComplexMatrix& u) {
  return op_norm(u.adjoint() * u - identity(u.cols()));
}

double order_residual(const ComplexMatrix& u, std::size_t k) {
  return op_norm(matrix_power(u, k) - identity(u.rows()));
}

bool check_order(const ComplexMatrix& u, std::size_t k, const ToleranceConfig& tol) {
  if (!is_square(u) || !is_finite(u) || k == 0) return false;
  return unitarity_residual(u) <= tol.spec_tol &&
         order_residual(u, k) <= tol.spec_tol * static_cast<double>(k);
}

}  // namespace ncprism
