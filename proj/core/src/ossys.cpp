#include "ncprism/ossys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncprism/dilation.hpp"
#include "ncprism/random.hpp"

namespace ncprism {

namespace {

Complex root_of_unity(std::size_t k, long long power) {
  const double angle = 2.0 * kPi * static_cast<double>(power) / static_cast<double>(k);
  return {std::cos(angle), std::sin(angle)};
}

void require_level(std::size_t k) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "prism order k must be at least 3");
}

// Coefficient matrix of psi_k on scalars: rows are c_0..c_{k-1}, g; columns
// are x_0..x_{k+1}.
ComplexMatrix psi_matrix(std::size_t k) {
  const auto kk = static_cast<Eigen::Index>(k);
  ComplexMatrix l = ComplexMatrix::Zero(kk + 1, kk + 2);
  for (Eigen::Index m = 0; m < kk; ++m)
    for (Eigen::Index j = 0; j < kk; ++j)
      l(m, j) = root_of_unity(k, -static_cast<long long>(j * m)) / (2.0 * static_cast<double>(k));
  l(0, kk) += 0.25;
  l(0, kk + 1) += 0.25;
  l(kk, kk) = 0.25;
  l(kk, kk + 1) = -0.25;
  return l;
}

// Each block as one row of q*q entries.
ComplexMatrix stack_rows(const std::vector<ComplexMatrix>& blocks, Eigen::Index q) {
  ComplexMatrix out(static_cast<Eigen::Index>(blocks.size()), q * q);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXcd>(blocks[i].data(), q * q);
  return out;
}

std::vector<ComplexMatrix> unstack_rows(const ComplexMatrix& rows, Eigen::Index q) {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const Eigen::RowVectorXcd row = rows.row(i);
    blocks.push_back(hermitian_part(Eigen::Map<const ComplexMatrix>(row.data(), q, q)));
  }
  return blocks;
}

double min_eigen_over(const std::vector<ComplexMatrix>& blocks) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) lo = std::min(lo, min_eigenvalue(b));
  return lo;
}

}  // namespace

PrismElement PrismElement::zero(std::size_t k, Eigen::Index q) {
  require_level(k);
  PrismElement e;
  e.k = k;
  e.q = q;
  e.c.assign(k, ComplexMatrix::Zero(q, q));
  e.g = ComplexMatrix::Zero(q, q);
  return e;
}

PrismElement PrismElement::unit(std::size_t k, Eigen::Index q) {
  PrismElement e = zero(k, q);
  e.c[0] = identity(q);
  return e;
}

bool PrismElement::is_selfadjoint(double tol) const {
  if (c.size() != k) return false;
  const double scale = [&] {
    double s = frobenius(g);
    for (const auto& m : c) s = std::max(s, frobenius(m));
    return std::max(1.0, s);
  }();
  if (frobenius(c[0] - c[0].adjoint()) > tol * scale) return false;
  if (frobenius(g - g.adjoint()) > tol * scale) return false;
  for (std::size_t m = 1; m < k; ++m)
    if (frobenius(c[k - m] - c[m].adjoint()) > tol * scale) return false;
  return true;
}

double PrismElement::distance(const PrismElement& other) const {
  if (other.k != k || other.q != q || other.c.size() != c.size())
    throw Error(ErrorCode::ShapeMismatch, "elements have different shapes");
  double d = op_norm(g - other.g);
  for (std::size_t m = 0; m < c.size(); ++m) d = std::max(d, op_norm(c[m] - other.c[m]));
  return d;
}

void validate_element(const PrismElement& e) {
  require_level(e.k);
  if (e.c.size() != e.k)
    throw Error(ErrorCode::ShapeMismatch, "element needs exactly k coefficient blocks");
  auto check = [&](const ComplexMatrix& m) {
    if (m.rows() != e.q || m.cols() != e.q)
      throw Error(ErrorCode::ShapeMismatch, "coefficient block is not q x q");
    require_finite(m, "coefficient block");
  };
  for (const auto& m : e.c) check(m);
  check(e.g);
}

ComplexMatrix evaluate(const PrismElement& e, const RepPair& pair) {
  validate_element(e);
  if (pair.W.rows() != pair.V.rows())
    throw Error(ErrorCode::ShapeMismatch, "W and V have different sizes");
  const Eigen::Index n = pair.dim();
  ComplexMatrix out = kron(e.g, pair.V);
  ComplexMatrix power = identity(n);
  for (std::size_t m = 0; m < e.k; ++m) {
    out += kron(e.c[m], power);
    power = power * pair.W;
  }
  return out;
}

DiagTuple DiagTuple::scalars(std::size_t k, const std::vector<double>& values) {
  if (values.size() != k + 2)
    throw Error(ErrorCode::ShapeMismatch, "scalar tuple needs k + 2 entries");
  DiagTuple x;
  x.k = k;
  x.q = 1;
  for (double v : values) x.blocks.push_back(ComplexMatrix::Constant(1, 1, Complex(v, 0.0)));
  return x;
}

double DiagTuple::min_block_eigenvalue() const { return min_eigen_over(blocks); }

PrismElement psi_k(const DiagTuple& x) {
  require_level(x.k);
  if (x.blocks.size() != x.k + 2)
    throw Error(ErrorCode::ShapeMismatch, "tuple needs k + 2 blocks");
  for (const auto& b : x.blocks)
    if (b.rows() != x.q || b.cols() != x.q)
      throw Error(ErrorCode::ShapeMismatch, "tuple block is not q x q");
  const std::size_t k = x.k;
  PrismElement e = PrismElement::zero(k, x.q);
  const double inv = 1.0 / (2.0 * static_cast<double>(k));
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t j = 0; j < k; ++j)
      e.c[m] += (inv * root_of_unity(k, -static_cast<long long>(j * m))) * x.blocks[j];
  e.c[0] += 0.25 * (x.blocks[k] + x.blocks[k + 1]);
  e.g = 0.25 * (x.blocks[k] - x.blocks[k + 1]);
  return e;
}

bool dual_member(const DualTuple& z, double tol) {
  if (z.z.size() != z.k + 2) return false;
  Complex lhs = 0.0;
  for (std::size_t i = 0; i < z.k; ++i) lhs += z.z[i];
  return std::abs(lhs - z.z[z.k] - z.z[z.k + 1]) <= tol;
}

DualTuple functional_to_tuple(const RepPair& pair, const ComplexMatrix& density, std::size_t k,
                              const ToleranceConfig& tol) {
  require_level(k);
  if (pair.k != k) throw Error(ErrorCode::OrderMismatch, "pair order differs from k");
  validate_rep_pair(pair, tol);
  if (density.rows() != pair.dim() || density.cols() != pair.dim())
    throw Error(ErrorCode::InvalidDensity, "density size differs from the representation");
  if (!is_finite(density) || !is_hermitian(density, tol.alg_tol))
    throw Error(ErrorCode::InvalidDensity, "density is not Hermitian");
  if (min_eigenvalue(density) < -tol.psd_clamp)
    throw Error(ErrorCode::InvalidDensity, "density is not positive");
  if (std::abs(density.trace() - Complex(1.0, 0.0)) > tol.alg_tol)
    throw Error(ErrorCode::InvalidDensity, "density does not have trace one");

  DualTuple out;
  out.k = k;
  for (std::size_t i = 0; i < k + 2; ++i) {
    std::vector<double> basis(k + 2, 0.0);
    basis[i] = 1.0;
    const ComplexMatrix image = evaluate(psi_k(DiagTuple::scalars(k, basis)), pair);
    out.z.push_back((density * image).trace());
  }
  return out;
}

ScalarPositivity scalar_positivity_prism(const PrismElement& e, double tol) {
  validate_element(e);
  if (e.q != 1) throw Error(ErrorCode::WrongLevel, "scalar test needs a level-one element");
  if (!e.is_selfadjoint()) throw Error(ErrorCode::NotSelfadjoint, "element is not selfadjoint");
  ScalarPositivity out;
  out.margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < e.k; ++j) {
    double base = 0.0;
    for (std::size_t m = 0; m < e.k; ++m)
      base += (e.c[m](0, 0) * root_of_unity(e.k, static_cast<long long>(j * m))).real();
    for (int sign : {1, -1}) {
      const double value = base + sign * e.g(0, 0).real();
      if (value < out.margin) {
        out.margin = value;
        out.vertex_j = j;
        out.vertex_sign = sign;
      }
    }
  }
  out.positive = out.margin >= -tol;
  return out;
}

CubePositivity scalar_positivity_cube(double alpha, const std::vector<double>& beta, double tol) {
  if (!std::isfinite(alpha)) throw Error(ErrorCode::NonFinite, "alpha is not finite");
  double total = 0.0;
  for (double b : beta) {
    if (!std::isfinite(b)) throw Error(ErrorCode::NonFinite, "beta is not finite");
    total += std::abs(b);
  }
  CubePositivity out;
  out.margin = alpha - total;
  out.positive = out.margin >= -tol;
  return out;
}

std::vector<RepPair> refutation_sample(std::size_t k, const PositivityOptions& options,
                                       const ToleranceConfig& tol) {
  require_level(k);
  std::vector<RepPair> pairs;
  for (std::size_t j = 0; j < k; ++j)
    for (int sign : {1, -1}) pairs.push_back(character_pair(k, j, sign));
  if (static_cast<Eigen::Index>(k) <= options.size_budget)
    for (std::size_t j = 0; j < k; ++j)
      for (int sign : {1, -1}) pairs.push_back(prism_vertex_rep(k, j, sign).pair);

  if (k % 3 == 0) {
    std::vector<RepPair> order_three{s3_pair(tol), a4_pair(tol)};
    for (std::uint32_t q : {5u, 7u})
      if (static_cast<Eigen::Index>(q) <= options.size_budget) order_three.push_back(steinberg_pair(q, tol));
    for (auto& p : order_three) {
      p.k = k;
      pairs.push_back(std::move(p));
    }
  }

  RandomSource rng(options.seed);
  for (std::size_t s = 0; s < options.samples; ++s) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(s % 2);
    const ComplexMatrix a = rng.polygon_compression(k, 3 * n, n);
    const ComplexMatrix b = rng.hermitian_with_norm(n, rng.uniform(0.3, 1.0));
    try {
      RepPair p = joint_prism_dilation(a, b, k, tol).pair;
      p.provenance = "random_dilation";
      pairs.push_back(std::move(p));
    } catch (const Error&) {
    }
  }
  for (std::size_t s = 0; s < options.samples; ++s) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(s % 3);
    const ComplexMatrix u = rng.unitary(n);
    Eigen::VectorXcd spectrum(n);
    for (Eigen::Index i = 0; i < n; ++i)
      spectrum(i) = root_of_unity(k, static_cast<long long>(rng.index(k)));
    RepPair p;
    p.W = u * spectrum.asDiagonal() * u.adjoint();
    p.V = rng.symmetry(n);
    p.k = k;
    p.provenance = "random_rep";
    pairs.push_back(std::move(p));
  }
  return pairs;
}

PositivityVerdict matrix_positivity_prism(const PrismElement& e, const PositivityOptions& options,
                                          const ToleranceConfig& tol) {
  tol.validate();
  validate_element(e);
  if (!e.is_selfadjoint(tol.alg_tol))
    throw Error(ErrorCode::NotSelfadjoint, "element is not selfadjoint");
  if (!(options.epsilon > 0.0))
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");

  PositivityVerdict verdict;
  double worst = std::numeric_limits<double>::infinity();
  for (auto& pair : refutation_sample(e.k, options, tol)) {
    ++verdict.pairs_tested;
    const double lo = min_eigenvalue(evaluate(e, pair));
    if (lo < worst) {
      worst = lo;
      if (lo < -tol.spec_tol) verdict.witness = RefutationWitness{std::move(pair), lo};
    }
  }
  if (verdict.witness) {
    verdict.kind = VerdictKind::Refuted;
    return verdict;
  }

  const std::size_t k = e.k;
  const Eigen::Index q = e.q;
  const auto kk = static_cast<Eigen::Index>(k);
  const ComplexMatrix l = psi_matrix(k);
  const ComplexMatrix lp = l.adjoint() * (l * l.adjoint()).inverse();
  std::vector<ComplexMatrix> target_blocks = e.c;
  target_blocks.push_back(e.g);
  const ComplexMatrix target = stack_rows(target_blocks, q);
  auto project_affine = [&](const std::vector<ComplexMatrix>& blocks) {
    const ComplexMatrix x = stack_rows(blocks, q);
    return unstack_rows(x - lp * (l * x - target), q);
  };

  std::vector<ComplexMatrix> x = unstack_rows(lp * target, q);
  {
    double lo_polygon = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < kk; ++j) lo_polygon = std::min(lo_polygon, min_eigenvalue(x[j]));
    const double lo_caps = std::min(min_eigenvalue(x[k]), min_eigenvalue(x[k + 1]));
    const double shift = 0.5 * (lo_caps - lo_polygon);
    for (Eigen::Index j = 0; j < kk; ++j) x[j] += shift * identity(q);
    x[k] -= shift * identity(q);
    x[k + 1] -= shift * identity(q);
  }

  auto finish = [&](std::size_t iterations) {
    DiagTuple lift{k, q, x};
    const double residual = psi_k(lift).distance(e);
    if (residual > tol.spec_tol) return false;
    verdict.kind = VerdictKind::Certified;
    verdict.certificate = PositivityCertificate{lift, residual, lift.min_block_eigenvalue(), iterations};
    return true;
  };

  if (min_eigen_over(x) >= options.epsilon && finish(0)) return verdict;

  std::vector<ComplexMatrix> correction(k + 2, ComplexMatrix::Zero(q, q));
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    std::vector<ComplexMatrix> y(k + 2);
    for (std::size_t i = 0; i < k + 2; ++i) {
      y[i] = project_spectrum_above(x[i] + correction[i], 2.0 * options.epsilon);
      correction[i] = x[i] + correction[i] - y[i];
    }
    x = project_affine(y);
    if (min_eigen_over(x) >= options.epsilon && finish(it)) return verdict;
  }
  verdict.kind = VerdictKind::Unknown;
  return verdict;
}

bool verify_witness(const PrismElement& e, const RefutationWitness& witness,
                    const ToleranceConfig& tol) {
  try {
    if (witness.pair.k != e.k) return false;
    validate_rep_pair(witness.pair, tol);
    return min_eigenvalue(evaluate(e, witness.pair)) < -tol.spec_tol;
  } catch (const Error&) {
    return false;
  }
}

bool verify_certificate(const PrismElement& e, const PositivityCertificate& cert, double epsilon,
                        const ToleranceConfig& tol) {
  try {
    const DiagTuple& lift = cert.lift;
    if (lift.k != e.k || lift.q != e.q) return false;
    for (const auto& b : lift.blocks)
      if (!is_hermitian(b, tol.alg_tol)) return false;
    if (psi_k(lift).distance(e) > tol.spec_tol) return false;
    return lift.min_block_eigenvalue() >= epsilon - tol.psd_clamp;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace ncprism
