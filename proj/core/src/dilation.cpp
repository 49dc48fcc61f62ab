#include "ncprism/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ncprism/convexity.hpp"

namespace ncprism {

namespace {

Complex root_of_unity(std::size_t k, std::size_t j) {
  const double angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(k);
  return {std::cos(angle), std::sin(angle)};
}

double negative_part_norm(const ComplexMatrix& h) {
  const auto eig = hermitian_eigen(h);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) < 0.0) s += eig.values(i) * eig.values(i);
  return std::sqrt(s);
}

ComplexMatrix inverse_sqrt(const ComplexMatrix& s) {
  const auto eig = hermitian_eigen(s);
  const Eigen::VectorXd inv = eig.values.cwiseSqrt().cwiseInverse();
  return eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

// Clamp every effect to the PSD cone and renormalize so that the effects sum
// to the identity again. Used on nearly-feasible POVMs whose residual is
// already within spec_tol.
void repair_effects(std::vector<ComplexMatrix>& effects) {
  if (effects.empty()) return;
  const Eigen::Index n = effects.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (auto& h : effects) {
    h = project_spectrum_above(h, 0.0);
    sum += h;
  }
  if ((sum - identity(n)).norm() == 0.0) return;
  const ComplexMatrix t = inverse_sqrt(sum);
  for (auto& h : effects) h = hermitian_part(t * h * t);
}

}  // namespace

PovmResidual povm_residual(const Povm& povm) {
  PovmResidual r;
  if (povm.effects.empty()) return r;
  const Eigen::Index n = povm.effects.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& h : povm.effects) {
    sum += h;
    r.negativity = std::max(r.negativity, -min_eigenvalue(h));
  }
  r.completeness = op_norm(sum - identity(n));
  return r;
}

PovmResidual povm_residual(const Povm& povm, const ComplexMatrix& target) {
  PovmResidual r = povm_residual(povm);
  ComplexMatrix moment = ComplexMatrix::Zero(target.rows(), target.cols());
  for (std::size_t j = 0; j < povm.effects.size() && j < povm.outcome_labels.size(); ++j)
    moment += povm.outcome_labels[j] * povm.effects[j];
  r.moment = op_norm(moment - target);
  return r;
}

void validate_povm(const Povm& povm, const ToleranceConfig& tol) {
  if (povm.effects.empty()) throw Error(ErrorCode::InvalidPovm, "POVM has no effects");
  if (povm.effects.size() != povm.outcome_labels.size())
    throw Error(ErrorCode::InvalidPovm, "effects and outcome labels differ in number");
  const Eigen::Index n = povm.effects.front().rows();
  for (const auto& h : povm.effects) {
    if (h.rows() != n || h.cols() != n)
      throw Error(ErrorCode::InvalidPovm, "effects must be square of equal size");
    if (!is_finite(h) || !is_hermitian(h, tol.alg_tol))
      throw Error(ErrorCode::InvalidPovm, "effect is not Hermitian");
  }
  const PovmResidual r = povm_residual(povm);
  if (r.negativity > tol.psd_clamp) {
    std::ostringstream os;
    os << "effect has eigenvalue " << -r.negativity << " below -psd_clamp";
    throw Error(ErrorCode::InvalidPovm, os.str());
  }
  if (r.completeness > tol.spec_tol) {
    std::ostringstream os;
    os << "effects sum to identity only within " << r.completeness;
    throw Error(ErrorCode::InvalidPovm, os.str());
  }
}

GroupWord GroupWord::parse(std::string_view text, std::size_t k) {
  GroupWord word;
  word.k = k;
  if (text == "1" || text == "e") return word;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ' ' || c == '.' || c == ',') continue;
    if (c == 'w') {
      if (i + 1 < text.size() && text[i + 1] == '*') {
        word.letters.push_back(Letter::WStar);
        ++i;
      } else {
        word.letters.push_back(Letter::W);
      }
    } else if (c == 'v') {
      word.letters.push_back(Letter::V);
    } else {
      throw Error(ErrorCode::ParseError, std::string("unexpected letter '") + c + "' in group word");
    }
  }
  return word;
}

std::string GroupWord::to_string() const {
  std::string out;
  for (Letter l : letters) out += l == Letter::W ? "w" : l == Letter::WStar ? "w*" : "v";
  return out.empty() ? "1" : out;
}

ComplexMatrix halmos_symmetry(const ComplexMatrix& b, const ToleranceConfig& tol) {
  require_hermitian(b, tol.alg_tol, "halmos_symmetry input");
  const Eigen::Index n = b.rows();
  const ComplexMatrix bh = hermitian_part(b);
  const double norm = std::max(std::abs(min_eigenvalue(bh)), std::abs(max_eigenvalue(bh)));
  if (norm > 1.0 + tol.psd_clamp) {
    std::ostringstream os;
    os << "||b|| = " << norm << " exceeds 1";
    throw Error(ErrorCode::NormExceedsOne, os.str());
  }
  const ComplexMatrix defect = psd_sqrt(identity(n) - bh * bh, tol);
  ComplexMatrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = b;
  s.topRightCorner(n, n) = defect;
  s.bottomLeftCorner(n, n) = defect;
  s.bottomRightCorner(n, n) = -b;
  return s;
}

ComplexMatrix halmos_unitary(const ComplexMatrix& x, const ToleranceConfig& tol) {
  require_square(x, "halmos_unitary input");
  require_finite(x, "halmos_unitary input");
  const Eigen::Index n = x.rows();
  const double norm = op_norm(x);
  if (norm > 1.0 + tol.psd_clamp) {
    std::ostringstream os;
    os << "||x|| = " << norm << " exceeds 1";
    throw Error(ErrorCode::NormExceedsOne, os.str());
  }
  const ComplexMatrix left = psd_sqrt(hermitian_part(identity(n) - x * x.adjoint()), tol);
  const ComplexMatrix right = psd_sqrt(hermitian_part(identity(n) - x.adjoint() * x), tol);
  ComplexMatrix u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = x;
  u.topRightCorner(n, n) = left;
  u.bottomLeftCorner(n, n) = right;
  u.bottomRightCorner(n, n) = -x.adjoint();
  return u;
}

Povm triangle_povm(const ComplexMatrix& a, const ToleranceConfig& tol) {
  require_square(a, "triangle_povm input");
  require_finite(a, "triangle_povm input");
  const Eigen::Index n = a.rows();
  const ComplexMatrix x = real_part(a);
  const ComplexMatrix y = imag_part(a);

  const PolytopeSpec prism = make_prism(3);
  const std::vector<ComplexMatrix> planar{x, y};
  for (std::size_t f = 0; f < 3; ++f) {
    const std::array<double, 2> normal{prism.facets[f].normal[0], prism.facets[f].normal[1]};
    const double excess = support_value(planar, normal, tol) - prism.facets[f].offset;
    if (excess > tol.spec_tol) {
      std::ostringstream os;
      os << "W(a) crosses triangle side " << f << " by " << excess;
      throw Error(ErrorCode::NumericalRangeOutsideTriangle, os.str());
    }
  }

  // Affine barycentric coordinates of Conv{1, w, w^2}: l_j(p) = (1 + 2 <v_j, p>)/3.
  Povm povm;
  for (std::size_t j = 0; j < 3; ++j) {
    const Complex vertex = root_of_unity(3, j);
    povm.effects.push_back((identity(n) + 2.0 * (vertex.real() * x + vertex.imag() * y)) / 3.0);
    povm.outcome_labels.push_back(vertex);
  }
  if (povm_residual(povm).negativity > tol.psd_clamp) repair_effects(povm.effects);
  return povm;
}

DilationResult naimark_normal(const Povm& povm, const ToleranceConfig& tol) {
  validate_povm(povm, tol);
  const Eigen::Index n = povm.effects.front().rows();
  const auto m = static_cast<Eigen::Index>(povm.effects.size());
  ComplexMatrix z(m * n, n);
  ComplexMatrix normal = ComplexMatrix::Zero(m * n, m * n);
  for (Eigen::Index j = 0; j < m; ++j) {
    z.middleRows(j * n, n) = psd_sqrt(project_spectrum_above(povm.effects[static_cast<std::size_t>(j)], 0.0), tol);
    normal.diagonal().segment(j * n, n).setConstant(povm.outcome_labels[static_cast<std::size_t>(j)]);
  }
  const ComplexMatrix gram = z.adjoint() * z;
  if ((gram - identity(n)).norm() > 0.0) z = z * inverse_sqrt(gram);
  return DilationResult{std::move(z), {std::move(normal)}, {"N"}};
}

Povm order_k_povm(const ComplexMatrix& a, std::size_t k, const ToleranceConfig& tol,
                  std::size_t max_iter) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "order_k_povm needs k >= 3");
  if (!is_square(a)) throw Error(ErrorCode::DimensionMismatch, "order_k_povm input must be square");
  require_finite(a, "order_k_povm input");
  if (k == 3) return triangle_povm(a, tol);

  const Eigen::Index n = a.rows();
  const ComplexMatrix x = real_part(a);
  const ComplexMatrix y = imag_part(a);
  const ComplexMatrix id = identity(n);
  const double kk = static_cast<double>(k);
  std::vector<double> cs(k), sn(k);
  Povm povm;
  for (std::size_t j = 0; j < k; ++j) {
    const Complex r = root_of_unity(k, j);
    cs[j] = r.real();
    sn[j] = r.imag();
    povm.outcome_labels.push_back(r);
  }

  // The moment constraints act identically on every matrix entry through the
  // rows (1, cos, sin), which are orthogonal with squared norms (k, k/2, k/2).
  auto project_affine = [&](std::vector<ComplexMatrix>& h) {
    ComplexMatrix d0 = -id, d1 = -x, d2 = -y;
    for (std::size_t j = 0; j < k; ++j) {
      d0 += h[j];
      d1 += cs[j] * h[j];
      d2 += sn[j] * h[j];
    }
    for (std::size_t j = 0; j < k; ++j) h[j] -= (d0 + 2.0 * cs[j] * d1 + 2.0 * sn[j] * d2) / kk;
  };
  auto negativity = [&](const std::vector<ComplexMatrix>& h) {
    double s = 0.0;
    for (const auto& m : h) s += negative_part_norm(m);
    return s;
  };

  std::vector<ComplexMatrix> iterate(k, ComplexMatrix::Zero(n, n));
  project_affine(iterate);
  std::vector<ComplexMatrix> correction(k, ComplexMatrix::Zero(n, n));
  std::vector<ComplexMatrix> cone_point(k);
  double residual = negativity(iterate);
  for (std::size_t it = 0; it < max_iter && residual > 0.1 * tol.spec_tol; ++it) {
    for (std::size_t j = 0; j < k; ++j) {
      cone_point[j] = project_spectrum_above(iterate[j] + correction[j], 0.0);
      correction[j] += iterate[j] - cone_point[j];
    }
    iterate = cone_point;
    project_affine(iterate);
    residual = negativity(iterate);
  }
  if (residual > tol.spec_tol) {
    std::ostringstream os;
    os << "no POVM with outcomes at the " << k << "-th roots of unity found within " << max_iter
       << " sweeps (negativity residual " << residual << ")";
    throw Error(ErrorCode::Infeasible, os.str());
  }
  povm.effects = std::move(iterate);
  repair_effects(povm.effects);
  const PovmResidual r = povm_residual(povm, a);
  if (r.moment + r.completeness + r.negativity > tol.spec_tol) {
    std::ostringstream os;
    os << "POVM residual " << (r.moment + r.completeness + r.negativity) << " above spec_tol";
    throw Error(ErrorCode::Infeasible, os.str());
  }
  return povm;
}

JointDilation joint_prism_dilation(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t k,
                                   const ToleranceConfig& tol, std::size_t max_iter) {
  require_square(a, "a");
  require_hermitian(b, tol.alg_tol, "b");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "a and b differ in size");
  const Eigen::Index n = a.rows();

  const DilationResult naimark = naimark_normal(order_k_povm(a, k, tol, max_iter), tol);
  const ComplexMatrix& z = naimark.isometry;
  const ComplexMatrix& y = naimark.operators.front();
  const Eigen::Index big = z.rows();

  const ComplexMatrix b_lift = hermitian_part(z * b * z.adjoint());
  JointDilation out;
  out.pair.V = halmos_symmetry(b_lift, tol);
  out.pair.W = direct_sum(y, identity(big));
  out.pair.k = k;
  std::ostringstream prov;
  prov << "joint_prism_dilation(k=" << k << ",n=" << n << ")";
  out.pair.provenance = prov.str();
  out.isometry = block_inclusion(big, 2 * big) * z;

  validate_rep_pair(out.pair, tol);
  const double err_a = op_norm(out.isometry.adjoint() * out.pair.W * out.isometry - a);
  const double err_b = op_norm(out.isometry.adjoint() * out.pair.V * out.isometry - b);
  if (err_a > tol.spec_tol || err_b > tol.spec_tol) {
    std::ostringstream os;
    os << "compression errors " << err_a << ", " << err_b << " exceed spec_tol";
    throw Error(ErrorCode::RelationCheckFailed, os.str());
  }
  return out;
}

DilationResult cube_dilation(const std::vector<ComplexMatrix>& tuple, const ToleranceConfig& tol) {
  if (tuple.empty()) throw Error(ErrorCode::ShapeMismatch, "cube_dilation needs a nonempty tuple");
  const Eigen::Index n = tuple.front().rows();
  DilationResult out;
  out.isometry = block_inclusion(n, 2 * n);
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    if (tuple[j].rows() != n || tuple[j].cols() != n)
      throw Error(ErrorCode::ShapeMismatch, "cube_dilation entries must share one size");
    out.operators.push_back(halmos_symmetry(tuple[j], tol));
    out.labels.push_back("S" + std::to_string(j + 1));
  }
  return out;
}

ComplexMatrix evaluate_word(const RepPair& pair, const GroupWord& word) {
  if (word.k != pair.k) {
    std::ostringstream os;
    os << "word has k = " << word.k << " but the pair has k = " << pair.k;
    throw Error(ErrorCode::OrderMismatch, os.str());
  }
  const ComplexMatrix w_star = matrix_power(pair.W, pair.k - 1);
  ComplexMatrix out = identity(pair.dim());
  for (Letter l : word.letters) {
    switch (l) {
      case Letter::W: out = out * pair.W; break;
      case Letter::WStar: out = out * w_star; break;
      case Letter::V: out = out * pair.V; break;
    }
  }
  return out;
}

ComplexMatrix evaluate_compressed_word(const RepPair& pair, const ComplexMatrix& isometry,
                                       const GroupWord& word, const ToleranceConfig& tol) {
  return compress(evaluate_word(pair, word), isometry, tol);
}

}  // namespace ncprism
