#include "ncprism/reps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ncprism {

namespace {

Complex root_of_unity(std::size_t k, std::size_t j) {
  const double angle = 2.0 * kPi * static_cast<double>(j % k) / static_cast<double>(k);
  return {std::cos(angle), std::sin(angle)};
}

void guard(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::RelationCheckFailed, what);
}

void check_symmetry(const ComplexMatrix& s, double tol, const char* what) {
  require_square(s, what);
  if (!is_hermitian(s, tol) || (s * s - identity(s.rows())).norm() > tol * std::max<double>(1.0, static_cast<double>(s.rows()))) {
    throw Error(ErrorCode::NotSymmetry, std::string(what) + " is not a symmetry");
  }
}

// Orthonormal basis of the span of the columns of `m` whose singular values exceed `cut`.
ComplexMatrix range_basis(const ComplexMatrix& m, double cut) {
  if (m.cols() == 0) return ComplexMatrix(m.rows(), 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  Eigen::Index r = 0;
  while (r < svd.singularValues().size() && svd.singularValues()(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

void validate_rep_pair(const RepPair& pair, const ToleranceConfig& tol) {
  guard(is_square(pair.W) && is_square(pair.V) && pair.W.rows() == pair.V.rows(),
        "W and V must be square of equal size");
  guard(pair.k >= 1, "order k must be positive");
  guard(check_order(pair.W, pair.k, tol), "W fails W^k = 1 (" + pair.provenance + ")");
  guard(check_order(pair.V, 2, tol), "V fails V^2 = 1 (" + pair.provenance + ")");
}

ComplexMatrix square_block_u1() {
  ComplexMatrix u(2, 2);
  u << -1.0, 0.0, 0.0, 1.0;
  return u;
}

ComplexMatrix square_block_u2(double lambda) {
  const double s = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
  ComplexMatrix u(2, 2);
  u << lambda, s, s, -lambda;
  return u;
}

SymmetryTuple square_irrep(double lambda) {
  if (!(lambda > -1.0 && lambda < 1.0)) {
    std::ostringstream os;
    os << "lambda = " << lambda << " must lie strictly inside (-1, 1)";
    throw Error(ErrorCode::LambdaOutOfRange, os.str());
  }
  std::ostringstream prov;
  prov << "square_irrep(lambda=" << lambda << ")";
  return {{square_block_u1(), square_block_u2(lambda)}, prov.str()};
}

SymmetryTuple universal_square_pair(const std::vector<double>& lambdas) {
  if (lambdas.empty() || lambdas.front() != 1.0)
    throw Error(ErrorCode::LambdaOutOfRange, "lambdas must be nonempty with leading entry 1");
  std::vector<ComplexMatrix> u1, u2;
  for (double l : lambdas) {
    if (!(l > -1.0 && l <= 1.0)) {
      std::ostringstream os;
      os << "lambda = " << l << " outside (-1, 1]";
      throw Error(ErrorCode::LambdaOutOfRange, os.str());
    }
    u1.push_back(square_block_u1());
    u2.push_back(square_block_u2(l));
  }
  std::ostringstream prov;
  prov << "universal_square_pair(n=" << lambdas.size() << ")";
  return {{direct_sum(u1), direct_sum(u2)}, prov.str()};
}

CanonicalForm two_symmetry_canonical_form(const ComplexMatrix& v1, const ComplexMatrix& v2,
                                          const ToleranceConfig& tol) {
  check_symmetry(v1, tol.spec_tol, "v1");
  check_symmetry(v2, tol.spec_tol, "v2");
  if (v1.rows() != v2.rows()) throw Error(ErrorCode::ShapeMismatch, "v1 and v2 differ in size");
  const Eigen::Index n = v1.rows();

  // Eigenspaces E- and E+ of v1.
  const auto e1 = hermitian_eigen(v1);
  Eigen::Index r_minus = 0;
  while (r_minus < n && e1.values(r_minus) < 0.0) ++r_minus;
  const ComplexMatrix b_minus = e1.vectors.leftCols(r_minus);
  const ComplexMatrix b_plus = e1.vectors.rightCols(n - r_minus);

  // Compression of q = (1 + v2)/2 to E-; its eigenvalues are c^2 with lambda = 2c^2 - 1.
  const ComplexMatrix q = (identity(n) + v2) * 0.5;
  const auto t = hermitian_eigen(b_minus.adjoint() * q * b_minus);

  CanonicalForm form;
  std::vector<ComplexVector> generic_first, generic_second;
  std::array<std::vector<ComplexVector>, 4> chars;
  for (Eigen::Index i = 0; i < r_minus; ++i) {
    const double c2 = t.values(i);
    const ComplexVector f1 = b_minus * t.vectors.col(i);
    if (c2 <= tol.spec_tol) {
      chars[static_cast<std::size_t>(Character::MinusMinus)].push_back(f1);
    } else if (c2 >= 1.0 - tol.spec_tol) {
      chars[static_cast<std::size_t>(Character::MinusPlus)].push_back(f1);
    } else {
      const double lambda = 2.0 * c2 - 1.0;
      const double s = std::sqrt(1.0 - lambda * lambda);
      form.lambdas.push_back(lambda);
      generic_first.push_back(f1);
      generic_second.push_back((v2 * f1 - lambda * f1) / s);
    }
  }

  // Characters on the part of E+ orthogonal to the second block vectors.
  ComplexMatrix f2(n, static_cast<Eigen::Index>(generic_second.size()));
  for (std::size_t i = 0; i < generic_second.size(); ++i) f2.col(static_cast<Eigen::Index>(i)) = generic_second[i];
  const ComplexMatrix rest = range_basis(b_plus - f2 * (f2.adjoint() * b_plus), 0.5);
  if (rest.cols() > 0) {
    const auto r = hermitian_eigen(rest.adjoint() * v2 * rest);
    for (Eigen::Index i = 0; i < rest.cols(); ++i) {
      const ComplexVector f = rest * r.vectors.col(i);
      chars[static_cast<std::size_t>(r.values(i) > 0.0 ? Character::PlusPlus : Character::PlusMinus)].push_back(f);
    }
  }

  form.conjugator = ComplexMatrix::Zero(n, n);
  Eigen::Index col = 0;
  for (std::size_t i = 0; i < generic_first.size(); ++i) {
    form.conjugator.col(col++) = generic_first[i];
    form.conjugator.col(col++) = generic_second[i];
  }
  for (std::size_t c = 0; c < 4; ++c) {
    form.char_counts[c] = chars[c].size();
    for (const auto& f : chars[c]) {
      if (col >= n) throw Error(ErrorCode::RelationCheckFailed, "canonical form overflowed dimension");
      form.conjugator.col(col++) = f;
    }
  }
  guard(col == n, "canonical form does not span the space");

  const auto [u1, u2] = canonical_pair(form);
  const ComplexMatrix& z = form.conjugator;
  form.reconstruction_error =
      std::max({op_norm(z * u1 * z.adjoint() - v1), op_norm(z * u2 * z.adjoint() - v2),
                op_norm(z.adjoint() * z - identity(n))});
  guard(form.reconstruction_error <= tol.spec_tol, "canonical form reconstruction exceeds spec_tol");
  return form;
}

std::pair<ComplexMatrix, ComplexMatrix> canonical_pair(const CanonicalForm& form) {
  std::vector<ComplexMatrix> u1, u2;
  for (double l : form.lambdas) {
    u1.push_back(square_block_u1());
    u2.push_back(square_block_u2(l));
  }
  constexpr std::array<std::pair<double, double>, 4> signs{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t i = 0; i < form.char_counts[c]; ++i) {
      u1.push_back(ComplexMatrix::Constant(1, 1, signs[c].first));
      u2.push_back(ComplexMatrix::Constant(1, 1, signs[c].second));
    }
  }
  return {direct_sum(u1), direct_sum(u2)};
}

SymmetryTuple hadamard_symmetries(std::size_t m, std::size_t size_budget) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be at least 1");
  if (m >= 31 || (std::size_t{1} << m) > size_budget) {
    std::ostringstream os;
    os << "2^" << m << " exceeds size budget " << size_budget;
    throw Error(ErrorCode::SizeBudgetExceeded, os.str());
  }
  const Eigen::Index n = Eigen::Index{1} << m;
  SymmetryTuple out;
  for (std::size_t i = 0; i < m; ++i) {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (Eigen::Index idx = 0; idx < n; ++idx) a(idx, idx) = ((idx >> i) & 1) ? -1.0 : 1.0;
    out.mats.push_back(std::move(a));
  }
  ComplexMatrix h2(2, 2);
  h2 << 1.0, 1.0, 1.0, -1.0;
  ComplexMatrix h = h2;
  for (std::size_t i = 1; i < m; ++i) h = kron(h, h2);
  out.mats.push_back(h / std::sqrt(static_cast<double>(n)));
  std::ostringstream prov;
  prov << "hadamard_symmetries(m=" << m << ")";
  out.provenance = prov.str();
  return out;
}

VertexRep prism_vertex_rep(std::size_t k, std::size_t j, int sign) {
  if (k < 3) throw Error(ErrorCode::IndexOutOfRange, "prism vertex representations need k >= 3");
  if (j >= k || (sign != 1 && sign != -1))
    throw Error(ErrorCode::IndexOutOfRange, "vertex index j must lie in [0, k) and sign in {+1, -1}");
  const auto n = static_cast<Eigen::Index>(k);
  // u e_i = e_{i-1} (cyclically): e_1 -> e_k, e_2 -> e_1, ...
  ComplexMatrix shift = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) shift((i + n - 1) % n, i) = 1.0;
  ComplexMatrix v = identity(n);
  v.topLeftCorner(2, 2) << 0.0, 1.0, 1.0, 0.0;

  VertexRep out;
  out.pair.W = root_of_unity(k, j) * shift;
  out.pair.V = static_cast<double>(sign) * v;
  out.pair.k = k;
  std::ostringstream prov;
  prov << "prism_vertex_rep(k=" << k << ",j=" << j << ",sign=" << (sign > 0 ? "+" : "-") << ")";
  out.pair.provenance = prov.str();
  out.state = ComplexVector::Constant(n, 1.0 / std::sqrt(static_cast<double>(k)));
  return out;
}

RepPair character_pair(std::size_t k, std::size_t j, int sign) {
  if (k == 0 || j >= k || (sign != 1 && sign != -1))
    throw Error(ErrorCode::IndexOutOfRange, "character needs j in [0, k) and sign in {+1, -1}");
  std::ostringstream prov;
  prov << "character(k=" << k << ",j=" << j << ",sign=" << (sign > 0 ? "+" : "-") << ")";
  return {ComplexMatrix::Constant(1, 1, root_of_unity(k, j)),
          ComplexMatrix::Constant(1, 1, static_cast<double>(sign)), k, prov.str(), 1};
}

std::size_t generated_group_order(const std::vector<ComplexMatrix>& generators, std::size_t limit,
                                  double dedup_tol) {
  if (generators.empty()) return 1;
  const Eigen::Index n = generators.front().rows();
  std::vector<ComplexMatrix> elements{identity(n)};
  auto known = [&](const ComplexMatrix& m) {
    return std::any_of(elements.begin(), elements.end(),
                       [&](const ComplexMatrix& e) { return (e - m).norm() <= dedup_tol; });
  };
  for (std::size_t frontier = 0; frontier < elements.size() && elements.size() < limit; ++frontier) {
    for (const auto& g : generators) {
      ComplexMatrix next = elements[frontier] * g;
      if (!known(next)) {
        elements.push_back(std::move(next));
        if (elements.size() >= limit) break;
      }
    }
  }
  return elements.size();
}

RepPair s3_pair(const ToleranceConfig& tol) {
  const double c = std::cos(2.0 * kPi / 3.0), s = std::sin(2.0 * kPi / 3.0);
  RepPair pair;
  pair.W.resize(2, 2);
  pair.W << c, -s, s, c;
  pair.V.resize(2, 2);
  pair.V << 1.0, 0.0, 0.0, -1.0;
  pair.k = 3;
  pair.provenance = "s3_pair";

  validate_rep_pair(pair, tol);
  guard((pair.V * pair.W * pair.V - pair.W * pair.W).norm() <= tol.alg_tol, "S3 relation VUV = U^-1 fails");
  const std::array<ComplexMatrix, 2> gens{pair.W, pair.V};
  pair.commutant_dim = commutant_dimension(gens, tol);
  guard(*pair.commutant_dim == 1, "S3 pair is reducible");
  guard(generated_group_order({pair.W, pair.V}) == 6, "S3 pair does not generate a group of order 6");
  return pair;
}

RepPair a4_pair(const ToleranceConfig& tol) {
  RepPair pair;
  pair.W = ComplexMatrix::Zero(3, 3);
  pair.W(1, 0) = 1.0;  // e1 -> e2 -> e3 -> e1
  pair.W(2, 1) = 1.0;
  pair.W(0, 2) = 1.0;
  pair.V = ComplexMatrix::Zero(3, 3);
  pair.V.diagonal() << 1.0, -1.0, -1.0;
  pair.k = 3;
  pair.provenance = "a4_pair";

  validate_rep_pair(pair, tol);
  const ComplexMatrix& u = pair.W;
  const ComplexMatrix& v = pair.V;
  guard((u * v * u - v * u * u * v).norm() <= tol.alg_tol, "A4 relation UVU = VU^2V fails");
  const std::array<ComplexMatrix, 2> gens{pair.W, pair.V};
  pair.commutant_dim = commutant_dimension(gens, tol);
  guard(*pair.commutant_dim == 1, "A4 pair is reducible");
  guard(generated_group_order({pair.W, pair.V}) == 12, "A4 pair does not generate a group of order 12");
  return pair;
}

ComplexMatrix permutation_matrix(const ProjectivePermutation& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]), i) = 1.0;
  return p;
}

std::pair<ProjectivePermutation, ProjectivePermutation> steinberg_permutations(const GaloisField& field) {
  const ProjectivePermutation u = moebius_permutation(field, 0, -1, 1, -1);
  const ProjectivePermutation v = moebius_permutation(field, 0, -1, 1, 0);
  const std::uint32_t q = field.order();
  const std::uint64_t target = psl2_order(q);
  if (permutation_group_order({u, v}, target + 1) == target) return {u, v};
  // Integer matrices only reach PSL2 of the prime subfield; conjugate V until
  // the pair generates PSL2(F_q).
  for (std::uint32_t c = 0; c < q; ++c)
    for (std::uint32_t b = 0; b < q; ++b) {
      const std::uint32_t det = field.sub(1, field.mul(b, c));
      if (det == 0) continue;
      const ProjectivePermutation g = moebius_permutation(field, {1, b, c, 1});
      const ProjectivePermutation conj = compose(g, compose(v, inverse(g)));
      if (permutation_group_order({u, conj}, target + 1) == target) return {u, conj};
    }
  throw Error(ErrorCode::UnsupportedQ,
              "no conjugate of V generates PSL2(F_" + std::to_string(q) + ") together with U");
}

RepPair steinberg_pair(std::uint32_t q, const FiniteFieldSpec& field_spec, const ToleranceConfig& tol) {
  if (q <= 3 || q == 9) {
    std::ostringstream os;
    os << "q = " << q
       << (q == 9 ? ": PSL2(F_9) has no generating pair of orders 3 and 2" : ": PSL2(F_q) is not simple for q <= 3");
    throw Error(ErrorCode::UnsupportedQ, os.str());
  }
  if (field_spec.order() != q) throw Error(ErrorCode::UnsupportedQ, "field order differs from q");
  const GaloisField field(field_spec);
  const auto [perm_u, perm_v] = steinberg_permutations(field);
  const ComplexMatrix pu = permutation_matrix(perm_u);
  const ComplexMatrix pv = permutation_matrix(perm_v);

  // Orthonormal basis of the complement of the all-ones vector, via the Householder
  // reflection that maps the normalized ones vector to e_1.
  const Eigen::Index m = static_cast<Eigen::Index>(q) + 1;
  Eigen::HouseholderQR<ComplexMatrix> qr(ComplexMatrix::Ones(m, 1));
  const ComplexMatrix full_q = qr.householderQ() * identity(m);
  const ComplexMatrix basis = full_q.rightCols(m - 1);

  RepPair pair;
  pair.W = basis.adjoint() * pu * basis;
  pair.V = basis.adjoint() * pv * basis;
  pair.k = 3;
  std::ostringstream prov;
  prov << "steinberg_pair(q=" << q << ")";
  pair.provenance = prov.str();

  validate_rep_pair(pair, tol);
  const std::array<ComplexMatrix, 2> gens{pair.W, pair.V};
  pair.commutant_dim = commutant_dimension(gens, tol);
  guard(*pair.commutant_dim == 1, "Steinberg pair is reducible for q = " + std::to_string(q));
  return pair;
}

RepPair steinberg_pair(std::uint32_t q, const ToleranceConfig& tol) {
  const auto pe = prime_power(q);
  if (!pe) throw Error(ErrorCode::UnsupportedQ, "q = " + std::to_string(q) + " is not a prime power");
  if (q <= 3 || q == 9) return steinberg_pair(q, FiniteFieldSpec{pe->first, pe->second, {}}, tol);
  return steinberg_pair(q, make_field_spec(pe->first, pe->second), tol);
}

RepPair tensor_pair(const RepPair& p1, const RepPair& p2, const ToleranceConfig& tol) {
  if (p1.k != p2.k) throw Error(ErrorCode::OrderMismatch, "tensor factors have different orders");
  RepPair out;
  out.W = kron(p1.W, p2.W);
  out.V = kron(p1.V, p2.V);
  out.k = p1.k;
  const std::array<ComplexMatrix, 2> gens{out.W, out.V};
  out.commutant_dim = commutant_dimension(gens, tol);
  out.provenance = "tensor(" + p1.provenance + "," + p2.provenance + ")";
  return out;
}

RepPair assemble_dimension(std::size_t n, const ToleranceConfig& tol) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  if (n == 1) {
    RepPair trivial = character_pair(3, 0, 1);
    trivial.provenance = "assemble(1)=" + trivial.provenance;
    return trivial;
  }
  std::vector<RepPair> factors;
  for (const auto& [p, e] : factorize(n)) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= p;
    if (q == 2) {
      factors.push_back(s3_pair(tol));
    } else if (q == 3) {
      factors.push_back(a4_pair(tol));
    } else if (q == 9) {
      throw Error(ErrorCode::AssemblyFailed,
                  "dimension " + std::to_string(n) +
                      " has prime-power factor 9 and PSL2(F_9) has no generating pair of orders 3 and 2");
    } else {
      factors.push_back(steinberg_pair(static_cast<std::uint32_t>(q), tol));
    }
  }
  RepPair out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor_pair(out, factors[i], tol);
  validate_rep_pair(out, tol);
  if (!out.commutant_dim) {
    const std::array<ComplexMatrix, 2> gens{out.W, out.V};
    out.commutant_dim = commutant_dimension(gens, tol);
  }
  out.provenance = "assemble(" + std::to_string(n) + ")=" + out.provenance;
  return out;
}

}  // namespace ncprism
