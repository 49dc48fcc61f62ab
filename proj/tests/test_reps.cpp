#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ncprism/finite_field.hpp"
#include "ncprism/random.hpp"
#include "ncprism/reps.hpp"
#include "test_support.hpp"

using namespace ncprism;
using namespace ncprism::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ncprism::Error");
  return ErrorCode::InvalidArgument;
}

bool is_symmetry(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, tol) && op_norm(m * m - identity(m.rows())) <= tol;
}

// Random unitary conjugate of a block-diagonal symmetry pair assembled from
// square blocks and characters.
std::pair<ComplexMatrix, ComplexMatrix> scrambled_pair(RandomSource& rng, const std::vector<double>& lambdas,
                                                       const std::vector<std::pair<int, int>>& chars) {
  std::vector<ComplexMatrix> u1, u2;
  for (double l : lambdas) {
    const SymmetryTuple t = square_irrep(l);
    u1.push_back(t.mats[0]);
    u2.push_back(t.mats[1]);
  }
  for (auto [s1, s2] : chars) {
    u1.push_back(scalar(static_cast<double>(s1)));
    u2.push_back(scalar(static_cast<double>(s2)));
  }
  const ComplexMatrix a = direct_sum(u1);
  const ComplexMatrix b = direct_sum(u2);
  const ComplexMatrix u = rng.unitary(a.rows());
  return {hermitian_part(u * a * u.adjoint()), hermitian_part(u * b * u.adjoint())};
}

}  // namespace

TEST_CASE("square_irrep examples") {
  const SymmetryTuple t0 = square_irrep(0.0);
  CHECK(max_abs(t0.mats[0] - diag({-1.0, 1.0})) == 0.0);
  ComplexMatrix flip(2, 2);
  flip << 0.0, 1.0, 1.0, 0.0;
  CHECK(max_abs(t0.mats[1] - flip) < 1e-15);

  const SymmetryTuple t6 = square_irrep(0.6);
  ComplexMatrix expected(2, 2);
  expected << 0.6, 0.8, 0.8, -0.6;
  CHECK(max_abs(t6.mats[1] - expected) < 1e-15);
  CHECK(code_of([] { square_irrep(1.0); }) == ErrorCode::LambdaOutOfRange);
  CHECK(code_of([] { square_irrep(-1.0); }) == ErrorCode::LambdaOutOfRange);

  for (double l : {0.0, 0.5, -0.5, 0.9, -0.9, 0.99}) {
    const SymmetryTuple t = square_irrep(l);
    CHECK(is_symmetry(t.mats[0], 1e-12));
    CHECK(is_symmetry(t.mats[1], 1e-12));
    CHECK(commutant_dimension(t.mats) == 1);
    CHECK(oracle_commutant_dim(t.mats) == 1);
  }
}

TEST_CASE("universal_square_pair") {
  const SymmetryTuple one = universal_square_pair({1.0});
  CHECK(max_abs(one.mats[1] - diag({1.0, -1.0})) < 1e-15);
  const SymmetryTuple two = universal_square_pair({1.0, 0.0});
  CHECK(two.mats[0].rows() == 4);
  for (const auto& m : two.mats) CHECK(is_symmetry(m, 1e-10));

  std::vector<double> grid{1.0};
  for (int i = 1; i < 32; ++i) grid.push_back(-0.95 + 1.9 * (i - 1) / 30.0);
  const SymmetryTuple big = universal_square_pair(grid);
  CHECK(big.mats[0].rows() == 64);
  for (const auto& m : big.mats) CHECK(is_symmetry(m, 1e-10));

  CHECK(code_of([] { universal_square_pair({0.5}); }) == ErrorCode::LambdaOutOfRange);
  CHECK(code_of([] { universal_square_pair({1.0, -1.0}); }) == ErrorCode::LambdaOutOfRange);
}

TEST_CASE("two_symmetry_canonical_form examples") {
  {
    const CanonicalForm f = two_symmetry_canonical_form(diag({1.0, -1.0}), diag({1.0, -1.0}));
    CHECK(f.lambdas.empty());
    CHECK(f.char_counts[static_cast<std::size_t>(Character::PlusPlus)] == 1);
    CHECK(f.char_counts[static_cast<std::size_t>(Character::MinusMinus)] == 1);
    CHECK(f.char_counts[static_cast<std::size_t>(Character::PlusMinus)] == 0);
    CHECK(f.reconstruction_error <= 1e-8);
  }
  RandomSource rng(12);
  {
    auto [v1, v2] = scrambled_pair(rng, {0.6}, {});
    const CanonicalForm f = two_symmetry_canonical_form(v1, v2);
    REQUIRE(f.lambdas.size() == 1);
    CHECK(std::abs(f.lambdas[0] - 0.6) <= 1e-8);
  }
  {
    const SymmetryTuple a = square_irrep(0.0);
    const SymmetryTuple b = square_irrep(0.5);
    const CanonicalForm f = two_symmetry_canonical_form(direct_sum(a.mats[0], b.mats[0]),
                                                        direct_sum(a.mats[1], b.mats[1]));
    REQUIRE(f.lambdas.size() == 2);
    std::vector<double> got = f.lambdas;
    std::sort(got.begin(), got.end());
    CHECK(std::abs(got[0]) <= 1e-8);
    CHECK(std::abs(got[1] - 0.5) <= 1e-8);
  }
  CHECK(code_of([] { two_symmetry_canonical_form(diag({1.0, 0.5}), diag({1.0, 1.0})); }) ==
        ErrorCode::NotSymmetry);
}

TEST_CASE("canonical form round trip on random pairs") {
  RandomSource rng(99);
  for (double l : {0.0, 0.3, -0.3, 0.9, -0.9}) {
    auto [v1, v2] = scrambled_pair(rng, {l}, {});
    const CanonicalForm f = two_symmetry_canonical_form(v1, v2);
    REQUIRE(f.lambdas.size() == 1);
    CHECK(std::abs(f.lambdas[0] - l) <= 1e-8);
  }
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> lambdas;
    const int blocks = 1 + trial % 5;
    for (int b = 0; b < blocks; ++b) lambdas.push_back(rng.uniform(-0.95, 0.95));
    std::vector<std::pair<int, int>> chars;
    for (int c = 0; c < trial % 6; ++c) chars.push_back({c % 2 ? 1 : -1, (c / 2) % 2 ? 1 : -1});
    auto [v1, v2] = scrambled_pair(rng, lambdas, chars);
    REQUIRE(v1.rows() <= 16);
    const CanonicalForm f = two_symmetry_canonical_form(v1, v2);
    CHECK(f.reconstruction_error <= 1e-8);
    CHECK(f.lambdas.size() == lambdas.size());
    std::size_t total = 2 * f.lambdas.size();
    for (auto c : f.char_counts) total += c;
    CHECK(total == static_cast<std::size_t>(v1.rows()));
    std::vector<double> want = lambdas, got = f.lambdas;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < std::min(want.size(), got.size()); ++i) CHECK(std::abs(want[i] - got[i]) <= 1e-8);

    auto [c1, c2] = canonical_pair(f);
    CHECK(op_norm(f.conjugator * c1 * f.conjugator.adjoint() - v1) <= 1e-8);
    CHECK(op_norm(f.conjugator * c2 * f.conjugator.adjoint() - v2) <= 1e-8);
  }
}

TEST_CASE("hadamard_symmetries") {
  {
    const SymmetryTuple t = hadamard_symmetries(1);
    CHECK(max_abs(t.mats[0] - diag({1.0, -1.0})) == 0.0);
    ComplexMatrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    CHECK(max_abs(t.mats[1] - h / std::sqrt(2.0)) < 1e-15);
  }
  {
    const SymmetryTuple t = hadamard_symmetries(2);
    CHECK(max_abs(t.mats[0] - diag({1.0, -1.0, 1.0, -1.0})) == 0.0);
    CHECK(max_abs(t.mats[1] - diag({1.0, 1.0, -1.0, -1.0})) == 0.0);
  }
  for (std::size_t m = 1; m <= 4; ++m) {
    const SymmetryTuple t = hadamard_symmetries(m);
    REQUIRE(t.mats.size() == m + 1);
    for (const auto& a : t.mats) CHECK(is_symmetry(a, 1e-12));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) CHECK(t.mats[i] * t.mats[j] == t.mats[j] * t.mats[i]);
    CHECK(commutant_dimension(t.mats) == 1);
  }
  CHECK(code_of([] { hadamard_symmetries(5, 16); }) == ErrorCode::SizeBudgetExceeded);
}

TEST_CASE("prism_vertex_rep") {
  for (std::size_t k : {3u, 5u, 8u}) {
    for (std::size_t j = 0; j < k; ++j)
      for (int sign : {1, -1}) {
        const VertexRep vr = prism_vertex_rep(k, j, sign);
        CHECK(check_order(vr.pair.W, k));
        CHECK(check_order(vr.pair.V, 2));
        const Complex wv = vr.state.dot(vr.pair.W * vr.state);
        const Complex vv = vr.state.dot(vr.pair.V * vr.state);
        CHECK(std::abs(wv - omega(k, static_cast<long long>(j))) <= 1e-10);
        CHECK(std::abs(vv - static_cast<double>(sign)) <= 1e-10);
      }
  }
  const VertexRep vr = prism_vertex_rep(3, 0, 1);
  // u e_1 = e_k and u e_{i+1} = e_i
  CHECK(std::abs(vr.pair.W(2, 0) - 1.0) < 1e-15);
  CHECK(std::abs(vr.pair.W(0, 1) - 1.0) < 1e-15);
  CHECK(code_of([] { prism_vertex_rep(3, 3, 1); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { prism_vertex_rep(3, 0, 2); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("s3 and a4 pairs") {
  const RepPair s3 = s3_pair();
  CHECK(s3.dim() == 2);
  CHECK(op_norm(s3.V * s3.W * s3.V - s3.W * s3.W) <= 1e-10);
  CHECK(oracle_commutant_dim({s3.W, s3.V}) == 1);
  CHECK(generated_group_order({s3.W, s3.V}) == 6);

  const RepPair a4 = a4_pair();
  CHECK(a4.dim() == 3);
  const ComplexMatrix u2 = a4.W * a4.W;
  CHECK(op_norm(a4.W * a4.V * a4.W - a4.V * u2 * a4.V) <= 1e-10);
  CHECK(oracle_commutant_dim({a4.W, a4.V}) == 1);
  CHECK(generated_group_order({a4.W, a4.V}) == 12);
  CHECK(check_order(a4.W, 3));
  CHECK(check_order(a4.V, 2));
}

TEST_CASE("finite fields") {
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(9));
  CHECK(prime_power(8) == std::optional<std::pair<std::uint32_t, std::uint32_t>>({2, 3}));
  CHECK_FALSE(prime_power(12));
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}, {2, 4}}) {
    const FiniteFieldSpec spec = make_field_spec(p, e);
    CHECK(is_irreducible(spec.modulus, p));
    const GaloisField f(spec);
    const std::uint32_t q = f.order();
    // oracle: F_q^* is a group, so every nonzero element has an inverse and
    // satisfies x^(q-1) = 1
    for (std::uint32_t x = 1; x < q; ++x) {
      CHECK(f.mul(x, f.inv(x)) == 1);
      std::uint32_t power = 1;
      for (std::uint32_t i = 0; i + 1 < q; ++i) power = f.mul(power, x);
      CHECK(power == 1);
    }
    for (std::uint32_t x = 0; x < q; ++x) CHECK(f.add(x, f.neg(x)) == 0);
  }
  CHECK_FALSE(is_irreducible({1, 0, 1}, 2));  // t^2 + 1 = (t + 1)^2
  CHECK(code_of([] { make_field_spec(4, 1); }) == ErrorCode::NoIrreduciblePolynomial);
}

TEST_CASE("steinberg pairs") {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 11u, 13u}) {
    CAPTURE(q);
    const RepPair p = steinberg_pair(q);
    CHECK(p.dim() == static_cast<Eigen::Index>(q));
    CHECK(check_order(p.W, 3));
    CHECK(check_order(p.V, 2));
    CHECK(commutant_dimension(std::vector<ComplexMatrix>{p.W, p.V}) == 1);

    const auto [pe, _] = *prime_power(q);
    const GaloisField field(make_field_spec(pe, prime_power(q)->second));
    const auto [pu, pv] = steinberg_permutations(field);
    const ComplexMatrix mu = permutation_matrix(pu);
    const ComplexMatrix mv = permutation_matrix(pv);
    for (Eigen::Index i = 0; i <= static_cast<Eigen::Index>(q); ++i) {
      CHECK(std::abs(mu.row(i).sum() - 1.0) == 0.0);
      CHECK(std::abs(mu.col(i).sum() - 1.0) == 0.0);
      CHECK(std::abs(mv.row(i).sum() - 1.0) == 0.0);
    }
    // oracle: U^3 = V^2 = 1 on points and the generated group is PSL2(F_q)
    std::vector<std::size_t> gu(pu.begin(), pu.end()), gv(pv.begin(), pv.end());
    for (std::size_t x = 0; x <= q; ++x) {
      CHECK(gu[gu[gu[x]]] == x);
      CHECK(gv[gv[x]] == x);
    }
    const std::uint64_t psl = static_cast<std::uint64_t>(q) * (q * q - 1ULL) / gcd(2, q - 1);
    CHECK(permutation_group_order({gu, gv}) == psl);
  }
  for (std::uint32_t q : {2u, 3u, 9u})
    CHECK(code_of([q] { steinberg_pair(q); }) == ErrorCode::UnsupportedQ);
  CHECK(code_of([] { steinberg_pair(6); }) == ErrorCode::UnsupportedQ);
}

TEST_CASE("tensor_pair and assemble_dimension") {
  const RepPair t = tensor_pair(s3_pair(), a4_pair());
  CHECK(t.dim() == 6);
  CHECK(check_order(t.W, 3));
  CHECK(check_order(t.V, 2));
  REQUIRE(t.commutant_dim.has_value());
  CHECK(*t.commutant_dim == 1);

  const RepPair trivial = character_pair(3, 0, 1);
  const RepPair same = tensor_pair(s3_pair(), trivial);
  CHECK(max_abs(same.W - s3_pair().W) < 1e-15);
  CHECK(code_of([] { tensor_pair(s3_pair(), character_pair(4, 0, 1)); }) == ErrorCode::OrderMismatch);

  const RepPair one = assemble_dimension(1);
  CHECK(max_abs(one.W - scalar(1.0)) == 0.0);
  CHECK(max_abs(one.V - scalar(1.0)) == 0.0);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 10u}) {
    CAPTURE(n);
    const RepPair p = assemble_dimension(n);
    CHECK(p.dim() == static_cast<Eigen::Index>(n));
    CHECK(check_order(p.W, 3));
    CHECK(check_order(p.V, 2));
    REQUIRE(p.commutant_dim.has_value());
    CHECK(*p.commutant_dim == oracle_commutant_dim({p.W, p.V}));
  }
  CHECK(code_of([] { assemble_dimension(9); }) == ErrorCode::AssemblyFailed);
  CHECK(code_of([] { assemble_dimension(18); }) == ErrorCode::AssemblyFailed);
}
