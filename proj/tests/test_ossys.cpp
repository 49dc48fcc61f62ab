#include <doctest.h>

#include <cmath>
#include <vector>

#include "ncprism/json_io.hpp"
#include "ncprism/ossys.hpp"
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

// 1 + c (w + w*) + g v for k = 3
PrismElement scalar_element(double c0, double c, double g) {
  PrismElement e = PrismElement::zero(3, 1);
  e.c[0] = scalar(c0);
  e.c[1] = scalar(c);
  e.c[2] = scalar(c);
  e.g = scalar(g);
  return e;
}

}  // namespace

TEST_CASE("psi_k examples") {
  for (std::size_t k : {3u, 4u, 7u}) {
    const PrismElement unit = psi_k(DiagTuple::scalars(k, std::vector<double>(k + 2, 1.0)));
    CHECK(unit.distance(PrismElement::unit(k, 1)) <= 1e-12);

    std::vector<double> kernel(k + 2, 1.0);
    kernel[k] = kernel[k + 1] = -1.0;
    CHECK(psi_k(DiagTuple::scalars(k, kernel)).distance(PrismElement::zero(k, 1)) <= 1e-12);

    std::vector<double> spike(k + 2, 0.0);
    spike[0] = static_cast<double>(k);
    const PrismElement e = psi_k(DiagTuple::scalars(k, spike));
    for (const auto& c : e.c) CHECK(std::abs(c(0, 0) - 0.5) <= 1e-12);
    CHECK(std::abs(e.g(0, 0)) <= 1e-15);
  }
  DiagTuple bad = DiagTuple::scalars(3, {1, 1, 1, 1, 1});
  bad.blocks.pop_back();
  CHECK(code_of([&] { psi_k(bad); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("psi_k agrees with spectral evaluation") {
  // Oracle: at a character (omega^j, s), q_i evaluates to [i == j] and
  // (1 +- v)/2 to [s == +-1], so psi(x) evaluates to (x_j + x_{k or k+1})/2.
  RandomSource rng(3);
  for (std::size_t k : {3u, 5u}) {
    std::vector<double> x(k + 2);
    for (auto& v : x) v = rng.uniform(-1, 1);
    const PrismElement e = psi_k(DiagTuple::scalars(k, x));
    for (std::size_t j = 0; j < k; ++j)
      for (int s : {1, -1}) {
        const Complex value = evaluate(e, character_pair(k, j, s))(0, 0);
        const double expected = 0.5 * (x[j] + (s == 1 ? x[k] : x[k + 1]));
        CHECK(std::abs(value - expected) <= 1e-12);
      }
  }
}

TEST_CASE("dual_member examples") {
  CHECK(dual_member(DualTuple{3, {1.0, 1.0, 1.0, 1.0, 2.0}}));
  CHECK_FALSE(dual_member(DualTuple{3, {1.0, 1.0, 1.0, 1.0, 1.0}}));
  CHECK(dual_member(DualTuple{3, std::vector<Complex>(5, 0.0)}));
}

TEST_CASE("functional_to_tuple examples") {
  const VertexRep vr = prism_vertex_rep(3, 0, 1);
  const ComplexMatrix rho = vr.state * vr.state.adjoint();
  const DualTuple z = functional_to_tuple(vr.pair, rho, 3);
  const std::vector<double> expected{0.5, 0.0, 0.0, 0.5, 0.0};
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(z.z[i] - expected[i]) <= 1e-12);

  const DualTuple t = functional_to_tuple(character_pair(3, 0, 1), scalar(1.0), 3);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(t.z[i] - expected[i]) <= 1e-12);

  const DualTuple mixed = functional_to_tuple(vr.pair, identity(3) / 3.0, 3);
  CHECK(dual_member(mixed));
  for (auto v : mixed.z) {
    CHECK(v.real() >= -1e-10);
    CHECK(std::abs(v.imag()) <= 1e-12);
  }

  CHECK(code_of([&] { functional_to_tuple(vr.pair, identity(3), 3); }) == ErrorCode::InvalidDensity);
  CHECK(code_of([&] { functional_to_tuple(vr.pair, diag({1.5, -0.5, 0.0}), 3); }) == ErrorCode::InvalidDensity);
  CHECK(code_of([&] { functional_to_tuple(vr.pair, identity(2) / 2.0, 3); }) == ErrorCode::InvalidDensity);
}

TEST_CASE("pairing of positive tuples with nonnegative dual tuples") {
  RandomSource rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> z(5);
    std::vector<double> x(5);
    for (std::size_t i = 0; i < 5; ++i) {
      z[i] = rng.uniform(0.0, 1.0);
      x[i] = rng.uniform(0.0, 1.0);
    }
    Complex pairing = 0.0;
    for (std::size_t i = 0; i < 5; ++i) pairing += z[i] * x[i];
    CHECK(pairing.real() >= 0.0);
  }
}

TEST_CASE("scalar_positivity_prism examples") {
  const ScalarPositivity u = scalar_positivity_prism(PrismElement::unit(3, 1));
  CHECK(u.positive);
  CHECK(std::abs(u.margin - 1.0) < 1e-15);

  const ScalarPositivity v = scalar_positivity_prism(scalar_element(1.0, 0.0, 1.0));
  CHECK(v.positive);
  CHECK(std::abs(v.margin) < 1e-15);
  CHECK(v.vertex_sign == -1);

  const ScalarPositivity w = scalar_positivity_prism(scalar_element(1.0, 1.0, 1.0));
  CHECK_FALSE(w.positive);
  CHECK(std::abs(w.margin + 1.0) < 1e-12);

  PrismElement not_sa = PrismElement::unit(3, 1);
  not_sa.c[1] = scalar(1.0);
  CHECK(code_of([&] { scalar_positivity_prism(not_sa); }) == ErrorCode::NotSelfadjoint);
  CHECK(code_of([] { scalar_positivity_prism(PrismElement::unit(3, 2)); }) == ErrorCode::WrongLevel);
}

TEST_CASE("scalar_positivity_cube examples") {
  CubePositivity a = scalar_positivity_cube(1.0, {1.0, 0.0});
  CHECK(a.positive);
  CHECK(std::abs(a.margin) < 1e-15);
  CHECK(scalar_positivity_cube(2.0, {1.0, 1.0}).positive);
  CubePositivity c = scalar_positivity_cube(1.9, {1.0, 1.0});
  CHECK_FALSE(c.positive);
  CHECK(std::abs(c.margin + 0.1) < 1e-12);
}

TEST_CASE("matrix_positivity_prism examples") {
  {
    const PositivityVerdict v = matrix_positivity_prism(PrismElement::unit(3, 1));
    REQUIRE(v.kind == VerdictKind::Certified);
    for (const auto& b : v.certificate->lift.blocks) CHECK(std::abs(b(0, 0) - 1.0) < 1e-8);
    CHECK(verify_certificate(PrismElement::unit(3, 1), *v.certificate, 1e-6));
  }
  {
    const PrismElement e = scalar_element(1.0, 1.0, 1.0);
    const PositivityVerdict v = matrix_positivity_prism(e);
    REQUIRE(v.kind == VerdictKind::Refuted);
    CHECK(verify_witness(e, *v.witness));
  }
  {
    PrismElement e = PrismElement::unit(3, 2);
    e.c[0] *= 1.5;
    ComplexMatrix p(2, 2);
    p << 0.1, 0.05 * kI, 0.02, -0.1;
    e.c[1] = p;
    e.c[2] = p.adjoint();
    const PositivityVerdict v = matrix_positivity_prism(e);
    REQUIRE(v.kind == VerdictKind::Certified);
    CHECK(psi_k(v.certificate->lift).distance(e) <= 1e-8);
    CHECK(v.certificate->lift.min_block_eigenvalue() >= 1e-6);
    CHECK(verify_certificate(e, *v.certificate, 1e-6));
  }
  PrismElement not_sa = PrismElement::unit(3, 1);
  not_sa.g = scalar(kI);
  CHECK(code_of([&] { matrix_positivity_prism(not_sa); }) == ErrorCode::NotSelfadjoint);
}

TEST_CASE("level-two elements with a negative direction are refuted") {
  // e = 0.1 + h (x) v with ||h|| = 1 has eigenvalue -0.9 at the character v = sign
  RandomSource rng(30);
  for (int trial = 0; trial < 5; ++trial) {
    PrismElement e = PrismElement::zero(3, 2);
    e.c[0] = 0.1 * identity(2);
    e.g = rng.hermitian_with_norm(2, 1.0);
    const PositivityVerdict v = matrix_positivity_prism(e);
    REQUIRE(v.kind == VerdictKind::Refuted);
    CHECK(verify_witness(e, *v.witness));
    CHECK(v.witness->min_eigenvalue <= -0.9 + 1e-10);
  }
}

TEST_CASE("certificates survive a JSON round trip") {
  PrismElement e = PrismElement::unit(4, 2);
  e.c[0] *= 2.0;
  e.g = 0.3 * diag({1.0, -1.0});
  const PositivityVerdict v = matrix_positivity_prism(e);
  REQUIRE(v.kind == VerdictKind::Certified);
  const PositivityVerdict back = verdict_from_json(parse_json(verdict_to_json(v).dump()));
  REQUIRE(back.certificate.has_value());
  CHECK(verify_certificate(element_from_json(element_to_json(e)), *back.certificate, 1e-6));
}

TEST_CASE("tampered payloads fail verification") {
  const PrismElement e = scalar_element(1.0, 1.0, 1.0);
  const PositivityVerdict v = matrix_positivity_prism(e);
  REQUIRE(v.witness.has_value());
  RefutationWitness bad = *v.witness;
  bad.pair.W *= 1.01;
  CHECK_FALSE(verify_witness(e, bad));
  CHECK_FALSE(verify_witness(PrismElement::unit(3, 1), *v.witness));

  const PositivityVerdict u = matrix_positivity_prism(PrismElement::unit(3, 1));
  REQUIRE(u.certificate.has_value());
  PositivityCertificate cert = *u.certificate;
  cert.lift.blocks[0](0, 0) += 0.1;
  CHECK_FALSE(verify_certificate(PrismElement::unit(3, 1), cert, 1e-6));
}
