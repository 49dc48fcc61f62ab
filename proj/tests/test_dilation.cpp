#include <doctest.h>

#include <cmath>
#include <vector>

#include "ncprism/convexity.hpp"
#include "ncprism/dilation.hpp"
#include "ncprism/random.hpp"
#include "ncprism/reps.hpp"
#include "test_support.hpp"

using namespace ncprism;
using namespace ncprism::testing;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ncprism::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("halmos_symmetry examples") {
  CHECK(max_abs(halmos_symmetry(scalar(0.0)) - mat2(0, 1, 1, 0)) < 1e-15);
  CHECK(max_abs(halmos_symmetry(scalar(1.0)) - mat2(1, 0, 0, -1)) < 1e-15);
  const double r = std::sqrt(0.75);
  CHECK(max_abs(halmos_symmetry(scalar(0.5)) - mat2(0.5, r, r, -0.5)) < 1e-15);
  CHECK(code_of([] { halmos_symmetry(scalar(1.1)); }) == ErrorCode::NormExceedsOne);
  CHECK(code_of([] { halmos_symmetry(mat2(0, 1, 0, 0)); }) == ErrorCode::NotHermitian);
}

TEST_CASE("halmos_symmetry on random contractions") {
  RandomSource rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + trial % 8);
    const ComplexMatrix b = rng.hermitian_with_norm(n, rng.uniform(0.0, 1.0));
    const ComplexMatrix s = halmos_symmetry(b);
    CHECK(s == s.adjoint());
    CHECK(op_norm(s * s - identity(2 * n)) <= 1e-8);
    CHECK(s.topLeftCorner(n, n) == b);
  }
}

TEST_CASE("halmos_unitary examples") {
  CHECK(max_abs(halmos_unitary(scalar(0.0)) - mat2(0, 1, 1, 0)) < 1e-15);
  const ComplexMatrix ui = halmos_unitary(scalar(kI));
  CHECK(max_abs(ui - mat2(kI, 0, 0, kI)) < 1e-15);
  const ComplexMatrix x = mat2(0, 0.8, 0, 0);
  const ComplexMatrix u = halmos_unitary(x);
  CHECK(u.rows() == 4);
  CHECK(op_norm(u.adjoint() * u - identity(4)) <= 1e-8);
  CHECK(u.topLeftCorner(2, 2) == x);
  CHECK(code_of([] { halmos_unitary(scalar(1.5)); }) == ErrorCode::NormExceedsOne);

  RandomSource rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix g = rng.gaussian(3, 3);
    const ComplexMatrix c = g * (rng.uniform(0.1, 1.0) / op_norm(g));
    const ComplexMatrix w = halmos_unitary(c);
    CHECK(unitarity_residual(w) <= 1e-8);
    CHECK(w.topLeftCorner(3, 3) == c);
  }
}

TEST_CASE("triangle_povm examples") {
  const Complex w = omega(3);
  {
    const Povm p = triangle_povm(scalar(0.0));
    for (const auto& h : p.effects) CHECK(std::abs(h(0, 0) - 1.0 / 3.0) < 1e-14);
  }
  {
    const Povm p = triangle_povm(scalar(1.0));
    CHECK(std::abs(p.effects[0](0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(p.effects[1](0, 0)) < 1e-14);
    CHECK(std::abs(p.effects[2](0, 0)) < 1e-14);
  }
  {
    const Povm p = triangle_povm(scalar((1.0 + w) / 2.0));
    CHECK(std::abs(p.effects[0](0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(p.effects[1](0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(p.effects[2](0, 0)) < 1e-14);
    CHECK(std::abs(p.outcome_labels[1] - w) < 1e-15);
  }
  CHECK(code_of([] { triangle_povm(scalar(1.2)); }) == ErrorCode::NumericalRangeOutsideTriangle);
}

TEST_CASE("naimark_normal examples") {
  const Complex w = omega(3);
  {
    const Povm p = triangle_povm(scalar(0.0));
    const DilationResult d = naimark_normal(p);
    CHECK(d.isometry.rows() == 3);
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(std::abs(d.isometry(i, 0) - 1.0 / std::sqrt(3.0)) < 1e-12);
    CHECK(max_abs(d.operators[0] - diag({1.0, w, w * w})) < 1e-15);
    CHECK(std::abs(compress(d.operators[0], d.isometry)(0, 0)) < 1e-12);
  }
  {
    const DilationResult d = naimark_normal(triangle_povm(scalar(1.0)));
    CHECK(std::abs(d.isometry(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(compress(d.operators[0], d.isometry)(0, 0) - 1.0) < 1e-12);
  }
  {
    const ComplexMatrix a = diag({1.0, w});
    const DilationResult d = naimark_normal(triangle_povm(a));
    CHECK(d.operators[0].rows() == 6);
    CHECK(op_norm(compress(d.operators[0], d.isometry) - a) <= 1e-8);
  }
  Povm bad;
  bad.effects = {scalar(0.5), scalar(0.2)};
  bad.outcome_labels = {1.0, -1.0};
  CHECK(code_of([&] { naimark_normal(bad); }) == ErrorCode::InvalidPovm);
}

TEST_CASE("order_k_povm examples") {
  {
    const Povm p = order_k_povm(scalar(kI), 4);
    const PovmResidual r = povm_residual(p, scalar(kI));
    CHECK(r.completeness <= 1e-8);
    CHECK(r.negativity <= 1e-8);
    CHECK(r.moment <= 1e-8);
    CHECK(std::abs(p.effects[1](0, 0) - 1.0) < 1e-6);
  }
  {
    const Povm p = order_k_povm(scalar(0.0), 4);
    const PovmResidual r = povm_residual(p, scalar(0.0));
    CHECK(r.completeness <= 1e-8);
    CHECK(r.negativity <= 1e-8);
    CHECK(r.moment <= 1e-8);
  }
  CHECK(code_of([] { order_k_povm(scalar(1.5), 4, {}, 2000); }) == ErrorCode::Infeasible);
  CHECK(code_of([] { order_k_povm(ComplexMatrix::Zero(2, 3), 4); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("order_k_povm reaches interior polygon compressions") {
  // 0.9 * Z* N Z has the strictly positive POVM 0.9 Z* P_j Z + 0.1/k
  RandomSource rng(17);
  for (std::size_t k : {4u, 5u, 6u, 8u}) {
    for (int trial = 0; trial < 3; ++trial) {
      const ComplexMatrix a = 0.9 * rng.polygon_compression(k, 8, 3);
      const Povm p = order_k_povm(a, k);
      const PovmResidual r = povm_residual(p, a);
      CHECK(r.completeness <= 1e-8);
      CHECK(r.negativity <= 1e-8);
      CHECK(r.moment <= 1e-8);
    }
  }
}

TEST_CASE("Mirman round trip") {
  RandomSource rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = rng.polygon_compression(3, 12, 4);
    const DilationResult d = naimark_normal(triangle_povm(a));
    const ComplexMatrix& n = d.operators[0];
    CHECK(is_normal(n, 1e-8));
    for (Eigen::Index i = 0; i < n.rows(); ++i) {
      double best = 1.0;
      for (long long j = 0; j < 3; ++j) best = std::min(best, std::abs(n(i, i) - omega(3, j)));
      CHECK(best <= 1e-8);
    }
    CHECK(op_norm(compress(n, d.isometry) - a) <= 1e-8);
  }
}

TEST_CASE("joint_prism_dilation examples") {
  const Complex w = omega(3);
  {
    const JointDilation jd = joint_prism_dilation(scalar(0.0), scalar(0.0), 3);
    CHECK(jd.pair.W.rows() == 6);
    const ComplexMatrix expected_w = direct_sum(diag({1.0, w, w * w}), identity(3));
    CHECK(max_abs(jd.pair.W - expected_w) < 1e-12);
    ComplexMatrix expected_v = ComplexMatrix::Zero(6, 6);
    expected_v.topRightCorner(3, 3) = identity(3);
    expected_v.bottomLeftCorner(3, 3) = identity(3);
    CHECK(max_abs(jd.pair.V - expected_v) < 1e-12);
    CHECK(max_abs(compress(jd.pair.W, jd.isometry)) < 1e-12);
    CHECK(max_abs(compress(jd.pair.V, jd.isometry)) < 1e-12);
  }
  {
    const JointDilation jd = joint_prism_dilation(scalar(1.0), scalar(1.0), 3);
    CHECK(check_order(jd.pair.W, 3));
    CHECK(check_order(jd.pair.V, 2));
    CHECK(std::abs(compress(jd.pair.W, jd.isometry)(0, 0) - 1.0) < 1e-8);
    CHECK(std::abs(compress(jd.pair.V, jd.isometry)(0, 0) - 1.0) < 1e-8);
  }
  {
    const VertexRep vr = prism_vertex_rep(3, 0, 1);
    const ComplexMatrix a = vr.pair.W;
    const ComplexMatrix b = diag({1.0, -1.0, 1.0});
    const JointDilation jd = joint_prism_dilation(a, b, 3);
    CHECK(jd.pair.W.rows() == 18);
    CHECK(op_norm(compress(jd.pair.W, jd.isometry) - a) <= 1e-8);
    CHECK(op_norm(compress(jd.pair.V, jd.isometry) - b) <= 1e-8);
  }
}

TEST_CASE("joint_prism_dilation at higher order") {
  RandomSource rng(71);
  for (std::size_t k : {4u, 5u, 7u}) {
    const ComplexMatrix a = rng.polygon_compression(k, 6, 2);
    const ComplexMatrix b = rng.hermitian_with_norm(2, 0.9);
    const JointDilation jd = joint_prism_dilation(a, b, k);
    CHECK(check_order(jd.pair.W, k));
    CHECK(check_order(jd.pair.V, 2));
    CHECK(op_norm(compress(jd.pair.W, jd.isometry) - a) <= 1e-8);
    CHECK(op_norm(compress(jd.pair.V, jd.isometry) - b) <= 1e-8);
  }
}

TEST_CASE("cube_dilation examples") {
  {
    const DilationResult d = cube_dilation({scalar(0.5)});
    const double r = std::sqrt(0.75);
    CHECK(max_abs(d.operators[0] - mat2(0.5, r, r, -0.5)) < 1e-15);
  }
  {
    const DilationResult d = cube_dilation({scalar(0.0), scalar(0.0)});
    CHECK(d.operators.size() == 2);
    for (const auto& s : d.operators) CHECK(max_abs(s - mat2(0, 1, 1, 0)) < 1e-15);
  }
  RandomSource rng(9);
  std::vector<ComplexMatrix> tuple;
  for (int i = 0; i < 3; ++i) tuple.push_back(rng.hermitian_with_norm(4, rng.uniform(0.2, 1.0)));
  const DilationResult d = cube_dilation(tuple);
  REQUIRE(d.operators.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(d.operators[i].rows() == 8);
    CHECK(op_norm(compress(d.operators[i], d.isometry) - tuple[i]) <= 1e-8);
  }
  CHECK(code_of([] { cube_dilation({scalar(2.0)}); }) == ErrorCode::NormExceedsOne);
}

TEST_CASE("group words") {
  const VertexRep vr = prism_vertex_rep(3, 0, 1);
  CHECK(evaluate_word(vr.pair, GroupWord::parse("", 3)) == identity(3));
  CHECK(max_abs(evaluate_word(vr.pair, GroupWord::parse("vv", 3)) - identity(3)) < 1e-15);
  CHECK(max_abs(evaluate_word(vr.pair, GroupWord::parse("wv", 3)) - vr.pair.W * vr.pair.V) < 1e-15);
  CHECK(max_abs(evaluate_word(vr.pair, GroupWord::parse("w*w", 3)) - identity(3)) < 1e-12);
  CHECK(GroupWord::parse("w*vw", 3).to_string() == "w*vw");
  CHECK(code_of([] { GroupWord::parse("wx", 3); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { evaluate_word(vr.pair, GroupWord::parse("w", 4)); }) == ErrorCode::OrderMismatch);

  const JointDilation jd = joint_prism_dilation(scalar(0.25), scalar(-0.5), 3);
  CHECK(std::abs(evaluate_compressed_word(jd.pair, jd.isometry, GroupWord::parse("w", 3))(0, 0) - 0.25) < 1e-8);
  CHECK(std::abs(evaluate_compressed_word(jd.pair, jd.isometry, GroupWord::parse("v", 3))(0, 0) + 0.5) < 1e-8);
}
