#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ncprism/ncprism.hpp"

namespace ncprism::cli {

namespace {

Check check(std::string name, double residual, double bound) {
  return {std::move(name), residual <= bound, residual};
}

Check flag(std::string name, bool pass) { return {std::move(name), pass, 0.0}; }

ComplexMatrix single_matrix(const Json& in) {
  if (in.is_object() && in.contains("matrix")) return matrix_from_json(in.at("matrix"));
  if (in.is_object() && in.contains("tuple")) {
    const auto mats = tuple_from_json(in);
    if (mats.size() != 1) throw Error(ErrorCode::ParseError, "expected exactly one matrix");
    return mats.front();
  }
  return matrix_from_json(in);
}

std::pair<ComplexMatrix, ComplexMatrix> matrix_pair(const Json& in, const char* first, const char* second) {
  if (in.is_object() && in.contains(first) && in.contains(second))
    return {matrix_from_json(in.at(first)), matrix_from_json(in.at(second))};
  const auto mats = tuple_from_json(in);
  if (mats.size() != 2) throw Error(ErrorCode::ParseError, std::string("expected {\"") + first + "\", \"" + second + "\"} or a 2-tuple");
  return {mats[0], mats[1]};
}

void add_pair_checks(CommandResult& r, const RepPair& p, const Context& ctx) {
  r.checks.push_back(check("W^k = 1", order_residual(p.W, p.k), ctx.tol.spec_tol * static_cast<double>(p.k)));
  r.checks.push_back(check("W unitary", unitarity_residual(p.W), ctx.tol.spec_tol));
  r.checks.push_back(check("V^2 = 1", order_residual(p.V, 2), ctx.tol.spec_tol * 2.0));
  r.checks.push_back(check("V unitary", unitarity_residual(p.V), ctx.tol.spec_tol));
}

CommandResult pair_result(RepPair p, const Context& ctx) {
  CommandResult r;
  if (!p.commutant_dim) {
    const std::vector<ComplexMatrix> gens{p.W, p.V};
    p.commutant_dim = commutant_dimension(gens, ctx.tol);
  }
  add_pair_checks(r, p, ctx);
  r.notes.push_back("commutant dimension " + std::to_string(*p.commutant_dim));
  r.payload = rep_pair_to_json(p);
  return r;
}

int verdict_exit(const std::vector<Check>& checks, bool verdict) {
  for (const auto& c : checks)
    if (!c.pass) return kExitFalse;
  return verdict ? kExitTrue : kExitFalse;
}

PrismElement read_element(const Json& in, std::size_t k) {
  Json copy = in;
  if (copy.is_object() && copy.contains("element")) copy = copy.at("element");
  if (copy.is_object() && !copy.contains("k")) copy["k"] = k;
  PrismElement e = element_from_json(copy);
  if (e.k != k)
    throw Error(ErrorCode::OrderMismatch,
                "element has k = " + std::to_string(e.k) + " but --k is " + std::to_string(k));
  return e;
}

}  // namespace

CommandResult dilate_halmos(const Json& in, bool unitary, const Context& ctx) {
  const ComplexMatrix x = single_matrix(in);
  const Eigen::Index n = x.rows();
  const bool use_unitary = unitary || !is_hermitian(x, ctx.tol.alg_tol);
  DilationResult d;
  d.isometry = block_inclusion(n, 2 * n);
  CommandResult r;
  if (use_unitary) {
    const ComplexMatrix u = halmos_unitary(x, ctx.tol);
    d.operators = {u};
    d.labels = {"unitary"};
    r.checks.push_back(check("U*U = 1", unitarity_residual(u), ctx.tol.spec_tol));
  } else {
    const ComplexMatrix s = halmos_symmetry(x, ctx.tol);
    d.operators = {s};
    d.labels = {"symmetry"};
    r.checks.push_back(check("S = S*", hermitian_defect(s), ctx.tol.alg_tol));
    r.checks.push_back(check("S^2 = 1", op_norm(s * s - identity(2 * n)), ctx.tol.spec_tol));
  }
  r.checks.push_back(check("corner = input", op_norm(d.operators[0].topLeftCorner(n, n) - x), ctx.tol.alg_tol));
  r.payload = dilation_to_json(d);
  r.exit_code = verdict_exit(r.checks, true);
  return r;
}

CommandResult dilate_mirman(const Json& in, std::size_t k, const Context& ctx) {
  const ComplexMatrix a = single_matrix(in);
  const Povm povm = order_k_povm(a, k, ctx.tol);
  DilationResult d = naimark_normal(povm, ctx.tol);
  d.labels = {"normal"};
  const ComplexMatrix& n = d.operators.at(0);
  const PovmResidual pr = povm_residual(povm, a);
  CommandResult r;
  r.checks.push_back(check("POVM complete", pr.completeness, ctx.tol.spec_tol));
  r.checks.push_back(check("POVM positive", pr.negativity, ctx.tol.spec_tol));
  r.checks.push_back(check("POVM moment", pr.moment, ctx.tol.spec_tol));
  r.checks.push_back(check("Z*Z = 1", op_norm(d.isometry.adjoint() * d.isometry - identity(a.rows())), ctx.tol.spec_tol));
  r.checks.push_back(check("N normal", op_norm(n * n.adjoint() - n.adjoint() * n), ctx.tol.spec_tol));
  r.checks.push_back(check("Z*NZ = a", op_norm(compress(n, d.isometry, ctx.tol) - a), ctx.tol.spec_tol));
  r.payload = dilation_to_json(d);
  r.payload["povm"] = povm_to_json(povm);
  r.exit_code = verdict_exit(r.checks, true);
  return r;
}

CommandResult dilate_joint(const Json& in, std::size_t k, const Context& ctx) {
  const auto [a, b] = matrix_pair(in, "a", "b");
  const JointDilation jd = joint_prism_dilation(a, b, k, ctx.tol);
  DilationResult d;
  d.isometry = jd.isometry;
  d.operators = {jd.pair.W, jd.pair.V};
  d.labels = {"W", "V"};
  CommandResult r;
  add_pair_checks(r, jd.pair, ctx);
  r.checks.push_back(check("G*WG = a", op_norm(compress(jd.pair.W, jd.isometry, ctx.tol) - a), ctx.tol.spec_tol));
  r.checks.push_back(check("G*VG = b", op_norm(compress(jd.pair.V, jd.isometry, ctx.tol) - b), ctx.tol.spec_tol));
  r.payload = dilation_to_json(d);
  r.payload["k"] = k;
  r.exit_code = verdict_exit(r.checks, true);
  return r;
}

CommandResult dilate_cube(const Json& in, const Context& ctx) {
  const auto tuple = tuple_from_json(in);
  const DilationResult d = cube_dilation(tuple, ctx.tol);
  CommandResult r;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const ComplexMatrix& s = d.operators[i];
    const std::string idx = std::to_string(i + 1);
    r.checks.push_back(check("S" + idx + "^2 = 1", op_norm(s * s - identity(s.rows())), ctx.tol.spec_tol));
    r.checks.push_back(check("Z*S" + idx + "Z = a" + idx, op_norm(compress(s, d.isometry, ctx.tol) - tuple[i]), ctx.tol.alg_tol));
  }
  r.payload = dilation_to_json(d);
  r.exit_code = verdict_exit(r.checks, true);
  return r;
}

CommandResult rep_square(double lambda, const Context& ctx) {
  const SymmetryTuple t = square_irrep(lambda);
  RepPair p{t.mats[0], t.mats[1], 2, t.provenance, std::nullopt};
  return pair_result(std::move(p), ctx);
}

CommandResult rep_hadamard(std::size_t m, const Context& ctx) {
  const SymmetryTuple t = hadamard_symmetries(m);
  CommandResult r;
  for (std::size_t i = 0; i < t.mats.size(); ++i) {
    const ComplexMatrix& a = t.mats[i];
    r.checks.push_back(check("A" + std::to_string(i) + " symmetry",
                             std::max(hermitian_defect(a), op_norm(a * a - identity(a.rows()))), 1e-12));
  }
  const std::size_t dim = commutant_dimension(t.mats, ctx.tol);
  r.checks.push_back(flag("commutant dimension 1", dim == 1));
  r.payload = symmetry_tuple_to_json(t);
  r.payload["commutant_dim"] = dim;
  r.exit_code = verdict_exit(r.checks, true);
  return r;
}

CommandResult rep_vertex(std::size_t k, std::size_t j, int sign, const Context& ctx) {
  const VertexRep vr = prism_vertex_rep(k, j, sign);
  CommandResult r = pair_result(vr.pair, ctx);
  const Complex w = vr.state.dot(vr.pair.W * vr.state);
  const Complex v = vr.state.dot(vr.pair.V * vr.state);
  const double angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(k);
  r.checks.push_back(check("<W xi, xi> = omega^j", std::abs(w - Complex(std::cos(angle), std::sin(angle))), ctx.tol.spec_tol));
  r.checks.push_back(check("<V xi, xi> = sign", std::abs(v - static_cast<double>(sign)), ctx.tol.spec_tol));
  r.payload["state"] = matrix_to_json(ComplexMatrix(vr.state));
  r.exit_code = verdict_exit(r.checks, true);
  return r;
}

CommandResult rep_s3(const Context& ctx) { return pair_result(s3_pair(ctx.tol), ctx); }
CommandResult rep_a4(const Context& ctx) { return pair_result(a4_pair(ctx.tol), ctx); }
CommandResult rep_steinberg(std::uint32_t q, const Context& ctx) { return pair_result(steinberg_pair(q, ctx.tol), ctx); }
CommandResult rep_assemble(std::size_t n, const Context& ctx) { return pair_result(assemble_dimension(n, ctx.tol), ctx); }

CommandResult check_cube(const Json& in, std::size_t d, const Context& ctx) {
  const LevelPoint point = make_level_point(tuple_from_json(in), ctx.tol);
  const MembershipReport m = max_member(point, make_cube(d), ctx.tol);
  CommandResult r;
  r.payload = membership_to_json(m);
  r.checks.push_back({"worst facet support <= offset", m.member, -m.margin});
  r.exit_code = m.member ? kExitTrue : kExitFalse;
  return r;
}

CommandResult check_prism(const Json& in, std::size_t k, const Context& ctx) {
  MembershipReport m;
  const bool has_ab = in.is_object() && in.contains("a") && in.contains("b");
  const std::vector<ComplexMatrix> tuple = has_ab ? std::vector<ComplexMatrix>{} : tuple_from_json(in);
  if (has_ab || tuple.size() == 2) {
    const auto [a, b] = matrix_pair(in, "a", "b");
    m = prism_member(a, b, k, ctx.tol);
  } else {
    m = max_member(make_level_point(tuple, ctx.tol), make_prism(k), ctx.tol);
  }
  CommandResult r;
  r.payload = membership_to_json(m);
  r.checks.push_back({"worst facet support <= offset", m.member, -m.margin});
  r.exit_code = m.member ? kExitTrue : kExitFalse;
  return r;
}

CommandResult commutant_cmd(const Json& in, const Context& ctx) {
  std::vector<ComplexMatrix> mats;
  if (in.is_object() && in.contains("W") && in.contains("V")) {
    const RepPair p = rep_pair_from_json(in);
    mats = {p.W, p.V};
  } else {
    mats = tuple_from_json(in);
  }
  const Commutant c = commutant(mats, ctx.tol);
  double worst = 0.0;
  for (const auto& x : c.basis)
    for (const auto& a : mats) worst = std::max(worst, op_norm(x * a - a * x));
  CommandResult r;
  r.checks.push_back(check("basis commutes", worst, ctx.tol.spec_tol));
  r.payload = Json{{"dimension", c.dimension}, {"irreducible", c.dimension == 1}};
  Json basis = Json::array();
  for (const auto& x : c.basis) basis.push_back(matrix_to_json(x));
  r.payload["basis"] = std::move(basis);
  r.notes.push_back("commutant dimension " + std::to_string(c.dimension));
  r.exit_code = verdict_exit(r.checks, true);
  return r;
}

CommandResult positivity_scalar(const Json& in, std::size_t k, const Context&) {
  const PrismElement e = read_element(in, k);
  const ScalarPositivity s = scalar_positivity_prism(e);
  CommandResult r;
  r.payload = Json{{"positive", s.positive},
                   {"margin", s.margin},
                   {"vertex", {{"j", s.vertex_j}, {"sign", s.vertex_sign}}}};
  r.checks.push_back({"vertex minimum >= 0", s.positive, s.margin < 0.0 ? -s.margin : 0.0});
  r.exit_code = s.positive ? kExitTrue : kExitFalse;
  return r;
}

CommandResult positivity_matrix(const Json& in, std::size_t k, const PositivityFlags& flags, const Context& ctx) {
  const PrismElement e = read_element(in, k);
  PositivityOptions options;
  options.samples = flags.samples;
  options.max_iter = flags.max_iter;
  options.epsilon = flags.epsilon;
  options.seed = ctx.seed;
  options.size_budget = flags.size_budget;
  const PositivityVerdict v = matrix_positivity_prism(e, options, ctx.tol);
  CommandResult r;
  r.payload = verdict_to_json(v);
  r.notes.push_back("verdict " + to_string(v.kind) + " after " + std::to_string(v.pairs_tested) + " pairs");
  switch (v.kind) {
    case VerdictKind::Certified:
      r.checks.push_back(check("||psi(lift) - e||", v.certificate->residual, ctx.tol.spec_tol));
      r.checks.push_back(flag("certificate re-verifies", verify_certificate(e, *v.certificate, options.epsilon, ctx.tol)));
      r.exit_code = verdict_exit(r.checks, true);
      break;
    case VerdictKind::Refuted:
      r.checks.push_back(flag("witness re-verifies", verify_witness(e, *v.witness, ctx.tol)));
      r.exit_code = kExitFalse;
      break;
    case VerdictKind::Unknown:
      r.exit_code = kExitUnknown;
      break;
  }
  return r;
}

CommandResult positivity_cube(const Json& in, const Context&) {
  if (!in.is_object() || !in.contains("alpha") || !in.contains("beta") || !in.at("alpha").is_number() ||
      !in.at("beta").is_array())
    throw Error(ErrorCode::ParseError, "expected {\"alpha\": number, \"beta\": [numbers]}");
  std::vector<double> beta;
  for (const auto& b : in.at("beta")) {
    if (!b.is_number()) throw Error(ErrorCode::ParseError, "beta entries must be numbers");
    beta.push_back(b.get<double>());
  }
  const CubePositivity c = scalar_positivity_cube(in.at("alpha").get<double>(), beta);
  CommandResult r;
  r.payload = Json{{"positive", c.positive}, {"margin", c.margin}};
  r.checks.push_back({"alpha >= sum |beta|", c.positive, c.margin < 0.0 ? -c.margin : 0.0});
  r.exit_code = c.positive ? kExitTrue : kExitFalse;
  return r;
}

CommandResult geometry(std::size_t k, const Context&) {
  const double r_k = incircle_radius(k);
  const double facet = min_polygon_facet_distance(k);
  const double circ = circumnorm(k);
  const double theta = theta_lower_bound(k);
  CommandResult r;
  r.payload = Json{{"k", k},
                   {"incircle_radius", r_k},
                   {"min_facet_distance", facet},
                   {"circumnorm", circ},
                   {"theta_lower_bound", theta}};
  Json cube = Json::array();
  for (std::size_t d = 2; d <= 4; ++d) cube.push_back(Json{{"d", d}, {"scaling_constant", cube_scaling_constant(d)}});
  r.payload["cube"] = std::move(cube);
  r.checks.push_back(check("r_k = min facet distance", std::abs(r_k - facet), 1e-12));
  r.checks.push_back(check("circumnorm = sqrt 2", std::abs(circ - std::sqrt(2.0)), 1e-12));
  std::ostringstream row;
  row.precision(16);
  row << "k = " << k << "   r_k = " << r_k << "   circumnorm = " << circ << "   theta_k >= " << theta;
  r.notes.push_back(row.str());
  r.exit_code = verdict_exit(r.checks, true);
  return r;
}

CommandResult verify_all(long size_budget, const Context& ctx) {
  if (size_budget < 2) throw Error(ErrorCode::InvalidArgument, "size budget must be at least 2");
  const auto budget = static_cast<Eigen::Index>(size_budget);
  const double tol = ctx.tol.spec_tol;
  CommandResult r;
  RandomSource rng(ctx.seed);
  auto record = [&](const std::string& name, double residual, double bound) {
    r.checks.push_back(check(name, residual, bound));
  };

  double halmos = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index n = 1 + i % std::min<Eigen::Index>(8, budget / 2);
    const ComplexMatrix s = halmos_symmetry(rng.hermitian_with_norm(n, rng.uniform(0.0, 1.0)), ctx.tol);
    halmos = std::max(halmos, op_norm(s * s - identity(2 * n)));
  }
  record("halmos symmetries square to 1", halmos, tol);

  double mirman = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index n = 1 + i % std::min<Eigen::Index>(4, budget / 3);
    const ComplexMatrix a = rng.polygon_compression(3, 3 * n, n);
    const DilationResult d = naimark_normal(triangle_povm(a, ctx.tol), ctx.tol);
    mirman = std::max(mirman, op_norm(compress(d.operators[0], d.isometry, ctx.tol) - a));
  }
  record("Mirman dilations compress back", mirman, tol);

  double joint = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index n = 1 + i % std::max<Eigen::Index>(1, std::min<Eigen::Index>(4, budget / 6));
    const ComplexMatrix a = rng.polygon_point(3, n, rng.uniform(0.5, 1.0));
    const ComplexMatrix b = rng.hermitian_with_norm(n, rng.uniform(0.0, 1.0));
    const JointDilation jd = joint_prism_dilation(a, b, 3, ctx.tol);
    joint = std::max({joint, order_residual(jd.pair.W, 3), order_residual(jd.pair.V, 2),
                      op_norm(compress(jd.pair.W, jd.isometry, ctx.tol) - a),
                      op_norm(compress(jd.pair.V, jd.isometry, ctx.tol) - b)});
  }
  record("joint prism dilations", joint, tol);

  double lambda_err = 0.0;
  for (double l : {0.0, 0.5, -0.9}) {
    const SymmetryTuple t = square_irrep(l);
    const ComplexMatrix u = rng.unitary(2);
    const CanonicalForm f = two_symmetry_canonical_form(hermitian_part(u * t.mats[0] * u.adjoint()),
                                                        hermitian_part(u * t.mats[1] * u.adjoint()), ctx.tol);
    lambda_err = std::max(lambda_err, f.lambdas.size() == 1 ? std::abs(f.lambdas[0] - l) : 1.0);
  }
  record("canonical form recovers lambda", lambda_err, tol);

  bool irreducible = true;
  for (std::size_t m = 1; (std::size_t{1} << m) <= static_cast<std::size_t>(budget) && m <= 4; ++m)
    irreducible = irreducible && commutant_dimension(hadamard_symmetries(m).mats, ctx.tol) == 1;
  for (std::size_t n = 1; n <= 8 && static_cast<Eigen::Index>(n) <= budget; ++n)
    irreducible = irreducible && assemble_dimension(n, ctx.tol).commutant_dim == std::size_t{1};
  r.checks.push_back(flag("factory outputs irreducible", irreducible));

  double vertex = 0.0;
  for (std::size_t k : {3u, 4u, 5u})
    if (static_cast<Eigen::Index>(k) <= budget)
      for (const auto& row : vertex_state_check(k)) vertex = std::max(vertex, row.error);
  record("vertex states attain P(k)", vertex, 1e-10);

  double geom = 0.0;
  for (std::size_t k = 3; k <= 16; ++k) geom = std::max(geom, std::abs(incircle_radius(k) - min_polygon_facet_distance(k)));
  record("incircle radius = facet distance", geom, 1e-12);

  bool dual = true;
  const RepPair s3 = s3_pair(ctx.tol);
  for (int i = 0; i < 10; ++i) dual = dual && dual_member(functional_to_tuple(s3, rng.density(2), 3, ctx.tol), 1e-10);
  r.checks.push_back(flag("states give dual tuples", dual));

  bool consistent = true;
  PositivityOptions options;
  options.seed = ctx.seed;
  options.samples = 8;
  options.size_budget = budget;
  for (double c : {-1.0, 0.0, 0.25})
    for (double g : {-0.5, 0.5}) {
      PrismElement e = PrismElement::unit(3, 1);
      e.c[1] = e.c[2] = ComplexMatrix::Constant(1, 1, c);
      e.g = ComplexMatrix::Constant(1, 1, g);
      const double margin = scalar_positivity_prism(e).margin;
      const PositivityVerdict v = matrix_positivity_prism(e, options, ctx.tol);
      if (v.kind == VerdictKind::Certified) consistent = consistent && margin >= 0.0 && verify_certificate(e, *v.certificate, options.epsilon, ctx.tol);
      if (v.kind == VerdictKind::Refuted) consistent = consistent && margin < options.epsilon && verify_witness(e, *v.witness, ctx.tol);
    }
  r.checks.push_back(flag("positivity verdicts consistent", consistent));

  double monotone = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index n = 2 + i % std::max<Eigen::Index>(1, std::min<Eigen::Index>(4, budget - 1));
    const ComplexMatrix a = rng.polygon_point(3, n, rng.uniform(0.5, 1.0));
    const ComplexMatrix b = rng.hermitian_with_norm(n, rng.uniform(0.0, 1.0));
    const ComplexMatrix z = rng.isometry(n, 1);
    monotone = std::max(monotone, -prism_member(compress(a, z, ctx.tol), compress(b, z, ctx.tol), 3, ctx.tol).margin);
  }
  record("compressions stay in P(3)^max", std::max(0.0, monotone), tol);

  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
  r.payload = Json{{"size_budget", size_budget}, {"checks", std::move(checks)}};
  r.exit_code = verdict_exit(r.checks, true);
  return r;
}

}  // namespace ncprism::cli
