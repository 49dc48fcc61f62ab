#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>

#include "commands.hpp"
#include "ncprism/convexity.hpp"
#include "ncprism/error.hpp"

namespace ncprism::cli {

namespace {

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int parse_sign(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1" || s == "plus") return 1;
  if (s == "-" || s == "-1" || s == "minus") return -1;
  throw Error(ErrorCode::InvalidArgument, "sign must be + or -, got '" + s + "'");
}

struct Globals {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string in_path;
  bool json = false;
};

Json report_json(const std::string& command, const std::string& digest, const CommandResult& r,
                 const Globals& g) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
  Json artifacts = Json::array();
  if (!g.out_path.empty()) artifacts.push_back(g.out_path);
  return Json{{"command", command},
              {"inputs", digest.empty() ? Json(nullptr) : Json("fnv1a:" + digest)},
              {"checks", std::move(checks)},
              {"artifacts", std::move(artifacts)},
              {"seed", g.seed}};
}

void print_report(std::ostream& os, const std::string& command, const std::string& digest,
                  const CommandResult& r, const Globals& g) {
  os << "command: " << command << "\nseed: " << g.seed << "\n";
  if (!digest.empty()) os << "inputs: fnv1a:" << digest << "\n";
  for (const auto& c : r.checks) {
    char line[64];
    std::snprintf(line, sizeof line, "%.3e", c.residual);
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << "  residual " << line << "\n";
  }
  for (const auto& n : r.notes) os << "  " << n << "\n";
  if (!g.out_path.empty()) os << "wrote " << g.out_path << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dilation, representation and positivity tools for noncommutative polytopes", "ncprism"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Residual tolerance (spec_tol)")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for random sampling");
  app.add_option("--out", g.out_path, "Write the JSON payload to this file");
  app.add_option("--in", g.in_path, "Read JSON input from this file instead of stdin");
  app.add_flag("--json", g.json, "Embed the verification report in the JSON output");

  std::function<CommandResult(const Json&, const Context&)> action;
  std::string command;
  bool needs_input = false;
  auto bind = [&](CLI::App* sub, std::string name, bool input, auto fn) {
    sub->callback([&, name = std::move(name), input, fn] {
      command = name;
      needs_input = input;
      action = fn;
    });
  };

  // dilate
  auto* dilate = app.add_subcommand("dilate", "Dilate matrices read as JSON")->require_subcommand(1);
  bool unitary = false;
  std::size_t dil_k = 3;
  auto* halmos = dilate->add_subcommand("halmos", "Halmos symmetry or unitary dilation of one matrix");
  halmos->add_flag("--unitary", unitary, "Force the unitary dilation");
  bind(halmos, "dilate halmos", true, [&](const Json& j, const Context& c) { return dilate_halmos(j, unitary, c); });
  auto* mirman = dilate->add_subcommand("mirman", "Normal dilation with spectrum in the k-th roots of unity");
  mirman->add_option("--k", dil_k, "Polygon order")->required();
  bind(mirman, "dilate mirman", true, [&](const Json& j, const Context& c) { return dilate_mirman(j, dil_k, c); });
  auto* joint = dilate->add_subcommand("joint", "Joint dilation of (a, b) to W^k = V^2 = 1");
  joint->add_option("--k", dil_k, "Polygon order")->required();
  bind(joint, "dilate joint", true, [&](const Json& j, const Context& c) { return dilate_joint(j, dil_k, c); });
  auto* dcube = dilate->add_subcommand("cube", "Symmetry dilation of a tuple of Hermitian contractions");
  bind(dcube, "dilate cube", true, [&](const Json& j, const Context& c) { return dilate_cube(j, c); });

  // rep
  auto* rep = app.add_subcommand("rep", "Build a representation")->require_subcommand(1);
  double lambda = 0.0;
  std::size_t m = 1, vk = 3, vj = 0, n = 1;
  std::uint32_t q = 5;
  std::string sign = "+";
  auto* square = rep->add_subcommand("square", "Irreducible pair of symmetries");
  square->add_option("--lambda", lambda, "Angle parameter in (-1, 1)")->required();
  bind(square, "rep square", false, [&](const Json&, const Context& c) { return rep_square(lambda, c); });
  auto* hadamard = rep->add_subcommand("hadamard", "m + 1 symmetries in dimension 2^m");
  hadamard->add_option("--m", m, "Number of sign matrices")->required();
  bind(hadamard, "rep hadamard", false, [&](const Json&, const Context& c) { return rep_hadamard(m, c); });
  auto* vertex = rep->add_subcommand("vertex", "Representation attaining a prism vertex");
  vertex->add_option("--k", vk, "Polygon order")->required();
  vertex->add_option("--j", vj, "Root index")->required();
  vertex->add_option("--sign", sign, "+ or -")->required();
  bind(vertex, "rep vertex", false,
       [&](const Json&, const Context& c) { return rep_vertex(vk, vj, parse_sign(sign), c); });
  auto* s3 = rep->add_subcommand("s3", "Standard representation of S3");
  bind(s3, "rep s3", false, [](const Json&, const Context& c) { return rep_s3(c); });
  auto* a4 = rep->add_subcommand("a4", "Rotation representation of A4");
  bind(a4, "rep a4", false, [](const Json&, const Context& c) { return rep_a4(c); });
  auto* steinberg = rep->add_subcommand("steinberg", "Steinberg representation of PSL2(F_q)");
  steinberg->add_option("--q", q, "Field order")->required();
  bind(steinberg, "rep steinberg", false, [&](const Json&, const Context& c) { return rep_steinberg(q, c); });
  auto* assemble = rep->add_subcommand("assemble", "Irreducible pair in a given dimension");
  assemble->add_option("--n", n, "Dimension")->required();
  bind(assemble, "rep assemble", false, [&](const Json&, const Context& c) { return rep_assemble(n, c); });

  // check
  auto* chk = app.add_subcommand("check", "Membership in a matrix-convex polytope");
  std::string polytope_name;
  std::size_t ck = 3, cd = 2;
  chk->add_option("--polytope", polytope_name, "Polytope name, cube:d or prism:k");
  auto* ccube = chk->add_subcommand("cube", "Membership in the max cube of dimension d");
  ccube->add_option("--d", cd, "Cube dimension")->required();
  bind(ccube, "check cube", true, [&](const Json& j, const Context& c) { return check_cube(j, cd, c); });
  auto* cprism = chk->add_subcommand("prism", "Membership in the max prism over the k-gon");
  cprism->add_option("--k", ck, "Polygon order")->required();
  bind(cprism, "check prism", true, [&](const Json& j, const Context& c) { return check_prism(j, ck, c); });
  chk->callback([&] {
    if (action) return;
    if (polytope_name.empty()) throw CLI::RequiredError("check needs a subcommand or --polytope");
    command = "check";
    needs_input = true;
    action = [&](const Json& j, const Context& c) {
      const PolytopeSpec p = parse_polytope(polytope_name);
      const std::size_t param = std::stoul(polytope_name.substr(polytope_name.find(':') + 1));
      return p.name.rfind("cube", 0) == 0 ? check_cube(j, param, c) : check_prism(j, param, c);
    };
  });

  // commutant
  auto* comm = app.add_subcommand("commutant", "Commutant of a tuple or representation pair");
  bind(comm, "commutant", true, [](const Json& j, const Context& c) { return commutant_cmd(j, c); });

  // positivity
  auto* pos = app.add_subcommand("positivity", "Positivity of prism and cube elements")->require_subcommand(1);
  std::size_t pk = 3;
  PositivityFlags pflags;
  auto* pscalar = pos->add_subcommand("scalar", "Level-one prism element");
  pscalar->add_option("--k", pk, "Polygon order")->required();
  bind(pscalar, "positivity scalar", true, [&](const Json& j, const Context& c) { return positivity_scalar(j, pk, c); });
  auto* pmatrix = pos->add_subcommand("matrix", "Matrix-level prism element");
  pmatrix->add_option("--k", pk, "Polygon order")->required();
  pmatrix->add_option("--samples", pflags.samples, "Random pairs tried during refutation");
  pmatrix->add_option("--max-iter", pflags.max_iter, "Certification sweeps");
  pmatrix->add_option("--epsilon", pflags.epsilon, "Required positivity margin of a lift")->check(CLI::PositiveNumber);
  pmatrix->add_option("--size-budget", pflags.size_budget, "Largest factory pair tried");
  bind(pmatrix, "positivity matrix", true,
       [&](const Json& j, const Context& c) { return positivity_matrix(j, pk, pflags, c); });
  auto* pcube = pos->add_subcommand("cube", "alpha + sum beta_j u_j in the cube system");
  bind(pcube, "positivity cube", true, [](const Json& j, const Context& c) { return positivity_cube(j, c); });

  // geometry
  auto* geo = app.add_subcommand("geometry", "Incircle radius, circumnorm and scaling bounds");
  std::size_t gk = 3;
  geo->add_option("--k", gk, "Polygon order")->required();
  bind(geo, "geometry", false, [&](const Json&, const Context& c) { return geometry(gk, c); });

  // verify
  auto* verify = app.add_subcommand("verify", "Invariant suites")->require_subcommand(1);
  long budget = 16;
  auto* vall = verify->add_subcommand("all", "Run the full invariant suite");
  vall->add_option("--size-budget", budget, "Largest matrix size used");
  bind(vall, "verify all", false, [&](const Json&, const Context& c) { return verify_all(budget, c); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitTrue : kExitError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    Context ctx;
    ctx.seed = g.seed;
    ctx.tol.spec_tol = g.tol;
    ctx.tol.alg_tol = std::min(ctx.tol.alg_tol, g.tol);
    ctx.tol.psd_clamp = std::min(ctx.tol.psd_clamp, ctx.tol.alg_tol);
    ctx.tol.validate();

    Json input;
    std::string digest;
    if (needs_input) {
      std::string text;
      if (g.in_path.empty()) {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      } else {
        std::ifstream file(g.in_path, std::ios::binary);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot read " + g.in_path);
        text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
      }
      digest = fnv1a(text);
      input = parse_json(text);
    }

    CommandResult result = action(input, ctx);
    Json payload = std::move(result.payload);
    if (g.json) payload["report"] = report_json(command, digest, result, g);
    const std::string text = payload.dump(2) + "\n";
    if (g.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(g.out_path, std::ios::binary);
      if (!file || !(file << text)) throw Error(ErrorCode::InvalidArgument, "cannot write " + g.out_path);
    }
    if (!g.json) print_report(err, command, digest, result, g);
    return result.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace ncprism::cli
