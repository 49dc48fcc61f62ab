#include "ncprism/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ncprism/reps.hpp"

namespace ncprism {

PolytopeSpec make_prism(std::size_t k) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "prism needs k >= 3");
  PolytopeSpec p;
  p.name = "prism:" + std::to_string(k);
  p.ambient_dim = 3;
  std::vector<std::array<double, 2>> polygon(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(k);
    polygon[j] = {std::cos(angle), std::sin(angle)};
  }
  for (int sign : {1, -1})
    for (const auto& v : polygon) p.vertices.push_back({v[0], v[1], static_cast<double>(sign)});
  for (std::size_t j = 0; j < k; ++j) {
    const auto& a = polygon[j];
    const auto& b = polygon[(j + 1) % k];
    const double ex = b[0] - a[0], ey = b[1] - a[1];
    const double len = std::hypot(ex, ey);
    const double nx = ey / len, ny = -ex / len;  // outward for counter-clockwise order
    p.facets.push_back({{nx, ny, 0.0}, nx * a[0] + ny * a[1]});
  }
  p.facets.push_back({{0.0, 0.0, 1.0}, 1.0});
  p.facets.push_back({{0.0, 0.0, -1.0}, 1.0});
  return p;
}

PolytopeSpec make_cube(std::size_t d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "cube needs d >= 1");
  if (d > 20) throw Error(ErrorCode::SizeBudgetExceeded, "cube vertex list limited to d <= 20");
  PolytopeSpec p;
  p.name = "cube:" + std::to_string(d);
  p.ambient_dim = d;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = ((mask >> i) & 1) ? -1.0 : 1.0;
    p.vertices.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> n(d, 0.0);
      n[i] = s;
      p.facets.push_back({std::move(n), 1.0});
    }
  }
  return p;
}

PolytopeSpec parse_polytope(const std::string& name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "polytope must be cube:d or prism:k");
  const std::string kind = name.substr(0, colon);
  std::size_t value = 0;
  try {
    value = static_cast<std::size_t>(std::stoul(name.substr(colon + 1)));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad polytope parameter in '" + name + "'");
  }
  if (kind == "cube") return make_cube(value);
  if (kind == "prism") return make_prism(value);
  throw Error(ErrorCode::ParseError, "unknown polytope kind '" + kind + "'");
}

LevelPoint make_level_point(std::vector<ComplexMatrix> mats, const ToleranceConfig& tol) {
  if (mats.empty()) throw Error(ErrorCode::ShapeMismatch, "level point needs at least one matrix");
  const Eigen::Index n = mats.front().rows();
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n)
      throw Error(ErrorCode::ShapeMismatch, "level point matrices must be square of equal size");
    require_hermitian(m, tol.alg_tol, "level point entry");
  }
  return LevelPoint{std::move(mats)};
}

MembershipReport max_member(const LevelPoint& point, const PolytopeSpec& polytope,
                            const ToleranceConfig& tol) {
  if (point.mats.size() != polytope.ambient_dim) {
    std::ostringstream os;
    os << "tuple length " << point.mats.size() << " differs from ambient dimension "
       << polytope.ambient_dim;
    throw Error(ErrorCode::ShapeMismatch, os.str());
  }
  MembershipReport report;
  report.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < polytope.facets.size(); ++i) {
    const Facet& f = polytope.facets[i];
    FacetReport r;
    r.index = i;
    r.facet = f;
    r.support = support_value(point.mats, f.normal, tol);
    r.slack = f.offset - r.support;
    if (r.slack < report.margin) {
      report.margin = r.slack;
      report.worst = r;
    }
    report.facets.push_back(std::move(r));
  }
  report.member = report.margin >= -tol.spec_tol;
  return report;
}

MembershipReport prism_member(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t k,
                              const ToleranceConfig& tol) {
  require_square(a, "a");
  require_finite(a, "a");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::ShapeMismatch, "a and b must have equal size");
  const LevelPoint point = make_level_point({real_part(a), imag_part(a), b}, tol);
  return max_member(point, make_prism(k), tol);
}

std::vector<VertexAttainment> vertex_state_check(std::size_t k) {
  std::vector<VertexAttainment> out;
  for (int sign : {1, -1}) {
    for (std::size_t j = 0; j < k; ++j) {
      const VertexRep rep = prism_vertex_rep(k, j, sign);
      const Complex w = rep.state.dot(rep.pair.W * rep.state);  // <W xi, xi>
      const Complex v = rep.state.dot(rep.pair.V * rep.state);
      const double angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(k);
      VertexAttainment va;
      va.j = j;
      va.sign = sign;
      va.attained = {w.real(), w.imag(), v.real()};
      va.vertex = {std::cos(angle), std::sin(angle), static_cast<double>(sign)};
      double err2 = std::norm(v.imag());
      for (std::size_t i = 0; i < 3; ++i) err2 += std::pow(va.attained[i] - va.vertex[i], 2);
      va.error = std::sqrt(err2);
      out.push_back(va);
    }
  }
  return out;
}

double min_polygon_facet_distance(std::size_t k) {
  const PolytopeSpec p = make_prism(k);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) best = std::min(best, p.facets[i].offset);
  return best;
}

double incircle_radius(std::size_t k) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "incircle needs k >= 3");
  const double r = std::cos(kPi / static_cast<double>(k));
  const double facet = min_polygon_facet_distance(k);
  if (std::abs(r - facet) > 1e-12) {
    std::ostringstream os;
    os << "cos(pi/k) = " << r << " disagrees with facet distance " << facet;
    throw Error(ErrorCode::RelationCheckFailed, os.str());
  }
  return r;
}

double circumnorm(std::size_t k) {
  const PolytopeSpec p = make_prism(k);
  double best = 0.0;
  for (const auto& v : p.vertices) best = std::max(best, std::hypot(v[0], v[1], v[2]));
  return best;
}

double theta_lower_bound(std::size_t k) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "theta bound needs k >= 3");
  return 3.0 / std::sqrt(2.0) * std::cos(kPi / static_cast<double>(k));
}

double cube_scaling_constant(std::size_t d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "cube scaling constant needs d >= 2");
  return std::sqrt(static_cast<double>(d));
}

}  // namespace ncprism
