#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "ncprism/matkernel.hpp"

namespace ncprism {

/// Half-space {x : <normal, x> <= offset} with a unit normal.
struct Facet {
  std::vector<double> normal;
  double offset = 0.0;
};

struct PolytopeSpec {
  std::string name;
  std::size_t ambient_dim = 0;
  std::vector<std::vector<double>> vertices;
  std::vector<Facet> facets;
};

/// Conv C_k x [-1, 1]: 2k vertices, k polygon sides and two caps. The side
/// half-planes are computed from consecutive vertices.
PolytopeSpec make_prism(std::size_t k);
/// [-1, 1]^d.
PolytopeSpec make_cube(std::size_t d);
/// "prism:k" or "cube:d".
PolytopeSpec parse_polytope(const std::string& name);

/// A Hermitian d-tuple at level n.
struct LevelPoint {
  std::vector<ComplexMatrix> mats;

  Eigen::Index level() const noexcept { return mats.empty() ? 0 : mats.front().rows(); }
};

/// Validates that the matrices are Hermitian and of equal size.
LevelPoint make_level_point(std::vector<ComplexMatrix> mats, const ToleranceConfig& tol = {});

struct FacetReport {
  std::size_t index = 0;
  Facet facet;
  double support = 0.0;
  double slack = 0.0;  // offset - support; negative means violated
};

struct MembershipReport {
  bool member = false;
  FacetReport worst;  // facet with the smallest slack
  double margin = 0.0;
  std::vector<FacetReport> facets;
};

/// Membership of a level point in K^max: every facet support value must be
/// at most offset + spec_tol.
MembershipReport max_member(const LevelPoint& point, const PolytopeSpec& polytope,
                            const ToleranceConfig& tol = {});

/// max_member of (Re a, Im a, b) against make_prism(k).
MembershipReport prism_member(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t k,
                              const ToleranceConfig& tol = {});

struct VertexAttainment {
  std::size_t j = 0;
  int sign = 1;
  std::array<double, 3> attained{};
  std::array<double, 3> vertex{};
  double error = 0.0;
};

/// Evaluates the vector state of every prism vertex representation.
std::vector<VertexAttainment> vertex_state_check(std::size_t k);

/// cos(pi/k), cross-checked against the smallest polygon facet distance of
/// make_prism(k). Throws RelationCheckFailed if they disagree by > 1e-12.
double incircle_radius(std::size_t k);
double min_polygon_facet_distance(std::size_t k);
/// Largest vertex norm of P(k).
double circumnorm(std::size_t k);
/// (3/sqrt 2) cos(pi/k).
double theta_lower_bound(std::size_t k);
/// sqrt(d).
double cube_scaling_constant(std::size_t d);

}  // namespace ncprism
