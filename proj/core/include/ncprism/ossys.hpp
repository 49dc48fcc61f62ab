#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ncprism/matkernel.hpp"
#include "ncprism/reps.hpp"

namespace ncprism {

/// Element sum_m c_m (x) w^m + g (x) v of M_q(NCP(k)).
struct PrismElement {
  std::size_t k = 3;
  Eigen::Index q = 1;
  std::vector<ComplexMatrix> c;  // k blocks, c[m] multiplies w^m
  ComplexMatrix g;

  static PrismElement zero(std::size_t k, Eigen::Index q);
  static PrismElement unit(std::size_t k, Eigen::Index q);

  /// c_0 = c_0*, g = g*, and c_{k-m} = c_m* for 1 <= m < k.
  bool is_selfadjoint(double tol = 1e-10) const;
  /// Largest block difference to another element of the same shape.
  double distance(const PrismElement& other) const;
};

/// Throws ShapeMismatch unless the element has k blocks of size q x q.
void validate_element(const PrismElement& e);

/// The element evaluated at a representation: sum_m c_m (x) W^m + g (x) V.
ComplexMatrix evaluate(const PrismElement& e, const RepPair& pair);

/// Element (x_0, ..., x_{k-1} | x_k, x_{k+1}) of M_q(C^k (+) C^2).
struct DiagTuple {
  std::size_t k = 3;
  Eigen::Index q = 1;
  std::vector<ComplexMatrix> blocks;  // k + 2 blocks of size q x q

  static DiagTuple scalars(std::size_t k, const std::vector<double>& values);
  double min_block_eigenvalue() const;
};

/// Tuple (z_1, ..., z_k | z_{k+1}, z_{k+2}) in C^{k+2}.
struct DualTuple {
  std::size_t k = 3;
  std::vector<Complex> z;
};

/// Quotient map C^k (+) C^2 -> NCP(k):
///   psi(x) = (1/2) [ sum_j x_j (x) q_j + x_k (x) (1+v)/2 + x_{k+1} (x) (1-v)/2 ],
/// with q_j = (1/k) sum_m omega^{-jm} w^m the spectral projections of w.
PrismElement psi_k(const DiagTuple& x);

/// z_1 + ... + z_k = z_{k+1} + z_{k+2} within tol.
bool dual_member(const DualTuple& z, double tol = 1e-12);

/// z_i = trace(density * psi_k(e_i)(W, V)) for the state given by `density`.
DualTuple functional_to_tuple(const RepPair& pair, const ComplexMatrix& density, std::size_t k,
                              const ToleranceConfig& tol = {});

struct ScalarPositivity {
  bool positive = false;
  double margin = 0.0;  // minimum of the element over the 2k vertices
  std::size_t vertex_j = 0;
  int vertex_sign = 1;
};

/// Positivity of a level-one selfadjoint element by evaluation at the
/// vertices (omega^j, +-1) of P(k).
ScalarPositivity scalar_positivity_prism(const PrismElement& e, double tol = 1e-12);

struct CubePositivity {
  bool positive = false;
  double margin = 0.0;
};

/// alpha + sum_j beta_j u_j is positive in NC(d) iff alpha >= sum_j |beta_j|.
CubePositivity scalar_positivity_cube(double alpha, const std::vector<double>& beta, double tol = 1e-12);

struct PositivityOptions {
  std::size_t samples = 32;         // random dilation pairs in the refutation phase
  std::size_t max_iter = 5000;      // certification sweeps
  double epsilon = 1e-6;            // strict-positivity margin of a lift
  std::uint64_t seed = 0;
  Eigen::Index size_budget = 16;    // largest factory pair tried during refutation
};

enum class VerdictKind { Refuted, Certified, Unknown };

struct RefutationWitness {
  RepPair pair;
  double min_eigenvalue = 0.0;
};

struct PositivityCertificate {
  DiagTuple lift;
  double residual = 0.0;             // ||psi_k(lift) - e||
  double min_block_eigenvalue = 0.0;
  std::size_t iterations = 0;
};

struct PositivityVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<RefutationWitness> witness;
  std::optional<PositivityCertificate> certificate;
  std::size_t pairs_tested = 0;
};

/// Three-valued positivity test for a selfadjoint element at any level:
/// refutation by evaluating at sampled representations, then certification
/// by a strictly positive preimage under psi_k found with Dykstra's method.
PositivityVerdict matrix_positivity_prism(const PrismElement& e, const PositivityOptions& options = {},
                                          const ToleranceConfig& tol = {});

/// Representation pairs used by the refutation phase.
std::vector<RepPair> refutation_sample(std::size_t k, const PositivityOptions& options,
                                       const ToleranceConfig& tol = {});

/// Re-checks a witness from its payload: pair has orders (k, 2) and e(W, V)
/// has an eigenvalue below -spec_tol.
bool verify_witness(const PrismElement& e, const RefutationWitness& witness,
                    const ToleranceConfig& tol = {});
/// Re-checks a certificate: ||psi_k(lift) - e|| <= spec_tol and every block
/// has minimum eigenvalue >= epsilon.
bool verify_certificate(const PrismElement& e, const PositivityCertificate& cert, double epsilon,
                        const ToleranceConfig& tol = {});

}  // namespace ncprism
