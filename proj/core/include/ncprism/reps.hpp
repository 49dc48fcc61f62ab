#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ncprism/finite_field.hpp"
#include "ncprism/matkernel.hpp"

namespace ncprism {

/// Images (W, V) of the generators of Z_k * Z_2 under a finite-dimensional
/// unitary representation: W^k = V^2 = 1.
struct RepPair {
  ComplexMatrix W;
  ComplexMatrix V;
  std::size_t k = 3;
  std::string provenance;
  std::optional<std::size_t> commutant_dim;

  Eigen::Index dim() const noexcept { return W.rows(); }
};

/// Throws RelationCheckFailed unless W, V are square of equal size with
/// check_order(W, k) and check_order(V, 2).
void validate_rep_pair(const RepPair& pair, const ToleranceConfig& tol = {});

/// Finite list of symmetries (selfadjoint unitaries).
struct SymmetryTuple {
  std::vector<ComplexMatrix> mats;
  std::string provenance;
};

/// The 2x2 blocks diag(-1, 1) and [[l, sqrt(1-l^2)], [sqrt(1-l^2), -l]].
ComplexMatrix square_block_u1();
ComplexMatrix square_block_u2(double lambda);

/// Irreducible two-dimensional pair of symmetries; lambda must lie in (-1, 1).
SymmetryTuple square_irrep(double lambda);

/// Block-diagonal truncation of the universal pair of free symmetries. The
/// first lambda must be 1 and all lie in (-1, 1].
SymmetryTuple universal_square_pair(const std::vector<double>& lambdas);

/// Joint eigencharacters (v1, v2) in {+-1}^2, indexed in this order.
enum class Character : std::size_t { PlusPlus = 0, PlusMinus = 1, MinusPlus = 2, MinusMinus = 3 };

/// Canonical form of two symmetries: up to the unitary `conjugator`, the pair
/// is a direct sum of square_irrep blocks (one per lambda) followed by the
/// one-dimensional characters, grouped in Character order.
struct CanonicalForm {
  std::vector<double> lambdas;
  std::array<std::size_t, 4> char_counts{};
  ComplexMatrix conjugator;
  double reconstruction_error = 0.0;
};

CanonicalForm two_symmetry_canonical_form(const ComplexMatrix& v1, const ComplexMatrix& v2,
                                          const ToleranceConfig& tol = {});

/// The block pair (u1, u2) described by a canonical form, before conjugation.
std::pair<ComplexMatrix, ComplexMatrix> canonical_pair(const CanonicalForm& form);

/// m + 1 symmetries in dimension 2^m: m commuting diagonal sign matrices and
/// the normalized Hadamard matrix. Throws SizeBudgetExceeded when 2^m >
/// size_budget.
SymmetryTuple hadamard_symmetries(std::size_t m, std::size_t size_budget = 1024);

struct VertexRep {
  RepPair pair;
  ComplexVector state;
};

/// k x k pair (omega^j u, sign * (swap (+) I)) with u the cyclic shift and
/// the uniform unit vector as common eigenvector.
VertexRep prism_vertex_rep(std::size_t k, std::size_t j, int sign);

/// One-dimensional representation w -> omega^j, v -> sign.
RepPair character_pair(std::size_t k, std::size_t j, int sign);

/// Two-dimensional standard representation of S3 (k = 3).
RepPair s3_pair(const ToleranceConfig& tol = {});
/// Three-dimensional rotation representation of A4 (k = 3).
RepPair a4_pair(const ToleranceConfig& tol = {});

/// q-dimensional Steinberg representation of PSL2(F_q) evaluated on
/// U = [[0,-1],[1,-1]] and V = [[0,-1],[1,0]]. Requires q > 3, q != 9.
///
/// For q = p^e with e > 1 the integer matrices U, V lie in PSL2(F_p), so V is
/// replaced by the first conjugate g V g^{-1}, g = [[1, b], [c, 1]], for which
/// the pair generates PSL2(F_q).
RepPair steinberg_pair(std::uint32_t q, const FiniteFieldSpec& field,
                       const ToleranceConfig& tol = {});
RepPair steinberg_pair(std::uint32_t q, const ToleranceConfig& tol = {});

/// The permutations of P^1(F_q) induced by U and V (or the generating
/// conjugate of V, see steinberg_pair).
std::pair<ProjectivePermutation, ProjectivePermutation> steinberg_permutations(
    const GaloisField& field);

ComplexMatrix permutation_matrix(const ProjectivePermutation& perm);

/// (W1 (x) W2, V1 (x) V2); the commutant dimension is computed and attached.
RepPair tensor_pair(const RepPair& p1, const RepPair& p2, const ToleranceConfig& tol = {});

/// n-dimensional pair for C*(Z_3 * Z_2) built from characters, S3, A4 and
/// Steinberg blocks over the prime-power factorization of n. The computed
/// commutant dimension is attached. Throws AssemblyFailed when a factor 3^2
/// occurs.
RepPair assemble_dimension(std::size_t n, const ToleranceConfig& tol = {});

/// Number of distinct elements in the group generated by `generators`,
/// deduplicated up to Frobenius distance `dedup_tol`; stops at `limit`.
std::size_t generated_group_order(const std::vector<ComplexMatrix>& generators,
                                  std::size_t limit = 100000, double dedup_tol = 1e-8);

}  // namespace ncprism
