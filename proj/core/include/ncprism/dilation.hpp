#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ncprism/matkernel.hpp"
#include "ncprism/reps.hpp"

namespace ncprism {

/// An isometry into an enlarged space together with operators on that space
/// whose compressions recover the dilated inputs.
struct DilationResult {
  ComplexMatrix isometry;
  std::vector<ComplexMatrix> operators;
  std::vector<std::string> labels;
};

/// Positive effects summing to the identity, tagged with the spectrum points
/// they are attached to.
struct Povm {
  std::vector<ComplexMatrix> effects;
  std::vector<Complex> outcome_labels;
};

/// Residuals of the POVM identities: ||sum h_j - 1|| and the most negative
/// eigenvalue over all effects (zero when all are PSD).
struct PovmResidual {
  double completeness = 0.0;
  double negativity = 0.0;
  double moment = 0.0;  // ||sum label_j h_j - target||, when a target is given
};

PovmResidual povm_residual(const Povm& povm);
PovmResidual povm_residual(const Povm& povm, const ComplexMatrix& target);

/// Throws InvalidPovm unless effects are Hermitian, >= -psd_clamp, and sum
/// to the identity within spec_tol.
void validate_povm(const Povm& povm, const ToleranceConfig& tol = {});

enum class Letter { W, WStar, V };

/// A word over {w, w*, v} in C*(Z_k * Z_2); the empty word is the identity.
struct GroupWord {
  std::vector<Letter> letters;
  std::size_t k = 3;

  /// Parses text such as "wv", "w*vw" or "" / "1" / "e" for the identity.
  static GroupWord parse(std::string_view text, std::size_t k);
  std::string to_string() const;
};

/// [[b, D], [D, -b]] with D = (1 - b^2)^{1/2}; b Hermitian with ||b|| <= 1.
ComplexMatrix halmos_symmetry(const ComplexMatrix& b, const ToleranceConfig& tol = {});

/// [[x, (1 - x x*)^{1/2}], [(1 - x* x)^{1/2}, -x*]]; ||x|| <= 1.
ComplexMatrix halmos_unitary(const ComplexMatrix& x, const ToleranceConfig& tol = {});

/// Barycentric POVM of an operator whose numerical range lies in the
/// triangle Conv{1, omega, omega^2}: h_j = (1 + 2 Re(conj(omega^j) a))/3.
Povm triangle_povm(const ComplexMatrix& a, const ToleranceConfig& tol = {});

/// Naimark dilation: Z = [h_0^{1/2}; ...; h_{m-1}^{1/2}] and the diagonal
/// normal operator N = (+)_j label_j 1.
DilationResult naimark_normal(const Povm& povm, const ToleranceConfig& tol = {});

/// POVM with outcomes at the k-th roots of unity whose first moment is a.
/// k = 3 uses the closed form; k >= 4 runs Dykstra alternating projections
/// between the PSD product cone and the affine moment constraints and throws
/// Infeasible when the residual stays above spec_tol after max_iter sweeps.
Povm order_k_povm(const ComplexMatrix& a, std::size_t k, const ToleranceConfig& tol = {},
                  std::size_t max_iter = 20000);

struct JointDilation {
  RepPair pair;
  ComplexMatrix isometry;  // G with G* W G = a and G* V G = b
};

/// Common dilation of (a, b) to unitaries W, V with W^k = V^2 = 1.
JointDilation joint_prism_dilation(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t k,
                                   const ToleranceConfig& tol = {}, std::size_t max_iter = 20000);

/// Halmos symmetries of each entry on a common doubled space.
DilationResult cube_dilation(const std::vector<ComplexMatrix>& tuple, const ToleranceConfig& tol = {});

/// Product of the word's letters evaluated at (W, V); w* is W^{k-1}.
ComplexMatrix evaluate_word(const RepPair& pair, const GroupWord& word);
/// Z* (word evaluated at the pair) Z.
ComplexMatrix evaluate_compressed_word(const RepPair& pair, const ComplexMatrix& isometry,
                                       const GroupWord& word, const ToleranceConfig& tol = {});

}  // namespace ncprism
