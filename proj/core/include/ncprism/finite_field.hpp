#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ncprism {

bool is_prime(std::uint64_t n) noexcept;

/// (p, e) with q = p^e, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) noexcept;

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);

/// F_q = F_p[t] / (modulus). `modulus` lists coefficients from the constant
/// term up to the leading (monic) coefficient, so it has e + 1 entries.
struct FiniteFieldSpec {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  std::vector<std::uint32_t> modulus;

  std::uint32_t order() const noexcept;
};

/// Exhaustive irreducibility test over F_p (trial division by every monic
/// polynomial of degree <= deg/2).
bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p);

/// Smallest (lexicographic in base-p encoding) monic irreducible polynomial
/// of degree e. Throws NoIrreduciblePolynomial when the search is exhausted
/// or p is not prime.
FiniteFieldSpec make_field_spec(std::uint32_t p, std::uint32_t e);

/// Table-driven arithmetic on F_q. Elements are encoded as integers in
/// [0, q) whose base-p digits are the polynomial coefficients.
class GaloisField {
 public:
  explicit GaloisField(FiniteFieldSpec spec);

  std::uint32_t order() const noexcept { return q_; }
  const FiniteFieldSpec& spec() const noexcept { return spec_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  /// Multiplicative inverse; a must be nonzero.
  std::uint32_t inv(std::uint32_t a) const;
  /// Image of an integer under Z -> F_p -> F_q.
  std::uint32_t from_int(std::int64_t v) const;

 private:
  FiniteFieldSpec spec_;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

/// Point of the projective line P^1(F_q): indices [0, q) are [x : 1], index q
/// is the point at infinity [1 : 0].
using ProjectivePermutation = std::vector<std::uint32_t>;

/// Permutation of P^1(F_q) induced by the Moebius action of [[a, b], [c, d]]:
/// x -> (a x + b) / (c x + d).
ProjectivePermutation moebius_permutation(const GaloisField& field, std::int64_t a, std::int64_t b,
                                          std::int64_t c, std::int64_t d);
/// Same, with the entries (a, b, c, d) given as encoded elements of F_q.
ProjectivePermutation moebius_permutation(const GaloisField& field,
                                          const std::array<std::uint32_t, 4>& entries);

ProjectivePermutation compose(const ProjectivePermutation& outer, const ProjectivePermutation& inner);
ProjectivePermutation inverse(const ProjectivePermutation& perm);

/// Order of the permutation group generated by `generators`, stopping once
/// `limit` elements have been found.
std::size_t permutation_group_order(const std::vector<ProjectivePermutation>& generators,
                                    std::size_t limit = 1000000);

/// q (q^2 - 1) / gcd(2, q - 1).
std::uint64_t psl2_order(std::uint64_t q) noexcept;

}  // namespace ncprism
