#include "ncprism/finite_field.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "ncprism/error.hpp"

namespace ncprism {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) noexcept {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(static_cast<std::uint32_t>(q), 1U);
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), e);
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    std::uint32_t e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1U);
  return out;
}

std::uint32_t FiniteFieldSpec::order() const noexcept {
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) q *= p;
  return q;
}

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  for (std::uint32_t x = 1; x < p; ++x)
    if ((static_cast<std::uint64_t>(a) * x) % p == 1) return x;
  return 0;
}

// Remainder of a modulo b over F_p; b must be nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint32_t factor = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.back()) * lead_inv) % p);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = (static_cast<std::uint64_t>(factor) * b[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `code`.
Poly monic_from_code(std::uint64_t code, std::uint32_t deg, std::uint32_t p) {
  Poly poly(deg + 1, 0);
  for (std::uint32_t i = 0; i < deg; ++i) {
    poly[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  poly[deg] = 1;
  return poly;
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

bool is_irreducible(const std::vector<std::uint32_t>& poly_in, std::uint32_t p) {
  if (!is_prime(p)) return false;
  Poly poly = poly_in;
  trim(poly);
  if (poly.size() < 2) return false;
  const std::uint32_t deg = static_cast<std::uint32_t>(poly.size() - 1);
  for (std::uint32_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t code = 0; code < count; ++code) {
      if (poly_mod(poly, monic_from_code(code, d, p), p).empty()) return false;
    }
  }
  return true;
}

FiniteFieldSpec make_field_spec(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p) || e == 0)
    throw Error(ErrorCode::NoIrreduciblePolynomial, "field characteristic must be prime and e >= 1");
  if (e == 1) return FiniteFieldSpec{p, 1, {0, 1}};
  const std::uint64_t count = ipow(p, e);
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly candidate = monic_from_code(code, e, p);
    if (is_irreducible(candidate, p)) return FiniteFieldSpec{p, e, candidate};
  }
  std::ostringstream os;
  os << "no monic irreducible polynomial of degree " << e << " over F_" << p;
  throw Error(ErrorCode::NoIrreduciblePolynomial, os.str());
}

GaloisField::GaloisField(FiniteFieldSpec spec) : spec_(std::move(spec)) {
  const std::uint32_t p = spec_.p;
  const std::uint32_t e = spec_.e;
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "characteristic is not prime");
  if (spec_.modulus.size() != e + 1 || spec_.modulus.back() != 1)
    throw Error(ErrorCode::InvalidArgument, "modulus must be monic of degree e");
  if (e > 1 && !is_irreducible(spec_.modulus, p))
    throw Error(ErrorCode::NoIrreduciblePolynomial, "modulus is reducible over F_p");
  q_ = spec_.order();

  auto digits = [&](std::uint32_t v) {
    Poly d(e, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
      d[i] = v % p;
      v /= p;
    }
    return d;
  };
  auto encode = [&](const Poly& d) {
    std::uint32_t v = 0;
    for (std::uint32_t i = e; i-- > 0;) v = v * p + (i < d.size() ? d[i] : 0);
    return v;
  };

  add_.assign(static_cast<std::size_t>(q_) * q_, 0);
  mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    const Poly da = digits(a);
    Poly na(e);
    for (std::uint32_t i = 0; i < e; ++i) na[i] = (p - da[i]) % p;
    neg_[a] = encode(na);
    for (std::uint32_t b = 0; b < q_; ++b) {
      const Poly db = digits(b);
      Poly sum(e);
      for (std::uint32_t i = 0; i < e; ++i) sum[i] = (da[i] + db[i]) % p;
      add_[static_cast<std::size_t>(a) * q_ + b] = encode(sum);
      Poly prod(2 * e, 0);
      for (std::uint32_t i = 0; i < e; ++i)
        for (std::uint32_t j = 0; j < e; ++j)
          prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p);
      mul_[static_cast<std::size_t>(a) * q_ + b] = encode(poly_mod(prod, spec_.modulus, p));
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a)
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul(a, b) == 1) {
        inv_[a] = b;
        break;
      }
}

std::uint32_t GaloisField::inv(std::uint32_t a) const {
  if (a == 0 || a >= q_) throw Error(ErrorCode::InvalidArgument, "zero has no inverse");
  return inv_[a];
}

std::uint32_t GaloisField::from_int(std::int64_t v) const {
  const std::int64_t p = spec_.p;
  return static_cast<std::uint32_t>(((v % p) + p) % p);
}

ProjectivePermutation moebius_permutation(const GaloisField& field, std::int64_t a, std::int64_t b,
                                          std::int64_t c, std::int64_t d) {
  return moebius_permutation(field, {field.from_int(a), field.from_int(b), field.from_int(c), field.from_int(d)});
}

ProjectivePermutation moebius_permutation(const GaloisField& field,
                                          const std::array<std::uint32_t, 4>& entries) {
  const std::uint32_t q = field.order();
  const auto [a, b, c, d] = entries;
  if (std::max({a, b, c, d}) >= q) throw Error(ErrorCode::InvalidArgument, "Moebius entry is not in F_q");
  if (field.sub(field.mul(a, d), field.mul(b, c)) == 0)
    throw Error(ErrorCode::InvalidArgument, "Moebius matrix is singular over F_q");
  const std::uint32_t infinity = q;
  ProjectivePermutation perm(q + 1);
  for (std::uint32_t x = 0; x < q; ++x) {
    const std::uint32_t num = field.add(field.mul(a, x), b);
    const std::uint32_t den = field.add(field.mul(c, x), d);
    perm[x] = den == 0 ? infinity : field.mul(num, field.inv(den));
  }
  perm[infinity] = c == 0 ? infinity : field.mul(a, field.inv(c));
  return perm;
}

ProjectivePermutation compose(const ProjectivePermutation& outer, const ProjectivePermutation& inner) {
  if (outer.size() != inner.size()) throw Error(ErrorCode::ShapeMismatch, "permutations act on different sets");
  ProjectivePermutation out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

ProjectivePermutation inverse(const ProjectivePermutation& perm) {
  ProjectivePermutation out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = static_cast<std::uint32_t>(i);
  return out;
}

std::size_t permutation_group_order(const std::vector<ProjectivePermutation>& generators, std::size_t limit) {
  if (generators.empty()) return 1;
  ProjectivePermutation id(generators.front().size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<std::uint32_t>(i);
  std::set<ProjectivePermutation> seen{id};
  std::vector<ProjectivePermutation> frontier{id};
  while (!frontier.empty() && seen.size() < limit) {
    std::vector<ProjectivePermutation> next;
    for (const auto& p : frontier)
      for (const auto& g : generators) {
        ProjectivePermutation c = compose(g, p);
        if (seen.insert(c).second) next.push_back(std::move(c));
      }
    frontier = std::move(next);
  }
  return seen.size();
}

std::uint64_t psl2_order(std::uint64_t q) noexcept { return q * (q * q - 1) / (q % 2 == 0 ? 1 : 2); }

}  // namespace ncprism
