#pragma once

#include "esc/core.hpp"

namespace esc {

/// Type-B parameters: K = mu*beta_a - a - d with d a divisor of a^2.
struct TypeBParams {
  Natural a, d, mu;

  friend bool operator==(const TypeBParams&, const TypeBParams&) = default;
};

/// The equivalent four-parameter form: d = a1*a2, a = lambda*a1 = nu*a2, and
/// n = beta_{lambda*a1} * beta_mu - 4*lambda*a1^2/nu.
struct TypeBAltParams {
  Natural lambda, a1, a2, nu;

  friend bool operator==(const TypeBAltParams&, const TypeBAltParams&) = default;
};

/// Fully expanded type-B solution:
///   z = K + mu,  beta_a*z - n*a = d
///   triple = (x = a*n, y = n*a*z/d, z)
struct TypeBSolution {
  TypeBParams params;
  TypeBAltParams alt;
  Natural z;
  UnitFractionTriple triple;
};

namespace detail {

inline std::vector<Natural> divisors_of_square(const Natural& a) {
  if (a == 1) return {Natural(1)};
  return divisors(squared(factorize(a)));
}

}  // namespace detail

/// Search for (a, d, mu) with K = mu*beta_a - a - d, d | a^2, a <= a_max:
/// for each a and each divisor d of a^2, test (K + a + d) ≡ 0 (mod beta_a).
/// Result is sorted by (a, d). There is no known bound on a, so an empty
/// result means "not found within a_max", never non-membership.
inline std::vector<TypeBParams> find_type_b(const Natural& k_value, const Natural& a_max,
                                            bool first_only = false) {
  if (k_value < 1) throw std::invalid_argument("find_type_b: requires K >= 1");
  if (a_max < 1) throw std::invalid_argument("find_type_b: requires a_max >= 1");
  std::vector<TypeBParams> out;
  for (Natural a = 1; a <= a_max; ++a) {
    const Natural ba = beta(a);
    const Natural base = k_value + a;
    for (const Natural& d : detail::divisors_of_square(a)) {
      const Natural sum = base + d;
      if (mpz_divisible_p(sum.get_mpz_t(), ba.get_mpz_t())) {
        out.push_back({a, d, sum / ba});  // quotient >= 1 since sum >= 3
        if (first_only) return out;
      }
    }
  }
  return out;
}

/// Canonical split of d into divisors of a: a1 = gcd(d, a), a2 = d/a1. When
/// d | a^2, a2 | a holds prime by prime (v(a2) = max(v(d) - v(a), 0) <= v(a)).
inline TypeBAltParams to_alt_params(const TypeBParams& p) {
  if (p.a < 1 || p.d < 1 || p.mu < 1)
    throw std::invalid_argument("to_alt_params: parameters must be >= 1");
  const Natural square = p.a * p.a;
  if (!mpz_divisible_p(square.get_mpz_t(), p.d.get_mpz_t()))
    throw std::invalid_argument("to_alt_params: d must divide a^2");
  TypeBAltParams alt;
  alt.a1 = gcd(p.d, p.a);
  alt.a2 = p.d / alt.a1;
  if (!mpz_divisible_p(p.a.get_mpz_t(), alt.a2.get_mpz_t()))
    throw std::logic_error("to_alt_params: a2 does not divide a");
  alt.lambda = p.a / alt.a1;
  alt.nu = p.a / alt.a2;
  return alt;
}

/// Expand parameters into a solution of 4/n = 1/x + 1/y + 1/z for n = 1 + 4K.
/// y = n*a*z/d is an integer whenever d | a^2: with d = a1*a2 as above,
/// gcd(beta_a, a1) = 1 forces a1 | z, and a*z/d = (a/a2)*(z/a1).
inline TypeBSolution expand_type_b(const Natural& n, const TypeBParams& p) {
  if (n < 5 || mpz_fdiv_ui(n.get_mpz_t(), 4) != 1)
    throw std::invalid_argument("expand_type_b: requires n ≡ 1 (mod 4), n >= 5");
  const Natural k_value = (n - 1) / 4;
  TypeBSolution s;
  s.params = p;
  s.alt = to_alt_params(p);  // also validates d | a^2
  if (p.mu * beta(p.a) - p.a - p.d != k_value)
    throw std::invalid_argument("expand_type_b: params do not satisfy K = mu*beta_a - a - d");
  s.z = k_value + p.mu;
  const Natural numerator = n * p.a * s.z;
  if (!mpz_divisible_p(numerator.get_mpz_t(), p.d.get_mpz_t()))
    throw std::logic_error("expand_type_b: n*a*z not divisible by d");
  s.triple = {p.a * n, numerator / p.d, s.z};
  return s;
}

/// First representation of m = 1 + 4K in S_B, searched over a <= a_max.
/// nullopt means "not found within bound"; it is not a non-membership proof.
inline std::optional<TypeBParams> membership_sb(const Natural& m, const Natural& a_max = 10000) {
  if (m < 5 || mpz_fdiv_ui(m.get_mpz_t(), 4) != 1)
    throw std::invalid_argument("membership_sb: requires m ≡ 1 (mod 4), m >= 5");
  auto hits = find_type_b((m - 1) / 4, a_max, true);
  if (hits.empty()) return std::nullopt;
  return hits.front();
}

}  // namespace esc
