#pragma once

#include "esc/core.hpp"

namespace esc {

/// Type-A parameters: K = mu*(kappa*beta_b - 1) - kappa*b, equivalently
/// n = kappa*beta_b*beta_mu - beta_mu - kappa.
struct TypeAParams {
  Natural b, mu, kappa;

  friend bool operator==(const TypeAParams&, const TypeAParams&) = default;
};

/// Fully expanded type-A solution. The defining relations:
///   a = b + beta_b*K = (mu*beta_b - b)(kappa*beta_b - 1)
///   d = mu*beta_b - b   (a divisor of a, hence of a^2)
///   z = kappa*d,  beta_b*z = a + d,  beta_a = n*beta_b
///   triple = (x = a*n, y = a*z/d = a*kappa, z)
struct TypeASolution {
  TypeAParams params;
  Natural a, d, z;
  UnitFractionTriple triple;
};

inline Natural a_from_b(const Natural& k_value, const Natural& b) {
  if (k_value < 1) throw std::invalid_argument("a_from_b: requires K >= 1");
  return b + beta(b) * k_value;
}

/// Inclusive top of the b search range, ceil((K+2)/3). Any representation has
/// n >= 3*beta_b - 4 (take mu = kappa = 1), which rearranges to b <= (K+2)/3;
/// the bound is attained by the K ≡ 1 (mod 3) family (b = (K+2)/3, mu = kappa = 1).
inline Natural b_limit(const Natural& k_value) {
  if (k_value < 1) throw std::invalid_argument("b_limit: requires K >= 1");
  const Natural num = k_value + 2;
  Natural q;
  mpz_cdiv_q_ui(q.get_mpz_t(), num.get_mpz_t(), 3);
  return q;
}

/// Search for all (b, mu, kappa) with K = mu*(kappa*beta_b - 1) - kappa*b and
/// b <= b_max (default: the exhaustive bound b_limit(K)).
///
/// For each b, a = b + beta_b*K ≡ b (mod beta_b); a representation exists
/// exactly when a splits as f1*f2 with f2 ≡ -1 and f1 ≡ -b (mod beta_b), and
/// then mu = (f1 + b)/beta_b, kappa = (f2 + 1)/beta_b. Every divisor of a is
/// tried as f2, not just prime factors, since a composite divisor may carry
/// the congruence class; the cofactor congruence is automatic. The bounds
/// f2 >= beta_b - 1 and f1 >= beta_b - b keep mu, kappa >= 1.
///
/// Result is sorted by (b, kappa); an empty result for b_max = b_limit(K)
/// means K has no representation at all.
inline std::vector<TypeAParams> find_type_a(const Natural& k_value,
                                            std::optional<Natural> b_max = std::nullopt,
                                            bool first_only = false) {
  if (k_value < 1) throw std::invalid_argument("find_type_a: requires K >= 1");
  const Natural last_b = b_max ? *b_max : b_limit(k_value);
  std::vector<TypeAParams> out;
  for (Natural b = 1; b <= last_b; ++b) {
    const Natural bb = beta(b);
    const Natural a = b + bb * k_value;
    const Natural f2_min = bb - 1;
    const Natural f1_min = bb - b;
    for (const Natural& f2 : divisors(factorize(a))) {
      if (f2 < f2_min) continue;
      if (f2 % bb != f2_min) continue;  // f2 ≡ -1 (mod beta_b)
      const Natural f1 = a / f2;
      if (f1 < f1_min) continue;
      out.push_back({b, (f1 + b) / bb, (f2 + 1) / bb});
      if (first_only) return out;
    }
    // divisors ascend, so kappa ascends within each b
  }
  return out;
}

/// Expand parameters into a full solution of 4/n = 1/x + 1/y + 1/z for
/// n = 1 + 4K. Rejects parameters that do not satisfy the type-A relation.
inline TypeASolution expand_type_a(const Natural& n, const TypeAParams& p) {
  if (n < 5 || mpz_fdiv_ui(n.get_mpz_t(), 4) != 1)
    throw std::invalid_argument("expand_type_a: requires n ≡ 1 (mod 4), n >= 5");
  if (p.b < 1 || p.mu < 1 || p.kappa < 1)
    throw std::invalid_argument("expand_type_a: parameters must be >= 1");
  const Natural k_value = (n - 1) / 4;
  const Natural bb = beta(p.b);
  if (p.mu * (p.kappa * bb - 1) - p.kappa * p.b != k_value)
    throw std::invalid_argument(
        "expand_type_a: params do not satisfy K = mu*(kappa*beta_b - 1) - kappa*b");
  TypeASolution s;
  s.params = p;
  s.d = p.mu * bb - p.b;
  s.a = s.d * (p.kappa * bb - 1);
  s.z = p.kappa * s.d;
  s.triple = {s.a * n, s.a * p.kappa, s.z};
  return s;
}

/// First representation of m = 1 + 4K in S_A = {abc - b - c : a, b ≡ 3 (mod 4)},
/// searched exhaustively over b <= b_limit(K). nullopt is a definite
/// non-membership verdict, not a bounded-search miss.
inline std::optional<TypeAParams> membership_sa(const Natural& m) {
  if (m < 5 || mpz_fdiv_ui(m.get_mpz_t(), 4) != 1)
    throw std::invalid_argument("membership_sa: requires m ≡ 1 (mod 4), m >= 5");
  auto hits = find_type_a((m - 1) / 4, std::nullopt, true);
  if (hits.empty()) return std::nullopt;
  return hits.front();
}

}  // namespace esc
