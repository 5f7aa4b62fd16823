#pragma once

#include <array>

#include "esc/arith.hpp"

namespace esc {

/// A candidate (x, y, z) for 4/n = 1/x + 1/y + 1/z. Role order is preserved
/// (parametric solutions keep x = a*n in front); sorted() is the canonical
/// view used for set comparison against exhaustive enumeration.
struct UnitFractionTriple {
  Natural x, y, z;

  std::array<Natural, 3> sorted() const {
    std::array<Natural, 3> s{x, y, z};
    std::sort(s.begin(), s.end());
    return s;
  }

  friend bool operator==(const UnitFractionTriple&, const UnitFractionTriple&) = default;
};

/// A scan/solve target n. K is defined only when n = 1 + 4K, i.e. n ≡ 1 (mod 4).
struct EscTarget {
  Natural n;
  std::optional<Natural> k;
  bool is_prime = false;
  bool is_pythagorean_prime = false;

  static EscTarget of(const Natural& n) {
    if (n < 2) throw std::invalid_argument("EscTarget: requires n >= 2");
    EscTarget t;
    t.n = n;
    const bool one_mod_4 = mpz_fdiv_ui(n.get_mpz_t(), 4) == 1;
    if (one_mod_4) t.k = (n - 1) / 4;
    t.is_prime = esc::is_prime(n);
    t.is_pythagorean_prime = t.is_prime && one_mod_4;
    return t;
  }
};

enum class SolutionKind { TypeA, TypeB, Other };

/// Divisibility profile of a solution: TypeA has exactly one of x, y, z
/// divisible by n, TypeB exactly two. For composite n, Other is reachable.
struct SolutionType {
  SolutionKind kind = SolutionKind::Other;
  int multiples_of_n = 0;

  friend bool operator==(const SolutionType&, const SolutionType&) = default;
};

/// Exact check of 4/n = 1/x + 1/y + 1/z through the cleared-denominator
/// identity 4xyz = n(yz + xz + xy). No rational or floating arithmetic.
inline bool verify_triple(const Natural& n, const UnitFractionTriple& t) {
  if (n < 2) throw std::invalid_argument("verify_triple: requires n >= 2");
  if (t.x < 1 || t.y < 1 || t.z < 1)
    throw std::invalid_argument("verify_triple: denominators must be positive");
  const Natural yz = t.y * t.z;
  const Natural xz = t.x * t.z;
  const Natural xy = t.x * t.y;
  return 4 * t.x * yz == n * (yz + xz + xy);
}

/// A solution for n scales to one for k*n componentwise.
inline UnitFractionTriple scale_solution(const UnitFractionTriple& t, const Natural& k) {
  if (k < 1) throw std::invalid_argument("scale_solution: requires k >= 1");
  return {k * t.x, k * t.y, k * t.z};
}

/// n = 2k: (k, 2k, 2k).
inline UnitFractionTriple closed_form_even(const Natural& n) {
  if (n < 2 || mpz_odd_p(n.get_mpz_t()))
    throw std::invalid_argument("closed_form_even: requires even n >= 2");
  const Natural k = n / 2;
  return {k, n, n};
}

/// n = 4k - 1: (kn, k(k+1), k+1).
inline UnitFractionTriple closed_form_4k_minus_1(const Natural& n) {
  if (mpz_fdiv_ui(n.get_mpz_t(), 4) != 3)
    throw std::invalid_argument("closed_form_4k_minus_1: requires n ≡ 3 (mod 4)");
  const Natural k = (n + 1) / 4;
  return {k * n, k * (k + 1), k + 1};
}

inline SolutionType classify(const Natural& n, const UnitFractionTriple& t) {
  if (!verify_triple(n, t))
    throw std::invalid_argument("classify: triple is not a solution for n");
  int count = 0;
  for (const Natural* v : {&t.x, &t.y, &t.z}) {
    if (mpz_divisible_p(v->get_mpz_t(), n.get_mpz_t())) ++count;
  }
  SolutionKind kind = SolutionKind::Other;
  if (count == 1) kind = SolutionKind::TypeA;
  if (count == 2) kind = SolutionKind::TypeB;
  return {kind, count};
}

}  // namespace esc
