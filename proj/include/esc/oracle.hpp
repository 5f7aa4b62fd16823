#pragma once

#include "esc/core.hpp"

namespace esc {

namespace detail {

// Enumeration core over machine words, exact. Valid for n < 2^32: then
// q = n*x < 2^63, y <= 2q < 2^64 and q*y < 2^127, so the unsigned 128-bit
// intermediates cannot overflow.
inline void brute_force_u64(std::uint64_t n, std::optional<std::size_t> cap,
                            std::vector<UnitFractionTriple>& out) {
  using u128 = unsigned __int128;
  for (std::uint64_t x = n / 4 + 1; 4 * x <= 3 * n; ++x) {
    const std::uint64_t p = 4 * x - n;  // 4/n - 1/x = p/q
    const std::uint64_t q = n * x;
    std::uint64_t y = std::max(x, (q + p - 1) / p);
    const std::uint64_t y_hi = 2 * q / p;
    for (; y <= y_hi; ++y) {
      const u128 den = u128(p) * y - q;
      if (den == 0) continue;
      const u128 num = u128(q) * y;
      if (num % den != 0) continue;
      const u128 z = num / den;
      if (z < y) continue;
      const std::uint64_t z_hi = static_cast<std::uint64_t>(z >> 64);
      const std::uint64_t z_lo = static_cast<std::uint64_t>(z);
      Natural zn = z_hi;
      zn <<= 64;
      zn += z_lo;
      out.push_back({Natural(static_cast<unsigned long>(x)),
                     Natural(static_cast<unsigned long>(y)), zn});
      if (cap && out.size() >= *cap) return;
    }
  }
}

inline void brute_force_mpz(const Natural& n, std::optional<std::size_t> cap,
                            std::vector<UnitFractionTriple>& out) {
  for (Natural x = n / 4 + 1; 4 * x <= 3 * n; ++x) {
    const Natural p = 4 * x - n;
    const Natural q = n * x;
    Natural y;
    mpz_cdiv_q(y.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    if (y < x) y = x;
    const Natural y_hi = 2 * q / p;
    for (; y <= y_hi; ++y) {
      const Natural den = p * y - q;
      if (den <= 0) continue;
      const Natural num = q * y;
      if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) continue;
      const Natural z = num / den;
      if (z < y) continue;
      out.push_back({x, y, z});
      if (cap && out.size() >= *cap) return;
    }
  }
}

}  // namespace detail

/// The complete solution set of 4/n = 1/x + 1/y + 1/z with x <= y <= z, in
/// lexicographic order and free of duplicates by construction.
///
/// Bounds: 1/x < 4/n <= 3/x gives n/4 < x <= 3n/4. For fixed x, with
/// r = 4/n - 1/x > 0, 1/y < r <= 2/y gives ceil(1/r) <= y <= floor(2/r)
/// (and y >= x); z is then forced and kept only when it divides out exactly.
/// The upper y bound already implies z >= y.
///
/// cap, when set, truncates the enumeration after that many solutions.
inline std::vector<UnitFractionTriple> brute_force_solutions(
    const Natural& n, std::optional<std::size_t> cap = std::nullopt) {
  if (n < 2) throw std::invalid_argument("brute_force_solutions: requires n >= 2");
  std::vector<UnitFractionTriple> out;
  if (cap && *cap == 0) return out;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 32) {
    detail::brute_force_u64(mpz_get_ui(n.get_mpz_t()), cap, out);
  } else {
    detail::brute_force_mpz(n, cap, out);
  }
  return out;
}

/// True iff every exhaustively found solution for the Pythagorean prime n has
/// exactly one or exactly two of x, y, z divisible by n.
inline bool check_type_exhaustiveness(const Natural& n) {
  if (mpz_fdiv_ui(n.get_mpz_t(), 4) != 1 || !is_prime(n))
    throw std::invalid_argument("check_type_exhaustiveness: requires a Pythagorean prime");
  for (const UnitFractionTriple& t : brute_force_solutions(n)) {
    const SolutionType st = classify(n, t);
    if (st.kind == SolutionKind::Other) return false;
  }
  return true;
}

/// Search 1 <= nu, b <= limit for a perfect square of the form 4*nu*b - nu - b.
/// Returns the first witness in (nu, b) order, or nullopt. A witness would
/// falsify the compositeness argument for the type-A parameter a, so callers
/// treat any hit as fatal.
inline std::optional<std::pair<Natural, Natural>> lemma1_square_witness_search(
    const Natural& limit) {
  if (limit < 1) throw std::invalid_argument("lemma1_square_witness_search: requires limit >= 1");
  for (Natural nu = 1; nu <= limit; ++nu) {
    for (Natural b = 1; b <= limit; ++b) {
      const Natural value = 4 * nu * b - nu - b;
      if (is_perfect_square(value)) return std::make_pair(nu, b);
    }
  }
  return std::nullopt;
}

}  // namespace esc
