#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace esc {

// Exact nonnegative integer. GMP-backed, so there is no word-size ceiling and
// no silent wraparound anywhere below.
using Natural = mpz_class;

inline std::string to_string(const Natural& n) { return n.get_str(); }

// Strict decimal parse: digits only, no sign, no whitespace.
inline Natural parse_natural(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_natural: empty input");
  for (char c : text) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("parse_natural: not a nonnegative decimal: '" + text + "'");
  }
  return Natural(text, 10);
}

inline std::optional<std::uint64_t> to_u64(const Natural& n) {
  if (n < 0 || !mpz_fits_ulong_p(n.get_mpz_t())) return std::nullopt;
  return static_cast<std::uint64_t>(mpz_get_ui(n.get_mpz_t()));
}

/// beta(w) = 4w - 1, the residue-3 (mod 4) companion of w.
inline Natural beta(const Natural& w) {
  if (w < 1) throw std::invalid_argument("beta: requires w >= 1");
  return 4 * w - 1;
}

namespace detail {

inline constexpr std::uint32_t kTrialLimit = 10000;

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialLimit; j += i)
        composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
  }();
  return primes;
}

// One strong-pseudoprime round to the given base. n odd, n - 1 = odd_part * 2^twos.
inline bool miller_rabin_round(const Natural& n, const Natural& n_minus_1,
                               const Natural& odd_part, unsigned long twos,
                               const Natural& base) {
  Natural x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), odd_part.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < twos; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x <= 1) return false;
  }
  return false;
}

}  // namespace detail

/// Primality test. Deterministic for m < 2^64: the witness set {2..37} has no
/// strong pseudoprime below 3.3e24. Beyond that, 64 extra rounds with bases
/// from a fixed-seed generator bound the error below 2^-128.
inline bool is_prime(const Natural& m) {
  static constexpr std::uint32_t witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (m < 2) return false;
  for (std::uint32_t p : witnesses) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return m == p;
  }
  if (m < 41 * 41) return true;
  const Natural n_minus_1 = m - 1;
  const unsigned long twos = mpz_scan1(n_minus_1.get_mpz_t(), 0);
  const Natural odd_part = n_minus_1 >> twos;
  for (std::uint32_t p : witnesses) {
    if (!detail::miller_rabin_round(m, n_minus_1, odd_part, twos, Natural(p))) return false;
  }
  if (mpz_sizeinbase(m.get_mpz_t(), 2) <= 64) return true;
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0x9e3779b97f4a7c15UL);
  for (int round = 0; round < 64; ++round) {
    Natural base = rng.get_z_range(m - 3) + 2;
    if (!detail::miller_rabin_round(m, n_minus_1, odd_part, twos, base)) return false;
  }
  return true;
}

/// Prime factorization of `subject`, primes strictly increasing.
struct Factorization {
  Natural subject;
  std::vector<std::pair<Natural, unsigned>> factors;
};

namespace detail {

inline constexpr std::uint64_t kRhoSeed = 0x5ca1ab1e;

// Brent's variant of Pollard rho with batched gcds. n must be odd, composite,
// and free of prime factors <= kTrialLimit. The seed only offsets the
// polynomial constant, so runs are reproducible.
inline Natural pollard_brent(const Natural& n, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const Natural c = Natural((seed + attempt) % 0xfffffd) + 1;
    Natural y = Natural((seed >> 8) % 997) + 2;
    Natural x, ys, diff, g = 1, q = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t steps = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          diff = x > y ? x - y : y - x;
          q = q * diff % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
    }
    if (g == n) {
      // The batch overshot a factor; replay one step at a time.
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        diff = x > ys ? x - ys : ys - x;
        if (diff == 0) break;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g != n && g > 1) return g;
    // degenerate cycle for this constant; try the next one
  }
}

inline void factor_into(const Natural& m, std::uint64_t seed, std::map<Natural, unsigned>& acc) {
  if (m == 1) return;
  if (is_prime(m)) {
    ++acc[m];
    return;
  }
  if (mpz_perfect_square_p(m.get_mpz_t())) {
    Natural root;
    mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
    factor_into(root, seed, acc);
    factor_into(root, seed, acc);
    return;
  }
  const Natural divisor = pollard_brent(m, seed);
  factor_into(divisor, seed, acc);
  factor_into(Natural(m / divisor), seed, acc);
}

}  // namespace detail

/// Factor m >= 2: trial division by primes below 10^4, then Brent-Pollard rho
/// on what remains. Deterministic for a fixed seed.
inline Factorization factorize(const Natural& m, std::uint64_t seed = detail::kRhoSeed) {
  if (m < 2) throw std::invalid_argument("factorize: requires m >= 2");
  Natural rem = m;
  std::map<Natural, unsigned> acc;
  for (std::uint32_t p : detail::small_primes()) {
    if (mpz_cmp_ui(rem.get_mpz_t(), p) < 0) break;
    if (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(rem.get_mpz_t(), p));
      acc[Natural(p)] += e;
    }
    // no factor <= sqrt(rem) left means rem is prime
    if (mpz_cmp_ui(rem.get_mpz_t(), std::uint64_t(p) * p) < 0) break;
  }
  if (rem > 1) detail::factor_into(rem, seed, acc);
  Factorization f;
  f.subject = m;
  f.factors.assign(acc.begin(), acc.end());
  return f;
}

/// All divisors of the factored subject, ascending. Count is prod(e_i + 1).
inline std::vector<Natural> divisors(const Factorization& f) {
  std::vector<Natural> divs{Natural(1)};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = divs.size();
    Natural pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Factorization of subject^2 (exponents doubled); divisor enumeration for a
/// square goes through this without refactoring the square itself.
inline Factorization squared(const Factorization& f) {
  Factorization out;
  out.subject = f.subject * f.subject;
  out.factors = f.factors;
  for (auto& [p, e] : out.factors) e *= 2;
  return out;
}

inline Natural isqrt(const Natural& m) {
  if (m < 0) throw std::invalid_argument("isqrt: requires m >= 0");
  Natural r;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Exact square test (integer square root based; no floating point).
inline bool is_perfect_square(const Natural& m) {
  return m >= 0 && mpz_perfect_square_p(m.get_mpz_t()) != 0;
}

inline Natural gcd(const Natural& u, const Natural& v) {
  if (u == 0 && v == 0) throw std::invalid_argument("gcd(0, 0) is undefined");
  Natural g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  return g;
}

}  // namespace esc
