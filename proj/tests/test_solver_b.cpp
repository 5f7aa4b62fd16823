#include <catch2/catch_amalgamated.hpp>

#include "esc/oracle.hpp"
#include "esc/solver_b.hpp"

using esc::Natural;
using esc::TypeBParams;

TEST_CASE("find_type_b pinned searches", "[solver_b]") {
  CHECK(esc::find_type_b(1, 1) == std::vector<TypeBParams>{{1, 1, 1}});
  const auto k3 = esc::find_type_b(3, 2);
  CHECK(std::find(k3.begin(), k3.end(), TypeBParams{2, 2, 1}) != k3.end());
  const auto k9 = esc::find_type_b(9, 5);
  CHECK(std::find(k9.begin(), k9.end(), TypeBParams{5, 5, 1}) != k9.end());
  CHECK_THROWS_AS(esc::find_type_b(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(esc::find_type_b(5, 0), std::invalid_argument);
}

TEST_CASE("a = d = 1 with mu running generates 5, 17, 29, 41, 53", "[solver_b]") {
  const unsigned long expected_n[] = {5, 17, 29, 41, 53};
  for (unsigned long mu = 1; mu <= 5; ++mu) {
    const Natural k_value = 3 * mu - 2;  // K = mu*beta_1 - 1 - 1
    CHECK(1 + 4 * k_value == expected_n[mu - 1]);
    const auto hits = esc::find_type_b(k_value, 1);
    REQUIRE_FALSE(hits.empty());
    CHECK(hits.front() == TypeBParams{1, 1, mu});
  }
}

TEST_CASE("d = a with mu = 1 generates 13 and 37", "[solver_b]") {
  for (unsigned long a : {2, 5}) {
    const Natural k_value = 2 * a - 1;  // K = beta_a - 2a
    const unsigned long n = 1 + 4 * (2 * a - 1);
    CHECK((a == 2 ? n == 13 : n == 37));
    const auto hits = esc::find_type_b(k_value, a);
    const TypeBParams expected{a, a, 1};
    REQUIRE(std::find(hits.begin(), hits.end(), expected) != hits.end());
    CHECK(esc::verify_triple(n, esc::expand_type_b(n, expected).triple));
  }
}

TEST_CASE("expand_type_b pinned expansions", "[solver_b]") {
  const esc::TypeBSolution s5 = esc::expand_type_b(5, {1, 1, 1});
  CHECK(s5.z == 2);
  CHECK(s5.triple == esc::UnitFractionTriple{5, 10, 2});
  CHECK(esc::verify_triple(5, s5.triple));

  const esc::TypeBSolution s13 = esc::expand_type_b(13, {2, 2, 1});
  CHECK(s13.z == 4);
  CHECK(s13.triple == esc::UnitFractionTriple{26, 52, 4});
  CHECK(esc::verify_triple(13, s13.triple));

  const esc::TypeBSolution s17 = esc::expand_type_b(17, {1, 1, 2});
  CHECK(s17.z == 6);
  CHECK(s17.triple == esc::UnitFractionTriple{17, 102, 6});
  CHECK(esc::verify_triple(17, s17.triple));

  CHECK_THROWS_AS(esc::expand_type_b(5, {1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(esc::expand_type_b(13, {4, 3, 1}), std::invalid_argument);  // d does not divide a^2
}

TEST_CASE("to_alt_params canonical decomposition", "[solver_b]") {
  const esc::TypeBAltParams alt13 = esc::to_alt_params({2, 2, 1});
  CHECK(alt13 == esc::TypeBAltParams{1, 2, 1, 2});
  CHECK(esc::beta(alt13.lambda * alt13.a1) * esc::beta(1) -
            4 * alt13.lambda * alt13.a1 * alt13.a1 / alt13.nu ==
        13);

  const esc::TypeBAltParams alt5 = esc::to_alt_params({1, 1, 1});
  CHECK(alt5 == esc::TypeBAltParams{1, 1, 1, 1});
  CHECK(esc::beta(alt5.lambda * alt5.a1) * esc::beta(1) -
            4 * alt5.lambda * alt5.a1 * alt5.a1 / alt5.nu ==
        5);

  CHECK(esc::to_alt_params({4, 8, 1}) == esc::TypeBAltParams{1, 4, 2, 2});
  CHECK_THROWS_AS(esc::to_alt_params({4, 3, 1}), std::invalid_argument);
}

TEST_CASE("alternative parameters round-trip over found solutions", "[solver_b][slow]") {
  for (unsigned long k = 1; k <= 500; k += 7) {
    for (const TypeBParams& p : esc::find_type_b(Natural(k), 100)) {
      const esc::TypeBAltParams alt = esc::to_alt_params(p);
      REQUIRE(alt.lambda * alt.a1 == p.a);
      REQUIRE(alt.nu * alt.a2 == p.a);
      REQUIRE(alt.a1 * alt.a2 == p.d);
      // n = beta_{lambda*a1} * beta_mu - 4*lambda*a1^2/nu
      const Natural lhs = esc::beta(alt.lambda * alt.a1) * esc::beta(p.mu) -
                          4 * alt.lambda * alt.a1 * alt.a1 / alt.nu;
      REQUIRE(4 * alt.lambda * alt.a1 * alt.a1 % alt.nu == 0);
      REQUIRE(lhs == 1 + 4 * Natural(k));
    }
  }
}

TEST_CASE("membership_sb pinned verdicts", "[solver_b]") {
  const auto m5 = esc::membership_sb(5);
  REQUIRE(m5.has_value());
  CHECK(*m5 == TypeBParams{1, 1, 1});
  const auto m53 = esc::membership_sb(53);
  REQUIRE(m53.has_value());
  CHECK(*m53 == TypeBParams{1, 1, 5});
  CHECK_FALSE(esc::membership_sb(9, 50).has_value());
  CHECK_THROWS_AS(esc::membership_sb(7), std::invalid_argument);
}

TEST_CASE("type-B identities hold for every Pythagorean prime below 10^4",
          "[solver_b][slow]") {
  for (unsigned long n = 5; n < 10000; n += 4) {
    const Natural nn(n);
    if (!esc::is_prime(nn)) continue;
    const Natural k_value = (nn - 1) / 4;
    const auto hit = esc::membership_sb(nn);
    REQUIRE(hit.has_value());
    const TypeBParams& p = *hit;
    REQUIRE(p.mu * esc::beta(p.a) - p.a - p.d == k_value);

    const esc::TypeBSolution s = esc::expand_type_b(nn, p);
    REQUIRE(esc::verify_triple(nn, s.triple));
    REQUIRE(s.z == k_value + p.mu);
    REQUIRE(esc::beta(p.a) * s.z - nn * p.a == p.d);
    REQUIRE(esc::classify(nn, s.triple).kind == esc::SolutionKind::TypeB);
    // the factoring identity, type-B flavor
    const Natural lhs = esc::beta(p.a) * s.z - nn * p.a;
    const Natural rhs = esc::beta(p.a) * s.triple.y - nn * p.a;
    REQUIRE(lhs * rhs == nn * nn * p.a * p.a);
  }
}

TEST_CASE("every type-B oracle solution yields parameters", "[solver_b][slow]") {
  // Necessity direction: for each exhaustively found solution with exactly two
  // multiples of n, some assignment of x = a*n gives d = beta_a*z - n*a with
  // d | a^2 and (K + a + d)/beta_a = z - K, a positive integer.
  for (unsigned long n = 5; n < 2000; n += 4) {
    const Natural nn(n);
    if (!esc::is_prime(nn)) continue;
    const Natural k_value = (nn - 1) / 4;
    for (const esc::UnitFractionTriple& t : esc::brute_force_solutions(nn)) {
      if (esc::classify(nn, t).kind != esc::SolutionKind::TypeB) continue;
      std::vector<Natural> multiples, rest;
      for (const Natural& v : {t.x, t.y, t.z})
        (mpz_divisible_p(v.get_mpz_t(), nn.get_mpz_t()) ? multiples : rest).push_back(v);
      REQUIRE(multiples.size() == 2);
      const Natural& z = rest.front();
      bool extracted = false;
      for (const Natural& x : multiples) {
        const Natural a = x / nn;
        const Natural d = esc::beta(a) * z - nn * a;
        if (d < 1) continue;
        if (a * a % d != 0) continue;
        const Natural sum = k_value + a + d;
        if (sum % esc::beta(a) != 0) continue;
        const Natural mu = sum / esc::beta(a);
        if (mu < 1 || mu != z - k_value) continue;
        const esc::TypeBSolution s = esc::expand_type_b(nn, {a, d, mu});
        if (s.triple.sorted() == t.sorted()) extracted = true;
      }
      CAPTURE(n, t.x, t.y, t.z);
      REQUIRE(extracted);
    }
  }
}
