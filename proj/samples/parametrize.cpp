// Minimal library walkthrough: take a Pythagorean prime, produce one type-A
// and one type-B solution, and show the identities they satisfy.

#include <iostream>

#include "esc/esc.hpp"

int main(int argc, char** argv) {
  const esc::Natural n = argc > 1 ? esc::parse_natural(argv[1]) : esc::Natural(560281);
  const esc::EscTarget target = esc::EscTarget::of(n);
  if (!target.k) {
    std::cerr << n << " is not congruent 1 (mod 4); nothing to parametrize\n";
    return 1;
  }
  const esc::Natural k_value = *target.k;
  std::cout << "n = " << n << ", K = " << k_value
            << (target.is_pythagorean_prime ? " (Pythagorean prime)\n" : "\n");

  if (auto pa = esc::membership_sa(n)) {
    const esc::TypeASolution s = esc::expand_type_a(n, *pa);
    std::cout << "type A: b=" << pa->b << " mu=" << pa->mu << " kappa=" << pa->kappa
              << "\n  a=" << s.a << " d=" << s.d << "\n  4/" << n << " = 1/" << s.triple.x
              << " + 1/" << s.triple.y << " + 1/" << s.triple.z << "\n"
              << "  beta_b*z == a + d: " << (esc::beta(pa->b) * s.z == s.a + s.d) << "\n";
  } else {
    std::cout << "no S_A representation (exhaustive)\n";
  }

  if (auto pb = esc::membership_sb(n)) {
    const esc::TypeBSolution s = esc::expand_type_b(n, *pb);
    std::cout << "type B: a=" << pb->a << " d=" << pb->d << " mu=" << pb->mu << "\n  4/" << n
              << " = 1/" << s.triple.x << " + 1/" << s.triple.y << " + 1/" << s.triple.z
              << "\n  beta_a*z - n*a == d: "
              << (esc::beta(pb->a) * s.z - n * pb->a == pb->d) << "\n";
  } else {
    std::cout << "no S_B representation within the default bound\n";
  }
  return 0;
}
