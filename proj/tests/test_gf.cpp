#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gf.hpp"

using hk::GF;

TEST_CASE("prime fields") {
  for (int p : {2, 3, 5}) {
    GF F(p, 1);
    CHECK(F.size() == (uint32_t)p);
    for (uint32_t a = 0; a < F.size(); ++a) {
      CHECK(F.add(a, F.zero()) == a);
      CHECK(F.mul(a, F.one()) == a);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == F.one());
    }
  }
}

TEST_CASE("F4 structure") {
  GF F(2, 2);
  CHECK(F.size() == 4);
  // modulus t^2 + t + 1 is the least irreducible over F_2
  CHECK(F.modulus() == std::vector<int>{1, 1});
  uint32_t t = 2;  // encoding of the generator
  CHECK(F.mul(t, t) == F.add(t, 1));  // t^2 = t + 1
  CHECK(F.pow(t, 3) == 1);
}

TEST_CASE("field axioms exhaustively on F8, F9, F16") {
  for (auto [p, d] : {std::pair{2, 3}, {3, 2}, {2, 4}}) {
    GF F(p, d);
    for (uint32_t a = 0; a < F.size(); ++a)
      for (uint32_t b = 0; b < F.size(); ++b) {
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        CHECK(F.sub(F.add(a, b), b) == a);
        if (b != 0) CHECK(F.mul(F.mul(a, b), F.inv(b)) == a);
      }
    // distributivity on a sample grid
    for (uint32_t a = 0; a < F.size(); ++a)
      for (uint32_t b = 0; b < F.size(); ++b) {
        uint32_t c = (a * 7 + b * 3 + 1) % F.size();
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      }
  }
}

TEST_CASE("frobenius and multiplicative order") {
  GF F(2, 4);
  for (uint32_t a = 0; a < F.size(); ++a) {
    CHECK(F.pow(a, 16) == a);                   // x^(p^d) = x
    CHECK(F.frob_p(F.frob_p(F.frob_p(F.frob_p(a)))) == a);
  }
}

TEST_CASE("embedding F4 into F16") {
  GF F16(2, 4), F4(2, 2);
  uint32_t r = F16.embed_root(F4);
  // r satisfies r^2 + r + 1 = 0 in F16
  CHECK(F16.add(F16.add(F16.mul(r, r), r), F16.one()) == 0);
  // embedding is a ring homomorphism
  for (uint32_t a = 0; a < 4; ++a)
    for (uint32_t b = 0; b < 4; ++b) {
      CHECK(F16.embed(F4, F4.add(a, b), r) ==
            F16.add(F16.embed(F4, a, r), F16.embed(F4, b, r)));
      CHECK(F16.embed(F4, F4.mul(a, b), r) ==
            F16.mul(F16.embed(F4, a, r), F16.embed(F4, b, r)));
    }
  // injective
  CHECK(F16.embed(F4, 2, r) != F16.embed(F4, 3, r));
}
