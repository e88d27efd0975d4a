#include <doctest.h>

#include "cosets/prng.hpp"
#include "cosets/scalars.hpp"

using namespace cosets;

TEST_CASE("rational arithmetic is exact and canonical") {
  Rational a(2, 4);
  CHECK(a == Rational(1, 2));
  CHECK(a.num() == 1);
  CHECK(a.den() == 2);
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(3, -6).den() == 2);  // positive denominator
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
  CHECK(Rational(1) / Rational(7, 2) == Rational(2, 7));
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
  CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("rational string round trip") {
  CHECK(Rational(5, 3).str() == "5/3");
  CHECK(Rational(-7).str() == "-7");
  CHECK(Rational::parse("5/3") == Rational(5, 3));
  CHECK(Rational::parse("-14/6") == Rational(-7, 3));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);

  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational r(rng.rangeInclusive(-50, 50), rng.rangeInclusive(1, 30));
    CHECK(Rational::parse(r.str()) == r);
  }
}

TEST_CASE("gaussian rationals") {
  GaussRational i(Rational(0), Rational(1));
  CHECK(i * i == GaussRational(-1));
  GaussRational z(Rational(1, 2), Rational(-3, 4));
  CHECK(z * z.conj() == GaussRational(z.normSq()));
  CHECK(z / z == GaussRational(1));
  CHECK((z + z.conj()) == GaussRational(Rational(1)));

  CHECK(z.str() == "1/2-3/4*i");
  CHECK(GaussRational(Rational(0), Rational(2, 3)).str() == "2/3*i");
  CHECK(GaussRational(Rational(5)).str() == "5");
  CHECK(GaussRational(Rational(0)).str() == "0");

  SplitMix64 rng(11);
  for (int k = 0; k < 200; ++k) {
    GaussRational w(Rational(rng.rangeInclusive(-20, 20), rng.rangeInclusive(1, 9)),
                    Rational(rng.rangeInclusive(-20, 20), rng.rangeInclusive(1, 9)));
    CHECK(GaussRational::parse(w.str()) == w);
  }
  CHECK(GaussRational::parse("i") == i);
  CHECK(GaussRational::parse("-i") == -i);
  CHECK_THROWS_AS(GaussRational::parse("1+2"), Error);
}
