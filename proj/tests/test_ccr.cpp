#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bordqft/ccr.hpp"
#include "oracles.hpp"

using namespace bordqft;

namespace {

PoissonSpace standard_space(int half) {
  PoissonSpace v;
  v.dim = 2 * half;
  for (int i = 0; i < v.dim; ++i) v.basis_labels.push_back("e" + std::to_string(i));
  v.form = RatMat(v.dim, v.dim);
  for (int i = 0; i < half; ++i) {
    v.form.at(i, half + i) = 1;
    v.form.at(half + i, i) = -1;
  }
  v.validate();
  return v;
}

Word random_word(std::mt19937_64& rng, int dim, int len) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(int(rng() % uint64_t(dim)));
  return w;
}

}  // namespace

TEST_CASE("normal ordering") {
  CCRAlgebra alg(standard_space(2));

  SUBCASE("letters and the unit are fixed points") {
    for (int i = 0; i < 4; ++i) CHECK(alg.generator(i) == alg.generator(i));
    std::map<Word, GaussRat> raw{{Word{}, GaussRat(Rat(2))}, {Word{3, 1}, GaussRat(Rat(1))}};
    CCRElement e = alg.normal_form(raw);
    CHECK(e.terms().size() == 2);
    CHECK(e.terms().count(Word{3, 1}) == 1);
  }

  SUBCASE("the defining relation") {
    // e0 e2 -> e2 e0 + i tau(0,2) with tau(0,2) = 1
    CCRElement prod = alg.multiply(alg.generator(0), alg.generator(2));
    std::map<Word, GaussRat> expected{{Word{2, 0}, GaussRat(Rat(1))},
                                      {Word{}, GaussRat::i()}};
    CHECK(prod.terms() == expected);
  }

  SUBCASE("random words agree with the exhaustive swap tree") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
      Word w = random_word(rng, 4, 4);
      std::map<Word, GaussRat> raw{{w, GaussRat(Rat(1), Rat(1))}};
      CCRElement mine = alg.normal_form(raw);
      auto expected = oracle::swap_tree_normal_form(alg.space(), w, GaussRat(Rat(1), Rat(1)));
      CHECK(mine.terms() == expected);
    }
  }

  SUBCASE("reduction strategy does not matter") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
      Word w = random_word(rng, 4, 5);
      std::map<Word, GaussRat> raw{{w, GaussRat(Rat(3), Rat(-2))}};
      CCRElement first = alg.normal_form(raw, RewriteStrategy::FirstAscent);
      CCRElement last = alg.normal_form(raw, RewriteStrategy::LastAscent);
      CCRElement rnd = alg.normal_form(raw, RewriteStrategy::RandomAscent, &rng);
      CHECK(first == last);
      CHECK(first == rnd);
    }
  }

  SUBCASE("letters must index the basis") {
    std::map<Word, GaussRat> raw{{Word{7}, GaussRat(Rat(1))}};
    CHECK_THROWS_AS(alg.normal_form(raw), IndexOutOfRange);
    CHECK_THROWS_AS(alg.generator(-1), IndexOutOfRange);
  }
}

TEST_CASE("algebra operations") {
  CCRAlgebra alg(standard_space(2));
  std::mt19937_64 rng(47);

  SUBCASE("unit is neutral") {
    for (int trial = 0; trial < 10; ++trial) {
      CCRElement a = alg.random_element(rng, 3);
      CHECK(alg.multiply(alg.one(), a) == a);
      CHECK(alg.multiply(a, alg.one()) == a);
    }
  }

  SUBCASE("commutators of generators are the form") {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CCRElement comm = alg.commutator(alg.generator(i), alg.generator(j));
        CCRElement expected = alg.scalar(GaussRat::i() * GaussRat(alg.space().form.at(i, j)));
        CHECK(comm == expected);
      }
  }

  SUBCASE("star is an anti-involution fixing generators") {
    for (int i = 0; i < 4; ++i) CHECK(alg.star(alg.generator(i)) == alg.generator(i));
    for (int trial = 0; trial < 12; ++trial) {
      CCRElement a = alg.random_element(rng, 3);
      CCRElement b = alg.random_element(rng, 3);
      CHECK(alg.star(alg.multiply(a, b)) == alg.multiply(alg.star(b), alg.star(a)));
      CHECK(alg.star(alg.star(a)) == a);
    }
  }

  SUBCASE("commuting block stays commutative") {
    PoissonSpace degenerate;
    degenerate.dim = 3;
    degenerate.basis_labels = {"a", "b", "c"};
    degenerate.form = RatMat(3, 3);
    CCRAlgebra comm_alg(degenerate);
    std::mt19937_64 r2(3);
    for (int trial = 0; trial < 10; ++trial) {
      CCRElement a = comm_alg.random_element(r2, 3);
      CCRElement b = comm_alg.random_element(r2, 3);
      CHECK(comm_alg.commutator(a, b).is_zero());
    }
  }

  SUBCASE("parents must match") {
    CCRAlgebra other(standard_space(1));
    CHECK_THROWS_AS(alg.multiply(alg.one(), other.one()), ParentMismatch);
  }
}

TEST_CASE("induced morphisms") {
  CCRAlgebra alg(standard_space(2));
  std::mt19937_64 rng(53);

  SUBCASE("identity map acts as the identity") {
    CCRMorphism id(alg, alg, PoissonMap::identity(alg.space()));
    for (int trial = 0; trial < 8; ++trial) {
      CCRElement a = alg.random_element(rng, 3);
      CHECK(id.apply(a) == a);
    }
  }

  SUBCASE("only form-preserving matrices induce morphisms") {
    RatMat bad = RatMat::identity(4);
    bad.at(0, 0) = 2;  // scaling one leg breaks the pairing
    CHECK_THROWS_AS(PoissonMap(alg.space(), alg.space(), bad), NotPoisson);
  }

  SUBCASE("functoriality and the homomorphism property") {
    // a symplectic rotation: e0 -> e2, e2 -> -e0, fixing e1, e3
    RatMat rot(4, 4);
    rot.at(2, 0) = 1;
    rot.at(0, 2) = -1;
    rot.at(1, 1) = 1;
    rot.at(3, 3) = 1;
    PoissonMap pm(alg.space(), alg.space(), rot);
    CCRMorphism f(alg, alg, pm);
    CCRMorphism ff = f.compose_after(f);
    for (int trial = 0; trial < 8; ++trial) {
      CCRElement a = alg.random_element(rng, 3);
      CCRElement b = alg.random_element(rng, 3);
      CHECK(f.apply(alg.multiply(a, b)) == alg.multiply(f.apply(a), f.apply(b)));
      CHECK(ff.apply(a) == f.apply(f.apply(a)));
      CHECK(f.apply(alg.star(a)) == alg.star(f.apply(a)));
    }
    CHECK(f.is_invertible());
    CCRMorphism inv = f.inverse();
    for (int trial = 0; trial < 5; ++trial) {
      CCRElement a = alg.random_element(rng, 3);
      CHECK(inv.apply(f.apply(a)) == a);
    }
  }

  SUBCASE("elements of a different algebra are rejected") {
    CCRAlgebra other(standard_space(1));
    CCRMorphism id(alg, alg, PoissonMap::identity(alg.space()));
    CHECK_THROWS_AS(id.apply(other.one()), ParentMismatch);
  }
}

TEST_CASE("element literals") {
  CCRAlgebra alg(standard_space(2));

  SUBCASE("documented syntax") {
    CCRElement parsed = alg.parse("(1+2i)*e3.e1 + (0+1i)*1");
    CCRElement built = alg.add(
        alg.scale(GaussRat(Rat(1), Rat(2)), alg.multiply(alg.generator(3), alg.generator(1))),
        alg.scalar(GaussRat::i()));
    CHECK(parsed == built);
  }

  SUBCASE("bare words, signs and fractions") {
    CHECK(alg.parse("e2") == alg.generator(2));
    CHECK(alg.parse("1") == alg.one());
    CHECK(alg.parse("e0.e2 - e0.e2").is_zero());
    CCRElement half = alg.parse("(1/2+0i)*e1");
    CHECK(half == alg.scale(GaussRat(Rat(1, 2)), alg.generator(1)));
    // non-normal input is normalized on parse
    CHECK(alg.parse("e0.e2") == alg.multiply(alg.generator(0), alg.generator(2)));
  }

  SUBCASE("malformed literals") {
    CHECK_THROWS_AS(alg.parse("(1+2i)*"), ValidationError);
    CHECK_THROWS_AS(alg.parse("e"), ValidationError);
    CHECK_THROWS_AS(alg.parse("(1+2j)*e1"), ValidationError);
  }
}
