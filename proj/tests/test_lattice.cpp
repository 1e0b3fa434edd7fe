#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bordqft/lattice.hpp"
#include "oracles.hpp"

using namespace bordqft;

TEST_CASE("causal future/past against the fixed-point oracle") {
  LatticeSpacetime slab = LatticeSpacetime::slab(8, 0, 4);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    SiteSet seed;
    for (int k = 0; k < 3; ++k)
      seed.push_back(slab.site_at(int(rng() % uint64_t(slab.num_sites()))));
    site_normalize(seed);
    CHECK(causal_future(slab, seed) == oracle::closure_fixed_point(slab, seed, true));
    CHECK(causal_past(slab, seed) == oracle::closure_fixed_point(slab, seed, false));
  }
}

TEST_CASE("causal future basics") {
  LatticeSpacetime slab = LatticeSpacetime::slab(8, 0, 4);

  SUBCASE("empty seed") { CHECK(causal_future(slab, {}).empty()); }

  SUBCASE("full row generates everything above") {
    SiteSet row = slab.row(2);
    SiteSet fut = causal_future(slab, row);
    SiteSet expected;
    for (const Site& p : slab.sites())
      if (p.t >= 2) expected.push_back(p);
    CHECK(fut == expected);
  }

  SUBCASE("clipped light cone of a point in a 5x8 slab") {
    SiteSet cone = causal_future(slab, SiteSet{Site{0, 0}});
    // widths 1,3,5,7,8 for rows 0..4 (the cone closes around the circle)
    int expected = 1 + 3 + 5 + 7 + 8;
    CHECK(int(cone.size()) == expected);
  }

  SUBCASE("seed not in the region") {
    CHECK_THROWS_AS(causal_future(slab, SiteSet{Site{99, 0}}), SiteNotInSpacetime);
  }

  SUBCASE("monotone, idempotent, reflexive") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      SiteSet s1, s2;
      for (int k = 0; k < 2; ++k) s1.push_back(slab.site_at(int(rng() % 40)));
      site_normalize(s1);
      s2 = site_union(s1, SiteSet{slab.site_at(int(rng() % 40))});
      SiteSet f1 = causal_future(slab, s1);
      SiteSet f2 = causal_future(slab, s2);
      CHECK(site_subset(f1, f2));
      CHECK(site_subset(s1, f1));
      CHECK(causal_future(slab, f1) == f1);
    }
  }
}

TEST_CASE("causal convexity") {
  LatticeSpacetime slab = LatticeSpacetime::slab(8, 0, 4);

  SUBCASE("adjacent full rows are convex") {
    CHECK(is_causally_convex(slab, site_union(slab.row(1), slab.row(2))));
  }

  SUBCASE("two endpoints without the chain between them") {
    SiteSet s{Site{0, 0}, Site{2, 0}};
    CHECK_FALSE(is_causally_convex(slab, s));
    auto witness = causal_convexity_witness(slab, s);
    REQUIRE(witness.has_value());
    CHECK(witness->t == 1);
  }

  SUBCASE("intersections of causally convex sets stay convex") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
      int x1 = int(rng() % 8), x2 = int(rng() % 8);
      LatticeSpacetime d1 = LatticeSpacetime::diamond(8, Site{0, x1}, Site{4, x1});
      LatticeSpacetime d2 = LatticeSpacetime::diamond(8, Site{0, x2}, Site{4, x2});
      SiteSet both = site_intersection(d1.sites(), d2.sites());
      CHECK(is_causally_convex(slab, d1.sites()));
      CHECK(is_causally_convex(slab, both));
    }
  }
}

TEST_CASE("region validation") {
  CHECK_THROWS_AS(LatticeSpacetime(8, SiteSet{Site{0, 0}, Site{2, 0}}), ValidationError);
  // two causally disconnected diamonds: convex but not connected
  LatticeSpacetime d1 = LatticeSpacetime::diamond(12, Site{0, 0}, Site{2, 0});
  LatticeSpacetime d2 = LatticeSpacetime::diamond(12, Site{0, 6}, Site{2, 6});
  CHECK_THROWS_AS(LatticeSpacetime(12, site_union(d1.sites(), d2.sites())), ValidationError);
  // a single row is too thin
  LatticeSpacetime slab = LatticeSpacetime::slab(5, 0, 3);
  CHECK_THROWS_AS(LatticeSpacetime(5, slab.row(1)), ValidationError);
}

TEST_CASE("Cauchy rows") {
  LatticeSpacetime slab = LatticeSpacetime::slab(6, 0, 3);
  CHECK(slab.cauchy_rows() == std::vector<int>{0, 1, 2, 3});

  LatticeSpacetime dia = LatticeSpacetime::diamond(8, Site{0, 0}, Site{4, 0});
  for (int t : dia.cauchy_rows()) CHECK(dia.is_cauchy_row(t));
  CHECK(!dia.cauchy_rows().empty());

  CHECK_THROWS_AS(CauchyRow(slab, 9), NotACauchyRow);
}

TEST_CASE("region morphisms") {
  LatticeSpacetime slab4 = LatticeSpacetime::slab(6, 0, 4);
  LatticeSpacetime slab8 = LatticeSpacetime::slab(6, 0, 8);
  LatticeSpacetime dia = LatticeSpacetime::diamond(6, Site{0, 0}, Site{2, 0});

  SUBCASE("translation must land inside the target") {
    CHECK_THROWS_AS(LocMorphism(slab8, slab4, Translation{0, 0}), ValidationError);
    CHECK_NOTHROW(LocMorphism(slab4, slab8, Translation{3, 2}));
  }

  SUBCASE("Cauchy morphisms") {
    CHECK(is_cauchy_morphism(LocMorphism::identity(slab4)));
    CHECK(is_cauchy_morphism(LocMorphism(slab4, slab8, Translation{1, 1})));
    CHECK_FALSE(is_cauchy_morphism(LocMorphism(dia, slab4, Translation{1, 0})));
  }

  SUBCASE("factorization through the image") {
    LocMorphism f(dia, slab8, Translation{2, 3});
    auto [onto, incl] = f.factorize();
    CHECK(onto.image() == incl.source().sites());
    CHECK(incl.compose_after(onto) == f);
    CHECK(is_cauchy_morphism(onto));  // isomorphism onto its image
  }

  SUBCASE("causal disjointness") {
    LatticeSpacetime big = LatticeSpacetime::slab(10, -1, 5);
    LocMorphism f1(LatticeSpacetime::diamond(10, Site{0, 0}, Site{2, 0}), big, Translation{0, 0});
    LocMorphism f2(LatticeSpacetime::diamond(10, Site{0, 5}, Site{2, 5}), big, Translation{0, 0});
    CHECK_FALSE(causally_disjoint(f1, f1));
    CHECK(causally_disjoint(f1, f2));
    CHECK(causally_disjoint(f2, f1));  // symmetry
    // shift the second cone until the lightcones overlap
    LocMorphism f3(LatticeSpacetime::diamond(10, Site{0, 5}, Site{2, 5}), big, Translation{2, 7});
    CHECK_FALSE(causally_disjoint(f1, f3));
    LocMorphism other(LatticeSpacetime::slab(10, 0, 2), LatticeSpacetime::slab(10, 0, 4),
                      Translation{0, 0});
    CHECK_THROWS_AS(causally_disjoint(f1, other), TargetMismatch);
  }

  SUBCASE("one-dimensional regions: every morphism is Cauchy") {
    LatticeSpacetime line5 = LatticeSpacetime::slab(0, 0, 5);
    LatticeSpacetime line9 = LatticeSpacetime::slab(0, -2, 7);
    for (int dt = -2; dt + 5 <= 7; ++dt)
      CHECK(is_cauchy_morphism(LocMorphism(line5, line9, Translation{dt, 0})));
  }
}

TEST_CASE("text literal roundtrip") {
  LatticeSpacetime dia = LatticeSpacetime::diamond(9, Site{0, 4}, Site{4, 4});
  LatticeSpacetime back = LatticeSpacetime::from_text(dia.to_text());
  CHECK(back == dia);

  LatticeSpacetime parsed = LatticeSpacetime::from_text("L=4\nt=0: 0-3\nt=1: 0-3\n");
  CHECK(parsed == LatticeSpacetime::slab(4, 0, 1));

  CHECK_THROWS_AS(LatticeSpacetime::from_text("t=0: 0-3\n"), ValidationError);
}
