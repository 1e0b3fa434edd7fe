#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bordqft/json_io.hpp"
#include "bordqft/kleingordon.hpp"
#include "oracles.hpp"

using namespace bordqft;

namespace {

Field random_field(const LatticeSpacetime& m, const SiteSet& support, std::mt19937_64& rng) {
  Field f(m);
  for (const Site& p : support) f.at(p) = Rat(int(rng() % 9) - 4);
  return f;
}

}  // namespace

TEST_CASE("wave operator") {
  LatticeSpacetime slab = LatticeSpacetime::slab(6, 0, 4);

  SUBCASE("zero field") { CHECK(apply_P(slab, Field(slab), Rat(0)).is_zero()); }

  SUBCASE("a massless constant is a solution") {
    Field one(slab);
    for (auto& v : one.values) v = 1;
    CHECK(apply_P(slab, one, Rat(0)).is_zero());
  }

  SUBCASE("delta columns match the assembled stencil matrix") {
    RatMat assembled = oracle::assemble_wave_matrix(slab, Rat(1, 4));
    SiteSet interior = stencil_interior(slab);
    for (const Site& q : slab.sites()) {
      Field col = apply_P(slab, Field::delta(slab, q), Rat(1, 4));
      for (size_t r = 0; r < interior.size(); ++r)
        CHECK(col.at(interior[r]) == assembled.at(int(r), slab.site_index(q)));
    }
  }
}

TEST_CASE("retarded fundamental solution, frozen values") {
  // massless unit source at (0,0) on a wide cylinder
  LatticeSpacetime slab = LatticeSpacetime::slab(8, -1, 4);
  Field delta = Field::delta(slab, Site{0, 0});
  Field g = green_retarded(slab, delta, Rat(0));
  CHECK(g.at(Site{1, 0}) == 1);
  CHECK(g.at(Site{2, 1}) == 1);
  CHECK(g.at(Site{2, 7}) == 1);  // x = -1 on the circle
  CHECK(g.at(Site{2, 0}) == 0);
  CHECK(g.at(Site{3, 0}) == 1);
  CHECK(g.at(Site{3, 2}) == 1);
  CHECK(g.at(Site{3, 6}) == 1);
  CHECK(g.at(Site{3, 1}) == 0);
  for (const Site& p : slab.row(-1)) CHECK(g.at(p) == 0);
  for (const Site& p : slab.row(0)) CHECK(g.at(p) == 0);
}

TEST_CASE("green operators against the leapfrog oracle") {
  std::mt19937_64 rng(17);
  for (const Rat& m0sq : {Rat(0), Rat(1, 4), Rat(1)}) {
    LatticeSpacetime slab = LatticeSpacetime::slab(5, 0, 6);
    SiteSet interior = stencil_interior(slab);
    for (int trial = 0; trial < 5; ++trial) {
      Field src = random_field(slab, interior, rng);
      Field mine = green_retarded(slab, src, m0sq);
      Field ref = oracle::leapfrog_retarded(slab, src, m0sq);
      CHECK(mine.values == ref.values);
    }
  }
}

TEST_CASE("green operator axioms") {
  std::mt19937_64 rng(23);
  for (const Rat& m0sq : {Rat(0), Rat(1, 4)}) {
    LatticeSpacetime slab = LatticeSpacetime::slab(6, 0, 6);
    SiteSet interior = stencil_interior(slab);
    SiteSet deep = deep_interior(slab);

    SUBCASE("zero source") {
      CHECK(green_retarded(slab, Field(slab), m0sq).is_zero());
      CHECK(green_advanced(slab, Field(slab), m0sq).is_zero());
    }

    // P G = id on sources, G P = id on deep fields
    Field src = random_field(slab, interior, rng);
    Field gp = green_retarded(slab, src, m0sq);
    Field back = apply_P(slab, gp, m0sq);
    for (const Site& p : interior) CHECK(back.at(p) == src.at(p));

    Field phi = random_field(slab, deep, rng);
    Field pphi = apply_P(slab, phi, m0sq);
    CHECK(green_retarded(slab, pphi, m0sq).values == phi.values);
    CHECK(green_advanced(slab, pphi, m0sq).values == phi.values);

    // support containment, against the closure oracle
    for (int trial = 0; trial < 6; ++trial) {
      Site p = interior[rng() % interior.size()];
      Field d = Field::delta(slab, p);
      CHECK(site_subset(green_retarded(slab, d, m0sq).support(),
                        oracle::closure_fixed_point(slab, SiteSet{p}, true)));
      CHECK(site_subset(green_advanced(slab, d, m0sq).support(),
                        oracle::closure_fixed_point(slab, SiteSet{p}, false)));
    }
  }

  SUBCASE("boundary-touching sources are rejected") {
    LatticeSpacetime slab = LatticeSpacetime::slab(4, 0, 3);
    CHECK_THROWS_AS(green_retarded(slab, Field::delta(slab, Site{0, 0}), Rat(0)),
                    SourceTouchesBoundary);
  }
}

TEST_CASE("causal propagator") {
  LatticeSpacetime slab = LatticeSpacetime::slab(7, 0, 6);
  std::mt19937_64 rng(5);
  SiteSet interior = stencil_interior(slab);
  SiteSet deep = deep_interior(slab);

  SUBCASE("kernel of the quotient: G P phi vanishes") {
    Field phi = random_field(slab, deep, rng);
    Field gp = causal_propagator(slab, apply_P(slab, phi, Rat(1)), Rat(1));
    CHECK(gp.is_zero());
  }

  SUBCASE("propagates solutions") {
    Field src = random_field(slab, interior, rng);
    Field g = causal_propagator(slab, src, Rat(1, 4));
    Field pg = apply_P(slab, g, Rat(1, 4));
    CHECK(pg.is_zero());
  }

  SUBCASE("pairing antisymmetry by direct summation") {
    for (int trial = 0; trial < 8; ++trial) {
      Field f1 = random_field(slab, interior, rng);
      Field f2 = random_field(slab, interior, rng);
      Rat a = pairing(f1, causal_propagator(slab, f2, Rat(1, 4)));
      Rat b = pairing(f2, causal_propagator(slab, f1, Rat(1, 4)));
      CHECK(a == -b);
    }
  }

  SUBCASE("massless delta: retarded minus advanced cone") {
    LatticeSpacetime wide = LatticeSpacetime::slab(9, -3, 3);
    Field d = Field::delta(wide, Site{0, 0});
    Field g = causal_propagator(wide, d, Rat(0));
    Field plus = green_retarded(wide, d, Rat(0));
    Field minus = green_advanced(wide, d, Rat(0));
    for (int i = 0; i < wide.num_sites(); ++i)
      CHECK(g.values[size_t(i)] == plus.values[size_t(i)] - minus.values[size_t(i)]);
    CHECK(!site_intersection(plus.support(), minus.support()).size());
  }
}

TEST_CASE("exact fraction serialization") {
  LatticeSpacetime slab = LatticeSpacetime::slab(3, 0, 2);
  Field f(slab);
  f.at(Site{1, 2}) = Rat(-3, 7);
  Json j = field_to_json(f);
  CHECK(j.at("values").size() == 1);
  CHECK(j.at("values")[0].at("value") == "-3/7");
  RatMat m(1, 2);
  m.at(0, 1) = Rat(5, 2);
  CHECK(matrix_to_json(m)[0][1] == "5/2");
  CHECK(rat_from_json(Json("5/2")) == Rat(5, 2));
}

TEST_CASE("restriction compatibility on a causally convex subregion") {
  // the fundamental solution of a diamond is the restriction of the ambient
  // one whenever the source sits inside the diamond
  LatticeSpacetime slab = LatticeSpacetime::slab(9, -1, 5);
  LatticeSpacetime dia = LatticeSpacetime::diamond(9, Site{0, 0}, Site{4, 0});
  Field d_src = Field::delta(dia, Site{1, 0});
  REQUIRE(site_contains(stencil_interior(dia), Site{1, 0}));
  Field g_dia = green_retarded(dia, d_src, Rat(1, 4));
  Field g_amb = green_retarded(slab, Field::delta(slab, Site{1, 0}), Rat(1, 4));
  for (const Site& p : dia.sites()) CHECK(g_dia.at(p) == g_amb.at(p));
}

TEST_CASE("observables space") {
  SUBCASE("four-row slab of circumference six has dimension twelve") {
    ObservablesSpace obs(LatticeSpacetime::slab(6, 0, 4), Rat(0));
    CHECK(obs.space().dim == 12);
  }

  SUBCASE("dimension equals interior minus image rank (elimination oracle)") {
    for (const Rat& m0sq : {Rat(0), Rat(1)}) {
      LatticeSpacetime slab = LatticeSpacetime::slab(4, 0, 5);
      ObservablesSpace obs(slab, m0sq);
      SiteSet interior = stencil_interior(slab);
      SiteSet deep = deep_interior(slab);
      std::vector<std::vector<Rat>> rows;
      for (const Site& q : deep) {
        Field pd = apply_P(slab, Field::delta(slab, q), m0sq);
        std::vector<Rat> row;
        for (const Site& p : interior) row.push_back(pd.at(p));
        rows.push_back(std::move(row));
      }
      int rank = oracle::elimination_rank(rows);
      CHECK(obs.space().dim == int(interior.size()) - rank);
    }
  }

  SUBCASE("operator images vanish in the quotient") {
    LatticeSpacetime slab = LatticeSpacetime::slab(5, 0, 5);
    ObservablesSpace obs(slab, Rat(1, 4));
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 6; ++trial) {
      Field chi = random_field(slab, obs.deep(), rng);
      RatVec cls = obs.class_of(apply_P(slab, chi, Rat(1, 4)));
      for (const Rat& v : cls) CHECK(v == 0);
    }
  }

  SUBCASE("pairing on basis classes is the propagator kernel") {
    LatticeSpacetime slab = LatticeSpacetime::slab(4, 0, 4);
    ObservablesSpace obs(slab, Rat(0));
    for (int j = 0; j < obs.space().dim; ++j) {
      Field g = causal_propagator(slab, Field::delta(slab, obs.basis_site(j)), Rat(0));
      for (int i = 0; i < obs.space().dim; ++i)
        CHECK(obs.space().form.at(i, j) == g.at(obs.basis_site(i)));
    }
  }

  SUBCASE("degenerate region") {
    CHECK_THROWS_AS(ObservablesSpace(LatticeSpacetime::slab(4, 0, 1), Rat(0)), DegenerateRegion);
  }
}

TEST_CASE("solutions and data spaces") {
  LatticeSpacetime slab = LatticeSpacetime::slab(5, 0, 6);
  const Rat m0sq(1, 4);

  SUBCASE("canonical data pairing") {
    PoissonSpace data = data_space(slab, 2);
    // tau((delta_x, 0), (0, delta_x)) = 1
    for (int x = 0; x < 5; ++x) CHECK(data.form.at(x, 5 + x) == 1);
    CHECK(data.nondegenerate());
  }

  SUBCASE("solution spaces have dimension 2L") {
    SolutionsSpace sol(slab, m0sq);
    CHECK(sol.space().dim == 10);
    CHECK(sol.space().nondegenerate());
  }

  SUBCASE("current conservation for random solution pairs") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 6; ++trial) {
      RatVec phi1(5), pi1(5), phi2(5), pi2(5);
      for (int x = 0; x < 5; ++x) {
        phi1[size_t(x)] = Rat(int(rng() % 7) - 3);
        pi1[size_t(x)] = Rat(int(rng() % 7) - 3);
        phi2[size_t(x)] = Rat(int(rng() % 7) - 3);
        pi2[size_t(x)] = Rat(int(rng() % 7) - 3);
      }
      Field s1 = solve_from_data(slab, 0, phi1, pi1, m0sq);
      Field s2 = solve_from_data(slab, 0, phi2, pi2, m0sq);
      Rat ref = symplectic_current(s1, s2, 0);
      for (int t = 1; t < 6; ++t) CHECK(symplectic_current(s1, s2, t) == ref);
    }
  }

  SUBCASE("marked rows must be full Cauchy rows with a successor") {
    CHECK_THROWS_AS(data_space(slab, 6), NotACauchyRow);
    LatticeSpacetime dia = LatticeSpacetime::diamond(8, Site{0, 0}, Site{4, 0});
    CHECK_THROWS_AS(data_space(dia, 1), NotACauchyRow);
    CHECK_THROWS_AS(solutions_space(dia, m0sq), NotACauchyRow);
  }
}

TEST_CASE("the chain of Poisson isomorphisms") {
  LatticeSpacetime slab = LatticeSpacetime::slab(4, 0, 5);
  const Rat m0sq(1, 4);
  IsoChain chain = iso_chain(slab, 2, m0sq);  // constructors check form pullback

  SUBCASE("restriction after propagation gives the propagator data") {
    ObservablesSpace obs(slab, m0sq);
    for (int j = 0; j < obs.space().dim; ++j) {
      Field g = causal_propagator(slab, Field::delta(slab, obs.basis_site(j)), m0sq);
      RatVec expected;
      for (const Site& p : slab.row(2)) expected.push_back(g.at(p));
      for (const Site& p : slab.row(2))
        expected.push_back(g.at(p) - g.at(Site{3, p.x}));
      RatVec coords(size_t(obs.space().dim));
      coords[size_t(j)] = 1;
      RatVec got = chain.res.matrix.apply(chain.propagator.matrix.apply(coords));
      CHECK(got == expected);
    }
  }

  SUBCASE("the composite is exactly invertible") {
    PoissonMap through = chain.res.compose_after(chain.propagator);
    RatMat inv = through.matrix.inverse();
    CHECK(inv * through.matrix == RatMat::identity(through.src.dim));
  }
}

TEST_CASE("functorial maps") {
  const Rat m0sq(0);
  LatticeSpacetime small = LatticeSpacetime::slab(4, 0, 4);
  LatticeSpacetime big = LatticeSpacetime::slab(4, -1, 7);

  SUBCASE("identity morphism gives identity matrices") {
    FunctorialMaps maps = functorial_maps(LocMorphism::identity(small), m0sq, 1);
    CHECK(maps.on_observables.matrix == RatMat::identity(maps.on_observables.src.dim));
    REQUIRE(maps.on_solutions.has_value());
    REQUIRE(maps.on_data.has_value());
    CHECK(maps.on_solutions->matrix == RatMat::identity(maps.on_solutions->src.dim));
    CHECK(maps.on_data->matrix == RatMat::identity(maps.on_data->src.dim));
  }

  SUBCASE("pure translations act on data by a permutation") {
    LocMorphism f(small, big, Translation{1, 3});
    PoissonMap dmap = data_map(f, 1);
    for (int c = 0; c < dmap.matrix.cols(); ++c) {
      int ones = 0;
      for (int r = 0; r < dmap.matrix.rows(); ++r) {
        CHECK((dmap.matrix.at(r, c) == 0 || dmap.matrix.at(r, c) == 1));
        if (dmap.matrix.at(r, c) == 1) ++ones;
      }
      CHECK(ones == 1);
    }
  }

  SUBCASE("restriction intertwines solution transport and data relabeling") {
    LocMorphism f(small, big, Translation{2, 1});
    PoissonMap sol_f = solutions_map(f, m0sq);
    SolutionsSpace src_sol(small, m0sq), tgt_sol(big, m0sq);
    PoissonMap res_src = restriction_map(src_sol, 1);
    PoissonMap res_tgt = restriction_map(tgt_sol, 1 + 2);
    PoissonMap data_f = data_map(f, 1);
    CHECK(res_tgt.matrix * sol_f.matrix == data_f.matrix * res_src.matrix);
  }

  SUBCASE("all three maps are isomorphisms along Cauchy morphisms") {
    LocMorphism f(small, big, Translation{1, 2});
    FunctorialMaps maps = functorial_maps(f, m0sq, 0);
    CHECK(maps.on_observables.matrix.is_invertible());
    CHECK(maps.on_solutions->matrix.is_invertible());
    CHECK(maps.on_data->matrix.is_invertible());
  }

  SUBCASE("non-Cauchy embeddings only transport observables") {
    // on a wide circle the diamond misses every full row
    LatticeSpacetime wide_slab = LatticeSpacetime::slab(10, -1, 7);
    LatticeSpacetime dia = LatticeSpacetime::diamond(10, Site{0, 0}, Site{4, 0});
    LocMorphism j(dia, wide_slab, Translation{0, 0});
    CHECK_THROWS_AS(solutions_map(j, m0sq), NotCauchy);
    CHECK_THROWS_AS(data_map(j, 1), NotCauchy);
    FunctorialMaps maps = functorial_maps(j, m0sq);
    CHECK_FALSE(maps.on_solutions.has_value());
    CHECK(maps.on_observables.matrix.rows() > 0);
  }

  SUBCASE("causally disjoint supports pair to zero") {
    LatticeSpacetime wide = LatticeSpacetime::slab(10, 0, 4);
    Field phi1 = Field::delta(wide, Site{2, 0});
    Field phi2 = Field::delta(wide, Site{2, 5});
    CHECK(pairing(phi1, causal_propagator(wide, phi2, m0sq)) == 0);
  }
}
