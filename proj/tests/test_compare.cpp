#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bordqft/compare.hpp"
#include "bordqft/suites.hpp"
#include "oracles.hpp"

using namespace bordqft;

namespace {

CompareConfig small_config() {
  CompareConfig c;
  c.circumference = 4;
  c.t_max = 8;
  c.mass_squared = Rat(1, 4);
  c.seed = 5;
  c.max_degree = 3;
  return c;
}

}  // namespace

TEST_CASE("algebraic instance axioms") {
  CompareConfig cc = small_config();
  cc.circumference = 8;
  AqftInstance a = build_aqft_kg(cc);
  auto results = check_aqft_axioms(a, 20);
  for (const CheckResult& r : results) {
    INFO(r.check << " @ " << r.instance_key << " lhs=" << r.lhs << " rhs=" << r.rhs);
    CHECK(r.status);
  }
}

TEST_CASE("underlying functorial theory of the algebraic one") {
  auto ctx = std::make_shared<KgContext>(Rat(0));
  const int L = 4;
  std::vector<BordObject> objects;
  objects.emplace_back(LatticeSpacetime::slab(L, 0, 4), 0);
  objects.emplace_back(LatticeSpacetime::slab(L, 0, 4), 2);
  AqftInstance a;
  a.ctx = ctx;
  a.assign = [ctx](const LocMorphism& f) { return ctx->obs_map(f); };
  FftInstance fa = fft_from_aqft(a, objects);

  SUBCASE("identity classes act as identities") {
    for (const BordObject& o : objects) {
      PoissonMap u = fa.assign(BordClassKey{o, o, 0, 0});
      CHECK(u.matrix == RatMat::identity(u.src.dim));
    }
  }

  SUBCASE("companion classes evaluate to the transported morphism") {
    // the class of (M', g, id) for a full translation g: M -> M'
    LatticeSpacetime src_m = LatticeSpacetime::slab(L, 0, 4);
    LatticeSpacetime tgt_m = LatticeSpacetime::slab(L, -1, 4);
    BordObject src(src_m, 1);
    BordObject tgt(tgt_m, 1);
    BordClassKey key{src, tgt, 0, L - 1};  // rotation of a companion is -dx
    PoissonMap through = fa.assign(key);
    PoissonMap direct = a.assign(LocMorphism(src_m, tgt_m, Translation{0, 1}));
    CHECK(through.matrix == direct.matrix);
  }

  SUBCASE("every class lands on an isomorphism") {
    for (const BordClassKey& key : generate_class_keys(objects, 2))
      CHECK(fa.assign(key).matrix.is_invertible());
  }

  SUBCASE("class functoriality") {
    auto results = check_fft_functoriality(fa, generate_class_keys(objects, 1));
    for (const CheckResult& r : results) {
      INFO(r.check << " @ " << r.instance_key);
      CHECK(r.status);
    }
  }

  SUBCASE("failing invertibility is reported as a time-slice violation") {
    // a theory that collapses everything: all values live on a space with
    // vanishing pairing and all morphisms are the zero map
    AqftInstance broken = a;
    broken.assign = [](const LocMorphism&) {
      PoissonSpace null_space;
      null_space.dim = 2;
      null_space.basis_labels = {"a", "b"};
      null_space.form = RatMat(2, 2);
      return PoissonMap(null_space, null_space, RatMat(2, 2));
    };
    FftInstance fb = fft_from_aqft(broken, objects);
    CHECK_THROWS_AS(fb.assign(BordClassKey{objects[0], objects[1], 1, 0}), TimeSliceViolation);
  }
}

TEST_CASE("initial-data functorial theory") {
  auto ctx = std::make_shared<KgContext>(Rat(1, 4));
  const int L = 4;
  std::vector<BordObject> objects;
  objects.emplace_back(LatticeSpacetime::slab(L, 0, 4), 0);
  objects.emplace_back(LatticeSpacetime::slab(L, 0, 5), 2);
  FftInstance fk = build_fft_kg(ctx, objects);

  SUBCASE("identity classes") {
    for (const BordObject& o : objects) {
      PoissonMap u = fk.assign(BordClassKey{o, o, 0, 0});
      CHECK(u.matrix == RatMat::identity(u.src.dim));
    }
  }

  SUBCASE("stacked evolution against a direct leapfrog oracle") {
    BordClassKey key{objects[0], objects[0], 3, 0};
    PoissonMap evolve = fk.assign(key);
    // oracle: put data on row 0 of a tall slab, leapfrog up 3 rows, read off
    LatticeSpacetime tall = LatticeSpacetime::slab(L, 0, 4);
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
      RatVec phi(L), pi(L), coords;
      for (int x = 0; x < L; ++x) {
        phi[size_t(x)] = Rat(int(rng() % 9) - 4);
        pi[size_t(x)] = Rat(int(rng() % 9) - 4);
        coords.push_back(phi[size_t(x)]);
      }
      for (int x = 0; x < L; ++x) coords.push_back(pi[size_t(x)]);
      Field sol = solve_from_data(tall, 0, phi, pi, Rat(1, 4));
      RatVec expected;
      for (const Site& p : tall.row(3)) expected.push_back(sol.at(p));
      for (const Site& p : tall.row(3))
        expected.push_back(sol.at(p) - sol.at(Site{4, p.x}));
      CHECK(evolve.matrix.apply(coords) == expected);
    }
  }

  SUBCASE("composition matches composed evolution") {
    BordClassKey k0{objects[0], objects[1], 1, 1};
    BordClassKey k1{objects[1], objects[0], 2, 3};
    Bordism composite = hcompose(canonical_representative(k1), canonical_representative(k0));
    PoissonMap lhs = fk.assign(canon_key(composite));
    PoissonMap rhs = fk.assign(k1).compose_after(fk.assign(k0));
    CHECK(lhs.matrix == rhs.matrix);
  }

  SUBCASE("representatives of one class act equally") {
    for (const BordClassKey& key : generate_class_keys(objects, 2)) {
      PoissonMap canon_map = fft_kg_via_representative(Rat(1, 4), canonical_representative(key));
      PoissonMap fat_map = fft_kg_via_representative(Rat(1, 4), fat_representative(key));
      CHECK(canon_map.matrix == fat_map.matrix);
    }
  }
}

TEST_CASE("comparison of the two free-field descriptions") {
  auto results = check_scalar_comparison(small_config());
  int squares = 0, probes = 0;
  for (const CheckResult& r : results) {
    INFO(r.check << " @ " << r.instance_key << " lhs=" << r.lhs << " rhs=" << r.rhs);
    if (r.check != "class-count") CHECK(r.status);
    if (r.check == "naturality-square") ++squares;
    if (r.check == "naturality-element-probe") ++probes;
  }
  CHECK(squares >= 50);
  CHECK(probes == 20);
}

TEST_CASE("reconstruction") {
  SUBCASE("reconstructed theory equals the original on Cauchy morphisms") {
    SuiteConfig config;
    config.circumference = 4;
    config.t_max = 8;
    config.mass_squared = Rat(0);
    SuiteResult suite = run_roundtrip_suite(config);
    for (const CheckResult& r : suite.checks) {
      INFO(r.check << " @ " << r.instance_key);
      CHECK(r.status);
    }
  }

  SUBCASE("reconstruction requires Cauchy morphisms") {
    auto ctx = std::make_shared<KgContext>(Rat(0));
    std::vector<LatticeSpacetime> slabs = {LatticeSpacetime::slab(8, 0, 4)};
    std::vector<BordObject> objects;
    objects.emplace_back(slabs[0], 0);
    AqftInstance a;
    a.ctx = ctx;
    a.assign = [ctx](const LocMorphism& f) { return ctx->obs_map(f); };
    Reconstruction rec = reconstruct_aqft(fft_from_aqft(a, objects), slabs);
    LatticeSpacetime dia = LatticeSpacetime::diamond(8, Site{0, 0}, Site{4, 0});
    CHECK_THROWS_AS(rec.assign(LocMorphism(dia, slabs[0], Translation{0, 0})),
                    TimeSliceViolation);
  }
}

TEST_CASE("spatially local structure is forgotten") {
  auto results = check_nonfullness_witness(small_config());
  int diffs = 0;
  for (const CheckResult& r : results) {
    INFO(r.check << " @ " << r.instance_key);
    CHECK(r.status);
    if (r.check == "differ-on-diamond") ++diffs;
  }
  CHECK(diffs == 1);

  auto probe = check_faithfulness_probe(small_config());
  for (const CheckResult& r : probe) CHECK(r.status);
}

TEST_CASE("one-dimensional equivalence") {
  auto results = check_one_dimensional_roundtrip(small_config());
  for (const CheckResult& r : results) {
    INFO(r.check << " @ " << r.instance_key);
    CHECK(r.status);
  }
}

TEST_CASE("law reports serialize with witnesses") {
  PseudoCat p = iota(small_category_suite()[4].second);
  Json j = law_reports_to_json(check_coherence(p).laws);
  bool saw_pentagon = false;
  for (const Json& entry : j) {
    CHECK(entry.at("status") == "pass");
    CHECK_FALSE(entry.contains("witness"));
    if (entry.at("law") == "pentagon") saw_pentagon = true;
  }
  CHECK(saw_pentagon);
}

TEST_CASE("reports are deterministic given the seed") {
  SuiteConfig config;
  config.circumference = 4;
  config.t_max = 6;
  config.seed = 99;
  Json a = report_json({run_poisson_chain(config)}, config, false);
  Json b = report_json({run_poisson_chain(config)}, config, false);
  CHECK(a == b);
  Json with_ts = report_json({run_poisson_chain(config)}, config, true);
  with_ts.erase("timestamp");
  CHECK(with_ts == a);
}
