#include "bordqft/json_io.hpp"

namespace bordqft {

Json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  return rat_parse(j.get<std::string>());
}

Json matrix_to_json(const RatMat& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rat_to_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json spacetime_to_json(const LatticeSpacetime& m) {
  Json rows = Json::array();
  for (int t = m.min_t(); t <= m.max_t(); ++t) {
    SiteSet row = m.row(t);
    if (row.empty()) continue;
    Json xs = Json::array();
    for (const Site& p : row) xs.push_back(p.x);
    rows.push_back(Json{{"t", t}, {"x", xs}});
  }
  return Json{{"L", m.circumference()}, {"rows", rows}};
}

LatticeSpacetime spacetime_from_json(const Json& j) {
  SiteSet sites;
  for (const Json& row : j.at("rows")) {
    int t = row.at("t").get<int>();
    for (const Json& x : row.at("x")) sites.push_back(Site{t, x.get<int>()});
  }
  return LatticeSpacetime(j.at("L").get<int>(), std::move(sites));
}

Json field_to_json(const Field& f) {
  Json values = Json::array();
  for (int i = 0; i < f.domain.num_sites(); ++i) {
    if (f.values[size_t(i)] == 0) continue;
    Site p = f.domain.site_at(i);
    values.push_back(Json{{"t", p.t}, {"x", p.x}, {"value", rat_to_json(f.values[size_t(i)])}});
  }
  return Json{{"domain", spacetime_to_json(f.domain)}, {"values", values}};
}

namespace {

Json object_to_json(const BordObject& o) {
  return Json{{"m", spacetime_to_json(o.m)}, {"sigma", o.sigma_t}};
}

BordObject object_from_json(const Json& j) {
  return BordObject(spacetime_from_json(j.at("m")), j.at("sigma").get<int>());
}

Json shift_to_json(const Translation& g) { return Json{{"dt", g.dt}, {"dx", g.dx}}; }

Translation shift_from_json(const Json& j) {
  return Translation{j.at("dt").get<int>(), j.at("dx").get<int>()};
}

}  // namespace

Json bordism_to_json(const Bordism& b) {
  return Json{{"src", object_to_json(b.src)},     {"tgt", object_to_json(b.tgt)},
              {"n", spacetime_to_json(b.n)},      {"v0", spacetime_to_json(b.v0)},
              {"v1", spacetime_to_json(b.v1)},    {"i0", shift_to_json(b.i0)},
              {"i1", shift_to_json(b.i1)}};
}

Bordism bordism_from_json(const Json& j) {
  return Bordism(object_from_json(j.at("src")), object_from_json(j.at("tgt")),
                 spacetime_from_json(j.at("n")), spacetime_from_json(j.at("v0")),
                 spacetime_from_json(j.at("v1")), shift_from_json(j.at("i0")),
                 shift_from_json(j.at("i1")));
}

namespace {

Json groupoid_to_json(const FiniteGroupoid& g) {
  Json objects = Json::array();
  for (int c = 0; c < g.num_objects(); ++c) objects.push_back(c);
  Json morphisms = Json::array();
  for (int f = 0; f < g.num_morphisms(); ++f)
    morphisms.push_back(Json{{"id", f}, {"src", g.src(f)}, {"tgt", g.tgt(f)}});
  Json compose = Json::array();
  for (int a = 0; a < g.num_morphisms(); ++a)
    for (int b = 0; b < g.num_morphisms(); ++b)
      if (g.composable(a, b)) compose.push_back(Json::array({a, b, g.compose(a, b)}));
  Json inverse = Json::array();
  Json identities = Json::array();
  for (int f = 0; f < g.num_morphisms(); ++f) inverse.push_back(g.inverse(f));
  for (int c = 0; c < g.num_objects(); ++c) identities.push_back(g.identity(c));
  return Json{{"objects", objects},
              {"morphisms", morphisms},
              {"compose", compose},
              {"inverse", inverse},
              {"identities", identities}};
}

FiniteGroupoid groupoid_from_json(const Json& j) {
  int n_obj = int(j.at("objects").size());
  std::vector<FiniteCategory::Mor> mors(j.at("morphisms").size());
  for (const Json& m : j.at("morphisms"))
    mors[m.at("id").get<size_t>()] =
        FiniteCategory::Mor{m.at("src").get<int>(), m.at("tgt").get<int>()};
  std::vector<int> ids;
  for (const Json& i : j.at("identities")) ids.push_back(i.get<int>());
  FiniteCategory cat(n_obj, std::move(mors), std::move(ids));
  for (const Json& t : j.at("compose"))
    cat.set_compose(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>());
  return FiniteGroupoid(std::move(cat));
}

Json functor_to_json(const GroupoidFunctor& f) {
  return Json{{"obj", f.obj_map}, {"mor", f.mor_map}};
}

GroupoidFunctor functor_from_json(const Json& j) {
  GroupoidFunctor f;
  f.obj_map = j.at("obj").get<std::vector<int>>();
  f.mor_map = j.at("mor").get<std::vector<int>>();
  return f;
}

}  // namespace

Json pseudocat_to_json(const PseudoCat& p) {
  Json hcomp_obj = Json::array();
  for (const auto& [key, h] : p.hcomp_obj)
    hcomp_obj.push_back(Json::array({int(key >> 32), int(uint32_t(key)), h}));
  Json hcomp_cell = Json::array();
  for (const auto& [key, a] : p.hcomp_cell)
    hcomp_cell.push_back(Json::array({int(key >> 32), int(uint32_t(key)), a}));
  Json assoc = Json::array();
  for (const auto& [key, a] : p.assoc) assoc.push_back(Json::array({key.a, key.b, key.c, a}));
  Json lunit = Json::array();
  for (const auto& [h, a] : p.lunit) lunit.push_back(Json::array({h, a}));
  Json runit = Json::array();
  for (const auto& [h, a] : p.runit) runit.push_back(Json::array({h, a}));
  return Json{{"c0", groupoid_to_json(p.c0)},
              {"c1", groupoid_to_json(p.c1)},
              {"src", functor_to_json(p.src)},
              {"tgt", functor_to_json(p.tgt)},
              {"hcomp", Json{{"objects", hcomp_obj}, {"cells", hcomp_cell}}},
              {"hunit", functor_to_json(p.hunit)},
              {"assoc", assoc},
              {"lunit", lunit},
              {"runit", runit}};
}

PseudoCat pseudocat_from_json(const Json& j) {
  PseudoCat p;
  p.c0 = groupoid_from_json(j.at("c0"));
  p.c1 = groupoid_from_json(j.at("c1"));
  p.src = functor_from_json(j.at("src"));
  p.tgt = functor_from_json(j.at("tgt"));
  p.hunit = functor_from_json(j.at("hunit"));
  for (const Json& t : j.at("hcomp").at("objects"))
    p.hcomp_obj[pack2(t.at(0).get<int>(), t.at(1).get<int>())] = t.at(2).get<int>();
  for (const Json& t : j.at("hcomp").at("cells"))
    p.hcomp_cell[pack2(t.at(0).get<int>(), t.at(1).get<int>())] = t.at(2).get<int>();
  for (const Json& t : j.at("assoc"))
    p.assoc[TripleKey{t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()}] =
        t.at(3).get<int>();
  for (const Json& t : j.at("lunit")) p.lunit[t.at(0).get<int>()] = t.at(1).get<int>();
  for (const Json& t : j.at("runit")) p.runit[t.at(0).get<int>()] = t.at(1).get<int>();
  p.validate_structure();
  return p;
}

Json law_reports_to_json(const std::vector<LawReport>& laws) {
  Json out = Json::array();
  for (const LawReport& l : laws) {
    Json entry{{"law", l.law}, {"status", l.ok ? "pass" : "fail"}, {"checked", l.checked}};
    if (!l.ok) entry["witness"] = l.witness;
    out.push_back(std::move(entry));
  }
  return out;
}

Json check_results_to_json(const std::vector<CheckResult>& results) {
  Json out = Json::array();
  for (const CheckResult& r : results)
    out.push_back(Json{{"check", r.check},
                       {"instance_key", r.instance_key},
                       {"status", r.status ? "pass" : "fail"},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"tag", r.tag}});
  return out;
}

}  // namespace bordqft
