#include "bordqft/lbord.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace bordqft {

namespace {

Translation norm_t(Translation g, int circumference) {
  if (circumference <= 1) {
    g.dx = 0;
    return g;
  }
  g.dx %= circumference;
  if (g.dx < 0) g.dx += circumference;
  return g;
}

SiteSet translate_sites(const SiteSet& s, const Translation& g, int circumference) {
  SiteSet out;
  out.reserve(s.size());
  for (const Site& p : s) out.push_back(translate(p, g, circumference));
  site_normalize(out);
  return out;
}

std::string encode_spacetime(const LatticeSpacetime& m) {
  std::ostringstream os;
  os << m.circumference() << "|";
  for (const Site& p : m.sites()) os << p.t << "," << p.x << ";";
  return os.str();
}

std::string encode_object(const BordObject& o) {
  return encode_spacetime(o.m) + "#" + std::to_string(o.sigma_t);
}

std::string encode_bordism(const Bordism& b) {
  std::ostringstream os;
  os << encode_object(b.src) << "~" << encode_object(b.tgt) << "~" << encode_spacetime(b.n) << "~"
     << encode_spacetime(b.v0) << "~" << encode_spacetime(b.v1) << "~" << b.i0.dt << "," << b.i0.dx
     << "~" << b.i1.dt << "," << b.i1.dx;
  return os.str();
}

}  // namespace

BordObject::BordObject(LatticeSpacetime region, int t0) : m(std::move(region)), sigma_t(t0) {
  if (!m.row_is_full(sigma_t) || !m.row_is_full(sigma_t + 1))
    throw ValidationError("BordObject: marked row pair must consist of full rows");
  if (!m.is_cauchy_row(sigma_t))
    throw NotACauchyRow("BordObject: marked row is not a Cauchy row");
}

SiteSet BordObject::minimal_collar_sites() const {
  return site_union(m.row(sigma_t), m.row(sigma_t + 1));
}

LatticeSpacetime BordObject::minimal_collar() const {
  return LatticeSpacetime(m.circumference(), minimal_collar_sites());
}

Germ::Germ(BordObject source, BordObject target, const LatticeSpacetime& w, Translation shift)
    : src(std::move(source)), tgt(std::move(target)), g(norm_t(shift, src.m.circumference())) {
  if (!site_subset(w.sites(), src.m.sites()))
    throw ValidationError("Germ: domain not contained in the source region");
  if (!site_subset(src.minimal_collar_sites(), w.sites()))
    throw ValidationError("Germ: domain does not contain the minimal collar");
  (void)LocMorphism(w, tgt.m, g);  // validates image containment
  int L = src.m.circumference();
  if (translate_sites(src.m.row(src.sigma_t), g, L) != tgt.m.row(tgt.sigma_t))
    throw ValidationError("Germ: marked row is not mapped onto the target marked row");
  if (translate_sites(src.m.row(src.sigma_t + 1), g, L) != tgt.m.row(tgt.sigma_t + 1))
    throw ValidationError("Germ: collar row is not mapped onto the target collar row");
}

Germ Germ::make(BordObject source, BordObject target, Translation shift) {
  LatticeSpacetime w = source.minimal_collar();
  return Germ(std::move(source), std::move(target), w, shift);
}

Germ Germ::identity(const BordObject& o) { return make(o, o, Translation{0, 0}); }

Germ Germ::inverse() const { return make(tgt, src, bordqft::inverse(g)); }

Germ vcompose(const Germ& g2, const Germ& g1) {
  if (!(g1.tgt == g2.src)) throw ObjectMismatch("vcompose: germ endpoints do not match");
  return Germ::make(g1.src, g2.tgt, compose(g2.g, g1.g));
}

Bordism::Bordism(BordObject source, BordObject target, LatticeSpacetime bulk,
                 LatticeSpacetime collar0, LatticeSpacetime collar1, Translation emb0,
                 Translation emb1)
    : src(std::move(source)),
      tgt(std::move(target)),
      n(std::move(bulk)),
      v0(std::move(collar0)),
      v1(std::move(collar1)),
      i0(norm_t(emb0, n.circumference())),
      i1(norm_t(emb1, n.circumference())) {
  int L = n.circumference();
  if (src.m.circumference() != L || tgt.m.circumference() != L ||
      v0.circumference() != L || v1.circumference() != L)
    throw ValidationError("Bordism: circumference mismatch");
  if (!site_subset(v0.sites(), src.m.sites()) || !site_subset(v1.sites(), tgt.m.sites()))
    throw ValidationError("Bordism: collars must be subsets of the boundary regions");
  if (!site_subset(src.minimal_collar_sites(), v0.sites()) ||
      !site_subset(tgt.minimal_collar_sites(), v1.sites()))
    throw CollarTooSmall("Bordism: collars must contain the marked row pairs");
  (void)LocMorphism(v0, n, i0);  // validate embeddings
  (void)LocMorphism(v1, n, i1);
  // embedded marked rows are full Cauchy rows of the bulk
  if (translate_sites(src.sigma(), i0, L) != n.row(row0()) || !n.is_cauchy_row(row0()))
    throw ValidationError("Bordism: source surface is not embedded onto a Cauchy row");
  if (translate_sites(tgt.sigma(), i1, L) != n.row(row1()) || !n.is_cauchy_row(row1()))
    throw ValidationError("Bordism: target surface is not embedded onto a Cauchy row");
  if (!site_subset(n.row(row1()), causal_future(n, n.row(row0()))))
    throw ValidationError("Bordism: target surface not in the causal future of the source");
}

Bordism Bordism::unit(const BordObject& o) {
  return Bordism(o, o, o.m, o.m, o.m, Translation{0, 0}, Translation{0, 0});
}

Bordism Bordism::companion(const Germ& germ) {
  return Bordism(germ.src, germ.tgt, germ.tgt.m, germ.src.minimal_collar(), germ.tgt.m, germ.g,
                 Translation{0, 0});
}

Bordism Bordism::companion_inverse(const Germ& germ) {
  return Bordism(germ.tgt, germ.src, germ.tgt.m, germ.tgt.m, germ.src.minimal_collar(),
                 Translation{0, 0}, germ.g);
}

std::string BordClassKey::str() const {
  std::ostringstream os;
  os << "[" << encode_object(src) << " -> " << encode_object(tgt) << " : dt=" << delta
     << " rot=" << rot << "]";
  return os.str();
}

BordClassKey canon_key(const Bordism& b) {
  return BordClassKey{b.src, b.tgt, b.delta(), b.rotation()};
}

Bordism canonical_representative(const BordClassKey& key) {
  int L = key.src.m.circumference();
  if (key.delta < 0) throw ValidationError("canonical_representative: negative time extent");
  LatticeSpacetime bulk = LatticeSpacetime::slab(L, 0, key.delta + 1);
  Translation emb0{-key.src.sigma_t, 0};
  Translation emb1{key.delta - key.tgt.sigma_t, key.rot};
  return Bordism(key.src, key.tgt, bulk, key.src.minimal_collar(), key.tgt.minimal_collar(), emb0,
                 emb1);
}

Bordism canonicalize(const Bordism& b) { return canonical_representative(canon_key(b)); }

Bordism fat_representative(const BordClassKey& key) {
  int L = key.src.m.circumference();
  Translation emb0{-key.src.sigma_t, 0};
  Translation emb1{key.delta - key.tgt.sigma_t, key.rot};
  int lo = std::min(key.src.m.min_t() + emb0.dt, key.tgt.m.min_t() + emb1.dt);
  int hi = std::max(key.src.m.max_t() + emb0.dt, key.tgt.m.max_t() + emb1.dt);
  LatticeSpacetime bulk = LatticeSpacetime::slab(L, lo, hi);
  return Bordism(key.src, key.tgt, bulk, key.src.m, key.tgt.m, emb0, emb1);
}

LatticeSpacetime canonical_cell_domain(const Bordism& b) {
  int L = b.n.circumference();
  SiteSet fut = causal_future(b.n, translate_sites(b.src.minimal_collar_sites(), b.i0, L));
  SiteSet pas = causal_past(b.n, translate_sites(b.tgt.minimal_collar_sites(), b.i1, L));
  return LatticeSpacetime(L, site_intersection(fut, pas));
}

TwoCell::TwoCell(Bordism source, Bordism target, const LatticeSpacetime& domain, Translation shift)
    : srcb(std::move(source)),
      tgtb(std::move(target)),
      z(canonical_cell_domain(srcb)),
      f(norm_t(shift, srcb.n.circumference())) {
  int L = srcb.n.circumference();
  if (tgtb.n.circumference() != L) throw ValidationError("TwoCell: circumference mismatch");
  if (!site_subset(domain.sites(), srcb.n.sites()))
    throw ValidationError("TwoCell: domain not contained in the source bulk");
  SiteSet between = site_intersection(causal_future(srcb.n, srcb.n.row(srcb.row0())),
                                      causal_past(srcb.n, srcb.n.row(srcb.row1())));
  if (!site_subset(between, domain.sites()))
    throw ValidationError("TwoCell: domain does not contain the slab between the marked rows");
  (void)LocMorphism(domain, tgtb.n, f);  // f valid on the provided domain
  (void)LocMorphism(z, tgtb.n, f);       // and on the canonical one
  if (translate_sites(srcb.n.row(srcb.row0()), f, L) != tgtb.n.row(tgtb.row0()))
    throw CellMismatch("TwoCell: source surfaces are not matched");
  if (translate_sites(srcb.n.row(srcb.row1()), f, L) != tgtb.n.row(tgtb.row1()))
    throw CellMismatch("TwoCell: target surfaces are not matched");
  // boundary germs must exist (their constructors validate collar conditions)
  cell_source(*this);
  cell_target(*this);
}

TwoCell TwoCell::unit(const Bordism& b) {
  return TwoCell(b, b, canonical_cell_domain(b), Translation{0, 0});
}

TwoCell TwoCell::inverse() const {
  return TwoCell(tgtb, srcb, canonical_cell_domain(tgtb), bordqft::inverse(f));
}

bool TwoCell::globular() const {
  return cell_source(*this) == Germ::identity(srcb.src) &&
         cell_target(*this) == Germ::identity(srcb.tgt);
}

Germ cell_source(const TwoCell& c) {
  return Germ::make(c.srcb.src, c.tgtb.src, compose(inverse(c.tgtb.i0), compose(c.f, c.srcb.i0)));
}

Germ cell_target(const TwoCell& c) {
  return Germ::make(c.srcb.tgt, c.tgtb.tgt, compose(inverse(c.tgtb.i1), compose(c.f, c.srcb.i1)));
}

TwoCell vcompose_cells(const TwoCell& c2, const TwoCell& c1) {
  if (!(c1.tgtb == c2.srcb)) throw CellMismatch("vcompose_cells: cells are not stackable");
  return TwoCell(c1.srcb, c2.tgtb, canonical_cell_domain(c1.srcb), compose(c2.f, c1.f));
}

HComposite hcompose_full(const Bordism& b1, const Bordism& b0) {
  if (!(b0.tgt == b1.src)) throw ObjectMismatch("hcompose: bordisms are not composable");
  int L = b0.n.circumference();

  SiteSet collar = site_intersection(b0.v1.sites(), b1.v0.sites());
  SiteSet past_part = causal_past(b0.n, translate_sites(collar, b0.i1, L));
  SiteSet future_part = causal_future(b1.n, translate_sites(collar, b1.i0, L));

  // identify along the collar: delta carries b0.n coordinates to b1.n ones
  Translation delta = compose(b1.i0, inverse(b0.i1));
  SiteSet future_in_base = translate_sites(future_part, inverse(delta), L);
  SiteSet overlap = site_intersection(past_part, future_in_base);
  if (overlap != translate_sites(collar, b0.i1, L))
    throw GluingOverlapInconsistent("hcompose: glued parts overlap beyond the shared collar");
  SiteSet glued = site_union(past_part, future_in_base);

  // translation normal form: source surface to row 0, x-offset 0
  Translation s{-b0.src.sigma_t - b0.i0.dt, -b0.i0.dx};
  LatticeSpacetime bulk(L, translate_sites(glued, s, L));

  Translation emb_past = s;
  Translation emb_future = compose(s, inverse(delta));

  SiteSet v0_sites = LocMorphism(b0.v0, b0.n, b0.i0).preimage(past_part);
  SiteSet v1_sites = LocMorphism(b1.v1, b1.n, b1.i1).preimage(future_part);

  Bordism composite(b0.src, b1.tgt, bulk, LatticeSpacetime(L, v0_sites),
                    LatticeSpacetime(L, v1_sites), compose(emb_past, b0.i0),
                    compose(emb_future, b1.i1));
  return HComposite{std::move(composite), emb_past, emb_future};
}

Bordism hcompose(const Bordism& b1, const Bordism& b0) {
  return hcompose_full(b1, b0).composite;
}

TwoCell hcompose_cells(const TwoCell& c1, const TwoCell& c0) {
  if (!(cell_target(c0) == cell_source(c1)))
    throw CellMismatch("hcompose_cells: cells are not horizontally composable");
  HComposite lhs = hcompose_full(c1.srcb, c0.srcb);
  HComposite rhs = hcompose_full(c1.tgtb, c0.tgtb);
  int L = lhs.composite.n.circumference();
  Translation f_past =
      norm_t(compose(rhs.emb_past, compose(c0.f, inverse(lhs.emb_past))), L);
  Translation f_future =
      norm_t(compose(rhs.emb_future, compose(c1.f, inverse(lhs.emb_future))), L);
  if (!(f_past == f_future))
    throw GluingOverlapInconsistent("hcompose_cells: glued maps disagree on the collar");
  return TwoCell(lhs.composite, rhs.composite, canonical_cell_domain(lhs.composite), f_past);
}

std::optional<TwoCell> canonical_globular_cell(const Bordism& from, const Bordism& to) {
  if (!(canon_key(from) == canon_key(to))) return std::nullopt;
  Translation f = compose(to.i0, inverse(from.i0));
  return TwoCell(from, to, canonical_cell_domain(from), f);
}

std::pair<Bordism, TwoCell> resize_collars(const Bordism& b, const LatticeSpacetime& new_v0,
                                           const LatticeSpacetime& new_v1,
                                           const LatticeSpacetime& new_n) {
  int L = b.n.circumference();
  if (!site_subset(new_v0.sites(), b.v0.sites()) || !site_subset(new_v1.sites(), b.v1.sites()) ||
      !site_subset(new_n.sites(), b.n.sites()))
    throw CollarTooSmall("resize_collars: new data must shrink the old");
  if (!site_subset(b.src.minimal_collar_sites(), new_v0.sites()) ||
      !site_subset(b.tgt.minimal_collar_sites(), new_v1.sites()))
    throw CollarTooSmall("resize_collars: collars must keep the marked row pairs");
  SiteSet im0 = translate_sites(new_v0.sites(), b.i0, L);
  SiteSet im1 = translate_sites(new_v1.sites(), b.i1, L);
  if (!site_subset(im0, causal_past(b.n, im1)) || !site_subset(im1, causal_future(b.n, im0)))
    throw CollarTooSmall("resize_collars: collars not causally sandwiched");
  SiteSet between = site_intersection(causal_future(b.n, im0), causal_past(b.n, im1));
  if (!site_subset(between, new_n.sites()))
    throw CollarTooSmall("resize_collars: bulk does not contain the causal span of the collars");
  Bordism resized(b.src, b.tgt, new_n, new_v0, new_v1, b.i0, b.i1);
  TwoCell cell(resized, b, canonical_cell_domain(resized), Translation{0, 0});
  return {std::move(resized), std::move(cell)};
}

TwoCell companion_cell_up(const Germ& germ) {
  Bordism comp = Bordism::companion(germ);
  Bordism u = Bordism::unit(germ.tgt);
  return TwoCell(comp, u, canonical_cell_domain(comp), Translation{0, 0});
}

TwoCell companion_cell_down(const Germ& germ) {
  Bordism u = Bordism::unit(germ.src);
  Bordism comp = Bordism::companion(germ);
  return TwoCell(u, comp, canonical_cell_domain(u), germ.g);
}

TwoCell unit_cell(const Germ& germ) {
  Bordism us = Bordism::unit(germ.src);
  Bordism ut = Bordism::unit(germ.tgt);
  return TwoCell(us, ut, canonical_cell_domain(us), germ.g);
}

bool verify_companion_identities(const Germ& germ) {
  TwoCell up = companion_cell_up(germ);
  TwoCell down = companion_cell_down(germ);

  // vertical identity: up after down is the unit cell on the germ
  if (!(vcompose_cells(up, down) == unit_cell(germ))) return false;

  // horizontal identity: l (up . down) r^{-1} is the identity cell
  Bordism comp = Bordism::companion(germ);
  HComposite lcomp = hcompose_full(Bordism::unit(germ.tgt), comp);
  HComposite rcomp = hcompose_full(comp, Bordism::unit(germ.src));
  auto l = canonical_globular_cell(lcomp.composite, comp);
  auto r = canonical_globular_cell(rcomp.composite, comp);
  if (!l || !r) return false;
  TwoCell hor = hcompose_cells(up, down);
  if (!(hor.srcb == rcomp.composite) || !(hor.tgtb == lcomp.composite)) return false;
  TwoCell chain = vcompose_cells(*l, vcompose_cells(hor, r->inverse()));
  return chain == TwoCell::unit(comp);
}

bool verify_companion_weak_inverse(const Germ& germ) {
  Bordism comp = Bordism::companion(germ);
  Bordism inv = Bordism::companion_inverse(germ);
  Bordism left = hcompose(inv, comp);
  Bordism right = hcompose(comp, inv);
  if (!(canon_key(left) == canon_key(Bordism::unit(germ.src)))) return false;
  if (!(canon_key(right) == canon_key(Bordism::unit(germ.tgt)))) return false;
  // the witnessing globular cells exist
  return canonical_globular_cell(left, Bordism::unit(germ.src)).has_value() &&
         canonical_globular_cell(right, Bordism::unit(germ.tgt)).has_value();
}

// ---------------------------------------------------------------------------

int LbordInstance::object_id(const BordObject& o) const {
  for (size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == o) return int(i);
  return -1;
}

int LbordInstance::germ_id(const Germ& g) const {
  for (size_t i = 0; i < germs.size(); ++i)
    if (germs[i] == g) return int(i);
  return -1;
}

int LbordInstance::bordism_id(const Bordism& b) const {
  for (size_t i = 0; i < bordisms.size(); ++i)
    if (bordisms[i] == b) return int(i);
  return -1;
}

int LbordInstance::cell_id(const TwoCell& c) const {
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i] == c) return int(i);
  return -1;
}

LbordInstance generate_instance(const LbordInstanceConfig& config) {
  const int L = config.circumference;
  LbordInstance inst;

  for (auto [t_lo, t_hi, sigma] : config.slabs)
    inst.objects.emplace_back(LatticeSpacetime::slab(L, t_lo, t_hi), sigma);
  const int n_obj = int(inst.objects.size());

  std::unordered_map<std::string, int> obj_ix;
  for (int i = 0; i < n_obj; ++i) obj_ix[encode_object(inst.objects[size_t(i)])] = i;

  // germs: one per ordered object pair and rotation
  const int width = L <= 1 ? 1 : L;
  const int rotations = config.all_rotations ? width : 1;
  std::map<std::tuple<int, int, int>, int> germ_ix;
  for (int i = 0; i < n_obj; ++i)
    for (int j = 0; j < n_obj; ++j)
      for (int dx = 0; dx < rotations; ++dx) {
        Germ g = Germ::make(inst.objects[size_t(i)], inst.objects[size_t(j)],
                            Translation{inst.objects[size_t(j)].sigma_t -
                                            inst.objects[size_t(i)].sigma_t,
                                        dx});
        germ_ix[{i, j, dx}] = int(inst.germs.size());
        inst.germs.push_back(std::move(g));
      }

  // bordisms: units, companions, canonical classes; saturate under hcompose
  std::unordered_map<std::string, int> bord_ix;
  auto add_bordism = [&](const Bordism& b) -> int {
    std::string key = encode_bordism(b);
    auto it = bord_ix.find(key);
    if (it != bord_ix.end()) return it->second;
    if (inst.bordisms.size() >= config.max_bordisms)
      throw ValidationError("generate_instance: bordism budget exceeded; shrink the configuration");
    int id = int(inst.bordisms.size());
    bord_ix.emplace(std::move(key), id);
    inst.bordisms.push_back(b);
    return id;
  };

  for (const BordObject& o : inst.objects) add_bordism(Bordism::unit(o));
  for (const Germ& g : inst.germs) add_bordism(Bordism::companion(g));
  for (const auto& [i, j, d, rot] : config.extra_classes)
    add_bordism(canonical_representative(
        BordClassKey{inst.objects[size_t(i)], inst.objects[size_t(j)], d, rot}));

  // fixpoint closure under horizontal composition within the extent cap
  inst.bordisms.reserve(config.max_bordisms + 1);
  std::map<std::pair<int, int>, HComposite> hcomp_cache;  // (later, earlier) -> glued
  bool grew = true;
  while (grew) {
    grew = false;
    size_t count = inst.bordisms.size();
    for (size_t a = 0; a < count; ++a)
      for (size_t b = 0; b < count; ++b) {
        const Bordism& earlier = inst.bordisms[a];
        const Bordism& later = inst.bordisms[b];
        if (!(earlier.tgt == later.src)) continue;
        if (earlier.delta() + later.delta() > config.delta_cap) continue;
        auto key = std::make_pair(int(b), int(a));
        if (hcomp_cache.count(key)) continue;
        HComposite hc = hcompose_full(later, earlier);
        if (size_t(add_bordism(hc.composite)) >= count) grew = true;
        hcomp_cache.emplace(key, std::move(hc));
      }
  }

  // cells: every generated translation between equal-extent bordisms whose
  // boundary germs belong to the generated germ set
  auto germ_in_table = [&](const Germ& g) {
    return germ_ix.count({obj_ix.at(encode_object(g.src)), obj_ix.at(encode_object(g.tgt)),
                          g.g.dx}) > 0;
  };
  std::map<std::tuple<int, int, int>, int> cell_ix;
  for (int a = 0; a < int(inst.bordisms.size()); ++a) {
    const Bordism& ba = inst.bordisms[size_t(a)];
    LatticeSpacetime dom = canonical_cell_domain(ba);
    for (int b = 0; b < int(inst.bordisms.size()); ++b) {
      const Bordism& bb = inst.bordisms[size_t(b)];
      if (ba.delta() != bb.delta()) continue;
      int dt = bb.row0() - ba.row0();
      for (int dx = 0; dx < rotations; ++dx) {
        if (inst.cells.size() >= config.max_cells)
          throw ValidationError("generate_instance: cell budget exceeded; shrink the configuration");
        try {
          TwoCell cell(ba, bb, dom, Translation{dt, dx});
          if (!germ_in_table(cell_source(cell)) || !germ_in_table(cell_target(cell))) continue;
          cell_ix[{a, b, cell.f.dx}] = int(inst.cells.size());
          inst.cells.push_back(std::move(cell));
        } catch (const Error&) {
          // no cell with this rotation between these representatives
        }
      }
    }
  }

  // --- pseudo-category tables ---
  PseudoCat& p = inst.pseudo;

  // c0: objects and germs
  {
    std::vector<FiniteCategory::Mor> mors;
    for (const Germ& g : inst.germs)
      mors.push_back(FiniteCategory::Mor{obj_ix.at(encode_object(g.src)),
                                         obj_ix.at(encode_object(g.tgt))});
    std::vector<int> ids;
    for (int i = 0; i < n_obj; ++i) ids.push_back(germ_ix.at({i, i, 0}));
    FiniteCategory cat(n_obj, std::move(mors), std::move(ids));
    for (int g2 = 0; g2 < int(inst.germs.size()); ++g2)
      for (int g1 = 0; g1 < int(inst.germs.size()); ++g1) {
        if (!cat.composable(g2, g1)) continue;
        const Germ& a = inst.germs[size_t(g1)];
        const Germ& b = inst.germs[size_t(g2)];
        int dx = norm_t(compose(b.g, a.g), L).dx;
        cat.set_compose(g2, g1,
                        germ_ix.at({cat.src(g1), cat.tgt(g2), dx}));
      }
    p.c0 = FiniteGroupoid(std::move(cat));
  }

  // c1: bordisms and cells
  {
    std::vector<FiniteCategory::Mor> mors;
    for (const TwoCell& c : inst.cells)
      mors.push_back(FiniteCategory::Mor{bord_ix.at(encode_bordism(c.srcb)),
                                         bord_ix.at(encode_bordism(c.tgtb))});
    std::vector<int> ids;
    for (int b = 0; b < int(inst.bordisms.size()); ++b) ids.push_back(cell_ix.at({b, b, 0}));
    FiniteCategory cat(int(inst.bordisms.size()), std::move(mors), std::move(ids));
    for (int c2 = 0; c2 < int(inst.cells.size()); ++c2)
      for (int c1 = 0; c1 < int(inst.cells.size()); ++c1) {
        if (!cat.composable(c2, c1)) continue;
        int dx = norm_t(compose(inst.cells[size_t(c2)].f, inst.cells[size_t(c1)].f), L).dx;
        cat.set_compose(c2, c1, cell_ix.at({cat.src(c1), cat.tgt(c2), dx}));
      }
    p.c1 = FiniteGroupoid(std::move(cat));
  }

  // span functors
  for (const Bordism& b : inst.bordisms) {
    p.src.obj_map.push_back(obj_ix.at(encode_object(b.src)));
    p.tgt.obj_map.push_back(obj_ix.at(encode_object(b.tgt)));
  }
  for (const TwoCell& c : inst.cells) {
    Germ s = cell_source(c);
    Germ t = cell_target(c);
    p.src.mor_map.push_back(germ_ix.at({obj_ix.at(encode_object(s.src)),
                                        obj_ix.at(encode_object(s.tgt)), s.g.dx}));
    p.tgt.mor_map.push_back(germ_ix.at({obj_ix.at(encode_object(t.src)),
                                        obj_ix.at(encode_object(t.tgt)), t.g.dx}));
  }

  // horizontal unit
  for (const BordObject& o : inst.objects)
    p.hunit.obj_map.push_back(bord_ix.at(encode_bordism(Bordism::unit(o))));
  for (const Germ& g : inst.germs) {
    int us = p.hunit.obj_map[size_t(obj_ix.at(encode_object(g.src)))];
    int ut = p.hunit.obj_map[size_t(obj_ix.at(encode_object(g.tgt)))];
    p.hunit.mor_map.push_back(cell_ix.at({us, ut, g.g.dx}));
  }

  // hcomp on bordisms (cache already covers all composable in-cap pairs)
  for (const auto& [key, hc] : hcomp_cache)
    p.hcomp_obj[pack2(key.first, key.second)] =
        bord_ix.at(encode_bordism(hc.composite));

  // hcomp on cells through the cached collar embeddings
  {
    std::vector<std::vector<int>> cells_by_src_germ(inst.germs.size());
    for (int c = 0; c < int(inst.cells.size()); ++c)
      cells_by_src_germ[size_t(p.src.mor_map[size_t(c)])].push_back(c);
    for (int c0 = 0; c0 < int(inst.cells.size()); ++c0) {
      int tg = p.tgt.mor_map[size_t(c0)];
      const TwoCell& cell0 = inst.cells[size_t(c0)];
      int a0 = bord_ix.at(encode_bordism(cell0.srcb));
      int b0 = bord_ix.at(encode_bordism(cell0.tgtb));
      for (int c1 : cells_by_src_germ[size_t(tg)]) {
        const TwoCell& cell1 = inst.cells[size_t(c1)];
        int a1 = bord_ix.at(encode_bordism(cell1.srcb));
        int b1 = bord_ix.at(encode_bordism(cell1.tgtb));
        auto lit = hcomp_cache.find({a1, a0});
        auto rit = hcomp_cache.find({b1, b0});
        if (lit == hcomp_cache.end() || rit == hcomp_cache.end()) continue;
        Translation f = norm_t(
            compose(rit->second.emb_past, compose(cell0.f, inverse(lit->second.emb_past))), L);
        int lc = bord_ix.at(encode_bordism(lit->second.composite));
        int rc = bord_ix.at(encode_bordism(rit->second.composite));
        p.hcomp_cell[pack2(c1, c0)] = cell_ix.at({lc, rc, f.dx});
      }
    }
  }

  // coherence cells: the unique globular identifications
  for (const auto& [key10, hc10] : hcomp_cache) {
    int h1 = key10.first, h0 = key10.second;
    int h10 = bord_ix.at(encode_bordism(hc10.composite));
    for (int h2 = 0; h2 < int(inst.bordisms.size()); ++h2) {
      auto it21 = hcomp_cache.find({h2, h1});
      if (it21 == hcomp_cache.end()) continue;
      int h21 = bord_ix.at(encode_bordism(it21->second.composite));
      auto l = hcomp_cache.find({h21, h0});
      auto r = hcomp_cache.find({h2, h10});
      if (l == hcomp_cache.end() || r == hcomp_cache.end()) continue;
      int lhs = bord_ix.at(encode_bordism(l->second.composite));
      int rhs = bord_ix.at(encode_bordism(r->second.composite));
      p.assoc[TripleKey{h2, h1, h0}] = cell_ix.at({lhs, rhs, 0});
    }
  }
  for (int h = 0; h < int(inst.bordisms.size()); ++h) {
    const Bordism& b = inst.bordisms[size_t(h)];
    int ut = p.hunit.obj_map[size_t(obj_ix.at(encode_object(b.tgt)))];
    int us = p.hunit.obj_map[size_t(obj_ix.at(encode_object(b.src)))];
    auto lit = hcomp_cache.find({ut, h});
    if (lit != hcomp_cache.end()) {
      int composite = bord_ix.at(encode_bordism(lit->second.composite));
      Translation f = norm_t(compose(b.i0, inverse(lit->second.composite.i0)), L);
      p.lunit[h] = cell_ix.at({composite, h, f.dx});
    }
    auto rit = hcomp_cache.find({h, us});
    if (rit != hcomp_cache.end()) {
      int composite = bord_ix.at(encode_bordism(rit->second.composite));
      Translation f = norm_t(compose(b.i0, inverse(rit->second.composite.i0)), L);
      p.runit[h] = cell_ix.at({composite, h, f.dx});
    }
  }

  p.validate_structure();
  return inst;
}

Truncation truncate(const LbordInstance& instance) {
  TauResult t = tau(instance.pseudo);
  Truncation out;
  out.cat = t.cat;
  out.class_of_bordism = t.class_of;
  for (int rep : t.rep_of) out.class_keys.push_back(canon_key(instance.bordisms[size_t(rep)]));
  return out;
}

}  // namespace bordqft
