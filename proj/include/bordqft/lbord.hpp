#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bordqft/lattice.hpp"
#include "bordqft/pseudocat.hpp"

namespace bordqft {

// Marked object: a region together with a full Cauchy row whose successor
// row is also present (the minimal collar is the row pair {t0, t0+1}).
struct BordObject {
  LatticeSpacetime m;
  int sigma_t;

  BordObject(LatticeSpacetime region, int t0);
  SiteSet sigma() const { return m.row(sigma_t); }
  SiteSet minimal_collar_sites() const;
  LatticeSpacetime minimal_collar() const;

  friend bool operator==(const BordObject& a, const BordObject& b) {
    return a.sigma_t == b.sigma_t && a.m == b.m;
  }
  friend bool operator!=(const BordObject& a, const BordObject& b) { return !(a == b); }
};

// Vertical morphism: germ of a Cauchy-surface preserving translation,
// stored in canonical form (domain = minimal collar). Two germs with the
// same endpoints are equal iff their translations agree, since any common
// causally convex sub-collar contains the marked row.
struct Germ {
  BordObject src;
  BordObject tgt;
  Translation g;

  // Canonicalizing constructor from a representative (W, g).
  Germ(BordObject source, BordObject target, const LatticeSpacetime& w, Translation shift);
  static Germ make(BordObject source, BordObject target, Translation shift);
  static Germ identity(const BordObject& o);
  Germ inverse() const;

  friend bool operator==(const Germ& a, const Germ& b) {
    return a.g == b.g && a.src == b.src && a.tgt == b.tgt;
  }
  friend bool operator!=(const Germ& a, const Germ& b) { return !(a == b); }
};

// g2 after g1; ObjectMismatch unless g1.tgt == g2.src.
Germ vcompose(const Germ& g2, const Germ& g1);

// Horizontal morphism: a bordism (n, i0, i1) with collar zig-zags
//   src.m <= v0 --i0--> n <--i1-- v1 => tgt.m.
struct Bordism {
  BordObject src;
  BordObject tgt;
  LatticeSpacetime n;
  LatticeSpacetime v0;
  LatticeSpacetime v1;
  Translation i0;
  Translation i1;

  Bordism(BordObject source, BordObject target, LatticeSpacetime bulk, LatticeSpacetime collar0,
          LatticeSpacetime collar1, Translation emb0, Translation emb1);

  static Bordism unit(const BordObject& o);
  // The companion (tgt.m, g, id) of a germ and its weak inverse (tgt.m, id, g).
  static Bordism companion(const Germ& germ);
  static Bordism companion_inverse(const Germ& germ);

  int row0() const { return src.sigma_t + i0.dt; }  // embedded marked rows in n
  int row1() const { return tgt.sigma_t + i1.dt; }
  int delta() const { return row1() - row0(); }
  int rotation() const { return n.wrap_x(i1.dx - i0.dx); }

  LocMorphism emb0() const { return LocMorphism(v0, n, i0); }
  LocMorphism emb1() const { return LocMorphism(v1, n, i1); }

  friend bool operator==(const Bordism& a, const Bordism& b) {
    return a.i0 == b.i0 && a.i1 == b.i1 && a.src == b.src && a.tgt == b.tgt && a.n == b.n &&
           a.v0 == b.v0 && a.v1 == b.v1;
  }
  friend bool operator!=(const Bordism& a, const Bordism& b) { return !(a == b); }
};

// Globular-cell class data of a bordism: endpoints, time extent and net
// rotation. Two bordisms are connected by a globular 2-cell iff their keys
// agree.
struct BordClassKey {
  BordObject src;
  BordObject tgt;
  int delta = 0;
  int rot = 0;

  friend bool operator==(const BordClassKey&, const BordClassKey&) = default;
  std::string str() const;
};

BordClassKey canon_key(const Bordism& b);
// Minimal-collar representative normalized so i0 = (-sigma_t, 0).
Bordism canonical_representative(const BordClassKey& key);
Bordism canonicalize(const Bordism& b);
// Representative with v0 = src.m and v1 = tgt.m; used when evaluating
// algebra-valued functors, where collars must support full observable
// spaces.
Bordism fat_representative(const BordClassKey& key);

// 2-cell: a translation germ between bordisms, canonical form stored; the
// domain z always contains the slab between the embedded marked rows.
struct TwoCell {
  Bordism srcb;
  Bordism tgtb;
  LatticeSpacetime z;
  Translation f;

  TwoCell(Bordism source, Bordism target, const LatticeSpacetime& domain, Translation shift);
  static TwoCell unit(const Bordism& b);
  TwoCell inverse() const;
  bool globular() const;

  // Canonical-form equality: the domain is quotiented away.
  friend bool operator==(const TwoCell& a, const TwoCell& b) {
    return a.f == b.f && a.srcb == b.srcb && a.tgtb == b.tgtb;
  }
  friend bool operator!=(const TwoCell& a, const TwoCell& b) { return !(a == b); }
};

// J^+(i0 collar) cap J^-(i1 collar): the canonical valid cell domain.
LatticeSpacetime canonical_cell_domain(const Bordism& b);

Germ cell_source(const TwoCell& c);
Germ cell_target(const TwoCell& c);

// Vertical composition c2 after c1; CellMismatch unless c1.tgtb == c2.srcb.
TwoCell vcompose_cells(const TwoCell& c2, const TwoCell& c1);

// Horizontal composition of bordisms via the pushout of the causal past and
// future of the shared collar, realized by union-find gluing and translation
// normalization (the marked source row lands at t = 0, x-offset 0).
struct HComposite {
  Bordism composite;
  Translation emb_past;    // b0.n coordinates -> composite coordinates
  Translation emb_future;  // b1.n coordinates -> composite coordinates
};
HComposite hcompose_full(const Bordism& b1, const Bordism& b0);
Bordism hcompose(const Bordism& b1, const Bordism& b0);

TwoCell hcompose_cells(const TwoCell& c1, const TwoCell& c0);

// The unique globular cell between two bordisms of the same class.
std::optional<TwoCell> canonical_globular_cell(const Bordism& from, const Bordism& to);

// Shrinks collars and bulk; returns the resized bordism and the globular
// cell to the original. CollarTooSmall when containment conditions fail.
std::pair<Bordism, TwoCell> resize_collars(const Bordism& b, const LatticeSpacetime& new_v0,
                                           const LatticeSpacetime& new_v1,
                                           const LatticeSpacetime& new_n);

// Companion 2-cells of Prop-style fibrancy: hat(g) => u(tgt) and
// u(src) => hat(g).
TwoCell companion_cell_up(const Germ& germ);
TwoCell companion_cell_down(const Germ& germ);
// The horizontal unit cell on a germ.
TwoCell unit_cell(const Germ& germ);
// Checks both companion identities directly at the bordism level.
bool verify_companion_identities(const Germ& germ);
// Weak-inverse equalities in the homotopy category:
// [(M',id,g)][(M',g,id)] == [unit] and conversely.
bool verify_companion_weak_inverse(const Germ& germ);

// ---------------------------------------------------------------------------
// Bounded instance generation and export to the generic engine.

struct LbordInstanceConfig {
  int circumference = 3;
  // slab objects [t_lo, t_hi] with marked row sigma
  std::vector<std::array<int, 3>> slabs = {{0, 1, 0}, {1, 2, 1}};
  int delta_cap = 1;
  // extra canonical-class seeds (src index, tgt index, delta, rot)
  std::vector<std::array<int, 4>> extra_classes = {{0, 0, 1, 0}, {0, 1, 1, 0}};
  // with rotations disabled only shift-free germs and cells are generated,
  // which keeps thicker objects affordable
  bool all_rotations = true;
  size_t max_bordisms = 120;
  size_t max_cells = 6000;
};

struct LbordInstance {
  std::vector<BordObject> objects;
  std::vector<Germ> germs;
  std::vector<Bordism> bordisms;
  std::vector<TwoCell> cells;
  PseudoCat pseudo;

  int object_id(const BordObject& o) const;
  int germ_id(const Germ& g) const;
  int bordism_id(const Bordism& b) const;
  int cell_id(const TwoCell& c) const;
};

// Saturates units, companions and canonical bordisms under horizontal
// composition up to the time-extent cap, populates all valid translation
// cells between equal-extent bordisms, and fills the pseudo-category tables
// (hcomp entries exist exactly when the composite stays within the cap).
LbordInstance generate_instance(const LbordInstanceConfig& config);

// Homotopy category of the generated instance, with canonical class keys.
struct Truncation {
  FiniteCategory cat;
  std::vector<int> class_of_bordism;   // instance bordism id -> class id
  std::vector<BordClassKey> class_keys;
};
Truncation truncate(const LbordInstance& instance);

}  // namespace bordqft
