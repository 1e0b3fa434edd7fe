#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "bordqft/errors.hpp"

namespace bordqft {

// Site of the integer Minkowski cylinder Z x Z_L. For circumference L = 0 the
// cylinder degenerates to a single spatial point (the 1-dimensional case) and
// x is always 0.
struct Site {
  int t = 0;
  int x = 0;
  auto operator<=>(const Site&) const = default;
};

// Sorted, duplicate-free vector of sites. All set operations below keep this
// invariant.
using SiteSet = std::vector<Site>;

SiteSet site_union(const SiteSet& a, const SiteSet& b);
SiteSet site_intersection(const SiteSet& a, const SiteSet& b);
SiteSet site_difference(const SiteSet& a, const SiteSet& b);
bool site_subset(const SiteSet& a, const SiteSet& b);  // a subseteq b
bool site_contains(const SiteSet& s, Site p);
void site_normalize(SiteSet& s);

// Time/space translation. Space shifts are taken mod the circumference of the
// spacetime they act on. These are the only isometries in the model:
// orientation and time-orientation preservation rule out reflections.
struct Translation {
  int dt = 0;
  int dx = 0;
  friend bool operator==(const Translation&, const Translation&) = default;
};

// g2 after g1.
Translation compose(const Translation& g2, const Translation& g1);
Translation inverse(const Translation& g);

// A finite causally convex region of the cylinder, with the causal step
// relation (t,x) < (t+1, x+d), d in {-1,0,1} (mod L).
//
// Construction validates:
//   - nonempty, and at least one pair of consecutive nonempty time rows;
//   - causal convexity inside the ambient cylinder;
//   - weak connectivity of the causal step graph.
class LatticeSpacetime {
 public:
  LatticeSpacetime(int circumference, SiteSet sites);

  static LatticeSpacetime slab(int circumference, int t_lo, int t_hi);
  // J^+(bottom) cap J^-(top) inside the ambient cylinder.
  static LatticeSpacetime diamond(int circumference, Site bottom, Site top);

  int circumference() const { return L_; }
  const SiteSet& sites() const { return sites_; }
  int num_sites() const { return int(sites_.size()); }
  bool contains(Site p) const { return site_contains(sites_, p); }
  // Dense index of a site; throws SiteNotInSpacetime.
  int site_index(Site p) const;
  Site site_at(int index) const { return sites_[size_t(index)]; }

  int min_t() const { return min_t_; }
  int max_t() const { return max_t_; }
  SiteSet row(int t) const;
  int row_size(int t) const;
  // Full circle (or the single point when L = 0)?
  bool row_is_full(int t) const;
  bool is_slab() const;  // every row in [min_t, max_t] full

  int wrap_x(int x) const;
  std::vector<Site> successors(Site p) const;
  std::vector<Site> predecessors(Site p) const;

  // Cauchy condition for the flat row at t0: nonempty, every site strictly
  // below has a successor and every site strictly above has a predecessor, so
  // each inextensible causal chain crosses the row exactly once.
  bool is_cauchy_row(int t0) const;
  std::vector<int> cauchy_rows() const;

  friend bool operator==(const LatticeSpacetime& a, const LatticeSpacetime& b) {
    return a.L_ == b.L_ && a.sites_ == b.sites_;
  }
  friend bool operator!=(const LatticeSpacetime& a, const LatticeSpacetime& b) {
    return !(a == b);
  }

  // Text literal: header "L=<int>", one line per row "t=<int>: <x-ranges>".
  std::string to_text() const;
  static LatticeSpacetime from_text(const std::string& text);

 private:
  LatticeSpacetime() = default;
  // Slabs are causally convex and connected; used as the ambient region for
  // validation without re-entering the validating constructor.
  static LatticeSpacetime slab_unchecked(int circumference, int t_lo, int t_hi);

  int L_ = 0;
  SiteSet sites_;
  int min_t_ = 0;
  int max_t_ = 0;
};

// J^+_m(s) / J^-_m(s): reflexive-transitive closure of the causal step
// relation restricted to m.sites, seeded at s. Throws SiteNotInSpacetime when
// the seed is not contained in m.
SiteSet causal_future(const LatticeSpacetime& m, const SiteSet& s);
SiteSet causal_past(const LatticeSpacetime& m, const SiteSet& s);
// J_m(s) = J^+ cup J^-.
SiteSet causal_hull(const LatticeSpacetime& m, const SiteSet& s);

bool is_causally_convex(const LatticeSpacetime& m, const SiteSet& s);
// First site of J^+(s) cap J^-(s) outside s, if any.
std::optional<Site> causal_convexity_witness(const LatticeSpacetime& m, const SiteSet& s);

// The CauchyRow domain type: a marked flat Cauchy surface inside its parent.
struct CauchyRow {
  LatticeSpacetime parent;
  int t0;

  CauchyRow(LatticeSpacetime m, int t);  // validates the Cauchy condition
  SiteSet sites() const { return parent.row(t0); }
};

// Orientation and time-orientation preserving isometric embedding between
// regions of equal circumference: a translation whose image lies in the
// target. Images of causally convex sets are automatically causally convex.
class LocMorphism {
 public:
  LocMorphism(LatticeSpacetime source, LatticeSpacetime target, Translation shift);

  static LocMorphism identity(const LatticeSpacetime& m);
  // Inclusion of a causally convex subset, as a spacetime in its own right.
  static LocMorphism inclusion(const LatticeSpacetime& sub, const LatticeSpacetime& ambient);

  const LatticeSpacetime& source() const { return source_; }
  const LatticeSpacetime& target() const { return target_; }
  const Translation& shift() const { return shift_; }

  Site apply(Site p) const;
  SiteSet apply(const SiteSet& s) const;
  SiteSet image() const { return apply(source_.sites()); }
  // Preimage of a subset of the target.
  SiteSet preimage(const SiteSet& s) const;

  LocMorphism compose_after(const LocMorphism& first) const;  // this o first
  // Factorization into an isomorphism onto the image followed by inclusion.
  std::pair<LocMorphism, LocMorphism> factorize() const;

  friend bool operator==(const LocMorphism& a, const LocMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.shift_ == b.shift_;
  }

 private:
  LatticeSpacetime source_;
  LatticeSpacetime target_;
  Translation shift_;
};

Site translate(Site p, const Translation& g, int circumference);

bool is_cauchy_morphism(const LocMorphism& f);
// Causal disjointness of images; throws TargetMismatch unless the targets
// agree.
bool causally_disjoint(const LocMorphism& f1, const LocMorphism& f2);

}  // namespace bordqft
