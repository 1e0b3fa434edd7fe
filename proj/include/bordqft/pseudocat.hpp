#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bordqft/groupoid.hpp"

namespace bordqft {

// Key packing for pair/triple lookup tables.
inline uint64_t pack2(int a, int b) {
  return (uint64_t(uint32_t(a)) << 32) | uint64_t(uint32_t(b));
}

using PairTable = std::unordered_map<uint64_t, int>;

struct TripleKey {
  int a, b, c;
  friend bool operator==(const TripleKey&, const TripleKey&) = default;
};
struct TripleKeyHash {
  size_t operator()(const TripleKey& k) const {
    uint64_t h = uint64_t(uint32_t(k.a));
    h = h * 0x9e3779b97f4a7c15ull ^ uint64_t(uint32_t(k.b));
    h = h * 0x9e3779b97f4a7c15ull ^ uint64_t(uint32_t(k.c));
    return size_t(h);
  }
};
using TripleTable = std::unordered_map<TripleKey, int, TripleKeyHash>;

// Pseudo-category presented by finite tables.
//
//   c0   groupoid of objects and vertical morphisms
//   c1   groupoid of horizontal morphisms (objects) and 2-cells (morphisms)
//   src, tgt : c1 -> c0 span legs
//   hcomp    : horizontal composition, on horizontals and on 2-cells
//   hunit    : c0 -> c1 horizontal units
//   assoc, lunit, runit : globular coherence cells
//
// Orientation conventions:
//   assoc[(h2,h1,h0)] : (h2 . h1) . h0  =>  h2 . (h1 . h0)
//   lunit[h]          : u(t(h)) . h     =>  h
//   runit[h]          : h . u(s(h))     =>  h
//
// The hcomp tables may be partial (bounded fragments of an infinite
// pseudo-category); every law is then checked over the tuples whose required
// entries are all present.
struct PseudoCat {
  FiniteGroupoid c0;
  FiniteGroupoid c1;
  GroupoidFunctor src;
  GroupoidFunctor tgt;
  PairTable hcomp_obj;   // (h1, h0) -> h1.h0, needs src.obj(h1) == tgt.obj(h0)
  PairTable hcomp_cell;  // (a1, a0) -> a1.a0, needs src.mor(a1) == tgt.mor(a0)
  GroupoidFunctor hunit;
  TripleTable assoc;
  std::unordered_map<int, int> lunit;
  std::unordered_map<int, int> runit;

  int num_objects() const { return c0.num_objects(); }
  int num_horizontals() const { return c1.num_objects(); }

  bool hcomposable(int h1, int h0) const { return src.obj(h1) == tgt.obj(h0); }
  // -1 when not in the table.
  int hcomp(int h1, int h0) const;
  int hcomp_2cell(int a1, int a0) const;
  bool cell_hcomposable(int a1, int a0) const { return src.mor(a1) == tgt.mor(a0); }
  bool is_globular(int cell) const;

  // Structural sanity (sizes, span equations on tables). Throws.
  void validate_structure() const;
};

struct LawReport {
  std::string law;
  bool ok = true;
  long checked = 0;
  std::string witness;  // first failing tuple, empty when ok
};

struct CoherenceReport {
  std::vector<LawReport> laws;
  bool all_ok() const;
  const LawReport* find(const std::string& law) const;
};

// Checks, over all tuples with defined table entries: functor validity of
// src/tgt/hunit, span equations, functoriality of hcomp (unit preservation
// and the interchange law), globularity and naturality of assoc/lunit/runit,
// the pentagon, the unity triangle and the unit-cell coherence l_u = r_u.
CoherenceReport check_coherence(const PseudoCat& p);

// The pseudo-category with trivial coherence built from a finite category:
// c0 is the core, c1 has the category's morphisms as objects and commuting
// squares with invertible verticals as morphisms. Fibrant, with the
// companion of an isomorphism given by the same morphism drawn horizontally.
PseudoCat iota(const FiniteCategory& c);

// Homotopy category: objects of c0, globular-cell classes of horizontals.
struct TauResult {
  FiniteCategory cat;
  std::vector<int> class_of;  // horizontal id -> class id
  std::vector<int> rep_of;    // class id -> least horizontal id
};
TauResult tau(const PseudoCat& p);

struct Companion {
  int vertical = -1;
  int horizontal = -1;
  int cell_up = -1;    // hat(g) => u(c1), source g, target id
  int cell_down = -1;  // u(c0) => hat(g), source id, target g
};

// Both companion identities, verified on the tables.
bool verify_companion(const PseudoCat& p, const Companion& comp);
// First companion in (horizontal, cell_up, cell_down) lexicographic order;
// throws NoCompanion when the exhaustive search fails.
Companion find_companion(const PseudoCat& p, int vertical);
std::vector<Companion> all_companions(const PseudoCat& p, int vertical);
bool is_fibrant(const PseudoCat& p);

// Pseudo-functor between table pseudo-categories: a span-preserving pair of
// groupoid functors together with globular comparison cells for horizontal
// composition and units, natural in their arguments and satisfying the
// monoidal-style associativity and unit coherences.
struct PseudoFunctor {
  GroupoidFunctor f0;
  GroupoidFunctor f1;
  PairTable comp_cell;                      // (h1,h0) -> F(h1).F(h0) => F(h1.h0)
  std::unordered_map<int, int> unit_cell;   // c -> u(F0 c) => F1(u c)

  int comp_at(int h1, int h0) const;
  int unit_at(int c) const;
  // Every defined tuple is checked; throws ValidationError with the failing
  // condition.
  void validate(const PseudoCat& from, const PseudoCat& to) const;

  static PseudoFunctor identity(const PseudoCat& p);
};

// Vertical transformation between pseudo-functors: natural families of
// verticals and 2-cells compatible with the span legs, the comparison cells
// and the units.
struct PsTransformation {
  std::vector<int> comp0;  // from-object -> vertical F0(c) -> G0(c) in to.c0
  std::vector<int> comp1;  // from-horizontal -> cell F1(f) => G1(f) in to.c1

  void validate(const PseudoCat& from, const PseudoCat& to, const PseudoFunctor& f,
                const PseudoFunctor& g) const;
};

// Inclusion with its bookkeeping: the square table and the core enumeration
// needed to transport functors and natural isomorphisms.
struct IotaResult {
  PseudoCat pseudo;
  std::vector<int> iso_ids;                  // core vertical id -> category morphism
  std::vector<int> core_of;                  // category morphism -> core id or -1
  std::map<std::array<int, 4>, int> square;  // (f, f', g0, g1) -> c1 morphism
  int square_id(int f, int fp, int g0, int g1) const;
};
IotaResult iota_full(const FiniteCategory& c);

// Functors and natural isomorphisms transported along the inclusion; the
// comparison cells are trivial.
PseudoFunctor iota_on_functor(const FunctorData& f, const IotaResult& from,
                              const IotaResult& to);
PsTransformation iota_on_nat_iso(const std::vector<int>& components, const FunctorData& f,
                                 const FunctorData& g, const FiniteCategory& c,
                                 const IotaResult& from, const IotaResult& to);

// Truncation of a pseudo-functor: classes map to classes. Throws when the
// assignment fails to be well-defined on globular classes.
FunctorData tau_on_pseudofunctor(const PseudoFunctor& f, const PseudoCat& from,
                                 const PseudoCat& to, const TauResult& tfrom,
                                 const TauResult& tto);
// Truncation of a transformation: companion classes of its vertical
// components; naturality in the truncated category is verified.
std::vector<int> tau_on_transformation(const PsTransformation& zeta, const PseudoCat& from,
                                       const PseudoCat& to, const PseudoFunctor& f,
                                       const PseudoFunctor& g, const TauResult& tfrom,
                                       const TauResult& tto);

// The adjunction unit p -> iota(tau(p)) as an honest pseudo-functor, for
// instances whose truncation is a total category. Validated on construction.
struct UnitPseudoFunctor {
  IotaResult target;
  PseudoFunctor functor;
};
UnitPseudoFunctor unit_pseudofunctor(const PseudoCat& p);

struct AdjunctionReport {
  std::vector<LawReport> checks;
  bool all_ok() const;
};

// Instance-level checks of the truncation/inclusion adjunction:
//   - tau(iota(c)) == c strictly,
//   - the unit p -> iota(tau(p)) is a strict pseudo-functor (companion
//     classes are functorial, every 2-cell yields a commuting square),
//   - triangle identities on both legs.
AdjunctionReport check_adjunction(const FiniteCategory& c, const PseudoCat& p);

// |PsFun(p, iota(d))| == |Fun(tau(p), d)|. Pseudo-functors into an iota image
// have identity coherence cells, so the left side counts strict span-
// preserving functor pairs. Exponential; callers keep p and d tiny.
std::pair<long, long> hom_bijection_counts(const PseudoCat& p, const FiniteCategory& d);

}  // namespace bordqft
