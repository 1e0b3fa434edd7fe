#pragma once

#include <string>
#include <vector>

#include "bordqft/errors.hpp"

namespace bordqft {

// Finite category presented by explicit tables. Objects and morphisms are
// dense integer ids. The composition table may be partial: compose(g, f) is
// -1 either when tgt(f) != src(g) or when the instance is a bounded fragment
// that does not contain the composite. Honest categories are total on all
// composable pairs (is_total()).
class FiniteCategory {
 public:
  struct Mor {
    int src = 0;
    int tgt = 0;
  };

  FiniteCategory() = default;
  FiniteCategory(int num_objects, std::vector<Mor> morphisms, std::vector<int> identities);

  int num_objects() const { return n_obj_; }
  int num_morphisms() const { return int(mors_.size()); }
  int src(int f) const { return mors_[size_t(f)].src; }
  int tgt(int f) const { return mors_[size_t(f)].tgt; }
  int identity(int c) const { return ids_[size_t(c)]; }
  bool is_identity(int f) const;

  void set_compose(int g, int f, int gf);
  bool composable(int g, int f) const { return tgt(f) == src(g); }
  // g after f; -1 when undefined.
  int compose(int g, int f) const;
  bool is_total() const;

  // Unit laws, source/target of composites, associativity over defined
  // triples. Throws ValidationError on failure.
  void validate() const;

  // Exhaustive two-sided inverse search.
  int inverse_of(int f) const;
  bool is_iso(int f) const { return inverse_of(f) >= 0; }

  friend bool operator==(const FiniteCategory& a, const FiniteCategory& b);

 private:
  int n_obj_ = 0;
  std::vector<Mor> mors_;
  std::vector<int> ids_;
  std::vector<int> comp_;  // n_mor x n_mor, comp_[g*n+f] = g o f, -1 undefined
};

// All functors a -> b (object map + morphism map preserving everything),
// found by backtracking. Sizes are expected to be tiny; used by the
// adjunction hom-set comparison.
struct FunctorData {
  std::vector<int> obj_map;
  std::vector<int> mor_map;
  friend bool operator==(const FunctorData&, const FunctorData&) = default;
};
std::vector<FunctorData> enumerate_functors(const FiniteCategory& a, const FiniteCategory& b);

// A deterministic family of small categories (at most four objects) used by
// the law-check suites: chains, parallel arrows, split idempotent-free
// posets, cyclic groups viewed as one-object categories, and a category with
// a nontrivial isomorphism.
std::vector<std::pair<std::string, FiniteCategory>> small_category_suite();

}  // namespace bordqft
