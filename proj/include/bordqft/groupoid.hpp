#pragma once

#include <vector>

#include "bordqft/fincat.hpp"

namespace bordqft {

// Finite groupoid: a finite category that is total on composable pairs and
// carries a two-sided inverse for every morphism.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  // Checks totality and the groupoid axiom; the inverse table is computed.
  explicit FiniteGroupoid(FiniteCategory cat);

  const FiniteCategory& cat() const { return cat_; }
  int num_objects() const { return cat_.num_objects(); }
  int num_morphisms() const { return cat_.num_morphisms(); }
  int src(int f) const { return cat_.src(f); }
  int tgt(int f) const { return cat_.tgt(f); }
  int identity(int c) const { return cat_.identity(c); }
  bool is_identity(int f) const { return cat_.is_identity(f); }
  int compose(int g, int f) const { return cat_.compose(g, f); }
  bool composable(int g, int f) const { return cat_.composable(g, f); }
  int inverse(int f) const { return inv_[size_t(f)]; }

  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    return a.cat_ == b.cat_;
  }

 private:
  FiniteCategory cat_;
  std::vector<int> inv_;
};

// Functor between finite groupoids given by explicit object/morphism tables.
struct GroupoidFunctor {
  std::vector<int> obj_map;
  std::vector<int> mor_map;

  int obj(int c) const { return obj_map[size_t(c)]; }
  int mor(int f) const { return mor_map[size_t(f)]; }

  // Table-wise preservation of source, target, identities and composition.
  void validate(const FiniteGroupoid& from, const FiniteGroupoid& to) const;

  static GroupoidFunctor identity(const FiniteGroupoid& g);
  // this after first
  GroupoidFunctor compose_after(const GroupoidFunctor& first) const;

  friend bool operator==(const GroupoidFunctor&, const GroupoidFunctor&) = default;
};

// Strict pullback of  a --f--> c <--g-- b : objects are pairs (i, j) with
// f(i) = g(j), morphisms are pairs agreeing in c.
struct FiberProduct {
  FiniteGroupoid total;
  GroupoidFunctor p1;  // to a
  GroupoidFunctor p2;  // to b
  // pair id lookup
  std::vector<std::pair<int, int>> obj_pairs;
  std::vector<std::pair<int, int>> mor_pairs;
  int obj_id(int i, int j) const;
  int mor_id(int i, int j) const;
};

FiberProduct fiber_product(const FiniteGroupoid& a, const FiniteGroupoid& b,
                           const FiniteGroupoid& c, const GroupoidFunctor& f,
                           const GroupoidFunctor& g);

}  // namespace bordqft
