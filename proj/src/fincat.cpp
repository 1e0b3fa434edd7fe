#include "bordqft/fincat.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace bordqft {

FiniteCategory::FiniteCategory(int num_objects, std::vector<Mor> morphisms,
                               std::vector<int> identities)
    : n_obj_(num_objects), mors_(std::move(morphisms)), ids_(std::move(identities)) {
  if (int(ids_.size()) != n_obj_)
    throw ValidationError("FiniteCategory: identity table size mismatch");
  for (int c = 0; c < n_obj_; ++c) {
    int e = ids_[size_t(c)];
    if (e < 0 || e >= num_morphisms() || src(e) != c || tgt(e) != c)
      throw ValidationError("FiniteCategory: bad identity for object " + std::to_string(c));
  }
  for (const Mor& m : mors_)
    if (m.src < 0 || m.src >= n_obj_ || m.tgt < 0 || m.tgt >= n_obj_)
      throw ValidationError("FiniteCategory: morphism endpoint out of range");
  comp_.assign(size_t(num_morphisms()) * size_t(num_morphisms()), -1);
}

bool FiniteCategory::is_identity(int f) const { return ids_[size_t(src(f))] == f; }

void FiniteCategory::set_compose(int g, int f, int gf) {
  if (!composable(g, f)) throw ValidationError("FiniteCategory: set_compose on non-composable pair");
  if (gf < 0 || gf >= num_morphisms() || src(gf) != src(f) || tgt(gf) != tgt(g))
    throw ValidationError("FiniteCategory: composite endpoints inconsistent");
  comp_[size_t(g) * size_t(num_morphisms()) + size_t(f)] = gf;
}

int FiniteCategory::compose(int g, int f) const {
  if (!composable(g, f)) return -1;
  return comp_[size_t(g) * size_t(num_morphisms()) + size_t(f)];
}

bool FiniteCategory::is_total() const {
  int n = num_morphisms();
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      if (composable(g, f) && compose(g, f) < 0) return false;
  return true;
}

void FiniteCategory::validate() const {
  int n = num_morphisms();
  for (int f = 0; f < n; ++f) {
    int el = compose(f, identity(src(f)));
    int er = compose(identity(tgt(f)), f);
    if (el >= 0 && el != f) throw ValidationError("FiniteCategory: right unit law fails");
    if (er >= 0 && er != f) throw ValidationError("FiniteCategory: left unit law fails");
  }
  std::vector<std::vector<int>> by_src(static_cast<size_t>(n_obj_));
  std::vector<std::vector<int>> by_tgt(static_cast<size_t>(n_obj_));
  for (int f = 0; f < n; ++f) {
    by_src[size_t(src(f))].push_back(f);
    by_tgt[size_t(tgt(f))].push_back(f);
  }
  for (int g = 0; g < n; ++g)
    for (int h : by_src[size_t(tgt(g))]) {
      int hg = compose(h, g);
      if (hg < 0) continue;
      for (int f : by_tgt[size_t(src(g))]) {
        int gf = compose(g, f);
        if (gf < 0) continue;
        int a = compose(h, gf);
        int b = compose(hg, f);
        if (a >= 0 && b >= 0 && a != b)
          throw ValidationError("FiniteCategory: associativity fails at (" + std::to_string(h) +
                                "," + std::to_string(g) + "," + std::to_string(f) + ")");
      }
    }
}

int FiniteCategory::inverse_of(int f) const {
  for (int g = 0; g < num_morphisms(); ++g) {
    if (src(g) != tgt(f) || tgt(g) != src(f)) continue;
    if (compose(g, f) == identity(src(f)) && compose(f, g) == identity(tgt(f))) return g;
  }
  return -1;
}

bool operator==(const FiniteCategory& a, const FiniteCategory& b) {
  return a.n_obj_ == b.n_obj_ && a.mors_.size() == b.mors_.size() && a.ids_ == b.ids_ &&
         [&] {
           for (size_t i = 0; i < a.mors_.size(); ++i)
             if (a.mors_[i].src != b.mors_[i].src || a.mors_[i].tgt != b.mors_[i].tgt)
               return false;
           return true;
         }() &&
         a.comp_ == b.comp_;
}

std::vector<FunctorData> enumerate_functors(const FiniteCategory& a, const FiniteCategory& b) {
  std::vector<FunctorData> out;
  int na = a.num_objects(), ma = a.num_morphisms();
  std::vector<int> obj(size_t(na), 0);
  std::vector<int> mor(size_t(ma), -1);

  // candidate morphism images grouped by (src, tgt) pair in b
  auto candidates = [&](int s, int t) {
    std::vector<int> c;
    for (int g = 0; g < b.num_morphisms(); ++g)
      if (b.src(g) == s && b.tgt(g) == t) c.push_back(g);
    return c;
  };

  std::function<void(int)> place_mor = [&](int f) {
    if (f == ma) {
      // all composites must be preserved
      for (int g = 0; g < ma; ++g)
        for (int h = 0; h < ma; ++h) {
          if (!a.composable(g, h)) continue;
          int gh = a.compose(g, h);
          if (gh < 0) continue;
          int img = b.compose(mor[size_t(g)], mor[size_t(h)]);
          if (img != mor[size_t(gh)]) return;
        }
      out.push_back(FunctorData{obj, mor});
      return;
    }
    if (a.is_identity(f)) {
      mor[size_t(f)] = b.identity(obj[size_t(a.src(f))]);
      place_mor(f + 1);
      mor[size_t(f)] = -1;
      return;
    }
    for (int g : candidates(obj[size_t(a.src(f))], obj[size_t(a.tgt(f))])) {
      mor[size_t(f)] = g;
      place_mor(f + 1);
      mor[size_t(f)] = -1;
    }
  };

  std::function<void(int)> place_obj = [&](int c) {
    if (c == na) {
      place_mor(0);
      return;
    }
    for (int d = 0; d < b.num_objects(); ++d) {
      obj[size_t(c)] = d;
      place_obj(c + 1);
    }
  };
  place_obj(0);
  return out;
}

namespace {

// Convenience builder: specify morphisms (including identities) and the
// non-identity composition facts; identity composites are filled in.
FiniteCategory build_cat(int n_obj, std::vector<FiniteCategory::Mor> mors, std::vector<int> ids,
                         const std::vector<std::array<int, 3>>& comps) {
  FiniteCategory c(n_obj, std::move(mors), std::move(ids));
  for (int f = 0; f < c.num_morphisms(); ++f) {
    c.set_compose(f, c.identity(c.src(f)), f);
    c.set_compose(c.identity(c.tgt(f)), f, f);
  }
  for (const auto& t : comps) c.set_compose(t[0], t[1], t[2]);
  c.validate();
  if (!c.is_total()) throw ValidationError("build_cat: composition table not total");
  return c;
}

}  // namespace

std::vector<std::pair<std::string, FiniteCategory>> small_category_suite() {
  std::vector<std::pair<std::string, FiniteCategory>> suite;
  using Mor = FiniteCategory::Mor;

  // terminal category
  suite.emplace_back("terminal", build_cat(1, {Mor{0, 0}}, {0}, {}));

  // walking arrow 0 -> 1
  suite.emplace_back("arrow", build_cat(2, {Mor{0, 0}, Mor{1, 1}, Mor{0, 1}}, {0, 1}, {}));

  // parallel pair 0 => 1
  suite.emplace_back("parallel",
                     build_cat(2, {Mor{0, 0}, Mor{1, 1}, Mor{0, 1}, Mor{0, 1}}, {0, 1}, {}));

  // composable chain 0 -> 1 -> 2 with composite
  suite.emplace_back(
      "chain3", build_cat(3, {Mor{0, 0}, Mor{1, 1}, Mor{2, 2}, Mor{0, 1}, Mor{1, 2}, Mor{0, 2}},
                          {0, 1, 2}, {{4, 3, 5}}));

  // Z/2 as a one-object groupoid: morphisms id, s with s*s = id
  suite.emplace_back("z2", build_cat(1, {Mor{0, 0}, Mor{0, 0}}, {0}, {{1, 1, 0}}));

  // Z/3 as a one-object groupoid
  suite.emplace_back("z3", build_cat(1, {Mor{0, 0}, Mor{0, 0}, Mor{0, 0}}, {0},
                                     {{1, 1, 2}, {2, 1, 0}, {1, 2, 0}, {2, 2, 1}}));

  // isomorphism pair 0 <-> 1 plus an extra endpoint object
  suite.emplace_back(
      "iso+point",
      build_cat(3, {Mor{0, 0}, Mor{1, 1}, Mor{2, 2}, Mor{0, 1}, Mor{1, 0}}, {0, 1, 2},
                {{4, 3, 0}, {3, 4, 1}}));

  // commutative square poset on 4 objects
  suite.emplace_back(
      "square",
      build_cat(4,
                {Mor{0, 0}, Mor{1, 1}, Mor{2, 2}, Mor{3, 3}, Mor{0, 1}, Mor{0, 2}, Mor{1, 3},
                 Mor{2, 3}, Mor{0, 3}},
                {0, 1, 2, 3}, {{6, 4, 8}, {7, 5, 8}}));

  // arrow + disjoint Z/2: 3 objects, mixes isos and non-isos
  suite.emplace_back(
      "arrow+z2",
      build_cat(3, {Mor{0, 0}, Mor{1, 1}, Mor{2, 2}, Mor{0, 1}, Mor{2, 2}}, {0, 1, 2},
                {{4, 4, 2}}));

  return suite;
}

}  // namespace bordqft
