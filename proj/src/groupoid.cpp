#include "bordqft/groupoid.hpp"

#include <map>

namespace bordqft {

FiniteGroupoid::FiniteGroupoid(FiniteCategory cat) : cat_(std::move(cat)) {
  cat_.validate();
  if (!cat_.is_total())
    throw ValidationError("FiniteGroupoid: composition table not total on composable pairs");
  inv_.resize(size_t(cat_.num_morphisms()));
  for (int f = 0; f < cat_.num_morphisms(); ++f) {
    int g = cat_.inverse_of(f);
    if (g < 0)
      throw ValidationError("FiniteGroupoid: morphism " + std::to_string(f) +
                            " has no two-sided inverse");
    inv_[size_t(f)] = g;
  }
}

void GroupoidFunctor::validate(const FiniteGroupoid& from, const FiniteGroupoid& to) const {
  if (int(obj_map.size()) != from.num_objects() || int(mor_map.size()) != from.num_morphisms())
    throw ValidationError("GroupoidFunctor: table size mismatch");
  for (int c : obj_map)
    if (c < 0 || c >= to.num_objects()) throw ValidationError("GroupoidFunctor: object out of range");
  for (int f = 0; f < from.num_morphisms(); ++f) {
    int g = mor_map[size_t(f)];
    if (g < 0 || g >= to.num_morphisms())
      throw ValidationError("GroupoidFunctor: morphism out of range");
    if (to.src(g) != obj(from.src(f)) || to.tgt(g) != obj(from.tgt(f)))
      throw ValidationError("GroupoidFunctor: does not preserve source/target");
  }
  for (int c = 0; c < from.num_objects(); ++c)
    if (mor(from.identity(c)) != to.identity(obj(c)))
      throw ValidationError("GroupoidFunctor: does not preserve identities");
  for (int g = 0; g < from.num_morphisms(); ++g)
    for (int f = 0; f < from.num_morphisms(); ++f) {
      if (!from.composable(g, f)) continue;
      if (mor(from.compose(g, f)) != to.compose(mor(g), mor(f)))
        throw ValidationError("GroupoidFunctor: does not preserve composition");
    }
}

GroupoidFunctor GroupoidFunctor::identity(const FiniteGroupoid& g) {
  GroupoidFunctor f;
  f.obj_map.resize(size_t(g.num_objects()));
  f.mor_map.resize(size_t(g.num_morphisms()));
  for (int c = 0; c < g.num_objects(); ++c) f.obj_map[size_t(c)] = c;
  for (int m = 0; m < g.num_morphisms(); ++m) f.mor_map[size_t(m)] = m;
  return f;
}

GroupoidFunctor GroupoidFunctor::compose_after(const GroupoidFunctor& first) const {
  GroupoidFunctor out;
  out.obj_map.reserve(first.obj_map.size());
  out.mor_map.reserve(first.mor_map.size());
  for (int c : first.obj_map) out.obj_map.push_back(obj(c));
  for (int m : first.mor_map) out.mor_map.push_back(mor(m));
  return out;
}

int FiberProduct::obj_id(int i, int j) const {
  for (size_t k = 0; k < obj_pairs.size(); ++k)
    if (obj_pairs[k] == std::pair<int, int>(i, j)) return int(k);
  return -1;
}

int FiberProduct::mor_id(int i, int j) const {
  for (size_t k = 0; k < mor_pairs.size(); ++k)
    if (mor_pairs[k] == std::pair<int, int>(i, j)) return int(k);
  return -1;
}

FiberProduct fiber_product(const FiniteGroupoid& a, const FiniteGroupoid& b,
                           const FiniteGroupoid& c, const GroupoidFunctor& f,
                           const GroupoidFunctor& g) {
  f.validate(a, c);
  g.validate(b, c);

  FiberProduct fp;
  std::map<std::pair<int, int>, int> obj_ix, mor_ix;
  for (int i = 0; i < a.num_objects(); ++i)
    for (int j = 0; j < b.num_objects(); ++j)
      if (f.obj(i) == g.obj(j)) {
        obj_ix[{i, j}] = int(fp.obj_pairs.size());
        fp.obj_pairs.emplace_back(i, j);
      }
  std::vector<FiniteCategory::Mor> mors;
  for (int i = 0; i < a.num_morphisms(); ++i)
    for (int j = 0; j < b.num_morphisms(); ++j)
      if (f.mor(i) == g.mor(j)) {
        mor_ix[{i, j}] = int(fp.mor_pairs.size());
        fp.mor_pairs.emplace_back(i, j);
        mors.push_back(FiniteCategory::Mor{obj_ix.at({a.src(i), b.src(j)}),
                                           obj_ix.at({a.tgt(i), b.tgt(j)})});
      }
  std::vector<int> ids;
  for (const auto& [i, j] : fp.obj_pairs) ids.push_back(mor_ix.at({a.identity(i), b.identity(j)}));

  FiniteCategory cat(int(fp.obj_pairs.size()), std::move(mors), std::move(ids));
  for (size_t m2 = 0; m2 < fp.mor_pairs.size(); ++m2)
    for (size_t m1 = 0; m1 < fp.mor_pairs.size(); ++m1) {
      if (!cat.composable(int(m2), int(m1))) continue;
      auto [i2, j2] = fp.mor_pairs[m2];
      auto [i1, j1] = fp.mor_pairs[m1];
      cat.set_compose(int(m2), int(m1), mor_ix.at({a.compose(i2, i1), b.compose(j2, j1)}));
    }
  fp.total = FiniteGroupoid(std::move(cat));

  fp.p1.obj_map.reserve(fp.obj_pairs.size());
  fp.p2.obj_map.reserve(fp.obj_pairs.size());
  for (const auto& [i, j] : fp.obj_pairs) {
    fp.p1.obj_map.push_back(i);
    fp.p2.obj_map.push_back(j);
  }
  for (const auto& [i, j] : fp.mor_pairs) {
    fp.p1.mor_map.push_back(i);
    fp.p2.mor_map.push_back(j);
  }
  fp.p1.validate(fp.total, a);
  fp.p2.validate(fp.total, b);
  return fp;
}

}  // namespace bordqft
