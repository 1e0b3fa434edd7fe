#include "bordqft/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace bordqft {

SiteSet site_union(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

SiteSet site_intersection(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

SiteSet site_difference(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool site_subset(const SiteSet& a, const SiteSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool site_contains(const SiteSet& s, Site p) {
  return std::binary_search(s.begin(), s.end(), p);
}

void site_normalize(SiteSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

Translation compose(const Translation& g2, const Translation& g1) {
  return Translation{g1.dt + g2.dt, g1.dx + g2.dx};
}

Translation inverse(const Translation& g) { return Translation{-g.dt, -g.dx}; }

namespace {

int wrap(int x, int L) {
  if (L <= 1) return 0;
  int r = x % L;
  return r < 0 ? r + L : r;
}

}  // namespace

Site translate(Site p, const Translation& g, int circumference) {
  return Site{p.t + g.dt, wrap(p.x + g.dx, circumference)};
}

LatticeSpacetime::LatticeSpacetime(int circumference, SiteSet sites)
    : L_(circumference), sites_(std::move(sites)) {
  if (L_ < 0) throw ValidationError("LatticeSpacetime: negative circumference");
  site_normalize(sites_);
  if (sites_.empty()) throw ValidationError("LatticeSpacetime: empty site set");
  for (const Site& p : sites_)
    if (p.x != wrap(p.x, L_))
      throw ValidationError("LatticeSpacetime: site with out-of-range x coordinate");
  min_t_ = sites_.front().t;
  max_t_ = sites_.back().t;

  // thickness: some pair of consecutive nonempty rows
  bool thick = false;
  for (int t = min_t_; t < max_t_ && !thick; ++t)
    thick = row_size(t) > 0 && row_size(t + 1) > 0;
  if (!thick) throw ValidationError("LatticeSpacetime: no two consecutive nonempty rows");

  // ambient causal convexity
  LatticeSpacetime ambient = slab_unchecked(L_, min_t_, max_t_);
  if (causal_convexity_witness(ambient, sites_).has_value())
    throw ValidationError("LatticeSpacetime: not causally convex in the ambient cylinder");

  // weak connectivity of the step graph
  std::vector<char> seen(sites_.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  size_t reached = 1;
  while (!queue.empty()) {
    Site p = sites_[size_t(queue.front())];
    queue.pop_front();
    auto visit = [&](Site q) {
      if (!contains(q)) return;
      int i = site_index(q);
      if (!seen[size_t(i)]) {
        seen[size_t(i)] = 1;
        ++reached;
        queue.push_back(i);
      }
    };
    for (Site q : successors(p)) visit(q);
    for (Site q : predecessors(p)) visit(q);
  }
  if (reached != sites_.size())
    throw ValidationError("LatticeSpacetime: causal step graph is disconnected");
}

LatticeSpacetime LatticeSpacetime::slab_unchecked(int circumference, int t_lo, int t_hi) {
  LatticeSpacetime m;
  m.L_ = circumference;
  int width = circumference <= 1 ? 1 : circumference;
  for (int t = t_lo; t <= t_hi; ++t)
    for (int x = 0; x < width; ++x) m.sites_.push_back(Site{t, x});
  m.min_t_ = t_lo;
  m.max_t_ = t_hi;
  return m;
}

LatticeSpacetime LatticeSpacetime::slab(int circumference, int t_lo, int t_hi) {
  if (circumference < 0) throw ValidationError("slab: negative circumference");
  if (t_hi < t_lo + 1) throw ValidationError("slab: needs at least two rows");
  return slab_unchecked(circumference, t_lo, t_hi);
}

LatticeSpacetime LatticeSpacetime::diamond(int circumference, Site bottom, Site top) {
  LatticeSpacetime ambient = slab(circumference, bottom.t, top.t);
  SiteSet fut = causal_future(ambient, SiteSet{bottom});
  SiteSet pas = causal_past(ambient, SiteSet{top});
  return LatticeSpacetime(circumference, site_intersection(fut, pas));
}

int LatticeSpacetime::site_index(Site p) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), p);
  if (it == sites_.end() || *it != p)
    throw SiteNotInSpacetime("site (" + std::to_string(p.t) + "," + std::to_string(p.x) +
                             ") not in spacetime");
  return int(it - sites_.begin());
}

SiteSet LatticeSpacetime::row(int t) const {
  SiteSet out;
  auto lo = std::lower_bound(sites_.begin(), sites_.end(), Site{t, 0},
                             [](const Site& a, const Site& b) { return a.t < b.t; });
  for (auto it = lo; it != sites_.end() && it->t == t; ++it) out.push_back(*it);
  return out;
}

int LatticeSpacetime::row_size(int t) const { return int(row(t).size()); }

bool LatticeSpacetime::row_is_full(int t) const {
  int width = L_ <= 1 ? 1 : L_;
  return row_size(t) == width;
}

bool LatticeSpacetime::is_slab() const {
  for (int t = min_t_; t <= max_t_; ++t)
    if (!row_is_full(t)) return false;
  return true;
}

int LatticeSpacetime::wrap_x(int x) const { return wrap(x, L_); }

std::vector<Site> LatticeSpacetime::successors(Site p) const {
  std::vector<Site> out;
  int deltas[3] = {-1, 0, 1};
  for (int d : deltas) {
    Site q{p.t + 1, wrap(p.x + d, L_)};
    if (contains(q) && (out.empty() || out.back() != q)) out.push_back(q);
  }
  site_normalize(out);
  return out;
}

std::vector<Site> LatticeSpacetime::predecessors(Site p) const {
  std::vector<Site> out;
  int deltas[3] = {-1, 0, 1};
  for (int d : deltas) {
    Site q{p.t - 1, wrap(p.x + d, L_)};
    if (contains(q)) out.push_back(q);
  }
  site_normalize(out);
  return out;
}

bool LatticeSpacetime::is_cauchy_row(int t0) const {
  if (row_size(t0) == 0) return false;
  for (const Site& p : sites_) {
    if (p.t < t0 && successors(p).empty()) return false;
    if (p.t > t0 && predecessors(p).empty()) return false;
  }
  return true;
}

std::vector<int> LatticeSpacetime::cauchy_rows() const {
  std::vector<int> out;
  for (int t = min_t_; t <= max_t_; ++t)
    if (is_cauchy_row(t)) out.push_back(t);
  return out;
}

namespace {

SiteSet closure(const LatticeSpacetime& m, const SiteSet& seed, bool forward) {
  for (const Site& p : seed)
    if (!m.contains(p)) throw SiteNotInSpacetime("closure seed site not in spacetime");
  std::vector<char> in(size_t(m.num_sites()), 0);
  std::deque<Site> queue;
  for (const Site& p : seed) {
    in[size_t(m.site_index(p))] = 1;
    queue.push_back(p);
  }
  while (!queue.empty()) {
    Site p = queue.front();
    queue.pop_front();
    auto next = forward ? m.successors(p) : m.predecessors(p);
    for (Site q : next) {
      int i = m.site_index(q);
      if (!in[size_t(i)]) {
        in[size_t(i)] = 1;
        queue.push_back(q);
      }
    }
  }
  SiteSet out;
  for (int i = 0; i < m.num_sites(); ++i)
    if (in[size_t(i)]) out.push_back(m.site_at(i));
  return out;
}

}  // namespace

SiteSet causal_future(const LatticeSpacetime& m, const SiteSet& s) {
  return closure(m, s, true);
}

SiteSet causal_past(const LatticeSpacetime& m, const SiteSet& s) {
  return closure(m, s, false);
}

SiteSet causal_hull(const LatticeSpacetime& m, const SiteSet& s) {
  return site_union(causal_future(m, s), causal_past(m, s));
}

std::optional<Site> causal_convexity_witness(const LatticeSpacetime& m, const SiteSet& s) {
  SiteSet between = site_intersection(causal_future(m, s), causal_past(m, s));
  SiteSet outside = site_difference(between, s);
  if (outside.empty()) return std::nullopt;
  return outside.front();
}

bool is_causally_convex(const LatticeSpacetime& m, const SiteSet& s) {
  return !causal_convexity_witness(m, s).has_value();
}

CauchyRow::CauchyRow(LatticeSpacetime m, int t) : parent(std::move(m)), t0(t) {
  if (!parent.is_cauchy_row(t0))
    throw NotACauchyRow("row t=" + std::to_string(t0) + " is not a Cauchy row");
}

LocMorphism::LocMorphism(LatticeSpacetime source, LatticeSpacetime target, Translation shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift) {
  if (source_.circumference() != target_.circumference())
    throw ValidationError("LocMorphism: circumference mismatch");
  shift_.dx = target_.wrap_x(shift_.dx);
  for (const Site& p : source_.sites())
    if (!target_.contains(apply(p)))
      throw ValidationError("LocMorphism: translated source does not lie in target");
}

LocMorphism LocMorphism::identity(const LatticeSpacetime& m) {
  return LocMorphism(m, m, Translation{0, 0});
}

LocMorphism LocMorphism::inclusion(const LatticeSpacetime& sub, const LatticeSpacetime& ambient) {
  return LocMorphism(sub, ambient, Translation{0, 0});
}

Site LocMorphism::apply(Site p) const { return translate(p, shift_, target_.circumference()); }

SiteSet LocMorphism::apply(const SiteSet& s) const {
  SiteSet out;
  out.reserve(s.size());
  for (const Site& p : s) out.push_back(apply(p));
  site_normalize(out);
  return out;
}

SiteSet LocMorphism::preimage(const SiteSet& s) const {
  Translation inv = inverse(shift_);
  SiteSet out;
  for (const Site& p : s) {
    Site q = translate(p, inv, source_.circumference());
    if (source_.contains(q)) out.push_back(q);
  }
  site_normalize(out);
  return out;
}

LocMorphism LocMorphism::compose_after(const LocMorphism& first) const {
  if (!(first.target_ == source_))
    throw ValidationError("LocMorphism: composition target/source mismatch");
  return LocMorphism(first.source_, target_, compose(shift_, first.shift_));
}

std::pair<LocMorphism, LocMorphism> LocMorphism::factorize() const {
  LatticeSpacetime img(target_.circumference(), image());
  LocMorphism onto(source_, img, shift_);
  LocMorphism incl = LocMorphism::inclusion(img, target_);
  return {onto, incl};
}

bool is_cauchy_morphism(const LocMorphism& f) {
  SiteSet img = f.image();
  for (int t : f.target().cauchy_rows())
    if (site_subset(f.target().row(t), img)) return true;
  return false;
}

bool causally_disjoint(const LocMorphism& f1, const LocMorphism& f2) {
  if (!(f1.target() == f2.target()))
    throw TargetMismatch("causally_disjoint: morphisms have different targets");
  SiteSet hull = causal_hull(f1.target(), f1.image());
  return site_intersection(hull, f2.image()).empty();
}

std::string LatticeSpacetime::to_text() const {
  std::ostringstream os;
  os << "L=" << L_ << "\n";
  for (int t = min_t_; t <= max_t_; ++t) {
    SiteSet r = row(t);
    if (r.empty()) continue;
    os << "t=" << t << ":";
    // emit sorted x values as ranges a-b,c
    size_t i = 0;
    bool first = true;
    while (i < r.size()) {
      size_t j = i;
      while (j + 1 < r.size() && r[j + 1].x == r[j].x + 1) ++j;
      os << (first ? " " : ",");
      first = false;
      if (j == i)
        os << r[i].x;
      else
        os << r[i].x << "-" << r[j].x;
      i = j + 1;
    }
    os << "\n";
  }
  return os.str();
}

LatticeSpacetime LatticeSpacetime::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int L = -1;
  SiteSet sites;
  while (std::getline(is, line)) {
    // strip whitespace
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r\n");
      if (b == std::string::npos) return std::string();
      size_t e = s.find_last_not_of(" \t\r\n");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("L=", 0) == 0) {
      L = std::stoi(line.substr(2));
      continue;
    }
    if (line.rfind("t=", 0) == 0) {
      auto colon = line.find(':');
      if (colon == std::string::npos)
        throw ValidationError("spacetime literal: missing ':' in row line");
      int t = std::stoi(line.substr(2, colon - 2));
      std::string ranges = trim(line.substr(colon + 1));
      std::istringstream rs(ranges);
      std::string item;
      while (std::getline(rs, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        auto dash = item.find('-', item[0] == '-' ? 1 : 0);
        if (dash == std::string::npos) {
          sites.push_back(Site{t, std::stoi(item)});
        } else {
          int lo = std::stoi(item.substr(0, dash));
          int hi = std::stoi(item.substr(dash + 1));
          for (int x = lo; x <= hi; ++x) sites.push_back(Site{t, x});
        }
      }
      continue;
    }
    throw ValidationError("spacetime literal: unrecognized line '" + line + "'");
  }
  if (L < 0) throw ValidationError("spacetime literal: missing L= header");
  return LatticeSpacetime(L, std::move(sites));
}

}  // namespace bordqft
