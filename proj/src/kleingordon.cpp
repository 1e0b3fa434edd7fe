#include "bordqft/kleingordon.hpp"

#include <algorithm>
#include <array>

namespace bordqft {

Field::Field(LatticeSpacetime m, RatVec v) : domain(std::move(m)), values(std::move(v)) {
  if (int(values.size()) != domain.num_sites())
    throw ValidationError("Field: value vector size mismatch");
}

bool Field::is_zero() const {
  for (const Rat& v : values)
    if (v != 0) return false;
  return true;
}

SiteSet Field::support() const {
  SiteSet s;
  for (int i = 0; i < domain.num_sites(); ++i)
    if (values[size_t(i)] != 0) s.push_back(domain.site_at(i));
  return s;
}

Field Field::delta(const LatticeSpacetime& m, Site p) {
  Field f(m);
  f.at(p) = 1;
  return f;
}

namespace {

// stencil neighbours of (t,x): (t+-1, x), (t, x+-1 mod L)
std::array<Site, 4> stencil_neighbours(const LatticeSpacetime& m, Site p) {
  return {Site{p.t + 1, p.x}, Site{p.t - 1, p.x}, Site{p.t, m.wrap_x(p.x + 1)},
          Site{p.t, m.wrap_x(p.x - 1)}};
}

}  // namespace

SiteSet stencil_interior(const LatticeSpacetime& m) {
  SiteSet out;
  for (const Site& p : m.sites()) {
    bool ok = true;
    for (const Site& q : stencil_neighbours(m, p)) ok = ok && m.contains(q);
    if (ok) out.push_back(p);
  }
  return out;
}

SiteSet deep_interior(const LatticeSpacetime& m) {
  SiteSet interior = stencil_interior(m);
  SiteSet out;
  for (const Site& p : interior) {
    bool ok = site_contains(interior, p);
    for (const Site& q : stencil_neighbours(m, p)) ok = ok && site_contains(interior, q);
    if (ok) out.push_back(p);
  }
  return out;
}

Field apply_P(const LatticeSpacetime& m, const Field& phi, const Rat& m0sq) {
  if (!(phi.domain == m)) throw ValidationError("apply_P: field domain mismatch");
  Field out(m);
  for (const Site& p : stencil_interior(m)) {
    Rat v = phi.at(Site{p.t + 1, p.x}) + phi.at(Site{p.t - 1, p.x}) -
            phi.at(Site{p.t, m.wrap_x(p.x + 1)}) - phi.at(Site{p.t, m.wrap_x(p.x - 1)}) +
            m0sq * phi.at(p);
    out.at(p) = v;
  }
  return out;
}

namespace {

Field green(const LatticeSpacetime& m, const Field& src, const Rat& m0sq, bool retarded) {
  if (!(src.domain == m)) throw ValidationError("green: source domain mismatch");
  if (!site_subset(src.support(), stencil_interior(m)))
    throw SourceTouchesBoundary("green: source not supported on stencil-interior sites");

  Field u(m);
  auto val = [&](const Field& f, Site p) -> Rat { return f.domain.contains(p) ? f.at(p) : Rat(0); };

  if (retarded) {
    for (int t = m.min_t() + 1; t <= m.max_t(); ++t)
      for (const Site& p : m.row(t)) {
        Site driver{t - 1, p.x};
        if (!m.contains(driver)) continue;  // stays zero
        Rat v = val(src, driver) - val(u, Site{t - 2, p.x}) +
                val(u, Site{t - 1, m.wrap_x(p.x + 1)}) + val(u, Site{t - 1, m.wrap_x(p.x - 1)}) -
                m0sq * u.at(driver);
        u.at(p) = v;
      }
  } else {
    for (int t = m.max_t() - 1; t >= m.min_t(); --t)
      for (const Site& p : m.row(t)) {
        Site driver{t + 1, p.x};
        if (!m.contains(driver)) continue;
        Rat v = val(src, driver) - val(u, Site{t + 2, p.x}) +
                val(u, Site{t + 1, m.wrap_x(p.x + 1)}) + val(u, Site{t + 1, m.wrap_x(p.x - 1)}) -
                m0sq * u.at(driver);
        u.at(p) = v;
      }
  }
  return u;
}

}  // namespace

Field green_retarded(const LatticeSpacetime& m, const Field& src, const Rat& m0sq) {
  return green(m, src, m0sq, true);
}

Field green_advanced(const LatticeSpacetime& m, const Field& src, const Rat& m0sq) {
  return green(m, src, m0sq, false);
}

Field causal_propagator(const LatticeSpacetime& m, const Field& src, const Rat& m0sq) {
  Field plus = green_retarded(m, src, m0sq);
  Field minus = green_advanced(m, src, m0sq);
  Field out(m);
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = plus.values[i] - minus.values[i];
  return out;
}

Rat pairing(const Field& f1, const Field& f2) {
  if (!(f1.domain == f2.domain)) throw ValidationError("pairing: domain mismatch");
  Rat s(0);
  for (size_t i = 0; i < f1.values.size(); ++i) s += f1.values[i] * f2.values[i];
  return s;
}

void PoissonSpace::validate() const {
  if (int(basis_labels.size()) != dim || form.rows() != dim || form.cols() != dim)
    throw ValidationError("PoissonSpace: size mismatch");
  if (!form.is_antisymmetric()) throw ValidationError("PoissonSpace: form not antisymmetric");
}

PoissonMap::PoissonMap(PoissonSpace s, PoissonSpace t, RatMat m)
    : src(std::move(s)), tgt(std::move(t)), matrix(std::move(m)) {
  src.validate();
  tgt.validate();
  if (matrix.rows() != tgt.dim || matrix.cols() != src.dim)
    throw ValidationError("PoissonMap: matrix shape mismatch");
  if (matrix.transpose() * tgt.form * matrix != src.form)
    throw NotPoisson("PoissonMap: form not preserved");
}

PoissonMap PoissonMap::compose_after(const PoissonMap& first) const {
  if (!(first.tgt == src)) throw ValidationError("PoissonMap: composition mismatch");
  return PoissonMap(first.src, tgt, matrix * first.matrix);
}

PoissonMap PoissonMap::inverse() const {
  return PoissonMap(tgt, src, matrix.inverse());
}

PoissonMap PoissonMap::identity(const PoissonSpace& v) {
  return PoissonMap(v, v, RatMat::identity(v.dim));
}

ObservablesSpace::ObservablesSpace(LatticeSpacetime m, Rat m0sq)
    : m_(std::move(m)), m0sq_(std::move(m0sq)) {
  interior_ = stencil_interior(m_);
  if (interior_.empty())
    throw DegenerateRegion("observables_space: region has empty stencil interior");
  deep_ = deep_interior(m_);

  // row space of the wave-operator image over interior coordinates
  RatMat image(int(deep_.size()), int(interior_.size()));
  for (int r = 0; r < int(deep_.size()); ++r) {
    Field pd = apply_P(m_, Field::delta(m_, deep_[size_t(r)]), m0sq_);
    for (int c = 0; c < int(interior_.size()); ++c) image.at(r, c) = pd.at(interior_[size_t(c)]);
  }
  pivot_cols_ = image.rref();
  reducer_ = std::move(image);

  std::vector<char> is_pivot(interior_.size(), 0);
  for (int pc : pivot_cols_) is_pivot[size_t(pc)] = 1;
  for (size_t i = 0; i < interior_.size(); ++i)
    if (!is_pivot[i]) free_sites_.push_back(interior_[i]);

  space_.dim = int(free_sites_.size());
  for (const Site& p : free_sites_)
    space_.basis_labels.push_back("s(" + std::to_string(p.t) + "," + std::to_string(p.x) + ")");
  space_.form = RatMat(space_.dim, space_.dim);
  for (int j = 0; j < space_.dim; ++j) {
    Field g = causal_propagator(m_, Field::delta(m_, free_sites_[size_t(j)]), m0sq_);
    for (int i = 0; i < space_.dim; ++i) space_.form.at(i, j) = g.at(free_sites_[size_t(i)]);
  }
  space_.validate();
}

RatVec ObservablesSpace::class_of(const Field& src) const {
  if (!(src.domain == m_)) throw ValidationError("class_of: field domain mismatch");
  if (!site_subset(src.support(), interior_))
    throw ValidationError("class_of: source not supported on the stencil interior");
  RatVec v(interior_.size());
  for (size_t i = 0; i < interior_.size(); ++i) v[i] = src.at(interior_[i]);
  // eliminate pivot coordinates with the reduced rows
  for (size_t r = 0; r < pivot_cols_.size(); ++r) {
    int pc = pivot_cols_[r];
    if (v[size_t(pc)] == 0) continue;
    Rat f = v[size_t(pc)];
    for (size_t c = 0; c < v.size(); ++c) v[c] -= f * reducer_.at(int(r), int(c));
  }
  RatVec out;
  out.reserve(free_sites_.size());
  for (size_t i = 0, k = 0; i < interior_.size(); ++i) {
    if (k < pivot_cols_.size() && int(i) == pivot_cols_[k]) {
      ++k;
      continue;
    }
    out.push_back(v[i]);
  }
  return out;
}

Field ObservablesSpace::representative(const RatVec& coords) const {
  if (int(coords.size()) != space_.dim)
    throw ValidationError("representative: coordinate size mismatch");
  Field f(m_);
  for (size_t i = 0; i < free_sites_.size(); ++i) f.at(free_sites_[i]) = coords[i];
  return f;
}

ObservablesSpace observables_space(const LatticeSpacetime& m, const Rat& m0sq) {
  return ObservablesSpace(m, m0sq);
}

Rat symplectic_current(const Field& f1, const Field& f2, int t) {
  const LatticeSpacetime& m = f1.domain;
  if (!(f2.domain == m)) throw ValidationError("symplectic_current: domain mismatch");
  Rat s(0);
  for (const Site& p : m.row(t)) {
    Site q{t + 1, p.x};
    if (!m.contains(q)) throw ValidationError("symplectic_current: row pair incomplete");
    s += f1.at(q) * f2.at(p) - f2.at(q) * f1.at(p);
  }
  return s;
}

Field solve_from_data(const LatticeSpacetime& m, int t0, const RatVec& phi_row,
                      const RatVec& pi_row, const Rat& m0sq) {
  if (!m.is_slab()) throw NotACauchyRow("solve_from_data: region must have full rows");
  SiteSet row0 = m.row(t0), row1 = m.row(t0 + 1);
  if (row0.empty() || row1.empty())
    throw NotACauchyRow("solve_from_data: marked row pair not in region");
  if (phi_row.size() != row0.size() || pi_row.size() != row0.size())
    throw ValidationError("solve_from_data: data size mismatch");

  Field u(m);
  for (size_t i = 0; i < row0.size(); ++i) {
    u.at(row0[i]) = phi_row[i];
    u.at(Site{t0 + 1, row0[i].x}) = phi_row[i] - pi_row[i];
  }
  // leapfrog upward from the pair
  for (int t = t0 + 1; t < m.max_t(); ++t)
    for (const Site& p : m.row(t)) {
      Rat v = -u.at(Site{t - 1, p.x}) + u.at(Site{t, m.wrap_x(p.x + 1)}) +
              u.at(Site{t, m.wrap_x(p.x - 1)}) - m0sq * u.at(p);
      u.at(Site{t + 1, p.x}) = v;
    }
  // and downward
  for (int t = t0; t > m.min_t(); --t)
    for (const Site& p : m.row(t)) {
      Rat v = -u.at(Site{t + 1, p.x}) + u.at(Site{t, m.wrap_x(p.x + 1)}) +
              u.at(Site{t, m.wrap_x(p.x - 1)}) - m0sq * u.at(p);
      u.at(Site{t - 1, p.x}) = v;
    }
  return u;
}

SolutionsSpace::SolutionsSpace(LatticeSpacetime m, Rat m0sq)
    : m_(std::move(m)), m0sq_(std::move(m0sq)) {
  if (!m_.is_slab())
    throw NotACauchyRow("solutions_space: region must have spatially full rows");
  int t0 = m_.min_t();
  int w = m_.row_size(t0);
  for (int k = 0; k < 2 * w; ++k) {
    RatVec phi(static_cast<size_t>(w)), pi(static_cast<size_t>(w));
    if (k < w)
      phi[size_t(k)] = 1;
    else
      pi[size_t(k - w)] = 1;
    basis_.push_back(solve_from_data(m_, t0, phi, pi, m0sq_));
  }
  space_.dim = 2 * w;
  for (int x = 0; x < w; ++x) space_.basis_labels.push_back("phi" + std::to_string(x));
  for (int x = 0; x < w; ++x) space_.basis_labels.push_back("pi" + std::to_string(x));
  space_.form = RatMat(space_.dim, space_.dim);
  for (int i = 0; i < space_.dim; ++i)
    for (int j = 0; j < space_.dim; ++j)
      space_.form.at(i, j) = symplectic_current(basis_[size_t(i)], basis_[size_t(j)], t0);
  space_.validate();
  if (!space_.nondegenerate())
    throw ValidationError("solutions_space: degenerate symplectic pairing");
}

RatVec SolutionsSpace::coords_of(const Field& solution) const {
  if (!(solution.domain == m_)) throw ValidationError("coords_of: domain mismatch");
  int t0 = m_.min_t();
  SiteSet row0 = m_.row(t0);
  RatVec out;
  out.reserve(2 * row0.size());
  for (const Site& p : row0) out.push_back(solution.at(p));
  for (const Site& p : row0)
    out.push_back(solution.at(p) - solution.at(Site{t0 + 1, p.x}));
  return out;
}

SolutionsSpace solutions_space(const LatticeSpacetime& m, const Rat& m0sq) {
  return SolutionsSpace(m, m0sq);
}

PoissonSpace data_space(const LatticeSpacetime& m, int sigma_t) {
  if (!m.row_is_full(sigma_t) || !m.row_is_full(sigma_t + 1) || !m.is_cauchy_row(sigma_t))
    throw NotACauchyRow("data_space: marked row is not a full Cauchy row with a successor row");
  int w = m.row_size(sigma_t);
  PoissonSpace v;
  v.dim = 2 * w;
  for (int x = 0; x < w; ++x) v.basis_labels.push_back("phi" + std::to_string(x));
  for (int x = 0; x < w; ++x) v.basis_labels.push_back("pi" + std::to_string(x));
  v.form = RatMat(v.dim, v.dim);
  for (int x = 0; x < w; ++x) {
    v.form.at(x, w + x) = 1;
    v.form.at(w + x, x) = -1;
  }
  v.validate();
  if (!v.nondegenerate()) throw ValidationError("data_space: degenerate pairing");
  return v;
}

PoissonMap restriction_map(const SolutionsSpace& sol, int sigma_t) {
  const LatticeSpacetime& m = sol.region();
  PoissonSpace data = data_space(m, sigma_t);
  RatMat mat(data.dim, sol.space().dim);
  int w = m.row_size(sigma_t);
  SiteSet row = m.row(sigma_t);
  for (int j = 0; j < sol.space().dim; ++j) {
    const Field& phi = sol.basis_solution(j);
    for (int x = 0; x < w; ++x) {
      mat.at(x, j) = phi.at(row[size_t(x)]);
      mat.at(w + x, j) = phi.at(row[size_t(x)]) - phi.at(Site{sigma_t + 1, row[size_t(x)].x});
    }
  }
  return PoissonMap(sol.space(), data, std::move(mat));
}

IsoChain iso_chain(const LatticeSpacetime& m, int sigma_t, const Rat& m0sq) {
  ObservablesSpace obs(m, m0sq);
  SolutionsSpace sol(m, m0sq);
  RatMat g(sol.space().dim, obs.space().dim);
  for (int j = 0; j < obs.space().dim; ++j) {
    Field gj = causal_propagator(m, Field::delta(m, obs.basis_site(j)), m0sq);
    RatVec coords = sol.coords_of(gj);
    for (int i = 0; i < sol.space().dim; ++i) g.at(i, j) = coords[size_t(i)];
  }
  PoissonMap propagator(obs.space(), sol.space(), std::move(g));
  PoissonMap res = restriction_map(sol, sigma_t);
  return IsoChain{std::move(propagator), std::move(res)};
}

PoissonMap observables_map(const LocMorphism& f, const Rat& m0sq) {
  ObservablesSpace src(f.source(), m0sq);
  ObservablesSpace tgt(f.target(), m0sq);
  RatMat mat(tgt.space().dim, src.space().dim);
  for (int j = 0; j < src.space().dim; ++j) {
    Field pushed = Field::delta(f.target(), f.apply(src.basis_site(j)));
    RatVec cls = tgt.class_of(pushed);
    for (int i = 0; i < tgt.space().dim; ++i) mat.at(i, j) = cls[size_t(i)];
  }
  return PoissonMap(src.space(), tgt.space(), std::move(mat));
}

PoissonMap data_map(const LocMorphism& f, int sigma_t) {
  if (!is_cauchy_morphism(f)) throw NotCauchy("data_map: morphism is not Cauchy");
  PoissonSpace src = data_space(f.source(), sigma_t);
  int tgt_t = sigma_t + f.shift().dt;
  PoissonSpace tgt = data_space(f.target(), tgt_t);
  if (src.dim != tgt.dim) throw NotCauchy("data_map: row sizes differ");
  int w = src.dim / 2;
  RatMat mat(tgt.dim, src.dim);
  for (int x = 0; x < w; ++x) {
    int xx = f.target().wrap_x(x + f.shift().dx);
    mat.at(xx, x) = 1;
    mat.at(w + xx, w + x) = 1;
  }
  return PoissonMap(std::move(src), std::move(tgt), std::move(mat));
}

PoissonMap solutions_map(const LocMorphism& f, const Rat& m0sq) {
  if (!is_cauchy_morphism(f)) throw NotCauchy("solutions_map: morphism is not Cauchy");
  SolutionsSpace src(f.source(), m0sq);
  SolutionsSpace tgt(f.target(), m0sq);
  if (src.space().dim != tgt.space().dim) throw NotCauchy("solutions_map: row sizes differ");
  int t0 = f.source().min_t();
  int w = f.source().row_size(t0);
  int t0p = t0 + f.shift().dt;
  RatMat mat(tgt.space().dim, src.space().dim);
  for (int j = 0; j < src.space().dim; ++j) {
    const Field& phi = src.basis_solution(j);
    // push the data at the source bottom pair through the translation
    RatVec phi_row(static_cast<size_t>(w)), pi_row(static_cast<size_t>(w));
    SiteSet row = f.source().row(t0);
    for (int x = 0; x < w; ++x) {
      Site p = row[size_t(x)];
      int xx = f.target().wrap_x(p.x + f.shift().dx);
      phi_row[size_t(xx)] = phi.at(p);
      pi_row[size_t(xx)] = phi.at(p) - phi.at(Site{t0 + 1, p.x});
    }
    Field ext = solve_from_data(f.target(), t0p, phi_row, pi_row, m0sq);
    RatVec coords = tgt.coords_of(ext);
    for (int i = 0; i < tgt.space().dim; ++i) mat.at(i, j) = coords[size_t(i)];
  }
  return PoissonMap(src.space(), tgt.space(), std::move(mat));
}

FunctorialMaps functorial_maps(const LocMorphism& f, const Rat& m0sq,
                               std::optional<int> sigma_t) {
  FunctorialMaps out{observables_map(f, m0sq), std::nullopt, std::nullopt};
  if (is_cauchy_morphism(f)) {
    out.on_solutions = solutions_map(f, m0sq);
    int s = sigma_t.value_or(f.source().min_t());
    out.on_data = data_map(f, s);
  }
  return out;
}

}  // namespace bordqft
