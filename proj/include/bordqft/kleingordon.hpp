#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bordqft/lattice.hpp"
#include "bordqft/matrix.hpp"

namespace bordqft {

// Rational-valued function on the sites of a region, stored densely in site
// order.
struct Field {
  LatticeSpacetime domain;
  RatVec values;  // size == domain.num_sites()

  explicit Field(LatticeSpacetime m)
      : domain(std::move(m)), values(size_t(domain.num_sites())) {}
  Field(LatticeSpacetime m, RatVec v);

  const Rat& at(Site p) const { return values[size_t(domain.site_index(p))]; }
  Rat& at(Site p) { return values[size_t(domain.site_index(p))]; }
  bool is_zero() const;
  SiteSet support() const;
  static Field delta(const LatticeSpacetime& m, Site p);
};

// Sites whose full second-order stencil lies inside the region; the discrete
// wave operator is defined exactly there.
SiteSet stencil_interior(const LatticeSpacetime& m);
// Sites all of whose stencil neighbours lie in the interior; images under
// the wave operator of functions supported here stay inside the interior.
SiteSet deep_interior(const LatticeSpacetime& m);

// (P phi)(t,x) = phi(t+1,x) + phi(t-1,x) - phi(t,x+1) - phi(t,x-1)
//              + m0sq * phi(t,x),
// evaluated on stencil-interior sites (zero elsewhere in the returned field).
// Spatial neighbours wrap around the circle; for circumference <= 1 both
// wrap to the site itself, giving the 1-dimensional operator.
Field apply_P(const LatticeSpacetime& m, const Field& phi, const Rat& m0sq);

// Retarded/advanced fundamental solutions by leapfrog recursion sweeping
// forward/backward in time from zero rows, treating absent neighbours as
// zero. For a causally convex region this agrees exactly with the
// restriction of the ambient solution. The source must be supported on
// stencil-interior sites.
Field green_retarded(const LatticeSpacetime& m, const Field& src, const Rat& m0sq);
Field green_advanced(const LatticeSpacetime& m, const Field& src, const Rat& m0sq);
Field causal_propagator(const LatticeSpacetime& m, const Field& src, const Rat& m0sq);

// Sum over all sites of f1 * f2 with unit weights.
Rat pairing(const Field& f1, const Field& f2);

// Finite-dimensional vector space with a skew form.
struct PoissonSpace {
  int dim = 0;
  std::vector<std::string> basis_labels;
  RatMat form;

  void validate() const;  // antisymmetry, sizes
  bool nondegenerate() const { return form.rank() == dim; }
  friend bool operator==(const PoissonSpace&, const PoissonSpace&) = default;
};

// Linear map with exact form pullback: matrix^T * tgt.form * matrix ==
// src.form. Construction verifies this; NotPoisson otherwise.
struct PoissonMap {
  PoissonSpace src;
  PoissonSpace tgt;
  RatMat matrix;

  PoissonMap(PoissonSpace s, PoissonSpace t, RatMat m);
  PoissonMap compose_after(const PoissonMap& first) const;
  PoissonMap inverse() const;
  static PoissonMap identity(const PoissonSpace& v);
};

// The space of linear observables: functions on the stencil interior modulo
// wave-operator images of deep-interior functions, with the causal
// propagator pairing. Keeps the exact row-reduction context needed to map
// source fields to quotient coordinates.
class ObservablesSpace {
 public:
  ObservablesSpace(LatticeSpacetime m, Rat m0sq);

  const PoissonSpace& space() const { return space_; }
  const LatticeSpacetime& region() const { return m_; }
  const Rat& mass_squared() const { return m0sq_; }
  const SiteSet& interior() const { return interior_; }
  const SiteSet& deep() const { return deep_; }
  Site basis_site(int i) const { return free_sites_[size_t(i)]; }

  // Quotient class of a source field supported on the interior.
  RatVec class_of(const Field& src) const;
  // A representative interior field with the given class coordinates.
  Field representative(const RatVec& coords) const;

 private:
  LatticeSpacetime m_;
  Rat m0sq_;
  SiteSet interior_;
  SiteSet deep_;
  std::vector<Site> free_sites_;
  std::vector<int> pivot_cols_;
  RatMat reducer_;  // rref of the wave-operator image, rows indexed by pivots
  PoissonSpace space_;
};

ObservablesSpace observables_space(const LatticeSpacetime& m, const Rat& m0sq);

// Solutions on a spatially full region (every row a full circle), presented
// by their initial data on the bottom row pair. The symplectic form is the
// discrete current evaluated on a row pair; leapfrog conserves it exactly.
class SolutionsSpace {
 public:
  SolutionsSpace(LatticeSpacetime m, Rat m0sq);

  const PoissonSpace& space() const { return space_; }
  const LatticeSpacetime& region() const { return m_; }
  int data_row() const { return m_.min_t(); }
  const Field& basis_solution(int i) const { return basis_[size_t(i)]; }
  // Coordinates of a solution = its data at the bottom row pair.
  RatVec coords_of(const Field& solution) const;

 private:
  LatticeSpacetime m_;
  Rat m0sq_;
  std::vector<Field> basis_;
  PoissonSpace space_;
};

SolutionsSpace solutions_space(const LatticeSpacetime& m, const Rat& m0sq);

// Compactly supported initial data (phi, pi) on the row t0. The momentum is
// the negated forward difference pi = Phi(t0) - Phi(t0+1): for this sign of
// the wave operator it is the unique discrete normal-momentum convention for
// which the restriction and propagator maps preserve the forms exactly.
PoissonSpace data_space(const LatticeSpacetime& m, int sigma_t);

// Discrete symplectic current of two fields evaluated on the row pair
// (t, t+1): sum_x [f1(t+1,x) f2(t,x) - f2(t+1,x) f1(t,x)]. Conserved by the
// leapfrog recursion; equal to the data-space form of the restricted pair.
Rat symplectic_current(const Field& f1, const Field& f2, int t);

// Unique solution with the given (phi, pi) data at row t0, evolved through
// the whole (spatially full) region by leapfrog in both directions.
Field solve_from_data(const LatticeSpacetime& m, int t0, const RatVec& phi_row,
                      const RatVec& pi_row, const Rat& m0sq);

struct IsoChain {
  PoissonMap propagator;  // observables -> solutions
  PoissonMap res;         // solutions -> data at the marked row
};

IsoChain iso_chain(const LatticeSpacetime& m, int sigma_t, const Rat& m0sq);

// res for an arbitrary marked row: solution |-> (value row, forward
// difference row).
PoissonMap restriction_map(const SolutionsSpace& sol, int sigma_t);

// Functorial maps induced by a region morphism: pushforward on observables
// for every morphism, solve-and-extend on solutions and row relabeling on
// data for Cauchy morphisms (NotCauchy otherwise; the data map is taken at
// the marked row sigma_t of the source).
struct FunctorialMaps {
  PoissonMap on_observables;
  std::optional<PoissonMap> on_solutions;
  std::optional<PoissonMap> on_data;
};

FunctorialMaps functorial_maps(const LocMorphism& f, const Rat& m0sq,
                               std::optional<int> sigma_t = std::nullopt);

// Pushforward on observable classes only (defined for every morphism).
PoissonMap observables_map(const LocMorphism& f, const Rat& m0sq);
// Data relabeling D(sigma_t) -> D(f(sigma_t)) under the translation.
PoissonMap data_map(const LocMorphism& f, int sigma_t);
// Solve-and-extend along a Cauchy morphism.
PoissonMap solutions_map(const LocMorphism& f, const Rat& m0sq);

}  // namespace bordqft
