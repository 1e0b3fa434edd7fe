#pragma once

#include <functional>
#include <memory>
#include <random>

#include "bordqft/ccr.hpp"
#include "bordqft/lbord.hpp"

namespace bordqft {

struct CheckResult {
  std::string check;
  std::string instance_key;
  bool status = true;
  std::string lhs;
  std::string rhs;
  std::string tag;  // construction the check verifies (for the report)
};

bool all_pass(const std::vector<CheckResult>& results);

// Shared cache of exact observable spaces per region.
class KgContext {
 public:
  explicit KgContext(Rat m0sq) : m0sq_(std::move(m0sq)) {}
  const Rat& mass_squared() const { return m0sq_; }

  const ObservablesSpace& observables(const LatticeSpacetime& m) const;
  // Pushforward on observable classes.
  PoissonMap obs_map(const LocMorphism& f) const;

 private:
  Rat m0sq_;
  mutable std::map<std::string, std::shared_ptr<ObservablesSpace>> cache_;
  mutable std::map<std::string, std::shared_ptr<PoissonMap>> map_cache_;
};

// Finite instance of an algebra-valued field theory on lattice regions. The
// morphism assignment gives the Poisson map on observable generators; the
// algebra morphism is the induced CCR morphism.
struct AqftInstance {
  std::shared_ptr<KgContext> ctx;
  std::vector<LatticeSpacetime> objects;
  std::vector<LocMorphism> morphisms;
  std::function<PoissonMap(const LocMorphism&)> assign;
};

struct CompareConfig {
  int circumference = 6;
  int t_max = 12;
  Rat mass_squared = Rat(0);
  uint64_t seed = 1;
  int max_degree = 3;
};

// The free-field instance: slab objects with Cauchy translations between
// them, plus diamond subregions with their (non-Cauchy) inclusions.
AqftInstance build_aqft_kg(const CompareConfig& config);

// Sign-twisted variant: generators are negated along non-Cauchy morphisms.
// Agrees with the input on every Cauchy morphism and passes the same axioms;
// the generated morphism set never composes two non-Cauchy maps, so the
// character is multiplicative on it.
AqftInstance twist_aqft_by_sign(const AqftInstance& a);

// Functoriality on composable pairs, Einstein causality on causally disjoint
// pairs (commutators computed in the CCR algebra), time-slice invertibility.
std::vector<CheckResult> check_aqft_axioms(const AqftInstance& a, int min_disjoint_pairs);

// Algebra-valued functor on truncated bordism classes.
struct FftInstance {
  std::shared_ptr<KgContext> ctx;
  std::vector<BordObject> objects;
  std::function<PoissonSpace(const BordObject&)> space_of;
  std::function<PoissonMap(const BordClassKey&)> assign;
};

// Initial-data description: CCR(Data(Sigma)) with bordism classes acting by
// identify-evolve-restrict-identify through the bulk.
FftInstance build_fft_kg(std::shared_ptr<KgContext> ctx, std::vector<BordObject> objects);

// The identify-evolve-restrict-identify composite through an arbitrary
// representative; equal for all representatives of one class.
PoissonMap fft_kg_via_representative(const Rat& m0sq, const Bordism& rep);

// The underlying functorial theory of an algebraic one: collars of a full
// representative are the regions themselves, so a class acts by
// A(i1)^{-1} A(i0). Throws TimeSliceViolation when invertibility fails.
FftInstance fft_from_aqft(const AqftInstance& a, std::vector<BordObject> objects);

// All classes between the instance objects with time extent <= delta_max.
std::vector<BordClassKey> generate_class_keys(const std::vector<BordObject>& objects,
                                              int delta_max);

// FFT functor laws on classes: identities, composition, class independence
// of representatives.
std::vector<CheckResult> check_fft_functoriality(const FftInstance& f,
                                                 const std::vector<BordClassKey>& keys);

// The comparison components CCR(res o G): naturality square per class, exact
// on generators, plus random low-degree element probes through the algebras.
std::vector<CheckResult> check_scalar_comparison(const CompareConfig& config);

// Colimit-style reconstruction of an algebraic theory from a functorial one
// satisfying time-slice: the value at a region is the value at its least
// Cauchy row, with cocone maps given by connecting bordism classes.
struct Reconstruction {
  std::shared_ptr<KgContext> ctx;
  std::vector<LatticeSpacetime> objects;
  std::function<PoissonSpace(const LatticeSpacetime&)> space_of;
  std::function<PoissonMap(const LocMorphism&)> assign;          // Cauchy morphisms only
  std::function<PoissonMap(const BordObject&)> cocone;           // iota_Sigma
};

Reconstruction reconstruct_aqft(const FftInstance& f, const std::vector<LatticeSpacetime>& objects);

// Row-independence of the reconstructed morphisms and naturality of the
// cocone as an isomorphism onto the underlying functorial theory.
std::vector<CheckResult> check_reconstruction(const FftInstance& f, const Reconstruction& rec,
                                              const std::vector<LocMorphism>& cauchy_morphisms);

// Two theories agreeing on every Cauchy morphism, differing on a diamond
// inclusion, with equal underlying functorial theories.
std::vector<CheckResult> check_nonfullness_witness(const CompareConfig& config);

// Faithfulness probe: distinct natural isomorphisms have distinct images.
std::vector<CheckResult> check_faithfulness_probe(const CompareConfig& config);

// One-dimensional equivalence: full roundtrip of the m = 1 free field.
std::vector<CheckResult> check_one_dimensional_roundtrip(const CompareConfig& config);

}  // namespace bordqft
