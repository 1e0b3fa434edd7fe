#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bordqft/kleingordon.hpp"

namespace bordqft {

// Generator-index word; the normal form keeps indices nonincreasing.
using Word = std::vector<int>;

// Element of the polynomial *-algebra presented by a Poisson vector space
// with relations  v_a v_b - v_b v_a = i tau(a,b) 1. Terms map normal-form
// words to Gaussian-rational coefficients; zero coefficients are dropped.
class CCRElement {
 public:
  CCRElement() = default;
  explicit CCRElement(std::shared_ptr<const PoissonSpace> parent) : parent_(std::move(parent)) {}

  const std::shared_ptr<const PoissonSpace>& parent() const { return parent_; }
  const std::map<Word, GaussRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend bool operator==(const CCRElement& a, const CCRElement& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const CCRElement& a, const CCRElement& b) { return !(a == b); }

  std::string str() const;

 private:
  friend class CCRAlgebra;
  std::shared_ptr<const PoissonSpace> parent_;
  std::map<Word, GaussRat> terms_;
};

// Rewriting strategies for normal ordering; all must agree (confluence).
enum class RewriteStrategy { FirstAscent, LastAscent, RandomAscent };

// The CCR algebra over a Poisson vector space.
class CCRAlgebra {
 public:
  explicit CCRAlgebra(PoissonSpace space)
      : space_(std::make_shared<const PoissonSpace>(std::move(space))) {
    space_->validate();
  }
  explicit CCRAlgebra(std::shared_ptr<const PoissonSpace> space) : space_(std::move(space)) {
    space_->validate();
  }

  const PoissonSpace& space() const { return *space_; }
  const std::shared_ptr<const PoissonSpace>& space_ptr() const { return space_; }

  CCRElement zero() const { return CCRElement(space_); }
  CCRElement one() const;
  CCRElement generator(int index) const;  // IndexOutOfRange
  CCRElement scalar(const GaussRat& c) const;
  // Linear combination of generators.
  CCRElement from_vector(const RatVec& v) const;

  // Repeatedly swaps adjacent out-of-order letters using the commutation
  // relation until every word is nonincreasing.
  CCRElement normal_form(const std::map<Word, GaussRat>& raw,
                         RewriteStrategy strategy = RewriteStrategy::FirstAscent,
                         std::mt19937_64* rng = nullptr) const;

  CCRElement add(const CCRElement& a, const CCRElement& b) const;
  CCRElement scale(const GaussRat& c, const CCRElement& a) const;
  CCRElement multiply(const CCRElement& a, const CCRElement& b) const;
  CCRElement star(const CCRElement& a) const;
  CCRElement commutator(const CCRElement& a, const CCRElement& b) const;

  // Literal syntax: "(1+2i)*e3.e1 + (0+1i)*1", with optional bare terms
  // "e2", "1", and integer or p/q rational coefficient components.
  CCRElement parse(const std::string& text) const;

  // Deterministic random element for probe suites.
  CCRElement random_element(std::mt19937_64& rng, int max_degree) const;

 private:
  void check_parent(const CCRElement& a) const;
  std::shared_ptr<const PoissonSpace> space_;
};

// Algebra morphism induced by a Poisson map: generators are substituted by
// the image linear combinations, then renormalized.
class CCRMorphism {
 public:
  CCRMorphism(const CCRAlgebra& from, const CCRAlgebra& to, PoissonMap map);

  const CCRAlgebra& from() const { return *from_; }
  const CCRAlgebra& to() const { return *to_; }
  const PoissonMap& poisson_map() const { return map_; }

  CCRElement apply(const CCRElement& a) const;
  CCRMorphism compose_after(const CCRMorphism& first) const;
  bool is_invertible() const { return map_.matrix.is_invertible(); }
  CCRMorphism inverse() const;

 private:
  std::shared_ptr<const CCRAlgebra> from_;
  std::shared_ptr<const CCRAlgebra> to_;
  PoissonMap map_;
};

}  // namespace bordqft
