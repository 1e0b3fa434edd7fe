#pragma once

#include <gmpxx.h>

#include <string>

#include "bordqft/errors.hpp"

namespace bordqft {

// Exact rational scalar. All quantities in this library are exact; there is
// no floating point anywhere.
using Rat = mpq_class;

// Parses "p", "-p/q" or "p/q". Rejects q == 0 and malformed strings.
Rat rat_parse(const std::string& s);

// Canonical "p/q" (or "p" when q == 1) rendering.
std::string rat_str(const Rat& r);

// Gaussian rational a + b*i, the scalar field of the CCR algebras.
struct GaussRat {
  Rat re{0};
  Rat im{0};

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return GaussRat(re, -im); }

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

std::string gauss_str(const GaussRat& z);

}  // namespace bordqft
