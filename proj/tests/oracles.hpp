// Test-only oracles, kept independent of the implementation paths they check.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bordqft/ccr.hpp"
#include "bordqft/kleingordon.hpp"
#include "bordqft/lattice.hpp"

namespace bordqft::oracle {

// Naive fixed-point causal closure: repeatedly add one-step successors (or
// predecessors) until nothing changes.
inline SiteSet closure_fixed_point(const LatticeSpacetime& m, const SiteSet& seed, bool forward) {
  std::set<Site> acc(seed.begin(), seed.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<Site> next = acc;
    for (const Site& p : acc) {
      auto step = forward ? m.successors(p) : m.predecessors(p);
      for (const Site& q : step)
        if (next.insert(q).second) changed = true;
    }
    acc = std::move(next);
  }
  return SiteSet(acc.begin(), acc.end());
}

// Dense assembly of the wave operator as a matrix over interior coordinates,
// by direct stencil enumeration.
inline RatMat assemble_wave_matrix(const LatticeSpacetime& m, const Rat& m0sq) {
  SiteSet interior = stencil_interior(m);
  RatMat out(int(interior.size()), m.num_sites());
  for (size_t r = 0; r < interior.size(); ++r) {
    Site p = interior[r];
    out.at(int(r), m.site_index(Site{p.t + 1, p.x})) += 1;
    out.at(int(r), m.site_index(Site{p.t - 1, p.x})) += 1;
    out.at(int(r), m.site_index(Site{p.t, m.wrap_x(p.x + 1)})) -= 1;
    out.at(int(r), m.site_index(Site{p.t, m.wrap_x(p.x - 1)})) -= 1;
    out.at(int(r), m.site_index(p)) += m0sq;
  }
  return out;
}

// Row-by-row leapfrog recursion for the retarded solution, written directly
// from P u = src without sharing code with the library.
inline Field leapfrog_retarded(const LatticeSpacetime& m, const Field& src, const Rat& m0sq) {
  Field u(m);
  for (int t = m.min_t() + 1; t <= m.max_t(); ++t)
    for (const Site& p : m.row(t)) {
      Site mid{t - 1, p.x};
      if (!m.contains(mid)) continue;
      Rat acc = src.domain.contains(mid) ? src.at(mid) : Rat(0);
      Site below{t - 2, p.x};
      if (m.contains(below)) acc -= u.at(below);
      Site left{t - 1, m.wrap_x(p.x - 1)};
      Site right{t - 1, m.wrap_x(p.x + 1)};
      if (m.contains(left)) acc += u.at(left);
      if (m.contains(right)) acc += u.at(right);
      acc -= m0sq * u.at(mid);
      u.at(p) = acc;
    }
  return u;
}

// Exhaustive normal ordering: reduce along *every* ascent at every step and
// demand that all reduction orders agree (diamond property).
inline std::map<Word, GaussRat> swap_tree_normal_form(const PoissonSpace& v, const Word& w,
                                                      const GaussRat& coeff) {
  auto add_into = [](std::map<Word, GaussRat>& acc, const Word& key, const GaussRat& c) {
    if (c.is_zero()) return;
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, c);
    else {
      it->second += c;
      if (it->second.is_zero()) acc.erase(it);
    }
  };
  std::vector<int> ascent_positions;
  for (size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k] < w[k + 1]) ascent_positions.push_back(int(k));
  std::map<Word, GaussRat> result;
  if (ascent_positions.empty()) {
    add_into(result, w, coeff);
    return result;
  }
  std::optional<std::map<Word, GaussRat>> agreed;
  for (int k : ascent_positions) {
    Word swapped = w;
    std::swap(swapped[size_t(k)], swapped[size_t(k) + 1]);
    std::map<Word, GaussRat> branch = swap_tree_normal_form(v, swapped, coeff);
    Rat tau = v.form.at(w[size_t(k)], w[size_t(k) + 1]);
    if (tau != 0) {
      Word shorter = w;
      shorter.erase(shorter.begin() + k, shorter.begin() + k + 2);
      for (auto& [key, c] : swap_tree_normal_form(v, shorter, coeff * GaussRat::i() * GaussRat(tau)))
        add_into(branch, key, c);
    }
    if (!agreed) {
      agreed = std::move(branch);
    } else if (!(*agreed == branch)) {
      throw std::logic_error("swap-tree oracle: reduction orders disagree");
    }
  }
  return *agreed;
}

// Plain Gaussian elimination rank, independent of RatMat::rref.
inline int elimination_rank(std::vector<std::vector<Rat>> rows) {
  size_t cols = rows.empty() ? 0 : rows[0].size();
  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows.size(); ++col) {
    size_t pivot = row;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[row]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == row || rows[r][col] == 0) continue;
      Rat f = rows[r][col] / rows[row][col];
      for (size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[row][c];
    }
    ++rank;
    ++row;
  }
  return rank;
}

}  // namespace bordqft::oracle
