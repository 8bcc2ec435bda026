#pragma once

// Exact phase-one simplex for LPs whose constraint matrix has 0/1 entries.
//
//   find x >= 0 with  sum_{c : r in rows(c)} x_c  = b_r   (r < equalities)
//                                                 <= b_r  (otherwise)
//
// Revised simplex with an explicit basis inverse. The starting basis is the
// identity (artificials on equality rows, slacks on the others), so b must be
// nonnegative. Dantzig pricing, falling back to Bland's rule after a run of
// degenerate pivots so the method cannot cycle.

#include <cstddef>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace oval::lp {

struct SparseColumn {
  std::vector<std::size_t> rows;  // positions of the 1 entries
};

template <class Num>
struct Problem {
  std::size_t equalities = 0;  // rows [0, equalities) are '='; the rest '<='
  std::vector<Num> rhs;        // b, one per row, all >= 0
  std::vector<SparseColumn> columns;
};

template <class Num>
struct Result {
  bool feasible = false;
  std::vector<Num> x;         // one value per column when feasible
  std::size_t pivots = 0;
};

template <class Num>
Result<Num> phase_one(const Problem<Num>& prob) {
  const std::size_t m = prob.rhs.size();
  const std::size_t ncols = prob.columns.size();
  const std::size_t nvars = ncols + m;  // structural, then one unit column per row
  for (const auto& b : prob.rhs)
    if (b < 0) throw Error(Errc::InvalidParameters, "phase_one needs a nonnegative right-hand side");
  for (const auto& c : prob.columns)
    for (auto r : c.rows)
      if (r >= m) throw Error(Errc::DimensionMismatch, "column references a missing row");

  auto cost = [&](std::size_t v) -> int { return (v >= ncols && v - ncols < prob.equalities) ? 1 : 0; };

  std::vector<std::size_t> basis(m);
  std::vector<long> position(nvars, -1);
  for (std::size_t r = 0; r < m; ++r) {
    basis[r] = ncols + r;
    position[ncols + r] = static_cast<long>(r);
  }
  std::vector<std::vector<Num>> binv(m, std::vector<Num>(m, Num(0)));
  for (std::size_t r = 0; r < m; ++r) binv[r][r] = 1;
  std::vector<Num> xb = prob.rhs;
  for (auto& b : xb)
    if constexpr (requires { b.canonicalize(); }) b.canonicalize();

  std::vector<Num> y(m), u(m);
  Num reduced, best, ratio, best_ratio;
  std::size_t degenerate_run = 0;
  bool bland = false;
  Result<Num> res;

  auto column_into = [&](std::size_t v, std::vector<Num>& out) {
    if (v >= ncols) {
      for (std::size_t k = 0; k < m; ++k) out[k] = binv[k][v - ncols];
      return;
    }
    for (std::size_t k = 0; k < m; ++k) out[k] = 0;
    for (auto r : prob.columns[v].rows)
      for (std::size_t k = 0; k < m; ++k) out[k] += binv[k][r];
  };

  for (;;) {
    // y = c_B^T B^-1
    for (std::size_t r = 0; r < m; ++r) y[r] = 0;
    for (std::size_t k = 0; k < m; ++k)
      if (cost(basis[k]) != 0)
        for (std::size_t r = 0; r < m; ++r) y[r] += binv[k][r];

    std::size_t entering = nvars;
    for (std::size_t v = 0; v < nvars; ++v) {
      if (position[v] >= 0) continue;
      if (v < ncols) {
        reduced = 0;
        for (auto r : prob.columns[v].rows) reduced -= y[r];
      } else {
        reduced = cost(v);
        reduced -= y[v - ncols];
      }
      if (reduced >= 0) continue;
      if (bland) {
        entering = v;
        break;
      }
      if (entering == nvars || reduced < best) {
        entering = v;
        best = reduced;
      }
    }
    if (entering == nvars) break;

    column_into(entering, u);
    std::size_t leave = m;
    for (std::size_t k = 0; k < m; ++k) {
      if (u[k] <= 0) continue;
      ratio = xb[k] / u[k];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[k] < basis[leave])) {
        leave = k;
        best_ratio = ratio;
      }
    }
    // Phase one is bounded below by zero, so some entry of u is positive.
    if (leave == m) throw Error(Errc::InvalidParameters, "phase one reported an unbounded direction");

    if (best_ratio == 0) {
      if (++degenerate_run > m) bland = true;
    } else {
      degenerate_run = 0;
    }

    const Num piv = u[leave];
    for (std::size_t r = 0; r < m; ++r) binv[leave][r] /= piv;
    xb[leave] /= piv;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == leave || u[k] == 0) continue;
      const Num f = u[k];
      for (std::size_t r = 0; r < m; ++r) binv[k][r] -= f * binv[leave][r];
      xb[k] -= f * xb[leave];
    }
    position[basis[leave]] = -1;
    basis[leave] = entering;
    position[entering] = static_cast<long>(leave);
    ++res.pivots;
  }

  Num infeasibility = 0;
  for (std::size_t k = 0; k < m; ++k)
    if (cost(basis[k]) != 0) infeasibility += xb[k];
  res.feasible = infeasibility == 0;
  if (res.feasible) {
    res.x.assign(ncols, Num(0));
    for (std::size_t k = 0; k < m; ++k)
      if (basis[k] < ncols) res.x[basis[k]] = xb[k];
  }
  return res;
}

}  // namespace oval::lp
