#pragma once

// Service-rate regions.
//
// Three objects are requested at rates lambda_i; every server has unit
// capacity. A demand vector is supported when some allocation of each rate
// over that object's recovery sets keeps every server at load <= 1. All
// arithmetic is over exact rationals.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "construct.hpp"
#include "lp.hpp"
#include "rational.hpp"

namespace oval {

using RateVector = std::array<Rational, 3>;

inline RateVector rate_vector(const Rational& a, const Rational& b, const Rational& c) {
  RateVector v{a, b, c};
  for (const auto& x : v)
    if (x < 0) throw Error(Errc::InvalidParameters, "rates must be nonnegative");
  return v;
}

inline Rational total(const RateVector& v) { return v[0] + v[1] + v[2]; }

inline std::string to_string(const RateVector& v) {
  return "(" + to_string(v[0]) + "," + to_string(v[1]) + "," + to_string(v[2]) + ")";
}

/// Per-object recovery sets over n servers.
struct RecoveryFamilies {
  std::size_t n = 0;
  std::array<std::vector<IndexSet>, 3> sets;

  std::size_t size() const { return sets[0].size() + sets[1].size() + sets[2].size(); }
};

inline RecoveryFamilies families_of(const Matrix& m, const Caps& caps = {}) {
  return {m.cols(), all_minimal_recovery_sets(m, caps)};
}

inline RecoveryFamilies pair_families(const RecoverySystem& rs) {
  RecoveryFamilies fam{rs.n, {}};
  for (std::size_t i = 0; i < 3; ++i)
    for (const auto& p : rs.pairs[i]) fam.sets[i].push_back({p.a, p.b});
  return fam;
}

inline RecoveryFamilies systematic_families(std::size_t n) {
  return {n, {systematic_recovery_sets(n, 0), systematic_recovery_sets(n, 1), systematic_recovery_sets(n, 2)}};
}

struct AllocationEntry {
  std::size_t object = 0;
  IndexSet set;
  Rational rate;
};

struct Allocation {
  std::size_t n = 0;
  std::vector<AllocationEntry> entries;

  RateVector demand() const {
    RateVector d{Rational(0), Rational(0), Rational(0)};
    for (const auto& e : entries) d[e.object] += e.rate;
    return d;
  }

  std::vector<Rational> loads() const {
    std::vector<Rational> l(n, Rational(0));
    for (const auto& e : entries)
      for (auto s : e.set) l[s] += e.rate;
    return l;
  }
};

struct AllocationCheck {
  bool ok = true;
  std::string reason;
};

/// Independent check of the three feasibility conditions: nonnegative
/// rates, per-object sums equal to the demand, per-server load at most 1.
/// When families are given, every set must also belong to its object's family.
inline AllocationCheck check_allocation(const Allocation& a, const RateVector& lambda,
                                        const RecoveryFamilies* families = nullptr) {
  for (const auto& e : a.entries) {
    if (e.rate < 0) return {false, "negative rate"};
    if (e.object >= 3) return {false, "object index out of range"};
    for (auto s : e.set)
      if (s >= a.n) return {false, "server index out of range"};
    if (families) {
      const auto& fam = families->sets[e.object];
      if (std::find(fam.begin(), fam.end(), e.set) == fam.end()) return {false, "set is not a recovery set of its object"};
    }
  }
  const RateVector d = a.demand();
  for (std::size_t i = 0; i < 3; ++i)
    if (d[i] != lambda[i]) return {false, "object " + std::to_string(i + 1) + " served at " + to_string(d[i]) + " instead of " + to_string(lambda[i])};
  const auto l = a.loads();
  for (std::size_t j = 0; j < a.n; ++j)
    if (l[j] > 1) return {false, "server " + std::to_string(j + 1) + " over capacity: " + to_string(l[j])};
  return {};
}

// ---------------------------------------------------------------------------
// Region descriptions

struct Simplex {
  Rational edge;
};

/// a . lambda <= b
struct HalfSpace {
  std::array<Rational, 3> a;
  Rational b;
};

/// Intersection of the nonnegative orthant with the listed half-spaces.
struct HalfSpaces {
  std::vector<HalfSpace> inequalities;
};

struct OracleBacked {
  RecoveryFamilies families;
};

struct RegionDescription {
  std::string name;
  std::variant<Simplex, HalfSpaces, OracleBacked> kind;
  std::optional<std::vector<RateVector>> vertices;
};

/// Delta_3(edge) with its four vertices.
inline RegionDescription simplex_region(Rational edge, std::string name = "simplex") {
  edge.canonicalize();
  const Rational z(0);
  return {std::move(name), Simplex{edge},
          std::vector<RateVector>{{z, z, z}, {edge, z, z}, {z, edge, z}, {z, z, edge}}};
}

inline bool is_oval_length(std::size_t n) {
  if (n < 6 || n % 2 != 0) return false;
  auto [p, m] = prime_power_decompose(n - 2);
  if (p == 2 && n - 2 >= 4) return true;
  auto [p2, m2] = prime_power_decompose(n - 1);
  return p2 > 2;
}

/// The region of the internal-basis generator matrix: Delta_3(n/2).
inline RegionDescription oval_region(std::size_t n) {
  if (!is_oval_length(n)) throw Error(Errc::InvalidParameters, std::to_string(n) + " is not m(2,q) for any q >= 4");
  return simplex_region(Rational(static_cast<long>(n), 2), "oval");
}

inline RegionDescription oracle_region(RecoveryFamilies fam, std::string name) {
  return {std::move(name), OracleBacked{std::move(fam)}, std::nullopt};
}

// ---------------------------------------------------------------------------
// Allocations from the size-2 partitions

inline Allocation uniform_allocation(const RateVector& lambda, const RecoverySystem& rs) {
  for (const auto& x : lambda)
    if (x < 0) throw Error(Errc::OutsideRegion, "negative rate");
  if (total(lambda) * 2 > static_cast<long>(rs.n)) throw Error(Errc::OutsideRegion, to_string(lambda) + " exceeds n/2");
  Allocation a;
  a.n = rs.n;
  for (std::size_t i = 0; i < 3; ++i) {
    Rational r = lambda[i] * 2 / static_cast<long>(rs.n);
    for (const auto& p : rs.pairs[i]) a.entries.push_back({i, {p.a, p.b}, r});
  }
  return a;
}

struct CostReport {
  Rational cost;
  Allocation allocation;
};

inline CostReport normalized_cost(const Allocation& a) {
  Rational weighted(0), demand(0);
  for (const auto& e : a.entries) {
    weighted += e.rate * static_cast<long>(e.set.size());
    demand += e.rate;
  }
  if (demand == 0) throw Error(Errc::ZeroDemand, "cost is undefined without demand");
  return {weighted / demand, a};
}

// ---------------------------------------------------------------------------
// Exact LP oracle

struct Feasibility {
  bool feasible = false;
  std::optional<Allocation> witness;
};

inline Feasibility lp_feasible(const RateVector& lambda, const RecoveryFamilies& fam, const Caps& caps = {}) {
  if (fam.size() > caps.lp_variables)
    throw Error(Errc::ProblemTooLarge, std::to_string(fam.size()) + " variables exceed cap " + std::to_string(caps.lp_variables));
  for (const auto& x : lambda)
    if (x < 0) throw Error(Errc::InvalidParameters, "rates must be nonnegative");

  lp::Problem<Rational> prob;
  prob.equalities = 3;
  prob.rhs.assign(3 + fam.n, Rational(1));
  for (std::size_t i = 0; i < 3; ++i) prob.rhs[i] = lambda[i];
  std::vector<std::pair<std::size_t, const IndexSet*>> owner;
  for (std::size_t i = 0; i < 3; ++i)
    for (const auto& set : fam.sets[i]) {
      lp::SparseColumn col;
      col.rows.push_back(i);
      for (auto s : set) col.rows.push_back(3 + s);
      prob.columns.push_back(std::move(col));
      owner.emplace_back(i, &set);
    }

  auto res = lp::phase_one(prob);
  Feasibility out;
  out.feasible = res.feasible;
  if (res.feasible) {
    Allocation a;
    a.n = fam.n;
    for (std::size_t c = 0; c < res.x.size(); ++c)
      if (res.x[c] != 0) a.entries.push_back({owner[c].first, *owner[c].second, res.x[c]});
    const auto check = check_allocation(a, lambda, &fam);
    if (!check.ok) throw std::logic_error("LP witness failed verification: " + check.reason);
    out.witness = std::move(a);
  }
  return out;
}

/// The systematic-region inequality exactly as printed,
/// sum_i (lambda_i + k(1 - lambda_i)) <= n. Not used as ground truth.
inline bool systematic_region_eq4(const RateVector& lambda, std::size_t n, std::size_t k = 3) {
  if (n < 2 * k) throw Error(Errc::InvalidParameters, "needs n >= 2k");
  Rational lhs(0);
  const long kk = static_cast<long>(k);
  for (const auto& l : lambda) lhs += l + kk * (1 - l);
  return lhs <= static_cast<long>(n);
}

/// The same inequality as a half-space description.
inline RegionDescription eq4_region(std::size_t n, std::size_t k = 3) {
  const long kk = static_cast<long>(k);
  const Rational c(1 - kk);
  return {"systematic-as-printed", HalfSpaces{{HalfSpace{{c, c, c}, Rational(static_cast<long>(n) - 3 * kk)}}}, std::nullopt};
}

inline bool down_monotone(const RegionDescription& r) {
  if (auto* h = std::get_if<HalfSpaces>(&r.kind)) {
    for (const auto& ineq : h->inequalities)
      for (const auto& a : ineq.a)
        if (a < 0) return false;
  }
  return true;
}

inline bool contains(const RegionDescription& r, const RateVector& lambda, const Caps& caps = {}) {
  for (const auto& x : lambda)
    if (x < 0) return false;
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Simplex>) {
          return total(lambda) <= k.edge;
        } else if constexpr (std::is_same_v<K, HalfSpaces>) {
          for (const auto& ineq : k.inequalities)
            if (ineq.a[0] * lambda[0] + ineq.a[1] * lambda[1] + ineq.a[2] * lambda[2] > ineq.b) return false;
          return true;
        } else {
          return lp_feasible(lambda, k.families, caps).feasible;
        }
      },
      r.kind);
}

// ---------------------------------------------------------------------------
// Containment over vertices and a rational grid

struct GridSpec {
  Rational step = Rational(1, 6);
  std::optional<Rational> extent;  // box [0, extent]^3; derived from the regions when absent
};

struct Direction {
  enum class Status { Certified, HoldsOnGrid, Fails } status = Status::HoldsOnGrid;
  std::optional<RateVector> witness;  // in the left region, outside the right one

  bool holds() const { return status != Status::Fails; }
};

inline const char* to_string(Direction::Status s) {
  switch (s) {
    case Direction::Status::Certified: return "certified";
    case Direction::Status::HoldsOnGrid: return "holds-on-grid";
    case Direction::Status::Fails: return "fails";
  }
  return "?";
}

struct Comparison {
  std::string a_name, b_name;
  Direction a_in_b, b_in_a;
  std::size_t grid_points = 0;
  std::size_t membership_queries = 0;
  Rational step;
  std::array<std::size_t, 3> grid_steps{};

  std::string verdict() const {
    const bool ab = a_in_b.holds(), ba = b_in_a.holds();
    if (ab && ba) return a_name + " = " + b_name;
    if (ab) return a_name + " ⊊ " + b_name;
    if (ba) return a_name + " ⊋ " + b_name;
    return "incomparable";
  }
};

namespace detail {

// Number of grid steps of size `step` that fit in [0, bound].
inline std::size_t steps_within(const Rational& bound, const Rational& step) {
  if (bound < 0) return 0;
  const Rational r = bound / step;
  const mpz_class s = r.get_num() / r.get_den();
  return s.get_ui();
}

class GridMembership {
 public:
  GridMembership(const RegionDescription& r, const Rational& step, const Caps& caps, std::size_t& queries)
      : r_(r), step_(step), caps_(caps), queries_(queries) {}

  bool at(std::size_t a, std::size_t b, std::size_t c) const {
    ++queries_;
    return contains(r_, point(a, b, c), caps_);
  }

  RateVector point(std::size_t a, std::size_t b, std::size_t c) const {
    return {step_ * static_cast<long>(a), step_ * static_cast<long>(b), step_ * static_cast<long>(c)};
  }

  /// Largest grid index t with t*e_axis inside the region (down-monotone
  /// regions only), searched up to `limit`.
  std::size_t axis_extent(std::size_t axis, std::size_t limit) const {
    auto on_axis = [&](std::size_t t) {
      std::array<std::size_t, 3> idx{0, 0, 0};
      idx[axis] = t;
      return at(idx[0], idx[1], idx[2]);
    };
    std::size_t lo = 0, hi = limit;
    if (on_axis(hi)) return hi;
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      (on_axis(mid) ? lo : hi) = mid;
    }
    return lo;
  }

  /// heights[a][b] = number of c in [0, nc] with (a,b,c) inside. Only valid
  /// for down-monotone regions: membership along c is a prefix and heights are
  /// nonincreasing in a and b, which bounds the walk to O(na*(nb+nc)) queries.
  std::vector<std::vector<std::size_t>> heights(std::size_t na, std::size_t nb, std::size_t nc) const {
    std::vector<std::vector<std::size_t>> h(na + 1, std::vector<std::size_t>(nb + 1, 0));
    for (std::size_t a = 0; a <= na; ++a)
      for (std::size_t b = 0; b <= nb; ++b) {
        std::size_t cap = nc + 1;
        if (a > 0) cap = std::min(cap, h[a - 1][b]);
        if (b > 0) cap = std::min(cap, h[a][b - 1]);
        std::size_t c = cap;
        while (c > 0 && !at(a, b, c - 1)) --c;
        h[a][b] = c;
      }
    return h;
  }

 private:
  const RegionDescription& r_;
  Rational step_;
  const Caps& caps_;
  std::size_t& queries_;
};

// Per-axis upper bound of a region, or nullopt when the region is unbounded
// along that axis (given lambda >= 0).
inline std::optional<Rational> axis_bound(const RegionDescription& r, std::size_t axis) {
  if (auto* s = std::get_if<Simplex>(&r.kind)) return s->edge;
  if (auto* h = std::get_if<HalfSpaces>(&r.kind)) {
    std::optional<Rational> best;
    for (const auto& ineq : h->inequalities) {
      if (ineq.a[axis] <= 0) continue;
      bool others_nonneg = true;
      for (std::size_t j = 0; j < 3; ++j)
        if (j != axis && ineq.a[j] < 0) others_nonneg = false;
      if (!others_nonneg) continue;
      Rational v = ineq.b / ineq.a[axis];
      if (!best || v < *best) best = v;
    }
    return best;
  }
  // Every recovery set uses at least one unit-capacity server.
  return Rational(static_cast<long>(std::get<OracleBacked>(r.kind).families.n));
}

inline Direction vertex_direction(const RegionDescription& from, const RegionDescription& to, const Caps& caps) {
  Direction d;
  if (!from.vertices) return d;
  for (const auto& v : *from.vertices)
    if (!contains(to, v, caps)) {
      d.status = Direction::Status::Fails;
      d.witness = v;
      return d;
    }
  // Both regions are convex, so containing every vertex settles it.
  d.status = Direction::Status::Certified;
  return d;
}

}  // namespace detail

/// Decides A in B and B in A over the vertices of any region that lists them
/// plus the grid {0, step, 2 step, ...}^3 inside the bounding box. Vertex
/// checks certify a containment; any failing point is a witness; otherwise
/// a containment is reported as holding on the grid only.
inline Comparison region_compare(const RegionDescription& A, const RegionDescription& B, const GridSpec& grid = {},
                                 const Caps& caps = {}) {
  if (grid.step <= 0) throw Error(Errc::UndecidableAtResolution, "grid step must be positive");
  Comparison cmp;
  cmp.a_name = A.name;
  cmp.b_name = B.name;
  cmp.step = grid.step;

  cmp.a_in_b = detail::vertex_direction(A, B, caps);
  cmp.b_in_a = detail::vertex_direction(B, A, caps);
  const bool need_ab = cmp.a_in_b.status == Direction::Status::HoldsOnGrid;
  const bool need_ba = cmp.b_in_a.status == Direction::Status::HoldsOnGrid;
  if (!need_ab && !need_ba) return cmp;

  std::size_t queries = 0;
  detail::GridMembership ma(A, grid.step, caps, queries), mb(B, grid.step, caps, queries);

  // Bounding box in grid steps.
  std::array<std::size_t, 3> box{};
  for (std::size_t axis = 0; axis < 3; ++axis) {
    if (grid.extent) {
      box[axis] = detail::steps_within(*grid.extent, grid.step);
      continue;
    }
    std::size_t ext = 0;
    for (const auto* r : {&A, &B}) {
      auto bound = detail::axis_bound(*r, axis);
      if (!bound) throw Error(Errc::UndecidableAtResolution, r->name + " is unbounded; no finite grid covers it");
      std::size_t limit = detail::steps_within(*bound, grid.step);
      if (std::holds_alternative<OracleBacked>(r->kind))
        limit = (r == &A ? ma : mb).axis_extent(axis, limit);
      ext = std::max(ext, limit);
    }
    box[axis] = ext;
  }
  cmp.grid_steps = box;
  const std::size_t total_points = (box[0] + 1) * (box[1] + 1) * (box[2] + 1);
  if (total_points > caps.grid_points)
    throw Error(Errc::UndecidableAtResolution, "grid of " + std::to_string(total_points) + " points exceeds the point budget");
  cmp.grid_points = total_points;

  auto record = [](Direction& d, const RateVector& p) {
    if (d.status == Direction::Status::HoldsOnGrid) {
      d.status = Direction::Status::Fails;
      d.witness = p;
    }
  };

  if (down_monotone(A) && down_monotone(B)) {
    const auto ha = ma.heights(box[0], box[1], box[2]);
    const auto hb = mb.heights(box[0], box[1], box[2]);
    for (std::size_t a = 0; a <= box[0]; ++a)
      for (std::size_t b = 0; b <= box[1]; ++b) {
        if (need_ab && ha[a][b] > hb[a][b]) record(cmp.a_in_b, ma.point(a, b, hb[a][b]));
        if (need_ba && hb[a][b] > ha[a][b]) record(cmp.b_in_a, ma.point(a, b, ha[a][b]));
      }
  } else {
    for (std::size_t a = 0; a <= box[0]; ++a)
      for (std::size_t b = 0; b <= box[1]; ++b)
        for (std::size_t c = 0; c <= box[2]; ++c) {
          const bool ia = ma.at(a, b, c), ib = mb.at(a, b, c);
          if (need_ab && ia && !ib) record(cmp.a_in_b, ma.point(a, b, c));
          if (need_ba && ib && !ia) record(cmp.b_in_a, ma.point(a, b, c));
        }
  }
  cmp.membership_queries = queries;
  return cmp;
}

// ---------------------------------------------------------------------------
// Printed systematic inequality versus the oracle

struct DivergencePoint {
  RateVector lambda;
  bool as_printed = false;
  bool oracle = false;
};

struct DivergenceReport {
  std::size_t n = 0;
  Rational step, extent;
  std::size_t points = 0;
  std::size_t agree = 0;
  std::vector<DivergencePoint> disagreements;  // lexicographic grid order
};

inline DivergenceReport eq4_divergence(const RecoveryFamilies& systematic, const Rational& step, const Rational& extent,
                                       const Caps& caps = {}) {
  DivergenceReport rep;
  rep.n = systematic.n;
  rep.step = step;
  rep.extent = extent;
  const std::size_t N = detail::steps_within(extent, step);
  for (std::size_t a = 0; a <= N; ++a)
    for (std::size_t b = 0; b <= N; ++b)
      for (std::size_t c = 0; c <= N; ++c) {
        const RateVector p{step * static_cast<long>(a), step * static_cast<long>(b), step * static_cast<long>(c)};
        const bool printed = systematic_region_eq4(p, systematic.n);
        const bool oracle = lp_feasible(p, systematic, caps).feasible;
        ++rep.points;
        if (printed == oracle) ++rep.agree;
        else rep.disagreements.push_back({p, printed, oracle});
      }
  return rep;
}

}  // namespace oval
