#pragma once

// Basis change to three independent internal points (G = B^-1 F) and the
// recovery system it induces.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "oval.hpp"

namespace oval {

using IndexSet = std::vector<std::size_t>;  // sorted, 0-based server indices

struct InternalBasis {
  std::array<ProjPoint, 3> points;
  Matrix B;      // columns are the normalized representatives
  Matrix B_inv;
};

struct GeneratorMatrix {
  Matrix G;  // 3 x n, columns g_j
  OvalCode source;
  InternalBasis basis;

  std::size_t n() const { return G.cols(); }
  const Field& f() const { return G.field(); }
};

/// e_object = alpha * g_a + beta * g_b
struct RecoveryPair {
  std::size_t a = 0, b = 0;  // a < b
  FieldElement alpha, beta;
};

struct RecoverySystem {
  std::size_t n = 0;
  std::array<std::vector<RecoveryPair>, 3> pairs;
  std::optional<std::array<std::vector<IndexSet>, 3>> full;
};

struct BasisStrategy {
  enum class Kind { Scan, Seeded } kind = Kind::Scan;
  std::uint64_t seed = 0;

  static BasisStrategy scan() { return {}; }
  static BasisStrategy seeded(std::uint64_t s) { return {Kind::Seeded, s}; }
};

/// Fast internal-point test: the conic criterion for odd q, "not on the
/// hyperoval" for even q, tangent counting otherwise.
inline bool is_internal(const ProjPoint& p, const OvalCode& o) {
  if (o.f().is_even()) return !o.index_of(p).has_value() && o.n == max_arc_size(o.f().q());
  if (o.conic) return classify_point_conic(p, o) == PointKind::Internal;
  return classify_point(p, o) == PointKind::Internal;
}

inline InternalBasis make_basis(const OvalCode& o, const std::array<ProjPoint, 3>& pts) {
  for (const auto& p : pts) {
    if (p[0].field() != o.field.get()) throw Error(Errc::FieldMismatch, "basis point over a different field");
    if (classify_point(p, o) != PointKind::Internal) {
      std::ostringstream os;
      os << "basis point " << p << " is not internal";
      throw Error(Errc::InvalidParameters, os.str());
    }
  }
  InternalBasis basis;
  basis.points = pts;
  basis.B = Matrix::from_columns(o.f(), {pts[0].coords(), pts[1].coords(), pts[2].coords()});
  auto inv = basis.B.inverse();
  if (!inv) throw Error(Errc::SingularBasis, "basis points are collinear");
  basis.B_inv = *inv;
  return basis;
}

inline InternalBasis find_internal_basis(const OvalCode& o, BasisStrategy strategy = BasisStrategy::scan()) {
  if (o.f().q() < 4) throw Error(Errc::FieldTooSmall, "need q >= 4");
  std::vector<ProjPoint> kept;
  auto consider = [&](const ProjPoint& p) {
    if (!is_internal(p, o)) return;
    if (kept.size() == 1 && kept[0] == p) return;
    if (kept.size() == 2 && !independent(kept[0], kept[1], p)) return;
    kept.push_back(p);
  };

  const auto pts = all_points(o.f());
  if (strategy.kind == BasisStrategy::Kind::Scan) {
    for (const auto& p : pts) {
      consider(p);
      if (kept.size() == 3) break;
    }
  } else {
    std::mt19937_64 rng(strategy.seed);
    // Internal points are a constant fraction of the plane, so this bound is
    // never approached in practice.
    const std::size_t attempts = 64 * pts.size();
    for (std::size_t t = 0; t < attempts && kept.size() < 3; ++t) consider(pts[rng() % pts.size()]);
  }
  if (kept.size() < 3) throw Error(Errc::NoBasisFound, "no three independent internal points");
  return make_basis(o, {kept[0], kept[1], kept[2]});
}

inline GeneratorMatrix build_generator(const OvalCode& o, const InternalBasis& basis) {
  if (&basis.B.field() != o.field.get()) throw Error(Errc::FieldMismatch, "basis over a different field");
  auto inv = basis.B.inverse();
  if (!inv) throw Error(Errc::SingularBasis, "B is singular");
  GeneratorMatrix g{*inv * o.F, o, basis};
  g.basis.B_inv = *inv;
  if (o.f().q() <= 16 && !all_minors_nonsingular(g.G))
    throw std::logic_error("B^-1 F lost the MDS property");
  for (std::size_t j = 0; j < g.n(); ++j) {
    const Vec3 c = g.G.column3(j);
    const int nonzero = !c[0].is_zero() + !c[1].is_zero() + !c[2].is_zero();
    if (nonzero == 1) throw std::logic_error("G has a column parallel to a unit vector");
  }
  return g;
}

/// Solves e_object = alpha * m_a + beta * m_b; nullopt when no solution.
inline std::optional<std::pair<FieldElement, FieldElement>> solve_pair(const Matrix& m, std::size_t object, std::size_t a,
                                                                         std::size_t b) {
  const Field& f = m.field();
  const Vec3 ga = m.column3(a), gb = m.column3(b);
  const Vec3 e = unit_vector(f, object);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t s = r + 1; s < 3; ++s) {
      const FieldElement det = ga[r] * gb[s] - ga[s] * gb[r];
      if (det.is_zero()) continue;
      const FieldElement dinv = det.inv();
      const FieldElement alpha = (e[r] * gb[s] - e[s] * gb[r]) * dinv;
      const FieldElement beta = (ga[r] * e[s] - ga[s] * e[r]) * dinv;
      for (std::size_t i = 0; i < 3; ++i)
        if (alpha * ga[i] + beta * gb[i] != e[i]) return std::nullopt;
      return std::make_pair(alpha, beta);
    }
  return std::nullopt;  // parallel columns
}

/// Size-2 recovery sets, derived twice: from the secants through each basis
/// point, and by solving for coefficients over every pair of columns. The two
/// derivations must coincide.
inline RecoverySystem recovery_pairs(const GeneratorMatrix& gm) {
  RecoverySystem rs;
  rs.n = gm.n();
  for (std::size_t i = 0; i < 3; ++i) {
    const auto geometric = secant_pencil(gm.basis.points[i], gm.source);
    std::vector<std::pair<std::size_t, std::size_t>> algebraic;
    for (std::size_t a = 0; a < rs.n; ++a)
      for (std::size_t b = a + 1; b < rs.n; ++b) {
        auto coeffs = solve_pair(gm.G, i, a, b);
        if (!coeffs) continue;
        algebraic.emplace_back(a, b);
        rs.pairs[i].push_back({a, b, coeffs->first, coeffs->second});
      }
    if (geometric != algebraic)
      throw std::logic_error("secant pencil and coefficient search disagree for object " + std::to_string(i + 1));
  }
  return rs;
}

/// All minimal recovery sets for one object, ordered by size then
/// lexicographically. With k = 3 none has more than three elements.
inline std::vector<IndexSet> minimal_recovery_sets(const Matrix& m, std::size_t object, const Caps& caps = {}) {
  if (m.rows() != 3) throw Error(Errc::DimensionMismatch, "expected a 3-row matrix");
  if (object >= 3) throw Error(Errc::InvalidParameters, "object index out of range");
  const std::size_t n = m.cols();
  if (n > caps.subset_length) throw Error(Errc::CapExceeded, "n = " + std::to_string(n) + " exceeds subset cap");
  const Vec3 e = unit_vector(m.field(), object);

  std::vector<bool> single(n, false);
  std::vector<IndexSet> out;
  for (std::size_t a = 0; a < n; ++a)
    if (in_column_span(m, {a}, e)) {
      single[a] = true;
      out.push_back({a});
    }

  std::set<std::pair<std::size_t, std::size_t>> doubles;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!single[a] && !single[b] && in_column_span(m, {a, b}, e)) {
        doubles.emplace(a, b);
        out.push_back({a, b});
      }

  for (std::size_t a = 0; a < n; ++a) {
    if (single[a]) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (single[b] || doubles.count({a, b})) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (single[c] || doubles.count({a, c}) || doubles.count({b, c})) continue;
        const bool spans = !det3(m.column3(a), m.column3(b), m.column3(c)).is_zero() || in_column_span(m, {a, b, c}, e);
        if (spans) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

inline std::array<std::vector<IndexSet>, 3> all_minimal_recovery_sets(const Matrix& m, const Caps& caps = {}) {
  return {minimal_recovery_sets(m, 0, caps), minimal_recovery_sets(m, 1, caps), minimal_recovery_sets(m, 2, caps)};
}

/// {{i}} together with every 3-subset of [n] \ {i}: the minimal recovery sets
/// of a systematic MDS generator matrix with k = 3.
inline std::vector<IndexSet> systematic_recovery_sets(std::size_t n, std::size_t object) {
  std::vector<IndexSet> out{{object}};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        if (a != object && b != object && c != object) out.push_back({a, b, c});
  return out;
}

/// S = (f_1 | f_2 | f_3)^-1 F: the systematic generator matrix of the same code.
inline Matrix systematic_generator(const Matrix& F) {
  auto inv = F.select_columns({0, 1, 2}).inverse();
  if (!inv) throw Error(Errc::SingularBasis, "first three columns are dependent");
  return *inv * F;
}

}  // namespace oval
