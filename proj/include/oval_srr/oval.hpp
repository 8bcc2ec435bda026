#pragma once

// Maximal arcs in PG(2,q) and the generator matrices they come from.
//
// For odd q the arc is the conic y2^2 = y1*y3 traced by the Vandermonde
// columns; for even q the conic is completed to a hyperoval by its nucleus.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace oval {

/// m(2,q): q+2 for even q, q+1 for odd q.
inline std::size_t max_arc_size(std::uint32_t q) { return q % 2 == 0 ? q + 2 : q + 1; }

struct OvalCode {
  FieldPtr field;
  std::size_t n = 0;
  Matrix F;                          // 3 x n, columns f_j
  std::vector<ProjPoint> points;     // phi(f_j)
  std::optional<ProjPoint> nucleus;  // present iff q even
  bool conic = false;                // first q+1 points lie on y2^2 = y1*y3

  const Field& f() const { return *field; }

  /// Index of p in points, if it is an arc point.
  std::optional<std::size_t> index_of(const ProjPoint& p) const {
    auto it = std::find(points.begin(), points.end(), p);
    if (it == points.end()) return std::nullopt;
    return static_cast<std::size_t>(it - points.begin());
  }
};

enum class LineKind { External, Tangent, Secant };
enum class PointKind { Internal, OnOval, External };

struct LineClass {
  LineKind kind = LineKind::External;
  std::vector<std::size_t> hits;  // indices into OvalCode::points
};

inline const char* to_string(LineKind k) {
  switch (k) {
    case LineKind::External: return "external";
    case LineKind::Tangent: return "tangent";
    case LineKind::Secant: return "secant";
  }
  return "?";
}

inline const char* to_string(PointKind k) {
  switch (k) {
    case PointKind::Internal: return "internal";
    case PointKind::OnOval: return "on-oval";
    case PointKind::External: return "external";
  }
  return "?";
}

inline LineClass classify_line(const ProjLine& l, const OvalCode& o) {
  LineClass c;
  for (std::size_t j = 0; j < o.points.size(); ++j)
    if (incident(o.points[j], l)) c.hits.push_back(j);
  switch (c.hits.size()) {
    case 0: c.kind = LineKind::External; break;
    case 1: c.kind = LineKind::Tangent; break;
    case 2: c.kind = LineKind::Secant; break;
    default:
      throw Error(Errc::InvalidParameters, "line meets the point set in " + std::to_string(c.hits.size()) + " points; not an arc");
  }
  return c;
}

/// Tangent-counting classification; ground truth for every q.
inline PointKind classify_point(const ProjPoint& p, const OvalCode& o) {
  if (o.index_of(p)) return PointKind::OnOval;
  std::size_t tangents = 0;
  for (const auto& l : pencil(p))
    if (classify_line(l, o).kind == LineKind::Tangent) ++tangents;
  return tangents == 0 ? PointKind::Internal : PointKind::External;
}

/// Algebraic test on the conic y2^2 = y1*y3: internal iff x2^2 - x1*x3 is a
/// non-square.
inline PointKind classify_point_conic(const ProjPoint& p, const OvalCode& o) {
  if (o.f().is_even()) throw Error(Errc::EvenCharacteristic, "the conic test needs odd q");
  if (!o.conic) throw Error(Errc::NonConicOval, "point set is not the Vandermonde conic");
  if (p[0].field() != o.field.get()) throw Error(Errc::FieldMismatch, "point over a different field");
  const FieldElement v = p[1] * p[1] - p[0] * p[2];
  if (v.is_zero()) return PointKind::OnOval;
  return o.f().is_square(v) ? PointKind::External : PointKind::Internal;
}

/// Secants through b, each reported as the sorted pair of arc indices it
/// meets. For an internal point these pairs partition [0, n).
inline std::vector<std::pair<std::size_t, std::size_t>> secant_pencil(const ProjPoint& b, const OvalCode& o) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::vector<bool> seen(o.n, false);
  for (std::size_t a = 0; a < o.n; ++a) {
    if (seen[a] || o.points[a] == b) continue;
    const ProjLine l = line_through(b, o.points[a]);
    const LineClass c = classify_line(l, o);
    if (c.kind != LineKind::Secant) continue;
    seen[c.hits[0]] = seen[c.hits[1]] = true;
    out.emplace_back(c.hits[0], c.hits[1]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// No three of the points collinear (exhaustive over triples).
inline bool is_arc(const std::vector<ProjPoint>& pts) {
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (pts[a] == pts[b]) return false;
      for (std::size_t c = b + 1; c < pts.size(); ++c)
        if (!independent(pts[a], pts[b], pts[c])) return false;
    }
  return true;
}

/// Every 3x3 minor of a 3 x n matrix is nonsingular.
inline bool all_minors_nonsingular(const Matrix& m) {
  const std::size_t n = m.cols();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        if (det3(m.column3(a), m.column3(b), m.column3(c)).is_zero()) return false;
  return true;
}

/// Wraps an arbitrary 3 x n generator matrix whose columns form an arc.
inline OvalCode oval_from_matrix(FieldPtr field, Matrix F) {
  if (F.rows() != 3) throw Error(Errc::DimensionMismatch, "generator matrix must have 3 rows");
  OvalCode o;
  o.field = std::move(field);
  o.n = F.cols();
  for (std::size_t j = 0; j < o.n; ++j) o.points.push_back(projectivize(F.column3(j)));
  if (!is_arc(o.points)) throw Error(Errc::InvalidParameters, "columns are not an arc (three collinear points)");
  o.F = std::move(F);
  return o;
}

inline OvalCode vandermonde_oval(FieldPtr field) {
  const Field& f = *field;
  const std::uint32_t q = f.q();
  if (q < 4) throw Error(Errc::FieldTooSmall, "need q >= 4, got " + std::to_string(q));

  std::vector<Vec3> cols;
  cols.push_back({f.one(), f.zero(), f.zero()});
  for (std::uint32_t t = 1; t <= q - 1; ++t) cols.push_back({f.one(), f.exp(t), f.exp(2ull * t)});
  cols.push_back({f.zero(), f.zero(), f.one()});

  OvalCode o;
  o.field = field;
  o.conic = true;
  for (const auto& c : cols) o.points.push_back(projectivize(c));
  o.n = o.points.size();

  if (f.is_even()) {
    // The conic's tangents are concurrent; intersect two of them.
    std::vector<ProjLine> tangents;
    for (std::size_t j = 0; j < 2; ++j)
      for (const auto& l : pencil(o.points[j]))
        if (classify_line(l, o).kind == LineKind::Tangent) {
          tangents.push_back(l);
          break;
        }
    const ProjPoint nuc = meet(tangents[0], tangents[1]);
    o.nucleus = nuc;
    cols.push_back(nuc.coords());
    o.points.push_back(nuc);
    o.n = o.points.size();
  }
  o.F = Matrix::from_columns(f, cols);

  if (o.n != max_arc_size(q)) throw Error(Errc::InvalidParameters, "arc size does not match m(2,q)");
  if (q <= 16 && !is_arc(o.points)) throw Error(Errc::InvalidParameters, "constructed point set has three collinear points");
  return o;
}

}  // namespace oval
