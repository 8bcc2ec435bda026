#pragma once

// The projective plane PG(2,q). Points and lines are both normalized
// homogeneous triples (first nonzero coordinate equal to 1); a line (a:b:c)
// is the set of points with ax+by+cz = 0.

#include <algorithm>
#include <array>
#include <compare>
#include <ostream>
#include <vector>

#include "gf.hpp"

namespace oval {

using Vec3 = std::array<FieldElement, 3>;

namespace detail {

inline const Field* common_field(const Vec3& v) {
  const Field* f = v[0].field();
  if (f == nullptr || v[1].field() != f || v[2].field() != f)
    throw Error(Errc::FieldMismatch, "triple mixes fields or is uninitialized");
  return f;
}

inline Vec3 normalize(const Vec3& v) {
  common_field(v);
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_zero()) {
      const FieldElement s = v[i].inv();
      return {v[0] * s, v[1] * s, v[2] * s};
    }
  }
  throw Error(Errc::ZeroVector, "the zero triple has no projective point");
}

inline std::array<std::uint32_t, 3> reps(const Vec3& v) { return {v[0].rep(), v[1].rep(), v[2].rep()}; }

}  // namespace detail

inline FieldElement dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline FieldElement det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

inline Vec3 scale(const FieldElement& s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

inline Vec3 make_vec(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return {f.element(a), f.element(b), f.element(c)};
}

// Points and lines share representation but not type.
template <class Tag>
class Homogeneous {
 public:
  Homogeneous() = default;

  static Homogeneous from(const Vec3& v) { return Homogeneous(detail::normalize(v)); }

  const Vec3& coords() const noexcept { return c_; }
  const FieldElement& operator[](std::size_t i) const { return c_[i]; }
  const Field& field() const { return *c_[0].field(); }
  std::array<std::uint32_t, 3> reps() const { return detail::reps(c_); }

  friend bool operator==(const Homogeneous& a, const Homogeneous& b) { return a.c_ == b.c_; }
  friend auto operator<=>(const Homogeneous& a, const Homogeneous& b) { return a.reps() <=> b.reps(); }

  friend std::ostream& operator<<(std::ostream& os, const Homogeneous& h) {
    return os << '(' << h.c_[0] << ':' << h.c_[1] << ':' << h.c_[2] << ')';
  }

 private:
  explicit Homogeneous(const Vec3& v) : c_(v) {}
  Vec3 c_{};
};

struct PointTag {};
struct LineTag {};
using ProjPoint = Homogeneous<PointTag>;
using ProjLine = Homogeneous<LineTag>;

/// phi: nonzero vector -> its normalized projective point.
inline ProjPoint projectivize(const Vec3& v) { return ProjPoint::from(v); }

inline ProjLine line_from_coeffs(const Vec3& v) { return ProjLine::from(v); }

inline ProjPoint point(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return projectivize(make_vec(f, a, b, c));
}

inline ProjLine line(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return line_from_coeffs(make_vec(f, a, b, c));
}

inline bool incident(const ProjPoint& p, const ProjLine& l) {
  if (p[0].field() != l[0].field()) throw Error(Errc::FieldMismatch, "point and line over different fields");
  return dot(p.coords(), l.coords()).is_zero();
}

inline ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
  if (p[0].field() != q[0].field()) throw Error(Errc::FieldMismatch, "points over different fields");
  if (p == q) throw Error(Errc::CoincidentPoints, "a line needs two distinct points");
  return line_from_coeffs(cross(p.coords(), q.coords()));
}

inline ProjPoint meet(const ProjLine& a, const ProjLine& b) {
  if (a[0].field() != b[0].field()) throw Error(Errc::FieldMismatch, "lines over different fields");
  if (a == b) throw Error(Errc::CoincidentPoints, "identical lines have no unique meet");
  return projectivize(cross(a.coords(), b.coords()));
}

inline bool independent(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  return !det3(a.coords(), b.coords(), c.coords()).is_zero();
}

namespace detail {

// (0:0:1), (0:1:z), (1:y:z): exactly the normalized triples, produced in
// increasing lexicographic order of their reps.
template <class H>
std::vector<H> all_normalized(const Field& f) {
  const std::uint32_t q = f.q();
  std::vector<H> out;
  out.reserve(static_cast<std::size_t>(q) * q + q + 1);
  out.push_back(H::from(make_vec(f, 0, 0, 1)));
  for (std::uint32_t z = 0; z < q; ++z) out.push_back(H::from(make_vec(f, 0, 1, z)));
  for (std::uint32_t y = 0; y < q; ++y)
    for (std::uint32_t z = 0; z < q; ++z) out.push_back(H::from(make_vec(f, 1, y, z)));
  return out;
}

}  // namespace detail

inline std::vector<ProjPoint> all_points(const Field& f) { return detail::all_normalized<ProjPoint>(f); }
inline std::vector<ProjLine> all_lines(const Field& f) { return detail::all_normalized<ProjLine>(f); }

/// The q+1 lines through p, in lexicographic order.
inline std::vector<ProjLine> pencil(const ProjPoint& p) {
  std::vector<ProjLine> out;
  for (const auto& l : all_lines(p.field()))
    if (incident(p, l)) out.push_back(l);
  return out;
}

}  // namespace oval
