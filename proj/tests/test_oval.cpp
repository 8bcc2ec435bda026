#include <gtest/gtest.h>

#include <set>

#include "oval_srr/oval.hpp"

using namespace oval;

namespace {
const std::vector<std::uint64_t> kQs{4, 5, 7, 8, 9, 11, 13};
}

TEST(Oval, Q7MatchesPrintedF) {
  auto f = field_new(7, 1);
  const auto o = vandermonde_oval(f);
  const std::vector<std::vector<std::uint32_t>> F{
      {1, 1, 1, 1, 1, 1, 1, 0}, {0, 3, 2, 6, 4, 5, 1, 0}, {0, 2, 4, 1, 2, 4, 1, 1}};
  EXPECT_EQ(o.F.reps(), F);
  EXPECT_EQ(o.n, 8u);
  EXPECT_FALSE(o.nucleus.has_value());
}

TEST(Oval, Q5IsOnConic) {
  auto f = field_new(5, 1);
  const auto o = vandermonde_oval(f);
  ASSERT_EQ(o.n, 6u);
  for (std::size_t j = 0; j < o.n; ++j) {
    const Vec3 c = o.F.column3(j);
    EXPECT_EQ(c[1] * c[1], c[0] * c[2]);
  }
}

TEST(Oval, EvenQHasNucleus) {
  for (std::uint64_t q : {4, 8, 16}) {
    auto f = field_from_size(q);
    const auto o = vandermonde_oval(f);
    ASSERT_EQ(o.n, q + 2);
    ASSERT_TRUE(o.nucleus.has_value());
    EXPECT_EQ(o.points.back(), *o.nucleus);
    EXPECT_TRUE(is_arc(o.points));
    // every conic tangent passes through the nucleus
    OvalCode conic = o;
    conic.points.pop_back();
    conic.n = q + 1;
    for (std::size_t j = 0; j < conic.n; ++j)
      for (const auto& l : pencil(conic.points[j]))
        if (classify_line(l, conic).kind == LineKind::Tangent) {
          EXPECT_TRUE(incident(*o.nucleus, l));
        }
  }
}

TEST(Oval, TooSmall) {
  try {
    vandermonde_oval(field_new(3, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FieldTooSmall);
  }
}

TEST(Oval, SizesAndMds) {
  for (auto q : kQs) {
    auto f = field_from_size(q);
    const auto o = vandermonde_oval(f);
    EXPECT_EQ(o.n, q % 2 ? q + 1 : q + 2) << q;
    EXPECT_EQ(o.n, max_arc_size(static_cast<std::uint32_t>(q)));
    EXPECT_TRUE(is_arc(o.points)) << q;
    EXPECT_TRUE(all_minors_nonsingular(o.F)) << q;
  }
}

TEST(Oval, LineCountsQ7) {
  auto f = field_new(7, 1);
  const auto o = vandermonde_oval(f);
  EXPECT_EQ(classify_line(line_through(o.points[0], o.points[1]), o).kind, LineKind::Secant);
  EXPECT_EQ(classify_line(line_through(o.points[0], o.points[1]), o).hits, (std::vector<std::size_t>{0, 1}));
  std::size_t secants = 0, tangents = 0;
  for (const auto& l : all_lines(*f)) {
    const auto c = classify_line(l, o);
    secants += c.kind == LineKind::Secant;
    tangents += c.kind == LineKind::Tangent;
  }
  EXPECT_EQ(secants, 28u);
  EXPECT_EQ(tangents, 8u);  // one per oval point
}

TEST(Oval, EvenQHasNoTangents) {
  for (std::uint64_t q : {4, 8}) {
    auto f = field_from_size(q);
    const auto o = vandermonde_oval(f);
    for (const auto& l : all_lines(*f)) EXPECT_NE(classify_line(l, o).kind, LineKind::Tangent);
  }
}

TEST(Oval, PointExamplesQ7) {
  auto f = field_new(7, 1);
  const auto o = vandermonde_oval(f);
  EXPECT_EQ(classify_point(point(*f, 1, 0, 1), o), PointKind::Internal);
  EXPECT_EQ(classify_point(o.points[2], o), PointKind::OnOval);
  EXPECT_EQ(classify_point_conic(point(*f, 1, 0, 1), o), PointKind::Internal);
  EXPECT_EQ(classify_point_conic(point(*f, 1, 1, 1), o), PointKind::OnOval);
  EXPECT_EQ(classify_point_conic(point(*f, 1, 0, 6), o), PointKind::External);
  EXPECT_EQ(classify_point(point(*f, 1, 0, 6), o), PointKind::External);
}

TEST(Oval, ConicTestErrors) {
  auto f = field_from_size(8);
  const auto o = vandermonde_oval(f);
  try {
    classify_point_conic(point(*f, 1, 0, 1), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EvenCharacteristic);
  }
  auto g = field_new(7, 1);
  auto o7 = vandermonde_oval(g);
  o7.conic = false;
  try {
    classify_point_conic(point(*g, 1, 0, 1), o7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonConicOval);
  }
}

TEST(Oval, ClassificationCountsAndConicAgreement) {
  for (auto q : kQs) {
    auto f = field_from_size(q);
    const auto o = vandermonde_oval(f);
    std::size_t internal = 0;
    for (const auto& p : all_points(*f)) {
      const auto k = classify_point(p, o);
      internal += k == PointKind::Internal;
      if (q % 2) {
        ASSERT_EQ(classify_point_conic(p, o), k) << "q=" << q << " " << p;
      }
      if (k == PointKind::Internal) {
        // n/2 secants through every internal point, partitioning the oval
        const auto pairs = secant_pencil(p, o);
        ASSERT_EQ(pairs.size(), o.n / 2);
        std::set<std::size_t> covered;
        for (auto [a, b] : pairs) covered.insert({a, b});
        ASSERT_EQ(covered.size(), o.n);
      }
    }
    EXPECT_EQ(internal, q % 2 ? q * (q - 1) / 2 : q * q - 1) << q;
  }
}

TEST(Oval, FromMatrixRejectsCollinear) {
  auto f = field_new(5, 1);
  const Matrix m = Matrix::from_reps(*f, {{1, 0, 1, 1}, {0, 1, 1, 2}, {0, 0, 0, 3}});
  EXPECT_THROW(oval_from_matrix(f, m), Error);
  const auto o = vandermonde_oval(f);
  EXPECT_EQ(oval_from_matrix(f, o.F).points, o.points);
}
