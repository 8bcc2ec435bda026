#include <gtest/gtest.h>

#include <set>

#include "oval_srr/geom.hpp"

using namespace oval;

namespace {
Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidParameters;
}
}  // namespace

TEST(Geom, Projectivize) {
  auto f = field_new(7, 1);
  EXPECT_EQ(point(*f, 2, 4, 6), point(*f, 1, 2, 3));
  EXPECT_EQ(point(*f, 2, 4, 6).reps(), (std::array<std::uint32_t, 3>{1, 2, 3}));
  EXPECT_EQ(point(*f, 1, 0, 0).reps(), (std::array<std::uint32_t, 3>{1, 0, 0}));
  EXPECT_EQ(point(*f, 0, 0, 5).reps(), (std::array<std::uint32_t, 3>{0, 0, 1}));
  EXPECT_EQ(code_of([&] { point(*f, 0, 0, 0); }), Errc::ZeroVector);
}

TEST(Geom, ScaleInvariance) {
  for (std::uint64_t q : {4, 5, 7, 8, 9}) {
    auto f = field_from_size(q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c) {
          if (!a && !b && !c) continue;
          const Vec3 v = make_vec(*f, a, b, c);
          const ProjPoint p = projectivize(v);
          for (std::uint32_t s = 1; s < q; ++s) ASSERT_EQ(projectivize(scale(f->element(s), v)), p);
        }
  }
}

TEST(Geom, LineThroughExamples) {
  auto f = field_new(7, 1);
  EXPECT_EQ(line_through(point(*f, 1, 0, 0), point(*f, 0, 1, 0)), line(*f, 0, 0, 1));
  EXPECT_EQ(line_through(point(*f, 1, 0, 0), point(*f, 0, 0, 1)), line(*f, 0, 1, 0));
  EXPECT_EQ(code_of([&] { line_through(point(*f, 1, 2, 3), point(*f, 2, 4, 6)); }), Errc::CoincidentPoints);

  // brute force over every line
  const auto P = point(*f, 1, 3, 2), Q = point(*f, 1, 2, 4);
  std::vector<ProjLine> both;
  for (const auto& l : all_lines(*f))
    if (incident(P, l) && incident(Q, l)) both.push_back(l);
  ASSERT_EQ(both.size(), 1u);
  EXPECT_EQ(line_through(P, Q), both[0]);
}

TEST(Geom, Incidence) {
  auto f = field_new(7, 1);
  EXPECT_TRUE(incident(point(*f, 1, 0, 0), line(*f, 0, 0, 1)));
  EXPECT_FALSE(incident(point(*f, 0, 0, 1), line(*f, 0, 0, 1)));
  auto g = field_new(7, 1);
  EXPECT_EQ(code_of([&] { incident(point(*f, 1, 0, 0), line(*g, 0, 0, 1)); }), Errc::FieldMismatch);
}

TEST(Geom, Counts) {
  for (auto [q, count] : {std::pair<std::uint64_t, std::size_t>{2, 7}, {4, 21}, {7, 57}}) {
    auto f = field_from_size(q);
    EXPECT_EQ(all_points(*f).size(), count);
  }
}

TEST(Geom, PlaneAxiomsExhaustive) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    auto f = field_from_size(q);
    const auto pts = all_points(*f);
    const auto lines = all_lines(*f);
    ASSERT_EQ(pts.size(), q * q + q + 1);
    ASSERT_EQ(lines.size(), q * q + q + 1);
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
    EXPECT_EQ(std::set<ProjPoint>(pts.begin(), pts.end()).size(), pts.size());
    for (const auto& l : lines) {
      std::size_t on = 0;
      for (const auto& p : pts) on += incident(p, l);
      ASSERT_EQ(on, q + 1);
    }
    for (const auto& p : pts) ASSERT_EQ(pencil(p).size(), q + 1);
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        std::size_t common = 0;
        for (const auto& p : pts) common += incident(p, lines[i]) && incident(p, lines[j]);
        ASSERT_EQ(common, 1u);
        const ProjPoint m = meet(lines[i], lines[j]);
        ASSERT_TRUE(incident(m, lines[i]) && incident(m, lines[j]));
      }
  }
}

TEST(Geom, Independence) {
  auto f = field_new(7, 1);
  EXPECT_TRUE(independent(point(*f, 1, 0, 0), point(*f, 0, 1, 0), point(*f, 0, 0, 1)));
  EXPECT_FALSE(independent(point(*f, 1, 0, 0), point(*f, 0, 1, 0), point(*f, 1, 1, 0)));
  EXPECT_TRUE(independent(point(*f, 1, 0, 1), point(*f, 1, 0, 2), point(*f, 1, 1, 2)));
  // agrees with "third point off the joining line"
  auto g = field_new(5, 1);
  const auto pts = all_points(*g);
  for (std::size_t i = 0; i < pts.size(); i += 3)
    for (std::size_t j = i + 1; j < pts.size(); j += 5)
      for (const auto& r : pts) EXPECT_EQ(independent(pts[i], pts[j], r), !incident(r, line_through(pts[i], pts[j])));
}
