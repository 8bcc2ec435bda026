#include <gtest/gtest.h>

#include <random>

#include "oval_srr/mld.hpp"

using namespace oval;

namespace {

struct System {
  FieldPtr f;
  GeneratorMatrix g;
  RecoverySystem rs;
};

System make(std::uint64_t q) {
  auto f = field_from_size(q);
  auto o = vandermonde_oval(f);
  auto g = build_generator(o, find_internal_basis(o));
  auto rs = recovery_pairs(g);
  return {f, g, rs};
}

Message msg(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return {f.element(a), f.element(b), f.element(c)};
}

}  // namespace

TEST(Mld, Encode) {
  auto s = make(7);
  const auto& f = *s.f;
  for (const auto& y : encode(msg(f, 0, 0, 0), s.g.G).y) EXPECT_TRUE(y.is_zero());
  const auto e1 = encode(msg(f, 1, 0, 0), s.g.G);
  for (std::size_t j = 0; j < s.g.n(); ++j) EXPECT_EQ(e1.y[j], s.g.G(0, j));
  const auto m = msg(f, 1, 2, 3);
  const auto c = encode(m, s.g.G);
  for (std::size_t j = 0; j < s.g.n(); ++j) EXPECT_EQ(c.y[j], dot(m, s.g.G.column3(j)));
  EXPECT_THROW(encode(m, Matrix(f, 2, 4)), Error);
}

TEST(Mld, CleanAndSingleErrorsQ7) {
  auto s = make(7);
  const auto& f = *s.f;
  const auto m = msg(f, 4, 0, 6);
  const auto c = encode(m, s.g.G);
  auto r = decode_1smld(c, s.rs);
  EXPECT_EQ(r.status, DecodeResult::Status::Success);
  EXPECT_EQ(r.m, m);
  for (std::size_t j = 0; j < s.g.n(); ++j)
    for (std::uint32_t v = 1; v < 7; ++v) {
      auto y = c;
      y.y[j] += f.element(v);
      auto d = decode_1smld(y, s.rs);
      ASSERT_EQ(d.status, DecodeResult::Status::Success);
      ASSERT_EQ(d.m, m);
    }
}

TEST(Mld, TiesAreReported) {
  // q=4 (n=6): 3 votes per object, two errors can split them 1-1-1.
  auto s = make(4);
  const auto& f = *s.f;
  const auto m = msg(f, 1, 2, 3);
  const auto c = encode(m, s.g.G);
  bool saw_tie = false;
  for (std::size_t a = 0; a < s.g.n() && !saw_tie; ++a)
    for (std::size_t b = a + 1; b < s.g.n() && !saw_tie; ++b)
      for (std::uint32_t u = 1; u < 4 && !saw_tie; ++u)
        for (std::uint32_t v = 1; v < 4 && !saw_tie; ++v) {
          auto y = c;
          y.y[a] += f.element(u);
          y.y[b] += f.element(v);
          auto d = decode_1smld(y, s.rs);
          if (d.status == DecodeResult::Status::Tie) {
            saw_tie = true;
            EXPECT_FALSE(d.tied.empty());
          }
        }
  EXPECT_TRUE(saw_tie);
}

TEST(Mld, SingleErrorDamagesOneVotePerObject) {
  for (std::uint64_t q : {4, 5, 7, 8, 9}) {
    auto s = make(q);
    const auto& f = *s.f;
    const auto c = encode(msg(f, 1, 1, 0), s.g.G);
    for (std::size_t j = 0; j < s.g.n(); ++j) {
      auto y = c;
      y.y[j] += f.one();
      for (std::size_t i = 0; i < 3; ++i) {
        const auto clean = votes(c, s.rs, i), dirty = votes(y, s.rs, i);
        std::size_t diff = 0;
        for (std::size_t k = 0; k < clean.size(); ++k) diff += clean[k] != dirty[k];
        EXPECT_EQ(diff, 1u);
      }
    }
  }
}

TEST(Mld, Bounds) {
  EXPECT_EQ(mld_bound(8, 2, 4), 1u);
  EXPECT_EQ(mld_bound(8, 1, 4), 1u);
  EXPECT_EQ(mld_bound(10, 2, 4), 2u);
  for (std::size_t n : {6, 8, 10, 12, 14}) {
    EXPECT_EQ(mld_bound(n, 2, 4), (n - 2) / 4);
    EXPECT_EQ(mld_bound(n, 1, 4), (n - 1) / 6);
    EXPECT_EQ(mld_params(n).t_max, (n - 2) / 4);
  }
  EXPECT_THROW(mld_bound(8, 0, 4), Error);
  EXPECT_THROW(mld_bound(8, 4, 4), Error);
  EXPECT_THROW(mld_bound(3, 1, 4), Error);
}

TEST(Mld, DualDistance) {
  for (std::uint64_t q : {4, 5, 7, 8, 9, 11, 13}) {
    auto s = make(q);
    EXPECT_EQ(dual_distance(s.g.G), 4u) << q;
    EXPECT_EQ(dual_distance(systematic_generator(s.g.source.F)), 4u) << q;
  }
  auto s = make(16);
  try {
    dual_distance(s.g.G);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CapExceeded);
  }
}

TEST(Mld, Pir) {
  for (std::uint64_t q : {4, 5, 7, 8, 9}) {
    auto s = make(q);
    const auto r = pir_check(s.rs);
    EXPECT_TRUE(r.is_pir);
    EXPECT_EQ(r.availability, s.g.n() / 2);
  }
  // overlapping pairs for one object
  auto s = make(7);
  RecoverySystem bad = s.rs;
  bad.pairs[0][1].a = bad.pairs[0][0].a;
  const auto r = pir_check(bad);
  EXPECT_FALSE(r.is_pir);
  EXPECT_EQ(r.per_object[0], 3u);
}

TEST(Mld, SweepQ7) {
  auto s = make(7);
  const auto rep = decode_sweep(s.g, s.rs, sweep_messages(*s.f, false, 20, 1));
  EXPECT_EQ(rep.t_max, 1u);
  EXPECT_EQ(rep.patterns_tested, 20u * 8 * 6);
  EXPECT_TRUE(rep.failures.empty());
  EXPECT_TRUE(rep.counterexample.has_value());
  EXPECT_EQ(rep.counterexample->positions.size(), 2u);
}

TEST(Mld, SweepMessages) {
  auto f = field_from_size(5);
  EXPECT_EQ(sweep_messages(*f, true, 0, 0).size(), 125u);
  const auto a = sweep_messages(*f, false, 10, 9), b = sweep_messages(*f, false, 10, 9);
  EXPECT_EQ(a, b);
}

TEST(Mld, BrokenDecoderIsCaught) {
  // Corrupting one stored coefficient must show up as within-bound failures.
  auto s = make(5);
  RecoverySystem bad = s.rs;
  bad.pairs[1][0].alpha = bad.pairs[1][0].alpha + s.f->one();
  const auto rep = decode_sweep(s.g, bad, sweep_messages(*s.f, false, 10, 2));
  EXPECT_FALSE(rep.failures.empty());
}
