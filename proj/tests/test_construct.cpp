#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oval_srr/construct.hpp"

using namespace oval;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

Pairs one_based_pairs(const RecoverySystem& rs, std::size_t i) {
  Pairs out;
  for (const auto& p : rs.pairs[i]) out.emplace_back(p.a + 1, p.b + 1);
  std::sort(out.begin(), out.end());
  return out;
}

Pairs sorted(Pairs p) {
  std::sort(p.begin(), p.end());
  return p;
}

// Independent oracle: does the column subset span e_i? (rank comparison)
bool spans(const Matrix& m, const IndexSet& s, std::size_t i) {
  Matrix aug(m.field(), 3, s.size() + 1);
  for (std::size_t k = 0; k < s.size(); ++k)
    for (std::size_t r = 0; r < 3; ++r) aug(r, k) = m(r, s[k]);
  aug(i, s.size()) = m.field().one();
  return aug.rank() == m.select_columns(s).rank();
}

std::vector<IndexSet> brute_minimal(const Matrix& m, std::size_t i) {
  const std::size_t n = m.cols();
  std::vector<IndexSet> all;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > 4) continue;
    IndexSet s;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) s.push_back(j);
    if (spans(m, s, i)) all.push_back(s);
  }
  std::vector<IndexSet> minimal;
  for (const auto& s : all) {
    bool ok = true;
    for (const auto& t : all)
      if (t.size() < s.size() && std::includes(s.begin(), s.end(), t.begin(), t.end())) ok = false;
    if (ok) minimal.push_back(s);
  }
  std::sort(minimal.begin(), minimal.end(), [](const IndexSet& a, const IndexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return minimal;
}

}  // namespace

TEST(Construct, Q7PrintedBasisReproducesG) {
  auto f = field_new(7, 1);
  const auto o = vandermonde_oval(f);
  const auto basis = make_basis(o, {point(*f, 1, 0, 4), point(*f, 1, 0, 2), point(*f, 1, 1, 2)});
  EXPECT_EQ(basis.B.reps(), (std::vector<std::vector<std::uint32_t>>{{1, 1, 1}, {0, 0, 1}, {4, 2, 2}}));
  const auto g = build_generator(o, basis);
  const std::vector<std::vector<std::uint32_t>> G{
      {6, 0, 1, 3, 0, 1, 3, 4}, {2, 5, 5, 6, 4, 2, 4, 3}, {0, 3, 2, 6, 4, 5, 1, 0}};
  EXPECT_EQ(g.G.reps(), G);
  EXPECT_EQ(basis.B * basis.B_inv, Matrix::identity(*f, 3));

  const auto rs = recovery_pairs(g);
  EXPECT_EQ(one_based_pairs(rs, 0), sorted({{4, 5}, {3, 6}, {2, 7}, {1, 8}}));
  EXPECT_EQ(one_based_pairs(rs, 1), sorted({{3, 4}, {2, 5}, {6, 7}, {1, 8}}));
  EXPECT_EQ(one_based_pairs(rs, 2), sorted({{1, 3}, {2, 5}, {4, 6}, {7, 8}}));
}

TEST(Construct, Q7TextualTripleGivesADifferentG) {
  // (1:0:1) is internal too, but does not lead to the printed matrix.
  auto f = field_new(7, 1);
  const auto o = vandermonde_oval(f);
  const auto g = build_generator(o, make_basis(o, {point(*f, 1, 0, 1), point(*f, 1, 0, 2), point(*f, 1, 1, 2)}));
  EXPECT_NE(g.G.reps()[0], (std::vector<std::uint32_t>{6, 0, 1, 3, 0, 1, 3, 4}));
  const auto rs = recovery_pairs(g);
  EXPECT_EQ(one_based_pairs(rs, 0), sorted({{1, 8}, {2, 3}, {4, 7}, {5, 6}}));
  EXPECT_EQ(one_based_pairs(rs, 1), sorted({{3, 4}, {2, 5}, {6, 7}, {1, 8}}));
  EXPECT_EQ(one_based_pairs(rs, 2), sorted({{1, 3}, {2, 5}, {4, 6}, {7, 8}}));
}

TEST(Construct, MakeBasisRejects) {
  auto f = field_new(7, 1);
  const auto o = vandermonde_oval(f);
  try {
    make_basis(o, {point(*f, 1, 0, 6), point(*f, 1, 0, 2), point(*f, 1, 1, 2)});  // external point
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidParameters);
  }
  // three collinear internal points
  const auto pts = all_points(*f);
  std::vector<ProjPoint> internal;
  for (const auto& p : pts)
    if (classify_point(p, o) == PointKind::Internal) internal.push_back(p);
  bool tested = false;
  for (std::size_t a = 0; a < internal.size() && !tested; ++a)
    for (std::size_t b = a + 1; b < internal.size() && !tested; ++b)
      for (std::size_t c = b + 1; c < internal.size() && !tested; ++c)
        if (!independent(internal[a], internal[b], internal[c])) {
          try {
            make_basis(o, {internal[a], internal[b], internal[c]});
            FAIL();
          } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::SingularBasis);
          }
          tested = true;
        }
  EXPECT_TRUE(tested);
}

TEST(Construct, ScanIsDeterministicAndSeededReproducible) {
  auto f = field_new(5, 1);
  const auto o = vandermonde_oval(f);
  const auto a = find_internal_basis(o), b = find_internal_basis(o);
  EXPECT_EQ(a.points, b.points);
  const auto s1 = find_internal_basis(o, BasisStrategy::seeded(42));
  const auto s2 = find_internal_basis(o, BasisStrategy::seeded(42));
  EXPECT_EQ(s1.points, s2.points);
  for (const auto& p : s1.points) EXPECT_EQ(classify_point(p, o), PointKind::Internal);
  EXPECT_TRUE(independent(s1.points[0], s1.points[1], s1.points[2]));
}

TEST(Construct, Q4AnyOffOvalTriple) {
  auto f = field_from_size(4);
  const auto o = vandermonde_oval(f);
  std::size_t off = 0;
  for (const auto& p : all_points(*f))
    if (!o.index_of(p)) {
      ++off;
      EXPECT_TRUE(is_internal(p, o));
    }
  EXPECT_EQ(off, 15u);
  EXPECT_NO_THROW(find_internal_basis(o));
}

TEST(Construct, IdentityBasisReturnsF) {
  auto f = field_new(7, 1);
  const auto o = vandermonde_oval(f);
  InternalBasis id{{point(*f, 1, 0, 0), point(*f, 0, 1, 0), point(*f, 0, 0, 1)}, Matrix::identity(*f, 3),
                   Matrix::identity(*f, 3)};
  // (1:0:0) lies on the oval, so this bypasses make_basis on purpose; build_generator
  // still rejects the columns parallel to unit vectors.
  EXPECT_THROW(build_generator(o, id), std::logic_error);
  EXPECT_EQ(id.B_inv * o.F, o.F);
}

class ConstructAllQ : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ConstructAllQ, PartitionsAndMinimalSets) {
  const auto q = GetParam();
  auto f = field_from_size(q);
  const auto o = vandermonde_oval(f);
  for (auto strat : {BasisStrategy::scan(), BasisStrategy::seeded(q)}) {
    const auto g = build_generator(o, find_internal_basis(o, strat));
    const auto rs = recovery_pairs(g);
    for (std::size_t i = 0; i < 3; ++i) {
      std::set<std::size_t> covered;
      for (const auto& p : rs.pairs[i]) {
        EXPECT_TRUE(covered.insert(p.a).second);
        EXPECT_TRUE(covered.insert(p.b).second);
        const Vec3 e = unit_vector(*f, i);
        for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(p.alpha * g.G(r, p.a) + p.beta * g.G(r, p.b), e[r]);
      }
      EXPECT_EQ(covered.size(), g.n());
      const auto sets = minimal_recovery_sets(g.G, i);
      ASSERT_FALSE(sets.empty());
      EXPECT_EQ(sets.front().size(), 2u);
      std::size_t twos = 0;
      for (const auto& s : sets) twos += s.size() == 2;
      EXPECT_EQ(twos, g.n() / 2);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Qs, ConstructAllQ, ::testing::Values(4, 5, 7, 8, 9, 11, 13));

TEST(Construct, MinimalSetsMatchBruteForce) {
  for (std::uint64_t q : {4, 5, 7}) {
    auto f = field_from_size(q);
    const auto o = vandermonde_oval(f);
    const auto g = build_generator(o, find_internal_basis(o));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(minimal_recovery_sets(g.G, i), brute_minimal(g.G, i)) << q;
    const Matrix S = systematic_generator(o.F);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(minimal_recovery_sets(S, i), brute_minimal(S, i));
      EXPECT_EQ(minimal_recovery_sets(S, i), systematic_recovery_sets(o.n, i));
    }
  }
}

TEST(Construct, BasisChangeConsistency) {
  // e_i in span{g_j : j in J}  iff  b_i in span{f_j : j in J}
  std::mt19937_64 rng(3);
  for (std::uint64_t q : {5, 7, 8, 9}) {
    auto f = field_from_size(q);
    const auto o = vandermonde_oval(f);
    const auto g = build_generator(o, find_internal_basis(o));
    for (int t = 0; t < 200; ++t) {
      IndexSet J;
      for (std::size_t j = 0; j < g.n(); ++j)
        if (rng() % 4 == 0) J.push_back(j);
      if (J.empty()) continue;
      for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ(in_column_span(g.G, J, unit_vector(*f, i)), in_column_span(o.F, J, g.basis.points[i].coords()));
    }
  }
}

TEST(Construct, Caps) {
  auto f = field_new(7, 1);
  const auto o = vandermonde_oval(f);
  Caps c;
  c.subset_length = 4;
  try {
    minimal_recovery_sets(o.F, 0, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CapExceeded);
  }
}

TEST(Construct, SolvePairRejectsNonSpanning) {
  auto f = field_new(7, 1);
  const auto o = vandermonde_oval(f);
  const auto g = build_generator(o, find_internal_basis(o));
  const auto rs = recovery_pairs(g);
  std::set<std::pair<std::size_t, std::size_t>> good;
  for (const auto& p : rs.pairs[0]) good.emplace(p.a, p.b);
  for (std::size_t a = 0; a < g.n(); ++a)
    for (std::size_t b = a + 1; b < g.n(); ++b) EXPECT_EQ(solve_pair(g.G, 0, a, b).has_value(), good.count({a, b}) == 1);
}
