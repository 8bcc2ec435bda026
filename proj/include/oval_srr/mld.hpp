#pragma once

// Encoding, one-step majority-logic decoding over the disjoint size-2
// recovery pairs, and the related bounds and PIR check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "construct.hpp"

namespace oval {

using Message = std::array<FieldElement, 3>;

struct Codeword {
  std::vector<FieldElement> y;
};

/// c^T = m^T G
inline Codeword encode(const Message& m, const Matrix& G) {
  if (G.rows() != 3) throw Error(Errc::DimensionMismatch, "generator must have 3 rows");
  for (const auto& x : m)
    if (x.field() != &G.field()) throw Error(Errc::FieldMismatch, "message over a different field");
  Codeword c;
  c.y.assign(G.cols(), G.field().zero());
  for (std::size_t j = 0; j < G.cols(); ++j)
    for (std::size_t i = 0; i < 3; ++i) c.y[j] += m[i] * G(i, j);
  return c;
}

struct DecodeResult {
  enum class Status { Success, Tie } status = Status::Success;
  Message m;                     // entries listed in `tied` are unspecified
  std::vector<std::size_t> tied;  // 0-based objects without a strict majority
};

/// One vote per recovery pair: alpha * y_a + beta * y_b.
inline std::vector<FieldElement> votes(const Codeword& y, const RecoverySystem& rs, std::size_t object) {
  if (y.y.size() != rs.n) throw Error(Errc::DimensionMismatch, "received word has the wrong length");
  std::vector<FieldElement> v;
  v.reserve(rs.pairs[object].size());
  for (const auto& p : rs.pairs[object]) v.push_back(p.alpha * y.y[p.a] + p.beta * y.y[p.b]);
  return v;
}

/// Strict majority over the pair votes of each object. A tie is reported,
/// never broken.
inline DecodeResult decode_1smld(const Codeword& y, const RecoverySystem& rs) {
  DecodeResult out;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto v = votes(y, rs, i);
    std::map<std::uint32_t, std::size_t> tally;
    const FieldElement* winner = nullptr;
    for (const auto& x : v)
      if (2 * ++tally[x.rep()] > v.size()) winner = &x;
    if (winner) {
      out.m[i] = *winner;
    } else {
      out.status = DecodeResult::Status::Tie;
      out.tied.push_back(i);
      if (!v.empty()) out.m[i] = v.front().field()->zero();
    }
  }
  return out;
}

/// floor((n - s) / (2 (d_dual - s))); s = 1 is the classical Peterson value.
inline std::size_t mld_bound(std::size_t n, std::size_t s, std::size_t d_dual) {
  if (s < 1 || s >= d_dual || d_dual > n) throw Error(Errc::InvalidParameters, "need 1 <= s < d_dual <= n");
  return (n - s) / (2 * (d_dual - s));
}

struct MldParams {
  std::size_t n = 0;
  std::size_t s = 2;
  std::size_t d_dual = 4;
  std::size_t t_max = 0;
};

inline MldParams mld_params(std::size_t n) { return {n, 2, 4, mld_bound(n, 2, 4)}; }

struct PirReport {
  bool is_pir = false;
  std::size_t availability = 0;                 // min over objects
  std::array<std::size_t, 3> per_object{};      // largest pairwise-disjoint subfamily
  std::array<bool, 3> disjoint{};               // whole family pairwise disjoint
};

namespace detail {

inline std::size_t max_disjoint(const std::vector<IndexSet>& sets, std::size_t from, std::vector<bool>& used) {
  std::size_t best = 0;
  for (std::size_t k = from; k < sets.size(); ++k) {
    const auto& s = sets[k];
    if (std::any_of(s.begin(), s.end(), [&](std::size_t j) { return used[j]; })) continue;
    for (auto j : s) used[j] = true;
    best = std::max(best, 1 + max_disjoint(sets, k + 1, used));
    for (auto j : s) used[j] = false;
    if (best * 2 >= used.size()) break;
  }
  return best;
}

}  // namespace detail

inline PirReport pir_check(const RecoverySystem& rs) {
  PirReport r;
  r.is_pir = true;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<IndexSet> sets;
    for (const auto& p : rs.pairs[i]) sets.push_back({p.a, p.b});
    std::vector<std::size_t> hits(rs.n, 0);
    for (const auto& s : sets)
      for (auto j : s) ++hits[j];
    r.disjoint[i] = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h <= 1; });
    std::vector<bool> used(rs.n, false);
    r.per_object[i] = r.disjoint[i] ? sets.size() : detail::max_disjoint(sets, 0, used);
    if (!r.disjoint[i] || r.per_object[i] * 2 != rs.n) r.is_pir = false;
  }
  r.availability = *std::min_element(r.per_object.begin(), r.per_object.end());
  return r;
}

/// Minimum distance of the dual code: the smallest number of dependent
/// columns of G. At most k + 1 = 4 for a 3-row matrix.
inline std::size_t dual_distance(const Matrix& G, const Caps& caps = {}) {
  const std::size_t n = G.cols();
  if (n > caps.dual_length) throw Error(Errc::CapExceeded, "n = " + std::to_string(n) + " exceeds dual-distance cap");
  std::vector<std::size_t> idx;
  std::function<bool(std::size_t, std::size_t)> dependent_subset = [&](std::size_t start, std::size_t w) -> bool {
    if (idx.size() == w) return G.select_columns(idx).rank() < w;
    for (std::size_t j = start; j < n; ++j) {
      idx.push_back(j);
      const bool found = dependent_subset(j + 1, w);
      idx.pop_back();
      if (found) return true;
    }
    return false;
  };
  for (std::size_t w = 1; w <= std::min<std::size_t>(n, G.rows() + 1); ++w)
    if (dependent_subset(0, w)) return w;
  return n + 1;  // only when n <= rank: the dual is the zero code
}

// ---------------------------------------------------------------------------
// Exhaustive error-injection sweeps

struct SweepFailure {
  std::vector<std::size_t> positions;
  std::vector<std::uint32_t> values;
  std::size_t object = 0;
  std::optional<std::uint32_t> got;  // empty on a tie
  std::uint32_t expected = 0;
};

struct SweepReport {
  std::uint32_t q = 0;
  std::size_t n = 0;
  std::size_t t_max = 0;
  std::size_t messages = 0;
  std::size_t patterns_tested = 0;  // (message, error pattern) pairs within the bound
  std::vector<SweepFailure> failures;
  std::optional<SweepFailure> counterexample;  // weight t_max + 1
};

namespace detail {

// Calls fn(positions, values) for every error pattern of exactly weight w.
template <class Fn>
void for_each_pattern(std::size_t n, std::size_t w, std::uint32_t q, Fn&& fn) {
  std::vector<std::size_t> pos(w);
  std::vector<std::uint32_t> val(w, 1);
  std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t k, std::size_t start) -> bool {
    if (k == w) {
      std::fill(val.begin(), val.end(), 1u);
      for (;;) {
        if (!fn(pos, val)) return false;
        std::size_t d = 0;
        while (d < w && ++val[d] == q) val[d++] = 1;
        if (d == w) return true;
      }
    }
    for (std::size_t j = start; j + (w - k) <= n; ++j) {
      pos[k] = j;
      if (!choose(k + 1, j + 1)) return false;
    }
    return true;
  };
  choose(0, 0);
}

inline std::optional<SweepFailure> check_decode(const Message& m, const Codeword& clean, const RecoverySystem& rs,
                                                const std::vector<std::size_t>& pos,
                                                const std::vector<std::uint32_t>& val) {
  const Field& f = *clean.y.front().field();
  Codeword y = clean;
  for (std::size_t k = 0; k < pos.size(); ++k) y.y[pos[k]] += f.element(val[k]);
  const auto res = decode_1smld(y, rs);
  for (std::size_t i = 0; i < 3; ++i) {
    const bool tied = std::find(res.tied.begin(), res.tied.end(), i) != res.tied.end();
    if (tied || res.m[i] != m[i]) {
      SweepFailure fail{pos, val, i, std::nullopt, m[i].rep()};
      if (!tied) fail.got = res.m[i].rep();
      return fail;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Messages for a sweep: every message when `all`, otherwise `count` drawn
/// from a seeded mt19937_64.
inline std::vector<Message> sweep_messages(const Field& f, bool all, std::size_t count, std::uint64_t seed) {
  std::vector<Message> out;
  const std::uint32_t q = f.q();
  if (all) {
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c) out.push_back({f.element(a), f.element(b), f.element(c)});
    return out;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    Message m;
    for (auto& x : m) x = f.element(rng() % q);
    out.push_back(m);
  }
  return out;
}

/// Every error pattern of weight 1..t_max against every message, then a
/// search for one weight-(t_max+1) pattern that defeats the decoder.
inline SweepReport decode_sweep(const GeneratorMatrix& gm, const RecoverySystem& rs, const std::vector<Message>& messages,
                                std::size_t max_failures_kept = 32) {
  SweepReport rep;
  rep.q = gm.f().q();
  rep.n = gm.n();
  rep.t_max = mld_params(rep.n).t_max;
  rep.messages = messages.size();
  std::size_t failure_count = 0;
  for (const auto& m : messages) {
    const Codeword clean = encode(m, gm.G);
    for (std::size_t w = 1; w <= rep.t_max; ++w)
      detail::for_each_pattern(rep.n, w, rep.q, [&](const auto& pos, const auto& val) {
        ++rep.patterns_tested;
        if (auto fail = detail::check_decode(m, clean, rs, pos, val)) {
          ++failure_count;
          if (rep.failures.size() < max_failures_kept) rep.failures.push_back(std::move(*fail));
        }
        return true;
      });
  }
  for (const auto& m : messages) {
    const Codeword clean = encode(m, gm.G);
    detail::for_each_pattern(rep.n, rep.t_max + 1, rep.q, [&](const auto& pos, const auto& val) {
      rep.counterexample = detail::check_decode(m, clean, rs, pos, val);
      return !rep.counterexample.has_value();
    });
    if (rep.counterexample) break;
  }
  return rep;
}

}  // namespace oval
