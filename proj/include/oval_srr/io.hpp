#pragma once

// Matrix files and JSON projections of the library's results.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "mld.hpp"
#include "srr.hpp"

namespace oval::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Matrix file: "p m modulus n k" then k rows of n canonical integers. The
// modulus is its coefficient list, low to high, joined by commas.

inline std::string modulus_token(const Field& f) {
  std::string s;
  for (std::size_t i = 0; i < f.modulus().size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f.modulus()[i]);
  }
  return s;
}

inline void write_matrix(std::ostream& os, const Matrix& m) {
  const Field& f = m.field();
  os << f.p() << ' ' << f.m() << ' ' << modulus_token(f) << ' ' << m.cols() << ' ' << m.rows() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).rep();
    os << '\n';
  }
}

struct LoadedMatrix {
  FieldPtr field;
  Matrix matrix;
};

inline LoadedMatrix read_matrix(std::istream& is, const Caps& caps = {}) {
  std::uint64_t p = 0, m = 0;
  std::size_t n = 0, k = 0;
  std::string mod;
  if (!(is >> p >> m >> mod >> n >> k)) throw Error(Errc::ParseError, "bad matrix header");
  FieldPtr f = field_new(p, m, caps);
  std::ostringstream expect;
  expect << modulus_token(*f);
  if (mod != expect.str())
    throw Error(Errc::FieldMismatch, "modulus " + mod + " differs from the canonical " + expect.str());
  std::vector<std::vector<std::uint32_t>> rows(k, std::vector<std::uint32_t>(n));
  for (auto& row : rows)
    for (auto& x : row) {
      long long v = -1;
      if (!(is >> v)) throw Error(Errc::ParseError, "matrix body truncated");
      if (v < 0 || static_cast<std::uint64_t>(v) >= f->q()) throw Error(Errc::ParseError, "entry out of range: " + std::to_string(v));
      x = static_cast<std::uint32_t>(v);
    }
  std::string extra;
  if (is >> extra) throw Error(Errc::ParseError, "trailing data after matrix body");
  Matrix mat = Matrix::from_reps(*f, rows);
  return {f, std::move(mat)};
}

inline void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream os(path);
  if (!os) throw std::ios_base::failure("cannot open " + path);
  write_matrix(os, m);
  if (!os) throw std::ios_base::failure("write failed: " + path);
}

inline LoadedMatrix load_matrix(const std::string& path, const Caps& caps = {}) {
  std::ifstream is(path);
  if (!is) throw std::ios_base::failure("cannot open " + path);
  return read_matrix(is, caps);
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const RateVector& v) { return json::array({to_string(v[0]), to_string(v[1]), to_string(v[2])}); }

inline json one_based(const IndexSet& s) {
  json a = json::array();
  for (auto j : s) a.push_back(j + 1);
  return a;
}

/// Per object: [{pair:[a,b], coeffs:[alpha,beta]}], 1-based servers.
inline json to_json(const RecoverySystem& rs) {
  json objs = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    json list = json::array();
    for (const auto& p : rs.pairs[i])
      list.push_back({{"pair", {p.a + 1, p.b + 1}}, {"coeffs", {p.alpha.rep(), p.beta.rep()}}});
    objs.push_back(list);
  }
  return {{"n", rs.n}, {"objects", objs}};
}

inline RecoverySystem recovery_system_from_json(const json& j, const Field& f) {
  RecoverySystem rs;
  try {
    rs.n = j.at("n").get<std::size_t>();
    const auto& objs = j.at("objects");
    if (objs.size() != 3) throw Error(Errc::ParseError, "expected three objects");
    for (std::size_t i = 0; i < 3; ++i)
      for (const auto& rec : objs[i]) {
        const auto pr = rec.at("pair").get<std::array<std::size_t, 2>>();
        const auto cf = rec.at("coeffs").get<std::array<std::uint32_t, 2>>();
        if (pr[0] < 1 || pr[1] <= pr[0] || pr[1] > rs.n) throw Error(Errc::ParseError, "bad pair");
        rs.pairs[i].push_back({pr[0] - 1, pr[1] - 1, f.element(cf[0]), f.element(cf[1])});
      }
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return rs;
}

inline json to_json(const RegionDescription& r) {
  json j{{"name", r.name}};
  if (auto* s = std::get_if<Simplex>(&r.kind)) {
    j["kind"] = "simplex";
    j["edge"] = to_string(s->edge);
  } else if (auto* h = std::get_if<HalfSpaces>(&r.kind)) {
    j["kind"] = "halfspaces";
    json ineq = json::array();
    for (const auto& hs : h->inequalities)
      ineq.push_back({{"a", {to_string(hs.a[0]), to_string(hs.a[1]), to_string(hs.a[2])}}, {"b", to_string(hs.b)}});
    j["inequalities"] = ineq;
  } else {
    const auto& o = std::get<OracleBacked>(r.kind);
    j["kind"] = "oracle";
    j["n"] = o.families.n;
    j["recovery_sets"] = {o.families.sets[0].size(), o.families.sets[1].size(), o.families.sets[2].size()};
  }
  if (r.vertices) {
    json v = json::array();
    for (const auto& x : *r.vertices) v.push_back(to_json(x));
    j["vertices"] = v;
  } else {
    j["vertices"] = nullptr;
  }
  return j;
}

/// [{object, set, rate-numerator, rate-denominator}], nonzero rates only.
inline json to_json(const Allocation& a) {
  json out = json::array();
  for (const auto& e : a.entries) {
    if (e.rate == 0) continue;
    out.push_back({{"object", e.object + 1},
                   {"set", one_based(e.set)},
                   {"rate-numerator", e.rate.get_num().get_str()},
                   {"rate-denominator", e.rate.get_den().get_str()}});
  }
  return out;
}

inline json to_json(const Direction& d) {
  json j{{"status", to_string(d.status)}};
  j["witness"] = d.witness ? to_json(*d.witness) : json(nullptr);
  return j;
}

inline json to_json(const Comparison& c) {
  return {{"a", c.a_name},
          {"b", c.b_name},
          {"verdict", c.verdict()},
          {"a_in_b", to_json(c.a_in_b)},
          {"b_in_a", to_json(c.b_in_a)},
          {"step", to_string(c.step)},
          {"grid_steps", c.grid_steps},
          {"grid_points", c.grid_points},
          {"membership_queries", c.membership_queries}};
}

inline json to_json(const DivergenceReport& r) {
  json pts = json::array();
  for (const auto& d : r.disagreements)
    pts.push_back({{"lambda", to_json(d.lambda)}, {"as_printed", d.as_printed}, {"oracle", d.oracle}});
  return {{"n", r.n},
          {"step", to_string(r.step)},
          {"extent", to_string(r.extent)},
          {"points", r.points},
          {"agree", r.agree},
          {"disagree", r.disagreements.size()},
          {"disagreements", pts}};
}

inline json to_json(const SweepFailure& f) {
  json pos = json::array();
  for (auto p : f.positions) pos.push_back(p + 1);
  return {{"error_positions", pos},
          {"error_values", f.values},
          {"object", f.object + 1},
          {"got", f.got ? json(*f.got) : json("tie")},
          {"expected", f.expected}};
}

inline json to_json(const SweepReport& r) {
  json fails = json::array();
  for (const auto& f : r.failures) fails.push_back(to_json(f));
  return {{"q", r.q},
          {"n", r.n},
          {"t_max", r.t_max},
          {"messages", r.messages},
          {"patterns_tested", r.patterns_tested},
          {"failures", fails},
          {"counterexample", r.counterexample ? to_json(*r.counterexample) : json(nullptr)}};
}

inline json to_json(const PirReport& r) {
  return {{"is_pir", r.is_pir}, {"availability", r.availability}, {"per_object", r.per_object}};
}

}  // namespace oval::io
