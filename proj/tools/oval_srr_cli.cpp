// oval_srr_cli: construct | region | decode-sweep
//
// Exit codes: 0 ok, 1 usage, 2 invalid parameters (including q), 3 I/O,
// 4 LP/enumeration cap exceeded, 5 decoding failure within the bound.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "oval_srr.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace oval;

namespace {

enum Exit { Ok = 0, Usage = 1, BadParams = 2, IoFailure = 3, CapHit = 4, DecodeFailure = 5 };

struct ExitError {
  int code;
  std::string message;
};

struct FieldOpts {
  std::optional<std::uint64_t> q, p, m;
};

void add_field_opts(CLI::App* cmd, FieldOpts& o) {
  cmd->add_option("--q", o.q, "field size (prime power)");
  cmd->add_option("--p", o.p, "characteristic");
  cmd->add_option("--m", o.m, "extension degree");
}

FieldPtr make_field(const FieldOpts& o, const Caps& caps) {
  if (o.q && (o.p || o.m)) throw ExitError{BadParams, "give either --q or --p/--m, not both"};
  if (o.q) {
    if (*o.q < 4) throw ExitError{BadParams, "q must be at least 4"};
    return field_from_size(*o.q, caps);
  }
  if (o.p) {
    auto f = field_new(*o.p, o.m.value_or(1), caps);
    if (f->q() < 4) throw ExitError{BadParams, "q must be at least 4"};
    return f;
  }
  throw ExitError{BadParams, "missing --q (or --p/--m)"};
}

std::array<ProjPoint, 3> parse_basis(const std::string& s, const Field& f) {
  std::array<ProjPoint, 3> pts;
  std::stringstream ss(s);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ';')) {
    if (k == 3) throw ExitError{BadParams, "--basis takes exactly three points"};
    std::array<std::uint64_t, 3> c{};
    char sep1 = 0, sep2 = 0;
    std::istringstream is(item);
    if (!(is >> c[0] >> sep1 >> c[1] >> sep2 >> c[2]) || sep1 != ':' || sep2 != ':')
      throw ExitError{BadParams, "bad basis point '" + item + "', expected x:y:z"};
    pts[k++] = projectivize(Vec3{f.element(c[0]), f.element(c[1]), f.element(c[2])});
  }
  if (k != 3) throw ExitError{BadParams, "--basis takes exactly three points"};
  return pts;
}

RateVector parse_rates(const std::string& s) {
  RateVector v;
  std::stringstream ss(s);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 3) throw ExitError{BadParams, "--member takes three rates"};
    v[k] = parse_rational(item);
    if (v[k] < 0) throw ExitError{BadParams, "rates must be nonnegative"};
    ++k;
  }
  if (k != 3) throw ExitError{BadParams, "--member takes three rates"};
  return v;
}

// Writes every file to a temporary name first so a failure leaves nothing
// half-written behind.
void write_all(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> temps, placed;
  try {
    for (const auto& [path, body] : files)
      if (fs::is_directory(path)) throw std::ios_base::failure(path.string() + " is a directory");
    for (const auto& [path, body] : files) {
      fs::path tmp = path;
      tmp += ".tmp";
      std::ofstream os(tmp, std::ios::binary);
      if (!os) throw std::ios_base::failure("cannot open " + tmp.string());
      temps.push_back(tmp);
      os << body;
      os.close();
      if (!os) throw std::ios_base::failure("write failed: " + tmp.string());
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      fs::rename(temps[i], files[i].first);
      placed.push_back(files[i].first);
    }
  } catch (const std::exception& e) {
    std::error_code ec;
    for (const auto& t : temps) fs::remove(t, ec);
    for (const auto& p : placed) fs::remove(p, ec);
    throw ExitError{IoFailure, e.what()};
  }
}

std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  io::write_matrix(os, m);
  return os.str();
}

void emit(const json& j, const std::string& format, const std::string& csv, const std::string& out) {
  const std::string body = format == "csv" ? csv : j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << body;
  } else {
    write_all({{fs::path(out), body}});
  }
}

struct Built {
  FieldPtr field;
  OvalCode oval;
  GeneratorMatrix gm;
  RecoverySystem rs;
};

Built build(const FieldOpts& fo, const Caps& caps, const std::string& strategy, std::optional<std::uint64_t> seed,
            const std::string& basis) {
  FieldPtr f = make_field(fo, caps);
  OvalCode o = vandermonde_oval(f);
  InternalBasis b;
  if (!basis.empty()) {
    b = make_basis(o, parse_basis(basis, *f));
  } else if (strategy == "seeded") {
    if (!seed) throw ExitError{BadParams, "--strategy seeded needs --seed"};
    b = find_internal_basis(o, BasisStrategy::seeded(*seed));
  } else {
    b = find_internal_basis(o, BasisStrategy::scan());
  }
  GeneratorMatrix gm = build_generator(o, b);
  RecoverySystem rs = recovery_pairs(gm);
  return {f, o, gm, rs};
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

int cmd_construct(const FieldOpts& fo, const Caps& caps, const std::string& strategy,
                  std::optional<std::uint64_t> seed, const std::string& basis, const std::string& out,
                  const std::string& format) {
  Built b = build(fo, caps, strategy, seed, basis);
  std::size_t internal = 0;
  for (const auto& p : all_points(*b.field))
    if (is_internal(p, b.oval)) ++internal;

  json j{{"q", b.field->q()},
         {"p", b.field->p()},
         {"m", b.field->m()},
         {"modulus", b.field->modulus()},
         {"n", b.gm.n()},
         {"internal_points", internal},
         {"nucleus", b.oval.nucleus.has_value()},
         {"basis", json::array()},
         {"G", b.gm.G.reps()},
         {"recovery_system", io::to_json(b.rs)}};
  for (const auto& p : b.gm.basis.points) j["basis"].push_back(p.reps());
  json parts = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    json pairs = json::array();
    for (const auto& pr : b.rs.pairs[i]) pairs.push_back({pr.a + 1, pr.b + 1});
    parts.push_back(pairs);
  }
  j["partitions"] = parts;

  if (!out.empty()) {
    const fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ExitError{IoFailure, "cannot create " + dir.string() + ": " + ec.message()};
    write_all({{dir / "F.txt", matrix_text(b.oval.F)},
               {dir / "B.txt", matrix_text(b.gm.basis.B)},
               {dir / "G.txt", matrix_text(b.gm.G)},
               {dir / "recovery.json", io::to_json(b.rs).dump(2) + "\n"}});
  }

  std::string csv = csv_line({"q", "n", "internal_points", "object", "pair", "alpha", "beta"});
  for (std::size_t i = 0; i < 3; ++i)
    for (const auto& pr : b.rs.pairs[i])
      csv += csv_line({std::to_string(b.field->q()), std::to_string(b.gm.n()), std::to_string(internal),
                       std::to_string(i + 1), std::to_string(pr.a + 1) + " " + std::to_string(pr.b + 1),
                       std::to_string(pr.alpha.rep()), std::to_string(pr.beta.rep())});
  emit(j, format, csv, "");
  return Ok;
}

int cmd_region(const FieldOpts& fo, const Caps& caps, const std::string& strategy, std::optional<std::uint64_t> seed,
               const std::string& basis, bool compare, const std::string& member, bool eq4_report,
               const std::string& grid, const std::string& out, const std::string& format) {
  Built b = build(fo, caps, strategy, seed, basis);
  const std::size_t n = b.gm.n();
  const RegionDescription oval = oval_region(n);
  const RecoveryFamilies sys = systematic_families(n);
  GridSpec spec;
  if (!grid.empty()) {
    spec.step = parse_rational(grid);
    if (spec.step <= 0) throw ExitError{BadParams, "--grid must be positive"};
  }

  json j{{"q", b.field->q()}, {"n", n}, {"oval_region", io::to_json(oval)}};
  std::string csv = csv_line({"kind", "detail", "value"});
  csv += csv_line({"oval_region", "edge", to_string(std::get<Simplex>(oval.kind).edge)});

  if (!member.empty()) {
    const RateVector lam = parse_rates(member);
    const auto fam = pair_families(b.rs);
    const Feasibility feas = lp_feasible(lam, fam, caps);
    json m{{"lambda", io::to_json(lam)}, {"in_oval_region", contains(oval, lam, caps)}, {"feasible", feas.feasible}};
    m["witness"] = feas.witness ? io::to_json(*feas.witness) : json(nullptr);
    if (feas.feasible && total(lam) > 0) {
      const CostReport uc = normalized_cost(uniform_allocation(lam, b.rs));
      m["uniform_allocation"] = io::to_json(uc.allocation);
      m["cost"] = to_string(uc.cost);
    }
    m["eq4_as_printed"] = systematic_region_eq4(lam, n);
    j["member"] = m;
    csv += csv_line({"member", quoted(to_string(lam)), feas.feasible ? "feasible" : "infeasible"});
    if (m.contains("cost")) csv += csv_line({"member", "cost", m["cost"].get<std::string>()});
  }

  if (compare) {
    const Comparison cmp = region_compare(oval, oracle_region(sys, "systematic"), spec, caps);
    j["comparison"] = io::to_json(cmp);
    j["systematic_region"] = io::to_json(oracle_region(sys, "systematic"));
    csv += csv_line({"comparison", "verdict", quoted(cmp.verdict())});
    if (cmp.a_in_b.witness) csv += csv_line({"comparison", "oval_not_systematic", quoted(to_string(*cmp.a_in_b.witness))});
    if (cmp.b_in_a.witness) csv += csv_line({"comparison", "systematic_not_oval", quoted(to_string(*cmp.b_in_a.witness))});
  }

  if (eq4_report) {
    const Rational extent = spec.extent.value_or(Rational(static_cast<long>(n), 2));
    const DivergenceReport rep = eq4_divergence(sys, spec.step, extent, caps);
    j["eq4_as_printed"] = io::to_json(eq4_region(n));
    j["eq4_divergence"] = io::to_json(rep);
    csv += csv_line({"eq4", "points", std::to_string(rep.points)});
    csv += csv_line({"eq4", "disagreements", std::to_string(rep.disagreements.size())});
  }
  emit(j, format, csv, out);
  return Ok;
}

int cmd_decode(const FieldOpts& fo, const Caps& caps, const std::string& strategy, std::optional<std::uint64_t> seed,
               const std::string& basis, const std::string& messages, const std::string& out,
               const std::string& format) {
  Built b = build(fo, caps, strategy, seed, basis);
  bool all = false;
  std::size_t count = 100;
  if (messages == "all") {
    all = true;
  } else if (!messages.empty()) {
    try {
      std::size_t pos = 0;
      count = std::stoul(messages, &pos);
      if (pos != messages.size()) throw std::invalid_argument(messages);
    } catch (const std::exception&) {
      throw ExitError{BadParams, "--messages takes 'all' or a count"};
    }
  } else if (b.field->q() <= 5) {
    all = true;
  }
  const auto msgs = sweep_messages(*b.field, all, count, seed.value_or(0));
  const SweepReport rep = decode_sweep(b.gm, b.rs, msgs);
  json j = io::to_json(rep);
  std::string csv = csv_line({"q", "n", "t_max", "messages", "patterns_tested", "failures", "counterexample"});
  csv += csv_line({std::to_string(rep.q), std::to_string(rep.n), std::to_string(rep.t_max), std::to_string(rep.messages),
                   std::to_string(rep.patterns_tested), std::to_string(rep.failures.size()),
                   rep.counterexample ? "yes" : "no"});
  emit(j, format, csv, out);
  return rep.failures.empty() ? Ok : DecodeFailure;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::CapExceeded:
    case Errc::ProblemTooLarge:
    case Errc::UndecidableAtResolution: return CapHit;
    default: return BadParams;  // includes a field size over the cap
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oval-based MDS generator matrices: construction, service-rate regions, majority-logic decoding"};
  app.require_subcommand(1);

  FieldOpts fo;
  std::string strategy = "scan", basis, out, format = "json", grid, member, messages;
  std::optional<std::uint64_t> seed;
  bool compare = false, eq4 = false;

  auto common = [&](CLI::App* cmd) {
    add_field_opts(cmd, fo);
    cmd->add_option("--strategy", strategy, "internal-point search: scan|seeded")->check(CLI::IsMember({"scan", "seeded"}));
    cmd->add_option("--seed", seed, "64-bit seed");
    cmd->add_option("--basis", basis, "explicit internal basis, e.g. 1:0:4;1:0:2;1:1:2");
    cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* construct = app.add_subcommand("construct", "build F, B, G and the recovery system");
  common(construct);
  construct->add_option("--out", out, "directory for F.txt, B.txt, G.txt, recovery.json");

  auto* region = app.add_subcommand("region", "service-rate region report");
  common(region);
  region->add_flag("--compare-systematic", compare, "compare with the systematic code's region");
  region->add_option("--member", member, "rate vector a,b,c (rationals)");
  region->add_flag("--eq4-report", eq4, "evaluate the printed systematic inequality against the LP oracle");
  region->add_option("--grid", grid, "grid step, e.g. 1/6");
  region->add_option("--out", out, "write the report here instead of stdout");

  auto* decode = app.add_subcommand("decode-sweep", "exhaustive error injection against the majority-logic decoder");
  common(decode);
  decode->add_option("--messages", messages, "all | N seeded messages");
  decode->add_option("--out", out, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : Usage;
  }

  try {
    const Caps caps = caps_from_env();
    if (construct->parsed()) return cmd_construct(fo, caps, strategy, seed, basis, out, format);
    if (region->parsed()) return cmd_region(fo, caps, strategy, seed, basis, compare, member, eq4, grid, out, format);
    return cmd_decode(fo, caps, strategy, seed, basis, messages, out, format);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return IoFailure;
  }
}
