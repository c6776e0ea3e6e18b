#pragma once

// The lincx command line, callable in-process as run(args, out, err).
// Exit codes: 0 success / no hit, 10 mathematical hit, 1 verification
// failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lincx/complexes.hpp"
#include "lincx/partitions.hpp"
#include "lincx/search.hpp"
#include "lincx/spreads.hpp"
#include "lincx/verify.hpp"
#include "lincx/version.hpp"

#ifndef LINCX_DATA_DIR
#define LINCX_DATA_DIR "tests/data"
#endif

namespace lincx::cli {

using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kFailure = 1, kUsage = 2, kHit = 10 };

inline constexpr int kMaxAmbient = 20;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A finished command: the report plus its exit code.
struct Outcome {
  Json record;
  int code = kOk;
  std::vector<std::string> text;  // extra human-readable lines for --format text
};

struct Params {
  int n = -1;
  unsigned q = 0;
  int h = -1;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
};

inline Json echo(const std::string& op, const Params& p) {
  Json j;
  j["op"] = op;
  j["n"] = p.n >= 0 ? Json(p.n) : Json(nullptr);
  j["q"] = p.q ? Json(p.q) : Json(nullptr);
  j["h"] = p.h >= 0 ? Json(p.h) : Json(nullptr);
  j["seed"] = p.seed ? Json(*p.seed) : Json(nullptr);
  j["budget"] = p.budget ? Json(*p.budget) : Json(nullptr);
  j["version"] = kVersion;
  return j;
}

inline unsigned default_workers() {
  const char* env = std::getenv("LINCX_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end || v == 0 || v > 256) throw UsageError("LINCX_WORKERS must be an integer in [1, 256]");
  return static_cast<unsigned>(v);
}

inline const Field& field_of(unsigned q) {
  try {
    return Field::get(q);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline void check_ambient(int n, int lo = 1) {
  if (n < lo || n > kMaxAmbient)
    throw UsageError("--n must lie in [" + std::to_string(lo) + ", " + std::to_string(kMaxAmbient) + "]");
}

inline void check_h(int n, int h, int lo = 0) {
  if (h < lo || h > n - 1) throw UsageError("--h must lie in [" + std::to_string(lo) + ", n-1] for n = " + std::to_string(n));
}

// Literal parsing; every malformed literal is a usage error.
inline LinearComplex parse_complex(const Field& f, int n, int h, const std::string& text) {
  try {
    return LinearComplex::parse(f, n, h, text);
  } catch (const Error& e) {
    throw UsageError("bad --form '" + text + "': " + e.what());
  }
}

inline Subspace parse_sub(const Field& f, int n, const std::string& text, int dim, const char* what) {
  Subspace s = [&] {
    try {
      return parse_subspace(f, text, n);
    } catch (const Error& e) {
      throw UsageError(std::string("bad ") + what + " '" + text + "': " + e.what());
    }
  }();
  if (dim >= -1 && s.dim() != dim)
    throw UsageError(std::string(what) + " '" + text + "' has dimension " + std::to_string(s.dim()) + ", expected " +
                     std::to_string(dim));
  return s;
}

inline std::vector<Subspace> read_lines(const Field& f, int n, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<Subspace> lines;
  std::string row;
  while (std::getline(in, row)) {
    const auto first = row.find_first_not_of(" \t\r");
    if (first == std::string::npos || row[first] == '#') continue;
    lines.push_back(parse_sub(f, n, row.substr(first), 1, "spread line"));
  }
  return lines;
}

inline Json literals(const std::vector<Subspace>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(format_subspace(s));
  return a;
}

inline Json witnesses(const std::vector<Witness>& v) {
  Json a = Json::array();
  for (const auto& w : v) a.push_back({{"worker", w.worker}, {"sequence", w.sequence}, {"form", w.form}});
  return a;
}

inline Json report_json(const SearchReport& r) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["workers"] = r.workers;
  j["forms_tested"] = r.forms_tested;
  j["hits"] = r.forms_without_singular_line;
  j["forms_whose_singular_lines_form_a_spread"] = r.forms_whose_singular_lines_form_a_spread;
  j["elapsed_seconds"] = r.elapsed_seconds;
  j["witnesses"] = witnesses(r.witnesses);
  j["spread_witnesses"] = witnesses(r.spread_witnesses);
  Json checks = Json::array();
  for (const auto& c : r.hit_checks)
    checks.push_back({{"form", c.form},
                      {"partition_ok", c.partition_ok},
                      {"spreads_linear", c.spreads_linear},
                      {"spreads_non_geometric", c.spreads_non_geometric},
                      {"failure", c.failure}});
  j["hit_checks"] = checks;
  return j;
}

// ---- rendering ----

inline std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline void flatten(const Json& v, const std::string& key, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), key.empty() ? it.key() : key + "." + it.key(), out);
  } else if (v.is_array()) {
    if (v.empty()) out.emplace_back(key, "");
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], key + "." + std::to_string(i), out);
  } else {
    out.emplace_back(key, scalar_text(v));
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline void render_text(const Json& v, const std::string& indent, std::ostream& out) {
  for (auto it = v.begin(); it != v.end(); ++it) {
    const auto& x = it.value();
    if (x.is_object()) {
      out << indent << it.key() << ":\n";
      render_text(x, indent + "  ", out);
    } else if (x.is_array()) {
      out << indent << it.key() << " (" << x.size() << "):\n";
      for (const auto& e : x) {
        if (!e.is_object()) {
          out << indent << "  " << scalar_text(e) << '\n';
          continue;
        }
        std::string row;
        for (auto f = e.begin(); f != e.end(); ++f)
          row += (row.empty() ? "" : " ") + f.key() + "=" + (f.value().is_primitive() ? scalar_text(f.value()) : f.value().dump());
        out << indent << "  " << row << '\n';
      }
    } else {
      out << indent << it.key() << ": " << scalar_text(x) << '\n';
    }
  }
}

inline void emit(const Outcome& o, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << o.record.dump() << '\n';
    return;
  }
  if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(o.record, "", rows);
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << csv_field(k) << ',' << csv_field(v) << '\n';
    return;
  }
  Json head = o.record;
  const Json result = head["result"];
  head.erase("result");
  std::string line = head["op"].get<std::string>();
  for (auto it = head.begin(); it != head.end(); ++it)
    if (it.key() != "op" && !it.value().is_null()) line += " " + it.key() + "=" + scalar_text(it.value());
  out << line << '\n';
  for (const auto& t : o.text) out << t << '\n';
  if (o.text.empty()) render_text(result, "  ", out);
}

// ---- commands ----

inline Outcome cmd_enumerate(Params p, int d, bool count_only) {
  check_ambient(p.n, 0);
  if (d < -1 || d > p.n) throw UsageError("--d must lie in [-1, n]");
  const Field& f = field_of(p.q);
  Json r;
  r["d"] = d;
  r["gaussian"] = gaussian_binomial(p.n + 1, d + 1, p.q);
  if (count_only) {
    r["count"] = SubspaceTable::get(f, p.n, d).size();
  } else {
    const auto subs = enumerate_subspaces(f, p.n, d);
    r["count"] = subs.size();
    r["subspaces"] = literals(subs);
  }
  auto rec = echo("enumerate", p);
  rec["result"] = r;
  return {rec};
}

struct ComplexArgs {
  std::string form;
  bool count_only = false;
  bool members = false;
  bool prime = false;
  std::string contains;
};

inline Outcome cmd_complex(Params p, const ComplexArgs& a) {
  check_ambient(p.n);
  check_h(p.n, p.h);
  const Field& f = field_of(p.q);
  const auto k = parse_complex(f, p.n, p.h, a.form);
  std::optional<Subspace> x;
  if (!a.contains.empty()) x = parse_sub(f, p.n, a.contains, p.h, "--contains");
  Json r;
  r["form"] = k.literal();
  r["member_count"] = member_count(k);
  if (!a.count_only) {
    r["total"] = SubspaceTable::get(f, p.n, p.h).size();
    if (x) r["contains"] = k.contains(*x);
    if (a.prime) r["is_prime"] = is_prime(f, p.n, p.h, member_mask(k));
    if (a.members) {
      const auto& table = SubspaceTable::get(f, p.n, p.h);
      const auto mask = member_mask(k);
      Json m = Json::array();
      for (std::size_t i = 0; i < table.size(); ++i)
        if (mask[i]) m.push_back(format_subspace(table[i]));
      r["members"] = m;
    }
  }
  auto rec = echo("complex", p);
  rec["result"] = r;
  return {rec};
}

struct PolarArgs {
  std::string form;
  std::string subspace;
  std::string pole;
  bool table = false;
};

inline Outcome cmd_polar(Params p, const PolarArgs& a) {
  check_ambient(p.n);
  check_h(p.n, p.h);
  const int chosen = !a.subspace.empty() + !a.pole.empty() + a.table;
  if (chosen != 1) throw UsageError("polar needs exactly one of --subspace, --pole, --table");
  if (!a.pole.empty() && p.h > p.n - 2) throw UsageError("--pole needs h <= n-2");
  if (a.pole.empty() && p.h < 1) throw UsageError("polar hyperplanes need h >= 1");
  const Field& f = field_of(p.q);
  const auto k = parse_complex(f, p.n, p.h, a.form);
  auto polar_entry = [&](const Subspace& u) {
    const auto hp = polar_hyperplane(k, u);
    const auto* s = std::get_if<Subspace>(&hp);
    return Json{{"subspace", format_subspace(u)}, {"polar", s ? format_subspace(*s) : std::string("SINGULAR")}};
  };
  Json r;
  r["form"] = k.literal();
  if (!a.subspace.empty()) {
    const auto u = parse_sub(f, p.n, a.subspace, p.h - 1, "--subspace");
    r.update(polar_entry(u));
    r["covector"] = format_vector(polar_covector(k, u));
  } else if (!a.pole.empty()) {
    const auto v = parse_sub(f, p.n, a.pole, p.h + 1, "--pole");
    const auto pr = pole(k, v);
    const auto* s = std::get_if<Subspace>(&pr);
    r["subspace"] = format_subspace(v);
    r["pole"] = s ? format_subspace(*s) : std::string("TOTAL");
  } else {
    Json t = Json::array();
    for (const auto& u : SubspaceTable::get(f, p.n, p.h - 1).all()) t.push_back(polar_entry(u));
    r["table"] = t;
  }
  auto rec = echo("polar", p);
  rec["result"] = r;
  return {rec};
}

inline Outcome cmd_singular(Params p, const std::string& form) {
  check_ambient(p.n);
  check_h(p.n, p.h, 1);
  const Field& f = field_of(p.q);
  const auto k = parse_complex(f, p.n, p.h, form);
  const auto loc = singular_locus(k);
  Json r;
  r["form"] = k.literal();
  r["count"] = loc.subspaces.size();
  r["kernel_dim"] = loc.kernel.dim();
  r["singular"] = literals(loc.subspaces);
  auto rec = echo("singular", p);
  rec["result"] = r;
  return {rec};
}

struct SpreadArgs {
  std::string file;
  std::string carrier;
  int field_reduction = 0;
  std::string form;
  std::string hyperplane;
  bool strict = false;
  bool lines = false;
};

inline Json spread_report(const Subspace& carrier, const std::vector<Subspace>& lines, bool with_lines) {
  Json r;
  r["carrier"] = format_subspace(carrier);
  r["size"] = lines.size();
  const bool ok = is_spread(lines, carrier);
  r["is_spread"] = ok;
  r["is_geometric"] = nullptr;
  r["is_linear"] = nullptr;
  r["span_dim"] = nullptr;
  if (ok) {
    const LineSpread s(carrier, lines);
    const auto lin = is_linear(s);
    r["is_geometric"] = is_geometric(s);
    r["is_linear"] = lin.linear;
    r["span_dim"] = lin.span_dim;
  }
  if (with_lines) r["lines"] = literals(lines);
  return r;
}

inline Outcome cmd_spread(Params p, const SpreadArgs& a) {
  const int chosen = !a.file.empty() + (a.field_reduction != 0) + !a.form.empty();
  if (chosen != 1) throw UsageError("spread needs exactly one of --file, --field-reduction, --form");
  Outcome o;
  if (a.field_reduction) {
    if (a.field_reduction < 2 || a.field_reduction > 3) throw UsageError("--field-reduction needs m in {2, 3}");
    if (p.q != 2 && p.q != 3) throw UsageError("--field-reduction needs --q in {2, 3}");
    if (p.n >= 0 && p.n != 2 * a.field_reduction - 1) throw UsageError("--field-reduction m lives in PG(2m-1, q)");
    p.n = 2 * a.field_reduction - 1;
    const auto s = field_reduction_spread(a.field_reduction, p.q);
    o.record = echo("spread", p);
    o.record["result"] = spread_report(s.carrier(), s.lines(), a.lines);
    return o;
  }
  check_ambient(p.n);
  const Field& f = field_of(p.q);
  if (!a.form.empty()) {
    if (a.hyperplane.empty()) throw UsageError("--form needs --hyperplane");
    check_h(p.n, 2, 2);
    p.h = 2;
    const auto k = parse_complex(f, p.n, 2, a.form);
    const auto hp = parse_sub(f, p.n, a.hyperplane, p.n - 1, "--hyperplane");
    o.record = echo("spread", p);
    try {
      const auto fh = spread_from_complex(k, hp, a.strict);
      auto r = spread_report(hp, fh.lines, a.lines);
      r["form"] = k.literal();
      o.record["result"] = r;
    } catch (const NotSingularFree& e) {
      o.record["result"] = {{"form", k.literal()}, {"error", e.what()}};
      o.code = kFailure;
    }
    return o;
  }
  const auto carrier = a.carrier.empty() ? Subspace::whole(f, p.n) : parse_sub(f, p.n, a.carrier, -2, "--carrier");
  const auto lines = read_lines(f, p.n, a.file);
  o.record = echo("spread", p);
  o.record["result"] = spread_report(carrier, lines, a.lines);
  o.record["result"]["file"] = a.file;
  if (!o.record["result"]["is_spread"].get<bool>()) o.code = kFailure;
  return o;
}

inline Json partition_json(const LinePartition& omega) {
  Json a = Json::array();
  for (const auto& c : omega.classes()) a.push_back({{"hyperplane", format_subspace(c.hyperplane)}, {"lines", literals(c.lines)}});
  return a;
}

inline Json pencil_json(const PencilWitness& w) {
  return {{"vertex", format_subspace(w.vertex)}, {"members", literals(w.members)}, {"images", literals(w.images)}};
}

// {valid, linear, witness} for a loaded partition.
inline Json partition_check_json(const LinePartition& omega, bool& valid) {
  Json r;
  r["n"] = omega.ambient();
  r["classes"] = omega.classes().size();
  PartitionCheck chk;
  try {
    chk = check_partition(omega);
  } catch (const Error& e) {
    chk.valid = false;
    chk.reason = e.what();
  }
  valid = chk.valid;
  r["valid"] = chk.valid;
  r["reason"] = chk.reason;
  r["linear"] = nullptr;
  r["witness"] = chk.witness.empty() ? Json(nullptr) : Json(chk.witness);
  if (chk.valid) {
    const auto lin = check_partition_linear(omega);
    r["linear"] = lin.linear;
    if (lin.witness) r["witness"] = pencil_json(*lin.witness);
  }
  return r;
}

struct PartitionArgs {
  std::string action;
  std::string file;
  std::string form;
  bool classes = false;
};

inline LinePartition load_partition(const Field& f, const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    auto omega = read_partition(in, f);
    if (n >= 0 && omega.ambient() != n) throw UsageError("partition file lives in PG(" + std::to_string(omega.ambient()) + ",q), not --n");
    return omega;
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

inline Outcome cmd_partition(Params p, const PartitionArgs& a) {
  const Field& f = field_of(p.q);
  Outcome o;
  if (a.action == "check" || a.action == "to-complex") {
    if (a.file.empty()) throw UsageError("partition " + a.action + " needs --file");
    const auto omega = load_partition(f, a.file, p.n);
    p.n = omega.ambient();
    o.record = echo("partition " + a.action, p);
    bool valid = false;
    auto r = partition_check_json(omega, valid);
    r["file"] = a.file;
    if (a.action == "to-complex" && valid) {
      try {
        r["form"] = complex_from_partition(omega).literal();
        p.h = 2;
      } catch (const NonLinearInput& e) {
        r["error"] = e.what();
        r["complex_is_prime"] = e.complex_is_prime;
        valid = false;
      } catch (const DegenerateAmbient& e) {
        r["error"] = e.what();
        valid = false;
      }
    }
    o.record["result"] = r;
    if (!valid) o.code = kFailure;
    return o;
  }
  if (a.action == "trivial") {
    if (p.n >= 0 && p.n != 2) throw UsageError("the trivial partition lives in PG(2,q)");
    p.n = 2;
    const auto omega = trivial_partition(f);
    bool valid = false;
    auto r = partition_check_json(omega, valid);
    if (a.classes) r["partition"] = partition_json(omega);
    o.record = echo("partition trivial", p);
    o.record["result"] = r;
    if (!valid) o.code = kFailure;
    return o;
  }
  // from-complex
  if (a.form.empty()) throw UsageError("partition from-complex needs --form");
  check_ambient(p.n, 3);
  p.h = 2;
  const auto k = parse_complex(f, p.n, 2, a.form);
  o.record = echo("partition from-complex", p);
  try {
    const auto omega = partition_from_complex(k);
    bool valid = false;
    auto r = partition_check_json(omega, valid);
    r["form"] = k.literal();
    r["partition"] = partition_json(omega);
    o.record["result"] = r;
  } catch (const NotSingularFree& e) {
    o.record["result"] = {{"form", k.literal()}, {"error", e.what()}};
    o.code = kFailure;
  }
  return o;
}

struct SearchArgs {
  std::string mode = "exhaustive";
  std::uint64_t budget = 0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t cap = std::uint64_t{1} << 24;
  std::size_t witness_limit = 8;
  bool classify = false;
};

inline Outcome cmd_search(Params p, const SearchArgs& a) {
  check_ambient(p.n, 3);
  field_of(p.q);
  p.h = 2;
  SearchConfig cfg;
  cfg.n = p.n;
  cfg.q = p.q;
  cfg.mode = a.mode == "random" ? SearchMode::Random : SearchMode::Exhaustive;
  cfg.budget = a.budget;
  cfg.seed = a.seed;
  cfg.workers = a.workers;
  cfg.cap = a.cap;
  cfg.witness_limit = a.witness_limit;
  if (cfg.mode == SearchMode::Random && a.budget == 0) throw UsageError("--mode random needs --budget > 0");
  if (cfg.mode == SearchMode::Exhaustive) {
    const auto total = form_count(p.n, p.q);
    if (!total || *total > a.cap)
      throw UsageError("exhaustive space exceeds --cap " + std::to_string(a.cap) + "; use --mode random or raise --cap");
  }
  if (a.classify && p.n != 5) throw UsageError("--classify-spreads needs --n 5");
  if (a.classify && p.q != 2 && p.q != 3) throw UsageError("--classify-spreads needs --q in {2, 3}");
  if (cfg.mode == SearchMode::Random) p.budget = a.budget;
  p.seed = a.seed;
  Outcome o;
  o.record = echo(a.classify ? "classify" : "search", p);
  if (a.classify) {
    const auto c = classify_spread_forms(cfg, cfg.mode == SearchMode::Exhaustive);
    auto r = report_json(c.report);
    std::size_t geometric = 0, linear = 0;
    Json hits = Json::array();
    for (const auto& h : c.hits) {
      geometric += h.geometric;
      linear += h.linear;
      if (hits.size() < a.witness_limit)
        hits.push_back({{"worker", h.worker},
                        {"sequence", h.sequence},
                        {"form", h.form},
                        {"geometric", h.geometric},
                        {"linear", h.linear},
                        {"span_dim", h.span_dim}});
    }
    r["spread_forms_geometric"] = geometric;
    r["spread_forms_linear"] = linear;
    r["cross_checked"] = c.cross_checked;
    r["spread_hits"] = hits;
    o.record["result"] = r;
    return o;
  }
  const auto rep = search_no_singular(cfg);
  o.record["result"] = report_json(rep);
  if (rep.forms_without_singular_line > 0) o.code = kHit;
  return o;
}

struct VerifyArgs {
  std::string level;
  std::string data = LINCX_DATA_DIR;
  unsigned workers = 1;
  std::vector<int> criteria;
};

inline Outcome cmd_verify(const VerifyArgs& a) {
  verify::Options opt;
  opt.level = a.level == "full" ? verify::Level::Full : verify::Level::Quick;
  opt.data_dir = a.data;
  opt.workers = a.workers;
  auto ids = a.criteria;
  if (ids.empty())
    for (int i = 1; i <= verify::kCriterionCount; ++i) ids.push_back(i);
  Outcome o;
  o.record = echo("verify-suite", Params{});
  Json list = Json::array();
  std::size_t passed = 0;
  for (int id : ids) {
    const auto r = verify::run_criterion(id, opt);
    passed += r.pass();
    o.text.push_back(verify::format_result(r));
    list.push_back({{"id", r.id},
                    {"title", r.title},
                    {"pass", r.pass()},
                    {"correct", r.correct},
                    {"seconds", r.seconds},
                    {"limit_seconds", r.limit_seconds},
                    {"detail", r.detail}});
  }
  o.text.push_back(std::to_string(passed) + "/" + std::to_string(ids.size()) + " criteria passed");
  o.record["result"] = {{"level", a.level}, {"passed", passed}, {"total", ids.size()}, {"criteria", list}};
  if (passed != ids.size()) o.code = kFailure;
  return o;
}

// ---- entry point ----

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lincx: linear complexes, null polarities, spreads and line partitions over GF(q)", "lincx"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));
  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));

  Params p;
  auto add_nq = [&](CLI::App* s, bool n_required = true) {
    auto* o = s->add_option("--n", p.n, "ambient projective dimension");
    if (n_required) o->required();
    s->add_option("--q", p.q, "field order (prime power <= 16)")->required();
  };
  std::optional<unsigned> workers_flag;
  auto add_workers = [&](CLI::App* s) {
    s->add_option("--workers", workers_flag, "worker threads (default: $LINCX_WORKERS or 1)")->check(CLI::Range(1, 256));
  };

  int d = 1;
  bool count_only = false;
  auto* en = app.add_subcommand("enumerate", "list the d-subspaces of PG(n,q)");
  add_nq(en);
  en->add_option("--d", d, "projective dimension of the subspaces")->required();
  en->add_flag("--count", count_only, "only print the number");

  ComplexArgs ca;
  auto* cx = app.add_subcommand("complex", "members of the linear complex of h-subspaces given by a form");
  add_nq(cx);
  cx->add_option("--h", p.h, "dimension of the member subspaces")->required();
  cx->add_option("--form", ca.form, "form literal, e.g. 01+23 or 2*012+134")->required();
  cx->add_flag("--count", ca.count_only, "only print the member count");
  cx->add_flag("--members", ca.members, "list the members");
  cx->add_flag("--prime", ca.prime, "check the prime property on every pencil");
  cx->add_option("--contains", ca.contains, "membership test for one h-subspace");

  PolarArgs pa;
  auto* po = app.add_subcommand("polar", "polar hyperplanes and poles of a complex");
  add_nq(po);
  po->add_option("--h", p.h)->required();
  po->add_option("--form", pa.form)->required();
  po->add_option("--subspace", pa.subspace, "(h-1)-subspace U; prints its polar hyperplane or SINGULAR");
  po->add_option("--pole", pa.pole, "(h+1)-subspace V; prints its pole or TOTAL");
  po->add_flag("--table", pa.table, "polar hyperplane of every (h-1)-subspace");

  std::string sform;
  auto* sg = app.add_subcommand("singular", "singular (h-1)-subspaces of a complex");
  add_nq(sg);
  sg->add_option("--h", p.h)->required();
  sg->add_option("--form", sform)->required();

  SpreadArgs sa;
  auto* sp = app.add_subcommand("spread", "line spread report {carrier, size, is_spread, is_geometric, is_linear, span_dim}");
  add_nq(sp, false);
  sp->add_option("--file", sa.file, "file with one line per row in subspace syntax");
  sp->add_option("--carrier", sa.carrier, "carrier subspace (default: the whole space)");
  sp->add_option("--field-reduction", sa.field_reduction, "Desarguesian spread of PG(2m-1,q), m in {2,3}");
  sp->add_option("--form", sa.form, "complex of planes; with --hyperplane reports F_H");
  sp->add_option("--hyperplane", sa.hyperplane, "hyperplane H for --form");
  sp->add_flag("--strict", sa.strict, "require the complex to have no singular line");
  sp->add_flag("--lines", sa.lines, "include the lines in the report");

  PartitionArgs pt;
  auto* pr = app.add_subcommand(
      "partition",
      "line partitions: check | to-complex | trivial | from-complex.\n"
      "The PG(2,q) trivial partition verifies and is linear, but to-complex rejects it: the related complex of\n"
      "planes needs n >= 4.");
  pr->add_option("action", pt.action)->required()->check(CLI::IsMember({"check", "to-complex", "trivial", "from-complex"}));
  add_nq(pr, false);
  pr->add_option("--file", pt.file, "partition file: 'H <hyperplane>' headers, then member lines");
  pr->add_option("--form", pt.form, "complex of planes for from-complex");
  pr->add_flag("--classes", pt.classes, "include the classes in the trivial report");

  SearchArgs se;
  auto* sr = app.add_subcommand("search", "search trilinear forms for complexes of planes without singular lines");
  add_nq(sr);
  sr->add_option("--mode", se.mode)->check(CLI::IsMember({"exhaustive", "random"}));
  sr->add_option("--budget", se.budget, "forms to sample in random mode");
  sr->add_option("--seed", se.seed);
  add_workers(sr);
  sr->add_option("--cap", se.cap, "largest exhaustive space");
  sr->add_option("--witnesses", se.witness_limit, "witnesses kept per list");
  sr->add_flag("--classify-spreads", se.classify, "PG(5,q): classify forms whose singular lines are a spread");

  VerifyArgs va;
  auto* vs = app.add_subcommand("verify-suite", "run the acceptance battery");
  vs->add_option("level", va.level)->required()->check(CLI::IsMember({"quick", "full"}));
  vs->add_option("--data", va.data, "fixture directory");
  vs->add_option("--criteria", va.criteria, "subset of criteria 1..10")->check(CLI::Range(1, verify::kCriterionCount));
  add_workers(vs);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const unsigned workers = workers_flag ? *workers_flag : default_workers();
    Outcome o;
    if (en->parsed()) o = cmd_enumerate(p, d, count_only);
    else if (cx->parsed()) o = cmd_complex(p, ca);
    else if (po->parsed()) o = cmd_polar(p, pa);
    else if (sg->parsed()) o = cmd_singular(p, sform);
    else if (sp->parsed()) o = cmd_spread(p, sa);
    else if (pr->parsed()) o = cmd_partition(p, pt);
    else if (sr->parsed()) {
      se.workers = workers;
      o = cmd_search(p, se);
    } else {
      va.workers = workers;
      o = cmd_verify(va);
    }
    emit(o, format, out);
    return o.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace lincx::cli
