#include "ekr2/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "ekr2/compress.hpp"
#include "ekr2/constructions.hpp"
#include "ekr2/gensets.hpp"
#include "ekr2/metrics.hpp"

namespace ekr2 {

using ojson = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

ojson rational_json(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  if (r->is_integer()) return r->num;
  return std::to_string(r->num) + "/" + std::to_string(r->den);
}

std::string rational_text(const std::optional<Rational>& r) {
  if (!r) return "";
  return r->is_integer() ? std::to_string(r->num) : std::to_string(r->num) + "/" + std::to_string(r->den);
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

ojson params_json(const Params& p, const ArgRecord& extra) {
  ojson j;
  j["n"] = p.n;
  j["k"] = p.k;
  j["t"] = p.t;
  for (const auto& [key, val] : extra)
    if (key != "n" && key != "k" && key != "t") j[key] = val;
  return j;
}

ojson config_json(const CheckOptions& c) {
  ojson j;
  j["trials"] = c.trials;
  j["density"] = c.density;
  j["vertex_budget"] = c.vertex_budget;
  j["clique_cap"] = c.clique_cap ? ojson(*c.clique_cap) : ojson(nullptr);
  j["random_algorithm"] = kRandomAlgorithm;
  return j;
}

// Everything after the subcommand is resolved into this record.
struct Options {
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool no_cache = false;
  bool omit_timing = false;
  int workers = 1;

  int n = 0, k = 0, t = 0;
  std::optional<int> s, i, j, l, q, m;
  std::string family_path;
  std::optional<std::string> base_path;
  std::vector<std::string> metrics{"size", "co2", "zeta"};
  std::optional<int> ell;
  std::string kind;
  std::optional<std::string> shift_pair;
  bool trace = false;
  std::optional<int> swap_i, shrink_i;
  std::string variant = "script";
  std::string id;
  std::vector<std::string> raw_args;
  bool nontrivial = false, compressed = false, dedup = false;
  std::size_t budget = kDefaultVertexBudget;
  std::optional<std::size_t> cap;
  std::string objective = "co2", constraint = "all";
  std::string claim;
  std::vector<std::string> claims;
  std::string mode = "exhaustive";
  std::optional<std::uint64_t> seed;
  int trials = 200;
  double density = 0.5;
  std::string grid;
};

ReportFormat report_format(const Options& o) {
  const std::string f = o.format.value_or("json");
  if (f == "json") return ReportFormat::Json;
  if (f == "csv") return ReportFormat::Csv;
  throw CLI::ValidationError("--format", "expected json or csv");
}

void deliver(const Options& o, const std::string& bytes, std::ostream& out) {
  if (o.out)
    write_atomic(*o.out, bytes);
  else
    out << bytes;
}

// ------------------------------------------------------------------ cache

struct Cached {
  int code = 0;
  std::string bytes;
};

std::filesystem::path cache_path(std::uint64_t key) {
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << key << ".report";
  return cache_dir() / name.str();
}

std::optional<Cached> cache_get(std::uint64_t key) {
  std::ifstream in(cache_path(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header) || header.rfind("ekr2-cache exit=", 0) != 0) return std::nullopt;
  Cached c;
  c.code = std::atoi(header.c_str() + 16);
  std::ostringstream ss;
  ss << in.rdbuf();
  c.bytes = ss.str();
  return c;
}

void cache_put(std::uint64_t key, const Cached& c) {
  try {
    std::filesystem::create_directories(cache_dir());
    write_atomic(cache_path(key), "ekr2-cache exit=" + std::to_string(c.code) + "\n" + c.bytes);
  } catch (const std::exception&) {
    // an unwritable cache only costs a recomputation next time
  }
}

template <class Fn>
int with_cache(const Options& o, const std::string& key_text, std::ostream& out, Fn&& compute) {
  const std::uint64_t key = fnv1a(std::string(kToolVersion) + "\n" + key_text);
  if (!o.no_cache)
    if (auto hit = cache_get(key)) {
      deliver(o, hit->bytes, out);
      return hit->code;
    }
  const Cached fresh = compute();
  if (!o.no_cache) cache_put(key, fresh);
  deliver(o, fresh.bytes, out);
  return fresh.code;
}

// ------------------------------------------------------------ subcommands

Family load_family(const std::string& path) { return parse_family(read_file(path)); }

int cmd_compute(const Options& o, std::ostream& out) {
  const Family f = load_family(o.family_path);
  std::vector<std::pair<std::string, ojson>> rows;
  auto need_t = [&](const std::string& metric) {
    if (o.t < 1) throw CLI::ValidationError("--t", metric + " needs --t");
    return o.t;
  };
  for (const std::string& metric : o.metrics) {
    if (metric == "size") {
      rows.emplace_back("size", static_cast<std::int64_t>(f.size()));
    } else if (metric == "co2") {
      rows.emplace_back("co2", static_cast<std::int64_t>(co2(f)));
    } else if (metric == "zeta") {
      rows.emplace_back("zeta", static_cast<std::int64_t>(tight_paths(f)));
    } else if (metric == "codegree") {
      if (!o.ell) throw CLI::ValidationError("--ell", "codegree needs --ell");
      const CodegreeVector cv = codegree_vector(f, *o.ell);
      rows.emplace_back("codegree_sum_sq", static_cast<std::int64_t>(cv.sum_of_squares()));
      rows.emplace_back("codegree_sum", static_cast<std::int64_t>(cv.sum()));
    } else if (metric == "tintersecting") {
      rows.emplace_back("t_intersecting", is_t_intersecting(f, need_t(metric)));
    } else if (metric == "trivial") {
      const TrivialityResult r = is_trivial(f, need_t(metric));
      rows.emplace_back("trivial", r.trivial);
      if (r.witness) rows.emplace_back("trivial_witness", format_set(*r.witness));
    } else if (metric == "maximal") {
      rows.emplace_back("maximal", is_maximal_t_intersecting(f, need_t(metric)));
    } else if (metric == "compressed") {
      rows.emplace_back("left_compressed", is_left_compressed(f));
    } else {
      throw CLI::ValidationError("--metrics", "unknown metric '" + metric + "'");
    }
  }
  std::string bytes;
  if (o.format.value_or("text") == "json") {
    ojson j;
    for (const auto& [key, val] : rows) j[key] = val;
    bytes = dump(j);
  } else {
    for (const auto& [key, val] : rows) bytes += key + "=" + (val.is_string() ? val.get<std::string>() : val.dump()) + "\n";
  }
  deliver(o, bytes, out);
  return 0;
}

Params params_of(const Options& o) {
  const Params p{o.n, o.k, o.t};
  p.validate();
  return p;
}

int cmd_construct(const Options& o, std::ostream& out) {
  const auto kind = parse_construction(lower(o.kind));
  if (!kind) throw CLI::ValidationError("--kind", "unknown construction '" + o.kind + "'");
  std::optional<Family> base;
  if (o.base_path) base = load_family(*o.base_path);
  const Family f = construct(*kind, params_of(o), o.s, base ? &*base : nullptr);
  deliver(o, emit_family(f), out);
  return 0;
}

std::pair<int, int> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--shift", "expected i,j");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--shift", "expected i,j");
  }
}

int cmd_compress(const Options& o, std::ostream& out, std::ostream& err) {
  const Family f = load_family(o.family_path);
  Family g;
  if (o.shift_pair) {
    const auto [a, b] = parse_pair(*o.shift_pair);
    g = shift(f, a, b);
  } else {
    CompressionTrace trace;
    if (o.trace)
      trace = [&](int a, int b, unsigned __int128 potential) {
        err << "shift " << a << " " << b << " potential " << static_cast<unsigned long long>(potential) << "\n";
      };
    g = left_compress(f, trace);
  }
  deliver(o, emit_family(g), out);
  return 0;
}

ojson genset_json(const GenSetInfo& info) {
  ojson j;
  j["s"] = info.s;
  ojson gens = ojson::array();
  for (Mask e : info.g) gens.push_back(format_set(e));
  j["generators"] = gens;
  ojson layers = ojson::object(), stars = ojson::object();
  for (int i = 0; i <= info.s; ++i) {
    if (!info.layer(i).empty()) layers[std::to_string(i)] = info.layer(i).size();
    if (!info.star_layer(i).empty()) stars[std::to_string(i)] = info.star_layer(i).size();
  }
  j["layer_sizes"] = layers;
  j["star_layer_sizes"] = stars;
  j["antichain_suspended"] = info.antichain_suspended;
  return j;
}

int cmd_genset(const Options& o, std::ostream& out) {
  const Family f = load_family(o.family_path);
  const GenSetInfo info = generating_set(f);
  if (o.swap_i || o.shrink_i) {
    if (o.t < 1) throw CLI::ValidationError("--t", "surgery needs --t");
    std::string bytes;
    if (o.swap_i) {
      const auto [f1, f2] = surgery_swap(f, info, *o.swap_i, o.t);
      bytes += "# F1 zeta_change=" + std::to_string(tight_paths(f1) - tight_paths(f)) +
               " lower_bound=" + std::to_string(swap_zeta_lower_bound(f, info, *o.swap_i, o.t)) + "\n";
      bytes += emit_family(f1);
      bytes += "# F2 zeta_change=" + std::to_string(tight_paths(f2) - tight_paths(f)) + "\n";
      bytes += emit_family(f2);
    } else {
      if (!o.q) throw CLI::ValidationError("--q", "shrink needs --q");
      const SurgeryVariant v = o.variant == "plain" ? SurgeryVariant::Plain : SurgeryVariant::Script;
      const Family f3 = surgery_shrink(f, info, *o.shrink_i, *o.q, v, o.t);
      bytes += "# F3 zeta_change=" + std::to_string(tight_paths(f3) - tight_paths(f)) +
               " lower_bound=" + std::to_string(shrink_zeta_lower_bound(f, info, *o.shrink_i, *o.q)) + "\n";
      bytes += emit_family(f3);
    }
    deliver(o, bytes, out);
    return 0;
  }
  std::string bytes;
  if (o.format.value_or("text") == "json") {
    bytes = dump(genset_json(info));
  } else {
    bytes += "s=" + std::to_string(info.s) + "\n";
    for (Mask e : info.g) bytes += "g " + format_set(e) + "\n";
  }
  deliver(o, bytes, out);
  return 0;
}

ArgRecord arg_record(const Options& o) {
  ArgRecord a;
  for (const std::string& kv : o.raw_args) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--arg", "expected key=value, got '" + kv + "'");
    try {
      a[kv.substr(0, eq)] = std::stoll(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--arg", "bad integer in '" + kv + "'");
    }
  }
  auto put = [&](const char* name, std::optional<int> v) {
    if (v) a[name] = *v;
  };
  if (o.n) a["n"] = o.n;
  if (o.k) a["k"] = o.k;
  if (o.t) a["t"] = o.t;
  put("s", o.s);
  put("i", o.i);
  put("j", o.j);
  put("l", o.l);
  put("q", o.q);
  put("m", o.m);
  return a;
}

int cmd_bound(const Options& o, std::ostream& out) {
  const auto id = parse_closed_form(lower(o.id));
  if (!id) throw CLI::ValidationError("--id", "unknown closed form '" + o.id + "'");
  const Rational v = closed_form(*id, arg_record(o));
  deliver(o, std::string(to_string(*id)) + "=" + rational_text(v) + "\n", out);
  return 0;
}

int cmd_inequality(const Options& o, std::ostream& out) {
  const auto id = parse_inequality(lower(o.id));
  if (!id) throw CLI::ValidationError("--id", "unknown inequality '" + o.id + "'");
  const InequalityResult r = inequality(*id, arg_record(o));
  std::string bytes = "value=" + std::to_string(r.value) + "\n";
  bytes += std::string("hypotheses=") + (r.hypotheses_hold ? "hold" : "fail") + "\n";
  bytes += std::string("conclusion=") + (r.conclusion_holds ? "holds" : "fails") + "\n";
  if (!r.detail.empty()) bytes += "detail=" + r.detail + "\n";
  deliver(o, bytes, out);
  return r.hypotheses_hold && !r.conclusion_holds ? 1 : 0;
}

EnumerateOptions enumerate_options(const Options& o) {
  EnumerateOptions e;
  e.nontrivial_only = o.nontrivial;
  e.left_compressed_only = o.compressed;
  e.dedup_iso = o.dedup;
  e.vertex_budget = o.budget;
  e.clique_cap = o.cap;
  e.workers = o.workers;
  return e;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const Params p = params_of(o);
  const Enumeration e = enumerate_maximal_families(p, enumerate_options(o));
  std::string bytes;
  if (o.format.value_or("text") == "json") {
    ojson j;
    j["tool_version"] = kToolVersion;
    j["params"] = params_json(p, {});
    j["nontrivial_only"] = o.nontrivial;
    j["left_compressed_only"] = o.compressed;
    j["dedup_iso"] = o.dedup;
    j["count"] = e.families.size();
    j["cliques"] = e.cliques;
    j["truncated"] = e.truncated;
    ojson fams = ojson::array();
    for (const Family& f : e.families) fams.push_back(emit_family(f));
    j["families"] = fams;
    bytes = dump(j);
  } else {
    bytes = "# count=" + std::to_string(e.families.size()) + " cliques=" + std::to_string(e.cliques) +
            " truncated=" + (e.truncated ? "yes" : "no") + "\n";
    for (std::size_t x = 0; x < e.families.size(); ++x)
      bytes += "# family " + std::to_string(x + 1) + "\n" + emit_family(e.families[x]);
  }
  deliver(o, bytes, out);
  return e.truncated ? 3 : 0;
}

ReportOptions report_options(const Options& o) { return {report_format(o), o.omit_timing}; }

int cmd_scan(const Options& o, std::ostream& out) {
  const Params p = params_of(o);
  const auto objective = parse_objective(lower(o.objective));
  const auto constraint = parse_constraint(lower(o.constraint));
  if (!objective) throw CLI::ValidationError("--objective", "expected co2, zeta or size");
  if (!constraint) throw CLI::ValidationError("--constraint", "expected all or nontrivial");
  std::ostringstream key;
  key << "scan " << to_string(p) << " " << to_string(*objective) << " " << to_string(*constraint)
      << " lc=" << o.compressed << " budget=" << o.budget << " cap=" << (o.cap ? std::to_string(*o.cap) : "-")
      << " format=" << o.format.value_or("json") << " omit=" << o.omit_timing;
  return with_cache(o, key.str(), out, [&] {
    EnumerateOptions e = enumerate_options(o);
    e.nontrivial_only = false;
    e.dedup_iso = false;
    const ScanReport r = extremal_scan(p, *objective, *constraint, e);
    return Cached{r.truncated ? 3 : 0, format_scan(r, report_options(o))};
  });
}

CheckOptions check_options(const Options& o) {
  CheckOptions c;
  const auto mode = parse_mode(lower(o.mode));
  if (!mode) throw CLI::ValidationError("--mode", "expected exhaustive, compressed_only or random");
  c.mode = *mode;
  if (c.mode == Mode::Random && !o.seed) throw CLI::ValidationError("--seed", "random mode requires --seed");
  c.seed = o.seed;
  c.trials = o.trials;
  c.density = o.density;
  c.workers = o.workers;
  c.vertex_budget = o.budget;
  c.clique_cap = o.cap;
  auto put = [&](const char* name, std::optional<int> v) {
    if (v) c.args[name] = *v;
  };
  put("s", o.s);
  put("i", o.i);
  put("j", o.j);
  put("l", o.l);
  put("q", o.q);
  if (o.variant == "plain")
    c.args["plain"] = 1;
  else if (o.variant != "script")
    throw CLI::ValidationError("--variant", "expected script or plain");
  return c;
}

std::string check_key(const Options& o, const CheckOptions& c) {
  std::ostringstream key;
  key << "mode=" << to_string(c.mode) << " seed=" << (c.seed ? std::to_string(*c.seed) : "-")
      << " trials=" << c.trials << " density=" << c.density << " budget=" << c.vertex_budget
      << " cap=" << (c.clique_cap ? std::to_string(*c.clique_cap) : "-") << " format=" << o.format.value_or("json")
      << " omit=" << o.omit_timing;
  for (const auto& [name, v] : c.args) key << " " << name << "=" << v;
  return key.str();
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (!is_claim(lower(o.claim))) throw CLI::ValidationError("--claim", "unknown claim '" + o.claim + "'");
  const std::string claim = lower(o.claim);
  const Params p = params_of(o);
  CheckOptions c = check_options(o);
  std::string key = "verify " + claim + " " + to_string(p) + " " + check_key(o, c);
  if (!o.family_path.empty()) {
    const std::string text = read_file(o.family_path);
    c.family = parse_family(text);
    key += "\nfamily\n" + text;
  }
  return with_cache(o, key, out, [&] {
    const std::vector<Verdict> vs{check_claim(claim, p, c)};
    return Cached{exit_code_for(vs), format_verdicts(vs, c, report_options(o))};
  });
}

int cmd_grid(const Options& o, std::ostream& out) {
  std::vector<std::string> claims;
  for (const std::string& c : o.claims) {
    const std::string id = lower(c);
    if (id == "all") {
      claims = claim_ids();
      break;
    }
    if (!is_claim(id)) throw CLI::ValidationError("--claims", "unknown claim '" + c + "'");
    claims.push_back(id);
  }
  if (claims.empty()) throw CLI::ValidationError("--claims", "no claims given");
  const Grid grid = parse_grid(o.grid);
  const CheckOptions c = check_options(o);
  std::string key = "grid " + o.grid + " " + check_key(o, c) + " claims=";
  std::vector<std::string> sorted = claims;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& id : sorted) key += id + ",";
  return with_cache(o, key, out, [&] {
    const std::vector<Verdict> vs = run_grid(claims, grid, c);
    return Cached{exit_code_for(vs), format_verdicts(vs, c, report_options(o))};
  });
}

// ------------------------------------------------------------ option set

void add_output(CLI::App* app, Options& o) {
  app->add_option("--out", o.out, "Write the result to this file (atomically)");
  app->add_option("--format", o.format, "json or csv (text for non-report commands)");
}

void add_params(CLI::App* app, Options& o, bool with_t = true) {
  app->add_option("--n", o.n, "Universe size")->required();
  app->add_option("--k", o.k, "Uniformity")->required();
  if (with_t) app->add_option("--t", o.t, "Intersection threshold")->required();
}

void add_search(CLI::App* app, Options& o) {
  app->add_option("--budget", o.budget, "Vertex budget on C(n,k)");
  app->add_option("--cap", o.cap, "Stop after this many maximal cliques");
  app->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  app->add_flag("--no-cache", o.no_cache, "Bypass the result cache");
  app->add_flag("--omit-timing", o.omit_timing, "Write elapsed_ms as 0");
}

void add_check(CLI::App* app, Options& o) {
  app->add_option("--mode", o.mode, "exhaustive, compressed_only or random");
  app->add_option("--seed", o.seed, "Seed for random mode (required there)");
  app->add_option("--trials", o.trials, "Random trials")->check(CLI::NonNegativeNumber);
  app->add_option("--density", o.density, "Insertion attempts as a fraction of C(n,k)");
  app->add_option("--s", o.s);
  app->add_option("--i", o.i);
  app->add_option("--j", o.j);
  app->add_option("--l", o.l);
  app->add_option("--q", o.q);
  app->add_option("--variant", o.variant, "Shrink-surgery slice variant: script or plain");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toolkit for t-intersecting k-uniform families", "ekr2"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Options o;

  auto* compute = app.add_subcommand("compute", "Metrics of a family file");
  compute->add_option("--family", o.family_path, "Family file")->required();
  compute->add_option("--metrics", o.metrics, "size,co2,zeta,codegree,tintersecting,trivial,maximal,compressed")
      ->delimiter(',');
  compute->add_option("--t", o.t);
  compute->add_option("--ell", o.ell, "Codegree level for the codegree metric");
  compute->add_option("--out", o.out);
  compute->add_option("--format", o.format, "text or json");

  auto* construct_cmd = app.add_subcommand("construct", "Build star, a, h, fs or complement");
  construct_cmd->add_option("--kind", o.kind)->required();
  add_params(construct_cmd, o);
  construct_cmd->add_option("--s", o.s, "Ladder index for fs");
  construct_cmd->add_option("--base", o.base_path, "Base family for complement");
  construct_cmd->add_option("--out", o.out);

  auto* compress_cmd = app.add_subcommand("compress", "Left-compress a family or apply one shift");
  compress_cmd->add_option("--family", o.family_path)->required();
  compress_cmd->add_option("--shift", o.shift_pair, "Single shift i,j");
  compress_cmd->add_flag("--trace", o.trace, "Report each applied shift on stderr");
  compress_cmd->add_option("--out", o.out);

  auto* genset = app.add_subcommand("genset", "Generating set and surgeries");
  genset->add_option("--family", o.family_path)->required();
  genset->add_option("--t", o.t);
  genset->add_option("--swap", o.swap_i, "Layer-swap surgery at layer i");
  genset->add_option("--shrink", o.shrink_i, "Shrink surgery at layer i");
  genset->add_option("--q", o.q, "Excluded element for --shrink");
  genset->add_option("--variant", o.variant, "script or plain slices for --shrink");
  genset->add_option("--out", o.out);
  genset->add_option("--format", o.format, "text or json");

  auto* bound = app.add_subcommand("bound", "Evaluate a closed form");
  bound->add_option("--id", o.id)->required();
  bound->add_option("--n", o.n);
  bound->add_option("--k", o.k);
  bound->add_option("--t", o.t);
  bound->add_option("--s", o.s);
  bound->add_option("--i", o.i);
  bound->add_option("--l", o.l);
  bound->add_option("--m", o.m);
  bound->add_option("--arg", o.raw_args, "Further key=value arguments");
  bound->add_option("--out", o.out);

  auto* ineq = app.add_subcommand("inequality", "Evaluate lem41, lem42 or lem43 at one point");
  ineq->add_option("--id", o.id)->required();
  ineq->add_option("--n", o.n);
  ineq->add_option("--k", o.k);
  ineq->add_option("--t", o.t);
  ineq->add_option("--i", o.i);
  ineq->add_option("--j", o.j);
  ineq->add_option("--s", o.s);
  ineq->add_option("--arg", o.raw_args);
  ineq->add_option("--out", o.out);

  auto* enumerate = app.add_subcommand("enumerate", "All maximal t-intersecting families");
  add_params(enumerate, o);
  enumerate->add_flag("--nontrivial", o.nontrivial);
  enumerate->add_flag("--compressed", o.compressed, "Left-compressed families only");
  enumerate->add_flag("--dedup", o.dedup, "One canonical form per isomorphism class");
  add_search(enumerate, o);
  enumerate->add_option("--out", o.out);
  enumerate->add_option("--format", o.format, "text or json");

  auto* scan = app.add_subcommand("scan", "Extremal classes of an objective");
  add_params(scan, o);
  scan->add_option("--objective", o.objective, "co2, zeta or size");
  scan->add_option("--constraint", o.constraint, "all or nontrivial");
  scan->add_flag("--compressed", o.compressed);
  add_search(scan, o);
  add_output(scan, o);

  auto* verify = app.add_subcommand("verify", "Check one claim at one point");
  verify->add_option("--claim", o.claim)->required();
  add_params(verify, o);
  verify->add_option("--family", o.family_path, "Check this family instead of a census");
  add_check(verify, o);
  add_search(verify, o);
  add_output(verify, o);

  auto* grid = app.add_subcommand("grid", "Check claims over a parameter grid");
  grid->add_option("--claims", o.claims, "Comma-separated claim ids or 'all'")->delimiter(',')->required();
  grid->add_option("--grid", o.grid, "e.g. \"n=4..9;k=2..4;t=1..3\"")->required();
  add_check(grid, o);
  add_search(grid, o);
  add_output(grid, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compute) return cmd_compute(o, out);
    if (*construct_cmd) return cmd_construct(o, out);
    if (*compress_cmd) return cmd_compress(o, out, err);
    if (*genset) return cmd_genset(o, out);
    if (*bound) return cmd_bound(o, out);
    if (*ineq) return cmd_inequality(o, out);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*scan) return cmd_scan(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*grid) return cmd_grid(o, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::BudgetExceeded:
      case ErrorKind::Truncated:
      case ErrorKind::Infeasible:
        return 3;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

std::string format_verdicts(const std::vector<Verdict>& verdicts, const CheckOptions& config,
                            const ReportOptions& ro) {
  if (ro.format == ReportFormat::Csv) {
    std::string s = "tool_version,claim,n,k,t,extra,mode,seed,status,bound,measured,witnesses,skipped_reason,elapsed_ms\n";
    for (const Verdict& v : verdicts) {
      std::string extra;
      for (const auto& [key, val] : v.extra) extra += (extra.empty() ? "" : ";") + key + "=" + std::to_string(val);
      s += std::string(kToolVersion) + "," + v.claim + "," + std::to_string(v.params.n) + "," +
           std::to_string(v.params.k) + "," + std::to_string(v.params.t) + "," + extra + "," +
           std::string(to_string(v.mode)) + "," + (v.seed ? std::to_string(*v.seed) : "") + "," +
           std::string(to_string(v.status)) + "," + rational_text(v.bound) + "," + rational_text(v.measured) + "," +
           std::to_string(v.witnesses.size() + v.witness_points.size()) + "," + v.skipped_reason.value_or("") + "," +
           std::to_string(ro.omit_timing ? 0 : v.elapsed_ms) + "\n";
    }
    return s;
  }
  ojson arr = ojson::array();
  for (const Verdict& v : verdicts) {
    ojson j;
    j["tool_version"] = kToolVersion;
    j["claim"] = v.claim;
    j["params"] = params_json(v.params, v.extra);
    j["mode"] = to_string(v.mode);
    j["seed"] = v.seed ? ojson(*v.seed) : ojson(nullptr);
    j["trials"] = v.trials;
    j["status"] = to_string(v.status);
    j["bound"] = rational_json(v.bound);
    j["measured"] = rational_json(v.measured);
    ojson w = ojson::array();
    for (const Family& f : v.witnesses) w.push_back(emit_family(f));
    j["witnesses"] = w;
    j["witness_points"] = v.witness_points;
    ojson d = ojson::object();
    for (const auto& [key, val] : v.details) d[key] = val;
    j["details"] = d;
    if (v.skipped_reason) j["skipped_reason"] = *v.skipped_reason;
    j["config"] = config_json(config);
    j["elapsed_ms"] = ro.omit_timing ? 0 : v.elapsed_ms;
    arr.push_back(j);
  }
  return dump(arr);
}

std::string format_scan(const ScanReport& r, const ReportOptions& ro) {
  const std::int64_t ms = ro.omit_timing ? 0 : r.elapsed_ms;
  if (ro.format == ReportFormat::Csv) {
    return "n,k,t,objective,constraint,left_compressed_only,max_value,classes,enumerated,truncated,elapsed_ms\n" +
           std::to_string(r.params.n) + "," + std::to_string(r.params.k) + "," + std::to_string(r.params.t) + "," +
           std::string(to_string(r.objective)) + "," + std::string(to_string(r.constraint)) + "," +
           (r.left_compressed_only ? "true" : "false") + "," + (r.max_value ? std::to_string(*r.max_value) : "") +
           "," + std::to_string(r.extremal.size()) + "," + std::to_string(r.enumerated) + "," +
           (r.truncated ? "true" : "false") + "," + std::to_string(ms) + "\n";
  }
  ojson j;
  j["tool_version"] = kToolVersion;
  j["params"] = params_json(r.params, {});
  j["objective"] = to_string(r.objective);
  j["constraint"] = to_string(r.constraint);
  j["left_compressed_only"] = r.left_compressed_only;
  j["max_value"] = r.max_value ? ojson(*r.max_value) : ojson(nullptr);
  j["classes"] = r.extremal.size();
  ojson w = ojson::array();
  for (const Family& f : r.extremal) w.push_back(emit_family(f));
  j["extremal"] = w;
  j["enumerated"] = r.enumerated;
  j["truncated"] = r.truncated;
  j["elapsed_ms"] = ms;
  return dump(j);
}

void write_atomic(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw Error(ErrorKind::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot rename into " + path.string());
  }
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::filesystem::path cache_dir() {
  if (const char* d = std::getenv("EKR2_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "ekr2";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "ekr2";
  return std::filesystem::temp_directory_path() / "ekr2-cache";
}

}  // namespace ekr2
