#include "ekr2/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_set>
#include <utility>

#include "ekr2/checked.hpp"
#include "ekr2/compress.hpp"
#include "ekr2/metrics.hpp"

namespace ekr2 {

std::size_t BitRow::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitRow::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t IntersectionGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency) twice += row.count();
  return twice / 2;
}

IntersectionGraph intersection_graph(const Params& params, std::size_t vertex_budget) {
  params.validate();
  const std::int64_t count = binom(params.n, params.k);
  if (count > static_cast<std::int64_t>(vertex_budget))
    throw Error(ErrorKind::BudgetExceeded, "C(n,k) = " + std::to_string(count) + " exceeds the vertex budget " +
                                               std::to_string(vertex_budget));
  IntersectionGraph g;
  g.params = params;
  g.vertices = all_ksets(params.n, params.k);
  const std::size_t v = g.vertices.size();
  g.adjacency.assign(v, BitRow(v));
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t b = a + 1; b < v; ++b)
      if (popcount(g.vertices[a] & g.vertices[b]) >= params.t) {
        g.adjacency[a].set(b);
        g.adjacency[b].set(a);
      }
  return g;
}

namespace {

// Calls fn(index) for every set bit, ascending.
template <class Fn>
void for_each_bit(const BitRow& row, Fn&& fn) {
  const auto& w = row.words();
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::uint64_t x = w[i];
    while (x != 0) {
      fn(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
}

std::size_t and_count(const BitRow& a, const BitRow& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i)
    c += static_cast<std::size_t>(std::popcount(a.words()[i] & b.words()[i]));
  return c;
}

BitRow and_of(const BitRow& a, const BitRow& b) {
  BitRow r = a;
  for (std::size_t i = 0; i < r.words().size(); ++i) r.words()[i] &= b.words()[i];
  return r;
}

// Tomita pivot: the vertex of P cup X with the most neighbours in P.
std::size_t choose_pivot(const IntersectionGraph& g, const BitRow& p, const BitRow& x) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::size_t best_count = 0;
  auto consider = [&](std::size_t u) {
    const std::size_t c = and_count(p, g.adjacency[u]);
    if (best == std::numeric_limits<std::size_t>::max() || c > best_count) {
      best = u;
      best_count = c;
    }
  };
  for_each_bit(p, consider);
  for_each_bit(x, consider);
  return best;
}

BitRow minus_neighbours(const BitRow& p, const BitRow& nu) {
  BitRow r = p;
  for (std::size_t i = 0; i < r.words().size(); ++i) r.words()[i] &= ~nu.words()[i];
  return r;
}

struct Worker {
  const IntersectionGraph& g;
  const EnumerateOptions& opts;
  std::atomic<std::size_t>& visited;
  std::atomic<bool>& stop;
  std::vector<Family>* out = nullptr;
  std::vector<std::size_t> clique;

  void report() {
    const std::size_t seen = visited.fetch_add(1) + 1;
    if (opts.clique_cap && seen > *opts.clique_cap) {
      stop = true;
      return;
    }
    std::vector<Mask> masks;
    masks.reserve(clique.size());
    for (std::size_t v : clique) masks.push_back(g.vertices[v]);
    Family f = Family::uniform(g.params.n, g.params.k, std::move(masks));
    if (opts.nontrivial_only && is_trivial(f, g.params.t).trivial) return;
    if (opts.left_compressed_only && !is_left_compressed(f)) return;
    out->push_back(opts.dedup_iso ? canonical_form(f) : std::move(f));
  }

  void expand(BitRow p, BitRow x) {
    if (stop) return;
    if (p.none()) {
      if (x.none()) report();
      return;
    }
    const std::size_t u = choose_pivot(g, p, x);
    const BitRow branch = minus_neighbours(p, g.adjacency[u]);
    for_each_bit(branch, [&](std::size_t v) {
      if (stop) return;
      clique.push_back(v);
      expand(and_of(p, g.adjacency[v]), and_of(x, g.adjacency[v]));
      clique.pop_back();
      p.reset(v);
      x.set(v);
    });
  }
};

void sort_unique(std::vector<Family>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Enumeration enumerate_maximal_families(const Params& params, const EnumerateOptions& opts) {
  const IntersectionGraph g = intersection_graph(params, opts.vertex_budget);
  const std::size_t v = g.size();

  BitRow all(v);
  for (std::size_t i = 0; i < v; ++i) all.set(i);
  const BitRow none(v);
  const std::size_t pivot = choose_pivot(g, all, none);
  std::vector<std::size_t> roots;
  for_each_bit(minus_neighbours(all, g.adjacency[pivot]), [&](std::size_t r) { roots.push_back(r); });

  // Branch b owns the cliques containing roots[b] but no earlier root.
  std::vector<std::vector<Family>> per_branch(roots.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> visited{0};
  std::atomic<bool> stop{false};
  auto run = [&] {
    Worker w{g, opts, visited, stop, nullptr, {}};
    for (std::size_t b; (b = next.fetch_add(1)) < roots.size();) {
      if (stop) break;
      BitRow p = all, x(v);
      for (std::size_t a = 0; a < b; ++a) {
        p.reset(roots[a]);
        x.set(roots[a]);
      }
      const BitRow& nb = g.adjacency[roots[b]];
      w.out = &per_branch[b];
      w.clique.assign(1, roots[b]);
      w.expand(and_of(p, nb), and_of(x, nb));
    }
  };
  const int workers = std::max(1, opts.workers);
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  Enumeration e;
  e.truncated = stop.load();
  e.cliques = std::min(visited.load(), opts.clique_cap.value_or(std::numeric_limits<std::size_t>::max()));
  for (auto& part : per_branch)
    for (auto& f : part) e.families.push_back(std::move(f));
  if (opts.dedup_iso) sort_unique(e.families);
  return e;
}

namespace {

constexpr std::array<std::pair<std::string_view, Objective>, 3> kObjectives{{
    {"co2", Objective::Co2},
    {"zeta", Objective::Zeta},
    {"size", Objective::Size},
}};
constexpr std::array<std::pair<std::string_view, Constraint>, 2> kConstraints{{
    {"all", Constraint::All},
    {"nontrivial", Constraint::Nontrivial},
}};

}  // namespace

std::optional<Objective> parse_objective(std::string_view name) {
  for (const auto& [k, v] : kObjectives)
    if (k == name) return v;
  return std::nullopt;
}
std::optional<Constraint> parse_constraint(std::string_view name) {
  for (const auto& [k, v] : kConstraints)
    if (k == name) return v;
  return std::nullopt;
}
std::string_view to_string(Objective o) {
  for (const auto& [k, v] : kObjectives)
    if (v == o) return k;
  return "?";
}
std::string_view to_string(Constraint c) {
  for (const auto& [k, v] : kConstraints)
    if (v == c) return k;
  return "?";
}

std::int64_t evaluate(Objective o, const Family& f) {
  switch (o) {
    case Objective::Co2:
      return co2(f);
    case Objective::Zeta:
      return tight_paths(f);
    case Objective::Size:
      return static_cast<std::int64_t>(f.size());
  }
  return 0;
}

ScanReport extremal_scan(const Params& params, Objective objective, Constraint constraint,
                         const EnumerateOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  EnumerateOptions eo = opts;
  eo.nontrivial_only = eo.nontrivial_only || constraint == Constraint::Nontrivial;
  eo.dedup_iso = false;
  Enumeration e = enumerate_maximal_families(params, eo);

  ScanReport r;
  r.params = params;
  r.objective = objective;
  r.constraint = constraint;
  r.left_compressed_only = opts.left_compressed_only;
  r.enumerated = e.families.size();
  r.truncated = e.truncated;
  r.workers = std::max(1, opts.workers);
  std::vector<const Family*> best;
  for (const Family& f : e.families) {
    const std::int64_t value = evaluate(objective, f);
    if (!r.max_value || value > *r.max_value) {
      r.max_value = value;
      best.clear();
    }
    if (value == *r.max_value) best.push_back(&f);
  }
  for (const Family* f : best) r.extremal.push_back(canonical_form(*f));
  sort_unique(r.extremal);
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::DomainError, "empty range");
  // Outputs below `threshold` would bias the residues.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

Mask Rng::kset(int n, int k) {
  Mask s = 0;
  for (int j = n - k + 1; j <= n; ++j) {
    const int pick = static_cast<int>(below(static_cast<std::uint64_t>(j))) + 1;
    s |= (s & bit(pick)) != 0 ? bit(j) : bit(pick);
  }
  return s;
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[below(static_cast<std::uint64_t>(i) + 1)]);
  return p;
}

namespace {

std::int64_t attempts_for(int n, int k, double density) {
  if (!(density >= 0.0)) throw Error(ErrorKind::DomainError, "density must be nonnegative");
  return std::llround(density * static_cast<double>(binom(n, k)));
}

Family grow(const Params& p, std::uint64_t seed, double density, bool constrained) {
  p.validate();
  Rng rng(seed);
  std::vector<Mask> members;
  std::unordered_set<Mask> present;
  for (std::int64_t a = attempts_for(p.n, p.k, density); a > 0; --a) {
    const Mask m = rng.kset(p.n, p.k);
    if (present.count(m) != 0) continue;
    if (constrained &&
        !std::all_of(members.begin(), members.end(), [&](Mask x) { return popcount(x & m) >= p.t; }))
      continue;
    present.insert(m);
    members.push_back(m);
  }
  return Family::uniform(p.n, p.k, std::move(members));
}

}  // namespace

Family random_t_intersecting(const Params& params, std::uint64_t seed, double density) {
  return grow(params, seed, density, true);
}

Family random_family(int n, int k, std::uint64_t seed, double density) {
  return grow(Params{n, k, 1}, seed, density, false);
}

}  // namespace ekr2
