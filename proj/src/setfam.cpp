#include "ekr2/setfam.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "ekr2/checked.hpp"

namespace ekr2 {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::MalformedSet: return "MalformedSet";
    case ErrorKind::DuplicateSet: return "DuplicateSet";
    case ErrorKind::NonUniformFamily: return "NonUniformFamily";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::NotTIntersecting: return "NotTIntersecting";
    case ErrorKind::BadEll: return "BadEll";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::BadVertex: return "BadVertex";
    case ErrorKind::BadPair: return "BadPair";
    case ErrorKind::OversizedGenerator: return "OversizedGenerator";
    case ErrorKind::BadSlice: return "BadSlice";
    case ErrorKind::EmptyStarLayer: return "EmptyStarLayer";
    case ErrorKind::EqualLayers: return "EqualLayers";
    case ErrorKind::EmptyFq: return "EmptyFq";
    case ErrorKind::SurgeryPrecondition: return "SurgeryPrecondition";
    case ErrorKind::BadLadderIndex: return "BadLadderIndex";
    case ErrorKind::MissingBase: return "MissingBase";
    case ErrorKind::MissingArg: return "MissingArg";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Truncated: return "Truncated";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::BadClaimArgs: return "BadClaimArgs";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

void Params::validate() const {
  if (!(1 <= t && t <= k && k <= n && n <= kMaxUniverse)) {
    throw Error(ErrorKind::InvalidParams, "need 1 <= t <= k <= n <= 64, got " + to_string(*this));
  }
}

std::string to_string(const Params& p) {
  return "(n=" + std::to_string(p.n) + ",k=" + std::to_string(p.k) + ",t=" + std::to_string(p.t) + ")";
}

VertexSet::VertexSet(Mask mask, int n) : mask_(mask), n_(static_cast<std::uint8_t>(n)) {
  if (n < 0 || n > kMaxUniverse) throw Error(ErrorKind::InvalidParams, "universe size out of range");
  if ((mask & ~full_mask(n)) != 0) throw Error(ErrorKind::BadVertex, "element outside [1,n]");
  size_ = static_cast<std::uint8_t>(popcount(mask));
}

VertexSet VertexSet::from_elements(std::span<const int> elements, int n) {
  for (int v : elements) {
    if (v < 1 || v > n) throw Error(ErrorKind::BadVertex, "element " + std::to_string(v) + " outside [1,n]");
  }
  return VertexSet(mask_of(elements), n);
}

std::vector<int> VertexSet::elements() const { return elements_of(mask_); }

std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

Mask mask_of(std::span<const int> elements) {
  Mask m = 0;
  for (int v : elements) m |= bit(v);
  return m;
}

std::string format_set(Mask m) {
  std::string out = "{";
  bool first = true;
  for (int v : elements_of(m)) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

Family::Family(int n, std::optional<int> k) : n_(n), k_(k) {
  if (n < 0 || n > kMaxUniverse) throw Error(ErrorKind::InvalidParams, "universe size out of range");
  if (k && (*k < 0 || *k > n)) throw Error(ErrorKind::InvalidParams, "uniformity out of range");
}

namespace {

void sort_unique(std::vector<Mask>& masks) {
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
}

void check_in_universe(const std::vector<Mask>& masks, int n) {
  const Mask outside = ~full_mask(n);
  for (Mask m : masks) {
    if ((m & outside) != 0) throw Error(ErrorKind::BadVertex, "member " + format_set(m) + " leaves [1,n]");
  }
}

}  // namespace

Family Family::uniform(int n, int k, std::vector<Mask> masks) {
  Family f(n, k);
  check_in_universe(masks, n);
  for (Mask m : masks) {
    if (popcount(m) != k) throw Error(ErrorKind::SizeMismatch, "member " + format_set(m) + " is not a k-set");
  }
  sort_unique(masks);
  f.masks_ = std::move(masks);
  return f;
}

Family Family::general(int n, std::vector<Mask> masks) {
  Family f(n);
  check_in_universe(masks, n);
  sort_unique(masks);
  if (!masks.empty()) {
    const int k = popcount(masks.front());
    if (std::all_of(masks.begin(), masks.end(), [k](Mask m) { return popcount(m) == k; })) f.k_ = k;
  }
  f.masks_ = std::move(masks);
  return f;
}

int Family::k() const {
  if (!k_) throw Error(ErrorKind::NonUniformFamily, "family has no common member size");
  return *k_;
}

bool Family::contains(Mask m) const { return std::binary_search(masks_.begin(), masks_.end(), m); }

Mask Family::common_intersection() const {
  Mask acc = full_mask(n_);
  for (Mask m : masks_) acc &= m;
  return acc;
}

int require_uniform(const Family& f) { return f.k(); }

// ---------------------------------------------------------------------------
// file format

namespace {

bool parse_int(std::string_view s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Family parse_family(std::string_view text) {
  std::optional<int> n;
  std::optional<int> k;
  std::vector<Mask> masks;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no);

    if (!n) {
      for (std::string_view tok : tokens) {
        int value = 0;
        if (tok.starts_with("n=") && !n && parse_int(tok.substr(2), value)) {
          n = value;
        } else if (tok.starts_with("k=") && !k && parse_int(tok.substr(2), value)) {
          k = value;
        } else {
          throw Error(ErrorKind::MalformedHeader, where + ": unexpected token '" + std::string(tok) + "'");
        }
      }
      if (!n || *n < 1 || *n > kMaxUniverse) throw Error(ErrorKind::MalformedHeader, where + ": need n in [1,64]");
      if (k && (*k < 0 || *k > *n)) throw Error(ErrorKind::MalformedHeader, where + ": need k in [0,n]");
      continue;
    }

    Mask m = 0;
    if (!(tokens.size() == 1 && tokens[0] == "{}")) {
      int prev = 0;
      for (std::string_view tok : tokens) {
        int v = 0;
        if (!parse_int(tok, v)) throw Error(ErrorKind::MalformedSet, where + ": not an integer: " + std::string(tok));
        if (v < 1 || v > *n) throw Error(ErrorKind::MalformedSet, where + ": element out of [1,n]");
        if (v <= prev) throw Error(ErrorKind::MalformedSet, where + ": elements must be strictly increasing");
        m |= bit(v);
        prev = v;
      }
    }
    if (k && popcount(m) != *k) throw Error(ErrorKind::MalformedSet, where + ": set size differs from k");
    masks.push_back(m);
  }
  if (!n) throw Error(ErrorKind::MalformedHeader, "missing header");

  std::vector<Mask> sorted = masks;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw Error(ErrorKind::DuplicateSet, "set " + format_set(*dup) + " listed twice");
  }
  if (k) return Family::uniform(*n, *k, std::move(masks));
  return Family::general(*n, std::move(masks));
}

std::string emit_family(const Family& f) {
  std::string out = "n=" + std::to_string(f.n());
  if (f.uniformity()) out += " k=" + std::to_string(*f.uniformity());
  out += '\n';
  for (Mask m : f) {
    if (m == 0) {
      out += "{}\n";
      continue;
    }
    bool first = true;
    for (int v : elements_of(m)) {
      if (!first) out += ' ';
      out += std::to_string(v);
      first = false;
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// intersection properties

namespace {

bool meets_all(Mask candidate, std::span<const Mask> members, int t) {
  return std::all_of(members.begin(), members.end(),
                     [&](Mask m) { return popcount(candidate & m) >= t; });
}

bool pairwise_meet(std::span<const Mask> masks, int t) {
  for (std::size_t a = 0; a < masks.size(); ++a) {
    for (std::size_t b = a + 1; b < masks.size(); ++b) {
      if (popcount(masks[a] & masks[b]) < t) return false;
    }
  }
  return true;
}

void require_intersecting(const Family& f, int t) {
  if (!is_t_intersecting(f, t)) throw Error(ErrorKind::NotTIntersecting, "family is not t-intersecting");
}

constexpr std::int64_t kKsetBudget = 50'000'000;

}  // namespace

std::vector<Mask> all_ksets(int n, int k) {
  if (k < 0 || k > n || n > kMaxUniverse) return {};
  if (binom(n, k) > kKsetBudget) throw Error(ErrorKind::BudgetExceeded, "too many k-subsets to list");
  std::vector<Mask> out;
  out.reserve(static_cast<std::size_t>(binom(n, k)));
  if (k == 0) return {0};
  const Mask limit = full_mask(n);
  Mask m = full_mask(k);
  while (true) {
    out.push_back(m);
    // Gosper's hack: next larger mask with the same popcount.
    const Mask c = m & -m;
    const Mask r = m + c;
    if (r == 0 || (r & ~limit) != 0) break;
    m = (((r ^ m) >> 2) / c) | r;
    if ((m & ~limit) != 0) break;
  }
  return out;
}

bool is_t_intersecting(const Family& f, int t) {
  require_uniform(f);
  return pairwise_meet(f.masks(), t);
}

TrivialityResult is_trivial(const Family& f, int t) {
  require_uniform(f);
  if (f.empty()) throw Error(ErrorKind::EmptyFamily, "triviality needs members");
  const Mask common = f.common_intersection();
  if (popcount(common) < t) return {};
  Mask witness = 0;
  Mask rest = common;
  for (int i = 0; i < t; ++i) {
    const Mask low = rest & -rest;
    witness |= low;
    rest ^= low;
  }
  return {true, witness};
}

bool is_maximal_t_intersecting(const Family& f, int t) {
  const int k = require_uniform(f);
  require_intersecting(f, t);
  for (Mask c : all_ksets(f.n(), k)) {
    if (!f.contains(c) && meets_all(c, f.masks(), t)) return false;
  }
  return true;
}

Family maximal_closure(const Family& f, int t) {
  const int k = require_uniform(f);
  require_intersecting(f, t);
  std::vector<Mask> members(f.begin(), f.end());
  // Candidates go in lexicographic order of their element lists. A candidate
  // rejected once stays rejected as the family grows, so one pass equals the
  // restart-after-insert sweep.
  std::vector<Mask> order = all_ksets(f.n(), k);
  std::sort(order.begin(), order.end(), [](Mask a, Mask b) { return elements_of(a) < elements_of(b); });
  for (Mask c : order) {
    if (std::find(members.begin(), members.end(), c) != members.end()) continue;
    if (meets_all(c, members, t)) members.push_back(c);
  }
  return Family::uniform(f.n(), k, std::move(members));
}

// ---------------------------------------------------------------------------
// relabeling

Mask permute_mask(Mask m, std::span<const int> perm) {
  Mask out = 0;
  while (m != 0) {
    const int v = std::countr_zero(m);
    out |= bit(perm[static_cast<std::size_t>(v)]);
    m &= m - 1;
  }
  return out;
}

Family permute(const Family& f, std::span<const int> perm) {
  std::vector<Mask> out;
  out.reserve(f.size());
  for (Mask m : f) out.push_back(permute_mask(m, perm));
  Family g = f.uniformity() ? Family::uniform(f.n(), *f.uniformity(), std::move(out))
                            : Family::general(f.n(), std::move(out));
  return g;
}

namespace {

constexpr std::int64_t kCanonicalBudget = 20'000'000;

struct CanonicalSearch {
  std::span<const Mask> members;
  int n = 0;
  // label slots of each color class, in the order the class receives labels
  std::vector<std::vector<int>> class_vertices;
  std::vector<std::vector<int>> class_groups;  // twin-group id per slot, permuted in place
  std::vector<std::vector<int>> group_members;  // vertices of each twin group, ascending
  std::vector<int> class_first_label;
  std::array<int, kMaxUniverse> label{};
  std::vector<Mask> scratch;
  std::vector<Mask> best;
  bool have_best = false;

  void evaluate() {
    scratch.clear();
    for (Mask m : members) scratch.push_back(permute_mask(m, std::span<const int>(label.data(), n)));
    std::sort(scratch.begin(), scratch.end());
    if (!have_best || scratch < best) {
      best = scratch;
      have_best = true;
    }
  }

  void assign_class(std::size_t c) {
    // group slots receive labels in order; members of a twin group take the
    // group's slots in ascending vertex order
    std::vector<std::size_t> cursor(group_members.size(), 0);
    const auto& groups = class_groups[c];
    for (std::size_t slot = 0; slot < groups.size(); ++slot) {
      const int g = groups[slot];
      const int v = group_members[static_cast<std::size_t>(g)][cursor[static_cast<std::size_t>(g)]++];
      label[static_cast<std::size_t>(v)] = class_first_label[c] + static_cast<int>(slot);
    }
  }

  void recurse(std::size_t c) {
    if (c == class_groups.size()) {
      evaluate();
      return;
    }
    auto& groups = class_groups[c];
    std::sort(groups.begin(), groups.end());
    do {
      assign_class(c);
      recurse(c + 1);
    } while (std::next_permutation(groups.begin(), groups.end()));
  }
};

}  // namespace

Family canonical_form(const Family& f) {
  const int n = f.n();
  CanonicalSearch search;
  search.members = f.masks();
  search.n = n;

  // Vertex invariant: degree, then the sorted multiset of pair codegrees.
  // Isomorphism-invariant, so ordering labels by it keeps the result a
  // function of the orbit.
  std::vector<std::vector<int>> columns(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < f.size(); ++r) {
    for (int v : elements_of(f.masks()[r])) columns[static_cast<std::size_t>(v - 1)].push_back(static_cast<int>(r));
  }
  using Invariant = std::pair<int, std::vector<int>>;
  std::vector<Invariant> inv(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    std::vector<int> codeg;
    for (int w = 0; w < n; ++w) {
      if (w == v) continue;
      int c = 0;
      for (Mask m : f) c += ((m >> v) & (m >> w) & 1U) != 0 ? 1 : 0;
      codeg.push_back(c);
    }
    std::sort(codeg.rbegin(), codeg.rend());
    inv[static_cast<std::size_t>(v)] = {static_cast<int>(columns[static_cast<std::size_t>(v)].size()), std::move(codeg)};
  }
  std::map<Invariant, std::vector<int>, std::greater<>> classes;
  for (int v = 0; v < n; ++v) classes[inv[static_cast<std::size_t>(v)]].push_back(v);

  // Twins (same incidence column) are interchangeable: only distinct
  // arrangements of twin groups over a class's slots are tried.
  std::map<std::vector<int>, int> group_of_column;
  int label = 1;
  std::int64_t arrangements = 1;
  for (auto& [key, verts] : classes) {
    std::vector<int> groups;
    std::map<int, int> multiplicity;
    for (int v : verts) {
      auto [it, inserted] = group_of_column.try_emplace(columns[static_cast<std::size_t>(v)],
                                                        static_cast<int>(search.group_members.size()));
      if (inserted) search.group_members.emplace_back();
      search.group_members[static_cast<std::size_t>(it->second)].push_back(v);
      groups.push_back(it->second);
      ++multiplicity[it->second];
    }
    // multinomial count of distinct arrangements
    std::int64_t count = 1;
    int placed = 0;
    for (auto [g, mult] : multiplicity) {
      placed += mult;
      count = mul_checked(count, binom(placed, mult));
      if (count > kCanonicalBudget) break;
    }
    if (count > kCanonicalBudget) throw Error(ErrorKind::BudgetExceeded, "canonical form search space too large");
    arrangements = mul_checked(arrangements, count);
    if (arrangements > kCanonicalBudget) {
      throw Error(ErrorKind::BudgetExceeded, "canonical form search space too large");
    }
    search.class_vertices.push_back(verts);
    search.class_groups.push_back(std::move(groups));
    search.class_first_label.push_back(label);
    label += static_cast<int>(verts.size());
  }
  search.recurse(0);

  if (f.uniformity()) return Family::uniform(n, *f.uniformity(), std::move(search.best));
  return Family::general(n, std::move(search.best));
}

bool isomorphic(const Family& a, const Family& b) {
  if (a.n() != b.n() || a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace ekr2
