#include "ekr2/constructions.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace ekr2 {

namespace {

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<std::string_view, E>, N>& table, std::string_view name) {
  for (const auto& [key, value] : table)
    if (key == name) return value;
  return std::nullopt;
}

template <class E, std::size_t N>
std::string_view name_of(const std::array<std::pair<std::string_view, E>, N>& table, E value) {
  for (const auto& [key, v] : table)
    if (v == value) return key;
  return "?";
}

constexpr std::array<std::pair<std::string_view, Construction>, 5> kConstructions{{
    {"star", Construction::Star},
    {"a", Construction::A},
    {"h", Construction::H},
    {"fs", Construction::Fs},
    {"complement", Construction::Complement},
}};

constexpr std::array<std::pair<std::string_view, ClosedForm>, 10> kClosedForms{{
    {"thm13_bound", ClosedForm::Thm13Bound},
    {"thm14_bound", ClosedForm::Thm14Bound},
    {"hm_bound", ClosedForm::HmBound},
    {"eq3_star_co2", ClosedForm::Eq3StarCo2},
    {"eq4_a_co2", ClosedForm::Eq4ACo2},
    {"bey_rhs", ClosedForm::BeyRhs},
    {"lem31v_delta", ClosedForm::Lem31vDelta},
    {"lem42c_delta", ClosedForm::Lem42cDelta},
    {"lem51_delta", ClosedForm::Lem51Delta},
    {"n0_threshold", ClosedForm::N0Threshold},
}};

constexpr std::array<std::pair<std::string_view, InequalityId>, 3> kInequalities{{
    {"lem41", InequalityId::Lem41},
    {"lem42", InequalityId::Lem42},
    {"lem43", InequalityId::Lem43},
}};

std::vector<Mask> filter_ksets(const Params& p, auto pred) {
  std::vector<Mask> out;
  for (Mask m : all_ksets(p.n, p.k))
    if (pred(m)) out.push_back(m);
  return out;
}

int as_int(std::int64_t v, std::string_view name) {
  if (v < -1000000 || v > 1000000) throw Error(ErrorKind::DomainError, std::string(name) + " out of range");
  return static_cast<int>(v);
}

}  // namespace

std::optional<Construction> parse_construction(std::string_view name) { return lookup(kConstructions, name); }
std::string_view to_string(Construction c) { return name_of(kConstructions, c); }
std::optional<ClosedForm> parse_closed_form(std::string_view name) { return lookup(kClosedForms, name); }
std::string_view to_string(ClosedForm id) { return name_of(kClosedForms, id); }
std::optional<InequalityId> parse_inequality(std::string_view name) { return lookup(kInequalities, name); }
std::string_view to_string(InequalityId id) { return name_of(kInequalities, id); }

Family ladder_generators(const Params& params, int s) {
  params.validate();
  const int t = params.t;
  if (s < t + 1 || s > params.k + 1 || s > params.n)
    throw Error(ErrorKind::BadLadderIndex, "ladder index must lie in [t+1, k+1]");
  std::vector<Mask> g;
  for (int l = t + 1; l <= s; ++l) g.push_back(full_mask(t) | bit(l));
  for (int l = 1; l <= t; ++l) g.push_back(full_mask(s) & ~bit(l));
  return Family::general(params.n, std::move(g));
}

GenSetInfo ladder_info(const Params& params, int s) {
  return describe_generators(ladder_generators(params, s), s);
}

Family construct(Construction kind, const Params& params, std::optional<int> s, const Family* base) {
  if (kind == Construction::Complement) {
    if (base == nullptr) throw Error(ErrorKind::MissingBase, "complement needs a base family");
    const Mask all = full_mask(base->n());
    std::vector<Mask> out;
    for (Mask m : *base) out.push_back(all & ~m);
    if (base->empty()) return Family(base->n(), base->uniformity() ? std::optional<int>(base->n() - base->k()) : std::nullopt);
    return Family::general(base->n(), std::move(out));
  }
  params.validate();
  const int t = params.t, k = params.k;
  switch (kind) {
    case Construction::Star: {
      const Mask core = full_mask(t);
      return Family::uniform(params.n, k, filter_ksets(params, [&](Mask m) { return (m & core) == core; }));
    }
    case Construction::A: {
      const Mask head = full_mask(std::min(t + 2, params.n));
      return Family::uniform(params.n, k, filter_ksets(params, [&](Mask m) { return popcount(m & head) >= t + 1; }));
    }
    case Construction::H: {
      if (params.n < k + 1) throw Error(ErrorKind::InvalidParams, "h needs n >= k+1");
      const Mask core = full_mask(t);
      const Mask mid = interval_mask(t + 1, k + 1);
      std::vector<Mask> out = filter_ksets(params, [&](Mask m) { return (m & core) == core && (m & mid) != 0; });
      for (int i = 1; i <= t; ++i) out.push_back(full_mask(k + 1) & ~bit(i));
      return Family::uniform(params.n, k, std::move(out));
    }
    case Construction::Fs: {
      if (!s) throw Error(ErrorKind::BadLadderIndex, "fs needs a ladder index s");
      return expand(ladder_generators(params, *s), params);
    }
    case Construction::Complement:
      break;
  }
  throw Error(ErrorKind::InvalidParams, "unknown construction");
}

std::int64_t require_arg(const ArgRecord& args, std::string_view name) {
  auto it = args.find(name);
  if (it == args.end()) throw Error(ErrorKind::MissingArg, std::string(name));
  return it->second;
}

std::int64_t thm13_bound(int n, int k, int t) {
  return mul_checked(binom(n - t, k - t), add_checked(t, mul_checked(n - k + 1, k - t)));
}

Rational thm14_bound(int n, int k, int t) {
  const std::int64_t twice = mul_checked(mul_checked(k - t, n - k), binom(n - t, k - t));
  Rational r(twice, 2);
  if (!r.is_integer()) throw Error(ErrorKind::DomainError, "thm14 bound is not integral");
  return r;
}

std::int64_t hm_bound(int n, int k) { return binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1; }

std::int64_t eq3_star_co2(int n, int k, int t) {
  const std::int64_t d = n - k + 1;
  return add_checked(mul_checked(binom(n - t, k - t - 1), mul_checked(d, d)), mul_checked(t, binom(n - t, k - t)));
}

std::int64_t eq4_a_co2(int n, int k, int t) {
  const std::int64_t d = n - k + 1;
  const std::int64_t heavy = add_checked(mul_checked(t + 2, binom(n - t - 2, k - t - 2)), binom(n - t - 2, k - t - 3));
  return add_checked(mul_checked(heavy, mul_checked(d, d)),
                     mul_checked(2 * (t + 2) * (t + 1), binom(n - t - 2, k - t - 1)));
}

Rational bey_rhs(int n, int k, int ell, std::int64_t m) {
  if (ell < 0 || ell > k || k > n) throw Error(ErrorKind::DomainError, "bey needs 0 <= l <= k <= n");
  const std::int64_t den = binom(n - 1, ell);
  if (den == 0) throw Error(ErrorKind::DomainError, "C(n-1, l) vanishes");
  const Rational quad(mul_checked(binom(k, ell), binom(k - 1, ell)), den);
  return quad * Rational(mul_checked(m, m)) +
         Rational(mul_checked(mul_checked(binom(k - 1, ell - 1), binom(n - ell - 1, k - ell)), m));
}

std::int64_t lem51_delta(int n, int k, int t, int s) {
  std::int64_t r = mul_checked(binom(n - s - 1, k - t - 2), binom(n - s - k + t + 1, 2));
  r = add_checked(r, mul_checked(mul_checked(s - t, k - t), binom(n - s - 1, k - t - 1)));
  r = sub_checked(r, mul_checked(t, mul_checked(binom(n - s - 1, k - s), binom(n - k - 1, 2))));
  r = sub_checked(r, mul_checked(binom(t, 2), binom(n - s - 1, k - s + 1)));
  r = sub_checked(r, mul_checked(mul_checked(2 * t, k - s + 1), binom(n - s - 1, k - s + 1)));
  return r;
}

std::vector<std::string> closed_form_args(ClosedForm id) {
  switch (id) {
    case ClosedForm::Thm13Bound:
    case ClosedForm::Thm14Bound:
    case ClosedForm::Eq3StarCo2:
    case ClosedForm::Eq4ACo2:
      return {"n", "k", "t"};
    case ClosedForm::HmBound:
      return {"n", "k"};
    case ClosedForm::BeyRhs:
      return {"n", "k", "l", "m"};
    case ClosedForm::Lem31vDelta:
      return {"n", "k", "t", "s", "i", "gi", "gj"};
    case ClosedForm::Lem42cDelta:
      return {"n", "k", "s", "i", "fq", "gi"};
    case ClosedForm::Lem51Delta:
      return {"n", "k", "t", "s"};
    case ClosedForm::N0Threshold:
      return {"k", "t"};
  }
  return {};
}

Rational closed_form(ClosedForm id, const ArgRecord& args) {
  std::map<std::string, int, std::less<>> v;
  for (const auto& name : closed_form_args(id)) {
    const std::int64_t x = require_arg(args, name);
    if (name == "m" || name == "gi" || name == "gj" || name == "fq") {
      if (x < 0) throw Error(ErrorKind::DomainError, name + " must be nonnegative");
      continue;
    }
    v[name] = as_int(x, name);
  }
  auto at = [&](std::string_view name) { return v.find(name)->second; };
  switch (id) {
    case ClosedForm::Thm13Bound:
      return thm13_bound(at("n"), at("k"), at("t"));
    case ClosedForm::Thm14Bound:
      return thm14_bound(at("n"), at("k"), at("t"));
    case ClosedForm::HmBound:
      return hm_bound(at("n"), at("k"));
    case ClosedForm::Eq3StarCo2:
      return eq3_star_co2(at("n"), at("k"), at("t"));
    case ClosedForm::Eq4ACo2:
      return eq4_a_co2(at("n"), at("k"), at("t"));
    case ClosedForm::BeyRhs:
      return bey_rhs(at("n"), at("k"), at("l"), require_arg(args, "m"));
    case ClosedForm::Lem31vDelta: {
      const int n = at("n"), k = at("k"), s = at("s"), i = at("i"), t = at("t");
      return sub_checked(mul_checked(require_arg(args, "gi"), binom(n - s, k - i + 1)),
                         mul_checked(require_arg(args, "gj"), binom(n - s, k + i - s - t)));
    }
    case ClosedForm::Lem42cDelta: {
      const int n = at("n"), k = at("k"), s = at("s"), i = at("i");
      return sub_checked(mul_checked(require_arg(args, "fq"), binom(n - s + 1, k - i + 1)),
                         mul_checked(require_arg(args, "gi"), binom(n - s, k - i)));
    }
    case ClosedForm::Lem51Delta:
      return lem51_delta(at("n"), at("k"), at("t"), at("s"));
    case ClosedForm::N0Threshold:
      return Params{0, at("k"), at("t")}.n0();
  }
  throw Error(ErrorKind::DomainError, "unknown closed form");
}

std::vector<std::string> inequality_args(InequalityId id) {
  switch (id) {
    case InequalityId::Lem41:
      return {"n", "k", "t", "i", "j"};
    case InequalityId::Lem42:
      return {"n", "k", "i", "s"};
    case InequalityId::Lem43:
      return {"n", "k", "i", "t"};
  }
  return {};
}

InequalityResult inequality(InequalityId id, const ArgRecord& args) {
  std::map<std::string, std::int64_t, std::less<>> v;
  for (const auto& name : inequality_args(id)) v[name] = as_int(require_arg(args, name), name);
  auto at = [&](std::string_view name) { return v.find(name)->second; };
  InequalityResult r;
  const std::int64_t n = at("n"), k = at("k");
  switch (id) {
    case InequalityId::Lem41: {
      const std::int64_t t = at("t"), i = at("i"), j = at("j");
      const std::int64_t s = i + j - t;
      r.hypotheses_hold = 2 <= t && t <= k && t <= i && i <= k && t <= j && j <= k && n >= (t + 1) * (k - t + 1);
      r.value = std::min(n - (2 * k + s - 2 * i + 1), n - (2 * k + s - 2 * j + 1));
      r.conclusion_holds = r.value >= 0;
      r.detail = "s=" + std::to_string(s);
      break;
    }
    case InequalityId::Lem42: {
      const std::int64_t i = at("i"), s = at("s");
      const std::int64_t t = 2 * i - s;
      r.hypotheses_hold = 2 <= t && t <= k && t <= i && i <= k && n >= (t + 1) * (k - t + 1);
      r.value = (s - i) * (n - s + 1) - (s - 1) * (k - i + 1);
      r.conclusion_holds = r.value >= 0;
      r.detail = "t=" + std::to_string(t);
      break;
    }
    case InequalityId::Lem43: {
      const std::int64_t i = at("i"), t = at("t");
      const bool excluded = k == t + 1 && i == t + 1;
      r.hypotheses_hold = t >= 2 && k >= i && i > t && !excluded && n >= (t + 1) * (k - t + 1);
      r.value = (n + t - i - k) * (n + i - t - k + 1) * (i - t) - (n + t - i - k) * (i - 1) * (k - i) -
                2 * (i - 1) * (i - t) * k;
      r.conclusion_holds = r.value > 0;
      if (excluded) r.detail = "excluded triple (t+1,t+1,t)";
      break;
    }
  }
  return r;
}

}  // namespace ekr2
