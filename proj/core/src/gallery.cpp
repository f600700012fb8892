#include "wshift/gallery.hpp"

#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "wshift/errors.hpp"

namespace wshift {

namespace {

constexpr NodeId kEmpty = NodeStore::kEmpty;
constexpr NodeId kLeaf = NodeStore::kLeaf;

std::size_t json_size(const nlohmann::json& params, const char* key, std::size_t fallback) {
  if (!params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw InputError(std::string("parameter '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace

SubshiftSpec full_shift(std::size_t k) { return {Alphabet(k), SftPresentation{}}; }

SubshiftSpec golden_mean() { return {Alphabet(2), SftPresentation{{Word{1, 1}}}}; }

std::size_t GapParams::m(std::size_t n) const {
  std::size_t value = n < table.size() ? table[n] : (tail == Tail::Identity ? n : tail_value);
  return std::max<std::size_t>(value, 1);
}

GapParams GapParams::from_json(const nlohmann::json& params) {
  GapParams p;
  const auto rule = params.value("rule", std::string("n"));
  if (rule == "n") {
    p.tail = Tail::Identity;
  } else if (rule == "constant") {
    p.tail = Tail::Constant;
    p.tail_value = json_size(params, "value", 1);
    if (p.tail_value == 0) throw InputError("gap constant must be positive");
  } else {
    throw InputError("unknown gap rule '" + rule + "' (expected n or constant)");
  }
  if (params.contains("table")) {
    for (const auto& v : params.at("table")) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw InputError("gap table entries must be positive");
      p.table.push_back(v.get<std::size_t>());
    }
  }
  for (std::size_t n = 1; n <= p.table.size(); ++n)
    if (p.m(n) < p.m(n - 1)) throw InputError("gap schedule must be nondecreasing");
  return p;
}

nlohmann::json GapParams::to_json() const {
  nlohmann::json out;
  if (tail == Tail::Identity) {
    out["rule"] = "n";
  } else {
    out["rule"] = "constant";
    out["value"] = tail_value;
  }
  if (!table.empty()) out["table"] = table;
  return out;
}

SubshiftSpec gap_shift(const GapParams& params) {
  return {Alphabet(2), BuiltinPresentation{"gap", params.to_json()}};
}

bool gap_member(const GapParams& params, std::span<const Symbol> w) {
  std::size_t ones = 0;
  std::size_t min_gap = std::numeric_limits<std::size_t>::max();
  std::size_t last = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 1) return false;
    if (w[i] == 0) continue;
    if (ones > 0) min_gap = std::min(min_gap, i - last);
    last = i;
    ++ones;
  }
  return ones <= 1 || min_gap >= params.m(ones);
}

GapCountReport gap_count_check(const GapParams& params, std::size_t n) {
  GapCountReport report;
  report.n = n;
  report.m_n = params.m(n);
  const PredicateSource source(2, [params](std::span<const Symbol> w) { return gap_member(params, w); });
  report.count = source.level(n).count();
  const auto exponent = n == 0 ? 0 : n / report.m_n;
  if (exponent >= 64) throw BudgetExceeded("gap bound exponent too large");
  report.bound = std::uint64_t{1} << exponent;
  report.pass = report.count >= report.bound;
  return report;
}

LanguageTrie hereditary_closure(const LanguageTrie& binary) {
  if (binary.alphabet_size() != 2) throw InputError("hereditary_closure needs a binary trie");
  auto& store = *binary.store();
  std::unordered_map<std::uint64_t, NodeId> union_memo;
  std::function<NodeId(NodeId, NodeId)> merge = [&](NodeId x, NodeId y) -> NodeId {
    if (x == kEmpty) return y;
    if (y == kEmpty || x == y) return x;
    if (x > y) std::swap(x, y);
    const auto key = (std::uint64_t{x} << 32) | y;
    if (auto it = union_memo.find(key); it != union_memo.end()) return it->second;
    const NodeId children[2] = {merge(store.child(x, 0), store.child(y, 0)), merge(store.child(x, 1), store.child(y, 1))};
    const auto id = store.make(children);
    union_memo.emplace(key, id);
    return id;
  };
  // closure(0.A + 1.B) = 0.closure(A + B) + 1.closure(B)
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> close = [&](NodeId node) -> NodeId {
    if (node == kEmpty || node == kLeaf) return node;
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    const auto zero = store.child(node, 0);
    const auto one = store.child(node, 1);
    const NodeId children[2] = {close(merge(zero, one)), close(one)};
    const auto id = store.make(children);
    memo.emplace(node, id);
    return id;
  };
  return LanguageTrie(binary.store(), close(binary.root()), binary.depth());
}

ToeplitzParams ToeplitzParams::from_json(const nlohmann::json& params) {
  ToeplitzParams p;
  p.base = json_size(params, "base", 4);
  // Forced-zero density bound base/(base-1)^2 must stay below 1.
  if (p.base < 3) throw InputError("toeplitz base must be at least 3");
  return p;
}

bool toeplitz_forced_zero(const ToeplitzParams& params, std::uint64_t i) {
  std::uint64_t period = 1;
  for (std::uint64_t level = 1;; ++level) {
    if (period > std::numeric_limits<std::uint64_t>::max() / params.base) return false;
    period *= params.base;
    // Past this level the block [period - level, period) lies beyond i.
    if (period > i + level) return false;
    if (i % period >= period - level) return true;
  }
}

Word toeplitz_point_window(const ToeplitzParams& params, std::uint64_t t, std::size_t n) {
  Word w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = toeplitz_forced_zero(params, t + j) ? 0 : 1;
  return w;
}

std::uint64_t prop3_min_horizon(const ToeplitzParams& params, std::size_t n) {
  std::uint64_t power = 1;
  while (power < n) power *= params.base;
  return power * params.base;
}

std::uint64_t prop3_default_horizon(const ToeplitzParams& params, std::size_t n) {
  return prop3_min_horizon(params, n) * params.base;
}

LanguageTrie prop3_shift(const ToeplitzParams& params, std::size_t n, std::uint64_t horizon, StorePtr store) {
  if (horizon < prop3_min_horizon(params, n))
    throw InputError("prop3 horizon " + std::to_string(horizon) + " below the minimum " +
                     std::to_string(prop3_min_horizon(params, n)));
  if (!store) store = make_store(2);
  std::vector<Word> windows;
  for (std::uint64_t t = 0; t + n <= horizon; ++t) windows.push_back(toeplitz_point_window(params, t, n));
  return hereditary_closure(LanguageTrie::from_words(std::move(store), n, std::move(windows)));
}

bool Prop3Source::member(std::span<const Symbol> w) const { return level(w.size()).contains(w); }

LanguageTrie Prop3Source::level(std::size_t n, const StorePtr& store) const {
  return prop3_shift(params_, n, horizon_.value_or(prop3_default_horizon(params_, n)), store);
}

std::optional<SubshiftSpec> finite_memory_form(const SubshiftSpec& spec) {
  const auto* builtin = std::get_if<BuiltinPresentation>(&spec.presentation);
  if (!builtin) return spec;
  const auto k = spec.alphabet.size();
  if (builtin->name == "full") {
    if (json_size(builtin->params, "k", k) != k) throw InputError("full shift parameter k disagrees with alphabet_size");
    return full_shift(k);
  }
  if (builtin->name == "golden") {
    if (k != 2) throw InputError("golden mean shift is binary");
    return golden_mean();
  }
  if (builtin->name == "gap") {
    if (k != 2) throw InputError("gap shift is binary");
    const auto params = GapParams::from_json(builtin->params);
    if (params.tail != GapParams::Tail::Constant) return std::nullopt;
    for (std::size_t j = 2; j < params.table.size(); ++j)
      if (params.m(j) != params.tail_value) return std::nullopt;
    // Constant separation c: forbid 1 0^g 1 for g < c - 1.
    SftPresentation sft;
    for (std::size_t g = 0; g + 1 < params.tail_value; ++g) {
      Word w(g + 2, 0);
      w.front() = w.back() = 1;
      sft.forbidden.push_back(std::move(w));
    }
    return SubshiftSpec{Alphabet(2), std::move(sft)};
  }
  if (builtin->name == "prop3") return std::nullopt;
  throw InputError("unknown builtin '" + builtin->name + "'");
}

std::shared_ptr<const LanguageSource> open_source(const SubshiftSpec& spec) {
  if (auto finite = finite_memory_form(spec)) return std::make_shared<AutomatonSource>(compile(*finite));
  const auto& builtin = std::get<BuiltinPresentation>(spec.presentation);
  if (builtin.name == "gap") {
    const auto params = GapParams::from_json(builtin.params);
    return std::make_shared<PredicateSource>(2, [params](std::span<const Symbol> w) { return gap_member(params, w); });
  }
  if (builtin.name == "prop3") {
    if (spec.alphabet.size() != 2) throw InputError("prop3 shift is binary");
    std::optional<std::uint64_t> horizon;
    if (builtin.params.contains("horizon")) horizon = json_size(builtin.params, "horizon", 0);
    return std::make_shared<Prop3Source>(ToeplitzParams::from_json(builtin.params), horizon);
  }
  throw InputError("unknown builtin '" + builtin.name + "'");
}

}  // namespace wshift
