#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "wshift/language.hpp"
#include "wshift/subshift_spec.hpp"

namespace wshift {

SubshiftSpec full_shift(std::size_t k);
/// Binary words without "11".
SubshiftSpec golden_mean();

/// Separation schedule m_n for the gap shift: explicit leading entries,
/// then a tail rule (m_n = n, or a constant). Values below 1 are read as 1.
struct GapParams {
  enum class Tail { Identity, Constant };

  std::vector<std::size_t> table;
  Tail tail = Tail::Identity;
  std::size_t tail_value = 1;

  std::size_t m(std::size_t n) const;

  static GapParams identity() { return {}; }
  static GapParams constant(std::size_t value) { return {{}, Tail::Constant, value}; }
  static GapParams from_json(const nlohmann::json& params);
  nlohmann::json to_json() const;
};

/// Binary words whose ones, j of them, are pairwise at distance >= m_j.
/// Only consecutive gaps in the whole word need checking: for a factor with
/// j' <= j ones, m_{j'} <= m_j because the schedule is nondecreasing. Every
/// member extends by 0^inf, so the rule needs no trimming.
SubshiftSpec gap_shift(const GapParams& params);
bool gap_member(const GapParams& params, std::span<const Symbol> w);

struct GapCountReport {
  std::size_t n = 0;
  std::size_t m_n = 0;
  std::uint64_t count = 0;
  std::uint64_t bound = 0;  // 2^floor(n / m_n)
  bool pass = false;
};
GapCountReport gap_count_check(const GapParams& params, std::size_t n);

/// Smallest set containing `binary` closed under turning a 1 into a 0.
LanguageTrie hereditary_closure(const LanguageTrie& binary);

/// Toeplitz-style point x over {0,1}: x_i = 0 iff for some level k >= 1 the
/// position falls in the last k slots of its period, i mod base^k >= base^k - k.
/// Level k contributes a zero block of length k with period base^k; the
/// forced-zero density is at most sum_k k/base^k = base/(base-1)^2.
struct ToeplitzParams {
  std::uint64_t base = 4;
  static ToeplitzParams from_json(const nlohmann::json& params);
};

bool toeplitz_forced_zero(const ToeplitzParams& params, std::uint64_t i);
Word toeplitz_point_window(const ToeplitzParams& params, std::uint64_t t, std::size_t n);

/// Smallest admissible window scan horizon: base^(ceil(log_base n) + 1).
std::uint64_t prop3_min_horizon(const ToeplitzParams& params, std::size_t n);
/// Default horizon: one more level than the minimum.
std::uint64_t prop3_default_horizon(const ToeplitzParams& params, std::size_t n);

/// Hereditary closure of the length-n windows of the Toeplitz point that
/// start in [0, horizon - n]. An under-approximation of the true level.
LanguageTrie prop3_shift(const ToeplitzParams& params, std::size_t n, std::uint64_t horizon, StorePtr store = nullptr);

class Prop3Source final : public LanguageSource {
 public:
  explicit Prop3Source(ToeplitzParams params, std::optional<std::uint64_t> horizon = std::nullopt)
      : params_(params), horizon_(horizon) {}

  std::size_t alphabet_size() const override { return 2; }
  bool member(std::span<const Symbol> w) const override;
  LanguageTrie level(std::size_t n, const StorePtr& store) const override;
  using LanguageSource::level;
  bool under_approximation() const override { return true; }

 private:
  ToeplitzParams params_;
  std::optional<std::uint64_t> horizon_;
};

/// SFT form of a builtin when one exists (full, golden, constant gap).
std::optional<SubshiftSpec> finite_memory_form(const SubshiftSpec& spec);

/// Runtime handle for any spec: compiled automaton, membership rule or
/// window scan.
std::shared_ptr<const LanguageSource> open_source(const SubshiftSpec& spec);

}  // namespace wshift
