#include "wshift/word.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "wshift/errors.hpp"

namespace wshift {

Alphabet::Alphabet(std::size_t size) : size_(size) {
  if (size == 0) throw InputError("alphabet size must be at least 1");
}

bool Alphabet::contains(std::span<const Symbol> w) const noexcept {
  return std::all_of(w.begin(), w.end(), [this](Symbol s) { return s < size_; });
}

bool BranchingStructure::is_binary() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Symbol s) { return s <= 1; });
}

std::uint64_t BranchingStructure::leaf_count() const {
  std::uint64_t leaves = 1;
  for (Symbol s : entries_) {
    const std::uint64_t factor = std::uint64_t{s} + 1;
    if (leaves > std::numeric_limits<std::uint64_t>::max() / factor)
      throw BudgetExceeded("leaf count of branching structure overflows 64 bits");
    leaves *= factor;
  }
  return leaves;
}

std::vector<std::size_t> BranchingStructure::support() const {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != 0) positions.push_back(i);
  return positions;
}

std::uint64_t word_sum(std::span<const Symbol> w) noexcept {
  std::uint64_t sum = 0;
  for (Symbol s : w) sum += s;
  return sum;
}

Rational density(std::span<const Symbol> w) {
  if (w.empty()) throw InputError("density of the empty word is undefined");
  return Rational(static_cast<std::int64_t>(word_sum(w)), static_cast<std::int64_t>(w.size()));
}

Rational min_prefix_density(std::span<const Symbol> w) {
  if (w.empty()) throw InputError("min prefix density of the empty word is undefined");
  const auto profile = prefix_density_profile(w);
  return *std::min_element(profile.begin(), profile.end());
}

std::vector<Rational> prefix_density_profile(std::span<const Symbol> w) {
  std::vector<Rational> out;
  out.reserve(w.size());
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    sum += w[i];
    out.emplace_back(sum, static_cast<std::int64_t>(i + 1));
  }
  return out;
}

bool is_dominated_by(std::span<const Symbol> z, std::span<const Symbol> b) {
  if (z.size() != b.size()) throw std::invalid_argument("is_dominated_by: length mismatch");
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] > b[i]) return false;
  return true;
}

bool is_dominated_by(const BranchingStructure& z, const BranchingStructure& b) {
  return is_dominated_by(z.view(), b.view());
}

std::string format_word(std::span<const Symbol> w, std::size_t alphabet_size) {
  std::string out;
  const bool compact = alphabet_size <= 10;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out.push_back(',');
    out += std::to_string(w[i]);
  }
  return out;
}

namespace {

Symbol parse_symbol(std::string_view token, std::size_t alphabet_size) {
  Symbol value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end)
    throw InputError("malformed symbol '" + std::string(token) + "'");
  if (value >= alphabet_size)
    throw InputError("symbol " + std::to_string(value) + " out of range for alphabet of size " +
                     std::to_string(alphabet_size));
  return value;
}

}  // namespace

Word parse_word(std::string_view text, std::size_t alphabet_size) {
  Word w;
  if (text.empty()) return w;
  if (alphabet_size <= 10) {
    for (std::size_t i = 0; i < text.size(); ++i) w.push_back(parse_symbol(text.substr(i, 1), alphabet_size));
    return w;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    w.push_back(parse_symbol(text.substr(start, comma - start), alphabet_size));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return w;
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view token, std::string_view whole) {
  std::int64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end)
    throw InputError("malformed rational '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash), text), den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 15) throw InputError("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto int_part = text.substr(0, dot);
    const bool negative = !int_part.empty() && int_part.front() == '-';
    const std::int64_t whole = int_part.empty() || int_part == "-" ? 0 : parse_int(int_part, text);
    const std::int64_t part = frac.empty() ? 0 : parse_int(frac, text);
    if (part < 0) throw InputError("malformed rational '" + std::string(text) + "'");
    const std::int64_t magnitude = (whole < 0 ? -whole : whole) * scale + part;
    return Rational(negative ? -magnitude : magnitude, scale);
  }
  return Rational(parse_int(text, text));
}

double to_double(const Rational& r) noexcept {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::int64_t ceil_times(const Rational& r, std::int64_t n) {
  const Rational product = r * n;
  const auto q = product.numerator() / product.denominator();
  return product.numerator() % product.denominator() == 0 ? q : q + 1;
}

}  // namespace wshift
