#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace wshift {

/// Symbols are small nonnegative integers; an alphabet of size k is {0..k-1}.
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using Rational = boost::rational<std::int64_t>;

class Alphabet {
 public:
  explicit Alphabet(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool contains(Symbol s) const noexcept { return s < size_; }
  bool contains(std::span<const Symbol> w) const noexcept;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::size_t size_;
};

/// A finite branching structure z: z_i extra branches are required at
/// position i. A tree over alphabet A can only realize z_i <= |A|-1.
class BranchingStructure {
 public:
  BranchingStructure() = default;
  explicit BranchingStructure(Word entries) : entries_(std::move(entries)) {}

  const Word& entries() const noexcept { return entries_; }
  std::span<const Symbol> view() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  Symbol operator[](std::size_t i) const { return entries_[i]; }

  bool fits(const Alphabet& alphabet) const noexcept { return alphabet.contains(entries_); }
  bool is_binary() const noexcept;

  /// Number of index words v <= z, i.e. prod(z_i + 1). Throws on overflow.
  std::uint64_t leaf_count() const;

  /// Positions with a nonzero entry, ascending.
  std::vector<std::size_t> support() const;

  friend auto operator<=>(const BranchingStructure&, const BranchingStructure&) = default;

 private:
  Word entries_;
};

std::uint64_t word_sum(std::span<const Symbol> w) noexcept;

/// Exact sum(w)/|w|. Throws InputError on the empty word.
Rational density(std::span<const Symbol> w);

/// Minimum density over the nonempty prefixes of w. Throws on the empty word.
Rational min_prefix_density(std::span<const Symbol> w);

/// Densities of the nonempty prefixes of w, shortest first.
std::vector<Rational> prefix_density_profile(std::span<const Symbol> w);

/// Pointwise z <= b. Throws std::invalid_argument on a length mismatch.
bool is_dominated_by(std::span<const Symbol> z, std::span<const Symbol> b);
bool is_dominated_by(const BranchingStructure& z, const BranchingStructure& b);

/// Text form: digits without separators when the alphabet has at most ten
/// symbols ("10100"), comma separated otherwise ("10,3,0").
std::string format_word(std::span<const Symbol> w, std::size_t alphabet_size);
Word parse_word(std::string_view text, std::size_t alphabet_size);

/// "3", "1/2". Integers are printed without a denominator.
std::string format_rational(const Rational& r);

/// Accepts "p/q", an integer, or a plain decimal such as "0.05".
Rational parse_rational(std::string_view text);

double to_double(const Rational& r) noexcept;

/// ceil(r * n) for nonnegative r.
std::int64_t ceil_times(const Rational& r, std::int64_t n);

}  // namespace wshift
