#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace branchtrace::rule30 {

/// Wolfram code of the automaton. The packed kernels implement it as
/// left ^ (center | right); the truth-table tests pin the two together.
inline constexpr unsigned kRuleNumber = 30;

inline constexpr std::size_t kMaxWidth = std::size_t{1} << 20;
inline constexpr std::size_t kMaxSteps = std::size_t{1} << 20;
/// Upper bound on rows * width for a materialized Grid.
inline constexpr std::size_t kMaxGridCells = std::size_t{1} << 32;

/// One generation, 64 cells per word (cell i -> bit i % 64 of word i / 64).
/// Bits past width() are always zero.
class Row {
 public:
  /// All-white row. Throws DomainError for width == 0.
  explicit Row(std::size_t width);

  /// Parses a string of '0'/'1' characters.
  static Row from_string(std::string_view cells);

  /// Single black cell at index width / 2.
  static Row single(std::size_t width = 1);

  std::size_t width() const { return width_; }
  bool get(std::size_t i) const { return ((words_[i / 64] >> (i % 64)) & 1U) != 0; }
  void set(std::size_t i, bool v);

  std::size_t count_ones() const;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  /// Clears the padding bits of the last word.
  void clear_tail();

  friend bool operator==(const Row&, const Row&) = default;

 private:
  std::size_t width_;
  std::vector<std::uint64_t> words_;
};

enum class BoundaryMode {
  Wrap,        // fixed width, cyclic neighbours
  ExpandZero,  // white background; width grows by 2 per step
};

struct Grid {
  std::vector<Row> rows;  // generation 0 first
  BoundaryMode mode = BoundaryMode::ExpandZero;
};

Row step_row(const Row& row, BoundaryMode mode);

/// steps + 1 rows. Throws ResourceError past kMaxSteps, kMaxWidth (final
/// width) or kMaxGridCells.
Grid evolve(const Row& initial, std::size_t steps, BoundaryMode mode);

/// Index treated as the centre of `initial`: width / 2 for odd widths, and
/// for even widths under Wrap (a cyclic lattice has no distinguished cell).
/// Throws DomainError for even widths under ExpandZero.
std::size_t center_index(const Row& initial, BoundaryMode mode);

/// Bit at the initial centre position for generations 0..steps.
std::vector<std::uint8_t> center_column(const Row& initial, std::size_t steps,
                                        BoundaryMode mode);

/// Deterministic pseudorandom row: cell i is the i-th Xorshift64Star bit.
Row random_row(std::size_t width, std::uint64_t seed);

}  // namespace branchtrace::rule30
