#include "branchtrace/rule30.hpp"

#include <bit>

#include "branchtrace/errors.hpp"
#include "branchtrace/rng.hpp"
#include "branchtrace/simd/kernels.hpp"

namespace branchtrace::rule30 {
namespace {

std::size_t words_for(std::size_t width) { return (width + 63) / 64; }

void check_caps(std::size_t width, std::size_t steps, BoundaryMode mode, bool materialized) {
  if (steps > kMaxSteps) {
    throw ResourceError("rule30: steps exceed 2^20");
  }
  const std::size_t final_width = mode == BoundaryMode::ExpandZero ? width + 2 * steps : width;
  if (final_width > kMaxWidth) {
    throw ResourceError("rule30: width exceeds 2^20 cells");
  }
  if (materialized && (steps + 1) * final_width > kMaxGridCells) {
    throw ResourceError("rule30: grid exceeds 2^32 cells");
  }
}

}  // namespace

Row::Row(std::size_t width) : width_(width), words_(words_for(width), 0) {
  if (width == 0) {
    throw DomainError("rule30: row width must be >= 1");
  }
}

Row Row::from_string(std::string_view cells) {
  Row row(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == '1') {
      row.set(i, true);
    } else if (cells[i] != '0') {
      throw DomainError("rule30: row strings contain only 0 and 1");
    }
  }
  return row;
}

Row Row::single(std::size_t width) {
  Row row(width);
  row.set(width / 2, true);
  return row;
}

void Row::set(std::size_t i, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (v) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

std::size_t Row::count_ones() const {
  std::size_t n = 0;
  for (const std::uint64_t w : words_) {
    n += static_cast<std::size_t>(std::popcount(w));
  }
  return n;
}

std::string Row::to_string() const {
  std::string out(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (get(i)) {
      out[i] = '1';
    }
  }
  return out;
}

void Row::clear_tail() {
  const std::size_t used = width_ % 64;
  if (used != 0) {
    words_.back() &= (std::uint64_t{1} << used) - 1;
  }
}

Row step_row(const Row& row, BoundaryMode mode) {
  const std::size_t w = row.width();
  if (mode == BoundaryMode::Wrap) {
    Row next(w);
    simd::rule30_step(row.words(), next.mutable_words(), row.get(w - 1) ? 1 : 0, 0);
    // The kernel sees white past the last cell; patch in the wrapped neighbour.
    const bool left = row.get(w >= 2 ? w - 2 : 0);
    next.set(w - 1, left ^ (row.get(w - 1) || row.get(0)));
    next.clear_tail();
    return next;
  }

  // Output cell j sits over input cell j - 1: shift everything up by one.
  Row padded(w + 2);
  auto src = row.words();
  auto dst = padded.mutable_words();
  std::uint64_t carry = 0;
  for (std::size_t k = 0; k < src.size(); ++k) {
    dst[k] = (src[k] << 1) | carry;
    carry = src[k] >> 63;
  }
  if (src.size() < dst.size()) {
    dst[src.size()] |= carry;
  }
  Row next(w + 2);
  simd::rule30_step(padded.words(), next.mutable_words(), 0, 0);
  next.clear_tail();
  return next;
}

Grid evolve(const Row& initial, std::size_t steps, BoundaryMode mode) {
  check_caps(initial.width(), steps, mode, true);
  Grid grid;
  grid.mode = mode;
  grid.rows.reserve(steps + 1);
  grid.rows.push_back(initial);
  for (std::size_t t = 0; t < steps; ++t) {
    grid.rows.push_back(step_row(grid.rows.back(), mode));
  }
  return grid;
}

std::size_t center_index(const Row& initial, BoundaryMode mode) {
  const std::size_t w = initial.width();
  if (w % 2 == 0 && mode == BoundaryMode::ExpandZero) {
    throw DomainError("rule30: even-width row has no centre under ExpandZero");
  }
  return w / 2;
}

std::vector<std::uint8_t> center_column(const Row& initial, std::size_t steps,
                                        BoundaryMode mode) {
  const std::size_t c0 = center_index(initial, mode);
  check_caps(initial.width(), steps, mode, false);
  std::vector<std::uint8_t> bits;
  bits.reserve(steps + 1);
  Row row = initial;
  for (std::size_t t = 0;; ++t) {
    const std::size_t c = mode == BoundaryMode::ExpandZero ? c0 + t : c0;
    bits.push_back(row.get(c) ? 1 : 0);
    if (t == steps) {
      break;
    }
    row = step_row(row, mode);
  }
  return bits;
}

Row random_row(std::size_t width, std::uint64_t seed) {
  Row row(width);
  Xorshift64Star rng(seed);
  for (std::size_t i = 0; i < width; ++i) {
    row.set(i, rng.next_bit());
  }
  return row;
}

}  // namespace branchtrace::rule30
