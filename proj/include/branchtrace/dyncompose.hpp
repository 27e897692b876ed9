#pragma once

// Toy keyed digest whose round function is chosen per round by the state
// itself. Two deliberately simple ARX rounds, f and g, are composed in an
// order that only the input determines; the resulting L/R schedule is
// returned with every digest. NOT a cryptographic hash: no security claim of
// any kind is made for this construction.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "branchtrace/collatz.hpp"

namespace branchtrace::dyncompose {

inline constexpr std::size_t kKeyBytes = 32;
inline constexpr std::size_t kBlockBytes = 32;
inline constexpr std::size_t kDigestBytes = 32;
inline constexpr std::size_t kRoundsPerBlock = 16;
inline constexpr std::uint64_t kRoundGConstant = 0xA5A5A5A5A5A5A5A5ULL;

using Words = std::array<std::uint64_t, 4>;
using Digest = std::array<std::uint8_t, kDigestBytes>;

/// w0 += w1; w3 = rotl(w3 ^ w0, 13); w2 += w3; w1 = rotl(w1 ^ w2, 29)
void round_f(Words& w);
/// w0 ^= C; w1 += w3; w2 = rotl(w2 ^ w1, 7); w3 = rotl(w3 + w0, 41)
void round_g(Words& w);

/// Selection bit: lsb(w0 ^ w3). Selecting on w0 alone would force an f
/// after every g, since the g constant is odd.
bool selects_round_g(const Words& w);

/// Little-endian load of four 64-bit words from 32 bytes.
Words load_words(std::span<const std::uint8_t, 32> bytes);
Digest store_words(const Words& w);

class CompositionState {
 public:
  /// Throws KeyLengthError unless key is exactly 32 bytes.
  static CompositionState init(std::span<const std::uint8_t> key);

  /// Applies g (appending R) when selects_round_g(words()), f (appending L)
  /// otherwise.
  void select_round();

  /// XORs a 32-byte block into the words, then runs 16 selected rounds.
  /// Throws BlockLengthError for any other block size.
  void absorb(std::span<const std::uint8_t> block);

  /// Runs 16 selected rounds and returns the serialized words.
  Digest squeeze();

  const Words& words() const { return words_; }
  const BranchTrace& trace() const { return trace_; }
  std::uint64_t absorbed_bytes() const { return absorbed_bytes_; }

 private:
  explicit CompositionState(const Words& w) : words_(w) {}

  Words words_;
  BranchTrace trace_;
  std::uint64_t absorbed_bytes_ = 0;
};

struct DigestResult {
  Digest bytes{};
  BranchTrace trace;  // 16 symbols per absorbed block
};

/// Message padded with 0x80 then zeros to a 32-byte boundary, followed by a
/// length block carrying the message bit length as a little-endian 128-bit
/// integer in bytes [16, 32).
std::vector<std::uint8_t> pad_message(std::span<const std::uint8_t> message);

DigestResult digest(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message);

/// Recomputes the digest applying `schedule` as a forced f/g sequence,
/// ignoring the state-driven selection. Throws DomainError when the schedule
/// length does not match the padded message.
Digest replay_digest(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message,
                     const BranchTrace& schedule);

}  // namespace branchtrace::dyncompose
