#include "branchtrace/dyncompose.hpp"

#include <bit>

#include "branchtrace/errors.hpp"

namespace branchtrace::dyncompose {

void round_f(Words& w) {
  w[0] += w[1];
  w[3] = std::rotl(w[3] ^ w[0], 13);
  w[2] += w[3];
  w[1] = std::rotl(w[1] ^ w[2], 29);
}

void round_g(Words& w) {
  w[0] ^= kRoundGConstant;
  w[1] += w[3];
  w[2] = std::rotl(w[2] ^ w[1], 7);
  w[3] = std::rotl(w[3] + w[0], 41);
}

Words load_words(std::span<const std::uint8_t, 32> bytes) {
  Words w{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t b = 0; b < 8; ++b) {
      w[i] |= static_cast<std::uint64_t>(bytes[i * 8 + b]) << (8 * b);
    }
  }
  return w;
}

Digest store_words(const Words& w) {
  Digest out{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t b = 0; b < 8; ++b) {
      out[i * 8 + b] = static_cast<std::uint8_t>(w[i] >> (8 * b));
    }
  }
  return out;
}

CompositionState CompositionState::init(std::span<const std::uint8_t> key) {
  if (key.size() != kKeyBytes) {
    throw KeyLengthError("dyncompose: key must be 32 bytes, got " + std::to_string(key.size()));
  }
  return CompositionState(load_words(key.first<32>()));
}

bool selects_round_g(const Words& w) { return ((w[0] ^ w[3]) & 1U) != 0; }

void CompositionState::select_round() {
  if (!selects_round_g(words_)) {
    round_f(words_);
    trace_.push_back(BranchSymbol::L);
  } else {
    round_g(words_);
    trace_.push_back(BranchSymbol::R);
  }
}

void CompositionState::absorb(std::span<const std::uint8_t> block) {
  if (block.size() != kBlockBytes) {
    throw BlockLengthError("dyncompose: block must be 32 bytes, got " +
                           std::to_string(block.size()));
  }
  const Words in = load_words(block.first<32>());
  for (std::size_t i = 0; i < 4; ++i) {
    words_[i] ^= in[i];
  }
  for (std::size_t r = 0; r < kRoundsPerBlock; ++r) {
    select_round();
  }
  absorbed_bytes_ += kBlockBytes;
}

Digest CompositionState::squeeze() {
  for (std::size_t r = 0; r < kRoundsPerBlock; ++r) {
    select_round();
  }
  return store_words(words_);
}

std::vector<std::uint8_t> pad_message(std::span<const std::uint8_t> message) {
  std::vector<std::uint8_t> padded(message.begin(), message.end());
  padded.push_back(0x80);
  while (padded.size() % kBlockBytes != 0) {
    padded.push_back(0);
  }
  // 128-bit little-endian bit length, split into two 64-bit halves.
  const std::uint64_t bits_lo = static_cast<std::uint64_t>(message.size()) << 3;
  const std::uint64_t bits_hi = static_cast<std::uint64_t>(message.size()) >> 61;
  padded.resize(padded.size() + kBlockBytes, 0);
  for (std::size_t b = 0; b < 8; ++b) {
    padded[padded.size() - 16 + b] = static_cast<std::uint8_t>(bits_lo >> (8 * b));
    padded[padded.size() - 8 + b] = static_cast<std::uint8_t>(bits_hi >> (8 * b));
  }
  return padded;
}

DigestResult digest(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message) {
  CompositionState state = CompositionState::init(key);
  const std::vector<std::uint8_t> padded = pad_message(message);
  for (std::size_t off = 0; off < padded.size(); off += kBlockBytes) {
    state.absorb(std::span(padded).subspan(off, kBlockBytes));
  }
  return DigestResult{store_words(state.words()), state.trace()};
}

Digest replay_digest(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message,
                     const BranchTrace& schedule) {
  if (key.size() != kKeyBytes) {
    throw KeyLengthError("dyncompose: key must be 32 bytes, got " + std::to_string(key.size()));
  }
  const std::vector<std::uint8_t> padded = pad_message(message);
  const std::size_t blocks = padded.size() / kBlockBytes;
  if (schedule.size() != blocks * kRoundsPerBlock) {
    throw DomainError("replay_digest: schedule has " + std::to_string(schedule.size()) +
                      " rounds, message needs " + std::to_string(blocks * kRoundsPerBlock));
  }
  Words w = load_words(key.first<32>());
  auto next_round = schedule.begin();
  for (std::size_t b = 0; b < blocks; ++b) {
    const Words in = load_words(std::span(padded).subspan(b * kBlockBytes).first<32>());
    for (std::size_t i = 0; i < 4; ++i) {
      w[i] ^= in[i];
    }
    for (std::size_t r = 0; r < kRoundsPerBlock; ++r, ++next_round) {
      if (*next_round == BranchSymbol::L) {
        round_f(w);
      } else {
        round_g(w);
      }
    }
  }
  return store_words(w);
}

}  // namespace branchtrace::dyncompose
