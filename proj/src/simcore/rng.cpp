#include "credsim/simcore/rng.hpp"

#include <stdexcept>

namespace credsim {
namespace {

constexpr std::uint64_t splitmix_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  // Length is folded in so that label boundaries are unambiguous.
  h ^= static_cast<std::uint64_t>(s.size());
  h *= 0x100000001b3ULL;
  return h;
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

std::uint64_t path_key(std::uint64_t root, const std::vector<std::string>& path) noexcept {
  std::uint64_t key = splitmix_mix(root + 0x9e3779b97f4a7c15ULL);
  for (const auto& label : path) {
    key = splitmix_mix(key ^ fnv1a(label));
  }
  return key;
}

}  // namespace

RngStream::RngStream(std::uint64_t root_seed, std::vector<std::string> path)
    : root_seed_(root_seed), path_(std::move(path)) {
  seed_state(path_key(root_seed_, path_));
}

void RngStream::seed_state(std::uint64_t key) noexcept {
  for (auto& word : state_) {
    key += 0x9e3779b97f4a7c15ULL;
    word = splitmix_mix(key);
  }
}

RngStream RngStream::derive(std::string_view label) const {
  auto path = path_;
  path.emplace_back(label);
  return RngStream(root_seed_, std::move(path));
}

RngStream RngStream::derive(std::uint64_t index) const { return derive(std::to_string(index)); }

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform01() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("RngStream::uniform_below: bound must be positive");
  // Lemire's nearly-divisionless method.
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

bool RngStream::bernoulli(double p) noexcept {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01() < p;
}

std::vector<std::uint32_t> shuffled_indices(std::uint32_t n, RngStream& rng) {
  std::vector<std::uint32_t> idx(n);
  for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
  rng.shuffle(std::span(idx));
  return idx;
}

}  // namespace credsim
