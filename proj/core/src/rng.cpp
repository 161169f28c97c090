#include "platoonsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace platoonsim {

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::string label)
    : label_(std::move(label)),
      engine_(splitmix64(splitmix64(master_seed) ^ fnv1a64(label_))) {
  if (label_.empty()) throw std::invalid_argument("rng stream label must be non-empty");
}

std::uint64_t RngStream::next_u64() {
  ++draws_;
  return engine_();
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream RngRegistry::derive(const std::string& label) {
  if (!seen_.insert(label).second) throw DuplicateLabel(label);
  order_.push_back(label);
  return RngStream(seed_, label);
}

RngStream derive_rng(std::uint64_t master_seed, const std::string& label) {
  return RngStream(master_seed, label);
}

}  // namespace platoonsim
