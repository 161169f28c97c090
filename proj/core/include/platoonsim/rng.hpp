#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace platoonsim {

/// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text);

/// SplitMix64 finaliser; used to decorrelate (seed, label) pairs.
std::uint64_t splitmix64(std::uint64_t x);

/// Named deterministic random stream. The state depends only on the master
/// seed, the label and the number of draws taken so far. Distributions are
/// implemented here rather than through <random> distributions so that the
/// sequence is identical across standard library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string label);

  const std::string& label() const { return label_; }
  std::uint64_t draws() const { return draws_; }

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; consumes two uniforms per call.
  double normal();

 private:
  std::string label_;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

class DuplicateLabel : public std::runtime_error {
 public:
  explicit DuplicateLabel(const std::string& label)
      : std::runtime_error("rng stream label derived twice: " + label) {}
};

/// Hands out streams for one run and rejects label reuse.
class RngRegistry {
 public:
  explicit RngRegistry(std::uint64_t master_seed) : seed_(master_seed) {}

  RngStream derive(const std::string& label);

  std::uint64_t master_seed() const { return seed_; }
  const std::vector<std::string>& labels() const { return order_; }

 private:
  std::uint64_t seed_;
  std::set<std::string> seen_;
  std::vector<std::string> order_;
};

/// Stateless form of the registry lookup.
RngStream derive_rng(std::uint64_t master_seed, const std::string& label);

}  // namespace platoonsim
