#pragma once

// Reference evaluations used by the unit and acceptance tests. These are
// written from the textbook formulas, in a different algebraic arrangement
// than the library, and in long double where it matters.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

struct CaccInputs {
  double v = 0.0;
  double v_front = 0.0;
  double a_front = 0.0;
  double v_leader = 0.0;
  double a_leader = 0.0;
  double gap = 0.0;
};

struct CaccGainSet {
  double gap_des = 5.0;
  double c1 = 0.5;
  double xi = 1.0;
  double omega_n = 1.26;
};

// Expanded form: the two relative-speed terms are regrouped into
// -2 xi wn (v - vf) + c1 wn (xi + sqrt(xi^2 - 1)) (vl - vf).
inline double cacc(const CaccInputs& in, const CaccGainSet& g) {
  using ld = long double;
  const ld wn = g.omega_n;
  const ld root = std::sqrt(static_cast<ld>(g.xi) * g.xi - 1.0L);
  const ld feedforward = (1.0L - g.c1) * static_cast<ld>(in.a_front) + static_cast<ld>(g.c1) * in.a_leader;
  const ld damping = -2.0L * g.xi * wn * (static_cast<ld>(in.v) - in.v_front);
  const ld leader_term = static_cast<ld>(g.c1) * wn * (g.xi + root) *
                         (static_cast<ld>(in.v_leader) - in.v_front);
  const ld spacing = wn * wn * (static_cast<ld>(in.gap) - g.gap_des);
  return static_cast<double>(feedforward + damping + leader_term + spacing);
}

// Constant time-headway law, written as gap error and speed error over T_h.
inline double acc(double v, double gap, double v_front, double headway, double lambda) {
  using ld = long double;
  const ld spacing = static_cast<ld>(lambda) * (static_cast<ld>(gap) - static_cast<ld>(headway) * v);
  const ld closing = static_cast<ld>(v_front) - v;
  return static_cast<double>((spacing + closing) / headway);
}

inline double pathloss_los(double d3d, double fc) {
  return static_cast<double>(28.0L + 22.0L * std::log10(static_cast<long double>(d3d)) +
                             20.0L * std::log10(static_cast<long double>(fc)));
}

inline double pathloss_nlos_raw(double d3d, double fc, double h_ue) {
  return static_cast<double>(13.54L + 39.08L * std::log10(static_cast<long double>(d3d)) +
                             20.0L * std::log10(static_cast<long double>(fc)) - 0.6L * (h_ue - 1.5L));
}

inline double pathloss(double d3d, double fc, bool los, double h_ue = 1.5) {
  const double l = pathloss_los(d3d, fc);
  if (los) return l;
  const double n = pathloss_nlos_raw(d3d, fc, h_ue);
  return n > l ? n : l;
}

// Logistic waterfall: probability of a failed block.
inline double block_error(double snr, double gamma0, double gamma_step, int mcs, double k) {
  const long double x = static_cast<long double>(k) * (snr - (gamma0 + mcs * gamma_step));
  return static_cast<double>(1.0L / (1.0L + std::exp(x)));
}

// Mean number of attempts with per-attempt failure probability `p` and at
// most `max_attempts` attempts, by enumerating every success/failure pattern
// of length `max_attempts` and reading off where the first success falls.
inline double mean_attempts_enumerated(double p, int max_attempts) {
  long double mean = 0.0L;
  const std::uint32_t patterns = 1u << max_attempts;
  for (std::uint32_t bits = 0; bits < patterns; ++bits) {
    long double prob = 1.0L;
    int attempts = max_attempts;
    bool seen_success = false;
    for (int i = 0; i < max_attempts; ++i) {
      const bool fail = (bits >> i) & 1u;
      prob *= fail ? p : (1.0L - p);
      if (!fail && !seen_success) {
        attempts = i + 1;
        seen_success = true;
      }
    }
    mean += prob * attempts;
  }
  return static_cast<double>(mean);
}

struct DelaySample {
  double t = 0.0;
  double delay = 0.0;
};

// Brute-force reading of the fallback rule: returns whether each sample
// leaves the vehicle in CACC. Entering ACC needs one sample above `high`;
// leaving it needs an unbroken run of samples below `low`, started after
// the entry, spanning at least `window` seconds.
inline std::vector<bool> fallback_reference(const std::vector<DelaySample>& samples, double high,
                                            double low, double window) {
  std::vector<bool> cacc(samples.size());
  bool in_cacc = true;
  std::size_t entered = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (in_cacc) {
      if (samples[i].delay > high) {
        in_cacc = false;
        entered = i;
      }
    } else {
      std::optional<std::size_t> run_start;
      for (std::size_t j = i + 1; j-- > entered + 1;) {
        if (samples[j].delay < low) {
          run_start = j;
        } else {
          break;
        }
      }
      if (run_start && samples[i].t - samples[*run_start].t >= window - 1e-9) in_cacc = true;
    }
    cacc[i] = in_cacc;
  }
  return cacc;
}

// Small helper around a fixed-seed engine for hand-rolled generators.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline double rel_error(double got, double want) {
  const double scale = std::fabs(want) > 0.0 ? std::fabs(want) : 1.0;
  return std::fabs(got - want) / scale;
}

}  // namespace oracle
