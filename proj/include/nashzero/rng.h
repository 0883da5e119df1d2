#ifndef NASHZERO_RNG_H_
#define NASHZERO_RNG_H_

#include <cstdint>
#include <limits>
#include <random>

namespace nashzero {

// Identifies one independent random stream of a stochastic run.
struct StreamId {
  std::uint64_t run = 0;
  std::uint64_t iteration = 0;
  std::uint64_t player = 0;
};

// Counter-based SplitMix64 stream. A stream is fully determined by its key,
// and child streams are derived by hashing an index into the key, so
// identical (seed, StreamId) pairs reproduce identical sample sequences no
// matter which thread or in which order they are consumed.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed);
  RngStream(std::uint64_t seed, const StreamId& id);

  // Independent child stream keyed by `index`.
  RngStream Fork(std::uint64_t index) const;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  double StandardNormal() { return normal_(*this); }
  double Uniform(double lo, double hi);

  std::uint64_t key() const { return key_; }

 private:
  struct KeyTag {};
  RngStream(KeyTag, std::uint64_t key) : key_(key), state_(key) {}

  std::uint64_t key_;
  std::uint64_t state_;
  std::normal_distribution<double> normal_;
};

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

}  // namespace nashzero

#endif  // NASHZERO_RNG_H_
