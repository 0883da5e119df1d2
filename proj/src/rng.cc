#include "nashzero/rng.h"

namespace nashzero {
namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kRootSalt = 0x6a09e667f3bcc908ULL;
}  // namespace

std::uint64_t Mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed)
    : RngStream(KeyTag{}, Mix64(seed ^ kRootSalt)) {}

RngStream::RngStream(std::uint64_t seed, const StreamId& id)
    : RngStream(RngStream(seed).Fork(id.run).Fork(id.iteration).Fork(id.player)) {
}

RngStream RngStream::Fork(std::uint64_t index) const {
  // Two rounds so that (key, index) pairs differing in one bit decorrelate.
  return RngStream(KeyTag{}, Mix64(Mix64(key_ + kGolden) ^ Mix64(index)));
}

RngStream::result_type RngStream::operator()() {
  state_ += kGolden;
  return Mix64(state_);
}

double RngStream::Uniform(double lo, double hi) {
  // 53 random mantissa bits in [0, 1).
  const double u = static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace nashzero
