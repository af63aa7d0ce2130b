// Counter-based random number streams.
//
// Every random draw in the project comes from a Stream keyed by
// (seed, purpose, index). Streams are independent, cheap to construct, and
// stateless apart from a draw counter, so parallel code can hand one stream
// to each (replicate, bill, cell, ...) and produce output that does not
// depend on worker count or scheduling order.

#pragma once

#include <cstdint>

namespace rollcall::rng {

// Named sub-streams; the enum value is salted into the stream key.
enum class Purpose : std::uint64_t {
  theta_draw = 1,
  bill_draw = 2,
  vote_draw = 3,
  gumbel_draw = 4,
  louis_sample = 5,
  bootstrap_replicate = 6,
  generic = 7,
};

// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Stream {
 public:
  Stream(std::uint64_t seed, Purpose purpose, std::uint64_t index) {
    key_ = mix64(mix64(seed ^ 0x8f1bbcdcbfa53e0bULL) +
                 static_cast<std::uint64_t>(purpose));
    key_ = mix64(key_ + mix64(index));
  }

  std::uint64_t next_u64() { return mix64(key_ + counter_++ * 0xd1342543de82ef95ULL); }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1); safe as argument to log() and the normal quantile.
  double next_open_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_normal();

  bool next_bernoulli(double p) { return next_double() < p; }

  // Gumbel(0, scale), scale > 0.
  double next_gumbel(double scale);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Normal quantile function, Wichura's algorithm AS 241 (PPND16).
double normal_quantile(double p);

}  // namespace rollcall::rng
