#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace cyclical {

/// Names one reproducible random stream. The stream depends only on these
/// three fields, never on thread scheduling or call order.
struct RngSpec
{
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  std::string   purpose_tag;

  RngSpec with(std::uint64_t rep, std::string_view tag) const { return {seed, rep, std::string(tag)}; }
};

/// 64-bit state derived from an RngSpec: splitmix64 over seed, replicate and
/// the FNV-1a hash of the tag.
std::uint64_t derive_stream_key(RngSpec const &spec);

/// mt19937_64 with portable uniform draws (no std::*_distribution, whose
/// output differs between standard libraries).
class Rng
{
public:
  explicit Rng(RngSpec const &spec);
  explicit Rng(std::uint64_t key);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound), bound > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool coin() { return (engine_() >> 63) != 0; }

private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace cyclical
