#include "cyclical/rng.hpp"

namespace cyclical {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_key(RngSpec const &spec)
{
  std::uint64_t tag_hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : spec.purpose_tag) {
    tag_hash = (tag_hash ^ c) * 0x100000001b3ULL;
  }
  std::uint64_t key = splitmix64(spec.seed);
  key = splitmix64(key ^ spec.replicate);
  key = splitmix64(key ^ tag_hash);
  return key;
}

Rng::Rng(RngSpec const &spec)
  : Rng(derive_stream_key(spec))
{
}

Rng::Rng(std::uint64_t key)
{
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t bound)
{
  auto       x = engine_();
  auto       m = static_cast<unsigned __int128>(x) * bound;
  auto       low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t const threshold = -bound % bound;
    while (low < threshold) {
      x = engine_();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

} // namespace cyclical
