#include "zonelab/random.hpp"

namespace zonelab {

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

double RandomSource::uniform() { return uniform_(engine_); }

double RandomSource::normal() { return normal_(engine_); }

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

}  // namespace zonelab
