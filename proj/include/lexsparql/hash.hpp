#ifndef LEXSPARQL_HASH_HPP
#define LEXSPARQL_HASH_HPP

#include <cstdint>
#include <string_view>

namespace lexsparql {

// Platform-stable hashing. All sampling in the toolkit is keyed through these
// so that outputs do not depend on std::hash or on input order.

constexpr std::uint64_t fnv1a(std::string_view s,
                              std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}

inline std::uint64_t keyed_hash(std::uint64_t seed, std::string_view key) {
  return mix(splitmix64(seed), fnv1a(key));
}

inline std::uint64_t keyed_hash(std::uint64_t seed, std::string_view key,
                                std::uint64_t index) {
  return mix(keyed_hash(seed, key), index);
}

}  // namespace lexsparql

#endif
