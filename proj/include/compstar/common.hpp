#pragma once

// Shared plumbing: error types and deterministic RNG stream derivation.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace compstar {

// Malformed textual input (CLI exit code 2).
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A randomized computation failed to reach a strict majority across trials
// (CLI exit code 3). Callers may retry with more trials.
struct no_majority_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical precondition was violated (CLI exit code 4).
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic per-trial RNG stream: a pure function of the master seed, a
// stream label (operation name + serialized inputs), and the trial index.
// Trials can therefore run in any order, or in parallel, with identical
// results.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream_hash,
                                std::uint64_t trial) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(stream_hash ^ splitmix64(trial)));
  return std::mt19937_64(s);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::string_view stream,
                                std::uint64_t trial) {
  return make_rng(seed, fnv1a64(stream), trial);
}

}  // namespace compstar
