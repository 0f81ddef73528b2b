#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "colstate/fsm/machine.hpp"

namespace colstate::fsm {

// Number of distinct unifilar transition structures on p states over a
// two-symbol alphabet: per state, a single edge (symbol x target) or one
// edge per symbol (target x target), i.e. (2p + p^2)^p in total.
// Throws when the count does not fit in 64 bits (p >= 10).
std::uint64_t unifilar_structure_count(int p);

// Uniform draw over the structure space above; the two-edge split
// probability is uniform on (0, 1). Initial distribution is uniform.
Machine sample_unifilar(int p, std::uint64_t seed);
Machine sample_unifilar(int p, std::mt19937_64& engine);

// Deterministic structure fingerprint used by uniformity tests: the
// per-state structure index in [0, 2p + p^2), most significant state
// first.
std::uint64_t structure_key(const Machine& m);

// Markov emission of `length` symbols from the machine's initial
// distribution; reproducible given the seed.
std::string simulate(const Machine& m, long length, std::uint64_t seed);

}  // namespace colstate::fsm
