#pragma once

#include <cstdint>

#include "ledgerlab/chain.hpp"
#include "ledgerlab/digest.hpp"

namespace ledgerlab {

// Data-parallel sweep kernels over immutable chains and encodings. Each kernel
// has a serial reference and an OpenMP variant that must agree bit-for-bit;
// per-trial state is derived from (seed, trial index) so results do not depend
// on the thread schedule.

struct CollisionScanResult {
    std::uint64_t trials = 0;
    std::uint64_t collisions = 0;  // flipped encoding hashed to the base digest

    friend bool operator==(const CollisionScanResult&, const CollisionScanResult&) = default;
};

// Flips one random bit of the block's canonical encoding per trial and counts
// digest collisions against the unflipped digest.
CollisionScanResult collision_scan_serial(const Block& base, std::uint64_t trials,
                                          std::uint64_t seed);
CollisionScanResult collision_scan_parallel(const Block& base, std::uint64_t trials,
                                            std::uint64_t seed);
CollisionScanResult collision_scan(const Block& base, std::uint64_t trials, std::uint64_t seed);

struct TamperSweepResult {
    std::uint64_t mutations = 0;      // single-byte changes actually applied (new != old)
    std::uint64_t undetected = 0;     // verify_chain still reported valid
    std::uint64_t misattributed = 0;  // detected, but first_broken_index != mutated block

    bool clean() const { return undetected == 0 && misattributed == 0; }

    friend bool operator==(const TamperSweepResult&, const TamperSweepResult&) = default;
};

// Exhaustive search over every (block, payload byte offset, replacement value)
// triple: after each effective mutation the chain must verify invalid with
// first_broken_index at the mutated block.
TamperSweepResult tamper_sweep_serial(const Chain& chain);
TamperSweepResult tamper_sweep_parallel(const Chain& chain);
TamperSweepResult tamper_sweep(const Chain& chain);

// Deterministic 64-bit mixer used to derive per-trial randomness.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ledgerlab
