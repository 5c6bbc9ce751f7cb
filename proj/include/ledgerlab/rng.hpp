#pragma once

#include <cstdint>
#include <random>

#include "ledgerlab/commitment.hpp"

namespace ledgerlab {

// Seeded simulation RNG. Only raw engine draws are used (never standard
// distributions, whose outputs vary across standard library implementations),
// so identical seeds give identical runs on every platform.
class SimRng {
  public:
    explicit SimRng(std::uint64_t seed) : engine_(seed) {}

    bool coin() { return (engine_() & 1u) != 0; }

    // 16 salt bytes from two consecutive draws, big-endian.
    Salt salt() {
        Salt s{};
        for (int half = 0; half < 2; ++half) {
            const std::uint64_t v = engine_();
            for (int i = 0; i < 8; ++i)
                s[static_cast<std::size_t>(half * 8 + i)] =
                    static_cast<std::uint8_t>((v >> (56 - 8 * i)) & 0xFF);
        }
        return s;
    }

    std::uint64_t next() { return engine_(); }

    // Unbiased-enough index draw for test generators; not used by the scheme.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace ledgerlab
