#include "ledgerlab/kernels.hpp"

#include <vector>

#include "ledgerlab/errors.hpp"

namespace ledgerlab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

namespace {

// One collision trial: flip the bit chosen by (seed, trial) and compare
// digests. The scratch buffer is caller-owned so hot loops reuse capacity.
bool collision_trial(const std::vector<std::uint8_t>& base_encoding, const Digest& base_digest,
                     std::uint64_t seed, std::uint64_t trial,
                     std::vector<std::uint8_t>& scratch) {
    const std::uint64_t bit_count = base_encoding.size() * 8;
    const std::uint64_t bit = splitmix64(seed ^ splitmix64(trial)) % bit_count;

    scratch = base_encoding;
    scratch[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    return sha256(scratch) == base_digest;
}

}  // namespace

CollisionScanResult collision_scan_serial(const Block& base, std::uint64_t trials,
                                          std::uint64_t seed) {
    const std::vector<std::uint8_t> encoding = canonical_block_encoding(base);
    const Digest base_digest = sha256(encoding);

    CollisionScanResult result{trials, 0};
    std::vector<std::uint8_t> scratch;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (collision_trial(encoding, base_digest, seed, t, scratch)) ++result.collisions;
    }
    return result;
}

CollisionScanResult collision_scan_parallel(const Block& base, std::uint64_t trials,
                                            std::uint64_t seed) {
    const std::vector<std::uint8_t> encoding = canonical_block_encoding(base);
    const Digest base_digest = sha256(encoding);

    std::uint64_t collisions = 0;
    const std::int64_t n = static_cast<std::int64_t>(trials);

#pragma omp parallel reduction(+ : collisions)
    {
        std::vector<std::uint8_t> scratch;
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < n; ++t) {
            if (collision_trial(encoding, base_digest, seed, static_cast<std::uint64_t>(t),
                                scratch))
                ++collisions;
        }
    }
    return CollisionScanResult{trials, collisions};
}

CollisionScanResult collision_scan(const Block& base, std::uint64_t trials, std::uint64_t seed) {
    if (trials >= 2048) return collision_scan_parallel(base, trials, seed);
    return collision_scan_serial(base, trials, seed);
}

namespace {

struct MutationSite {
    std::uint64_t block_index;
    std::uint64_t byte_offset;
};

std::vector<MutationSite> enumerate_sites(const Chain& chain) {
    std::vector<MutationSite> sites;
    for (std::uint64_t b = 0; b < chain.blocks.size(); ++b) {
        const std::uint64_t bytes = payload_size(chain.blocks[b]);
        for (std::uint64_t o = 0; o < bytes; ++o) sites.push_back({b, o});
    }
    return sites;
}

std::uint8_t payload_byte_at(const Block& block, std::uint64_t offset) {
    for (const Record& r : block.records) {
        if (offset < r.payload.size()) return r.payload[offset];
        offset -= r.payload.size();
    }
    throw OutOfRange("payload offset out of range");
}

// All 255 effective replacement values at one site; counts detection failures.
void sweep_site(const Chain& chain, const MutationSite& site, TamperSweepResult& acc) {
    const std::uint8_t old_byte = payload_byte_at(chain.blocks[site.block_index], site.byte_offset);
    for (int v = 0; v < 256; ++v) {
        const auto new_byte = static_cast<std::uint8_t>(v);
        if (new_byte == old_byte) continue;
        ++acc.mutations;

        const Chain mutated = tamper(chain, site.block_index, site.byte_offset, new_byte);
        const TamperReport report = verify_chain_serial(mutated);
        if (report.valid) {
            ++acc.undetected;
        } else if (*report.first_broken_index != site.block_index) {
            ++acc.misattributed;
        }
    }
}

}  // namespace

TamperSweepResult tamper_sweep_serial(const Chain& chain) {
    TamperSweepResult result;
    for (const MutationSite& site : enumerate_sites(chain)) sweep_site(chain, site, result);
    return result;
}

TamperSweepResult tamper_sweep_parallel(const Chain& chain) {
    const std::vector<MutationSite> sites = enumerate_sites(chain);
    const std::int64_t n = static_cast<std::int64_t>(sites.size());

    std::uint64_t mutations = 0;
    std::uint64_t undetected = 0;
    std::uint64_t misattributed = 0;

#pragma omp parallel for schedule(dynamic) \
    reduction(+ : mutations, undetected, misattributed)
    for (std::int64_t i = 0; i < n; ++i) {
        TamperSweepResult local;
        sweep_site(chain, sites[static_cast<std::size_t>(i)], local);
        mutations += local.mutations;
        undetected += local.undetected;
        misattributed += local.misattributed;
    }
    return TamperSweepResult{mutations, undetected, misattributed};
}

TamperSweepResult tamper_sweep(const Chain& chain) {
    return tamper_sweep_parallel(chain);
}

}  // namespace ledgerlab
