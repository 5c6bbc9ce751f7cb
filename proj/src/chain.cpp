#include "ledgerlab/chain.hpp"

#include <limits>

#include "ledgerlab/errors.hpp"

namespace ledgerlab {

namespace {

// Below this length the OpenMP fork/join overhead dominates; measured on the
// benchmark target, not guessed precisely — the two kernels agree either way.
constexpr std::size_t kParallelThreshold = 512;

// A block is "broken at i" when its recomputed hash disagrees with its own
// stored digest, when its stored back-link is wrong (genesis must point at
// the all-zero digest), or when its successor's stored prev_hash no longer
// matches the recomputed hash. The predecessor convention: tampering block i
// is reported as i.
bool broken_at(const Chain& chain, std::size_t i, const Digest& recomputed) {
    const Block& b = chain.blocks[i];
    if (recomputed != b.digest) return true;
    if (i == 0 && !b.prev_hash.is_zero()) return true;
    if (i + 1 < chain.blocks.size() && chain.blocks[i + 1].prev_hash != recomputed) return true;
    return false;
}

}  // namespace

std::vector<std::uint8_t> canonical_block_encoding(const Block& block) {
    std::vector<std::uint8_t> out;
    std::size_t size = 8 + 8 + Digest::kSize;
    for (const Record& r : block.records) size += 1 + 8 + r.id.size() + 8 + r.payload.size();
    out.reserve(size);

    put_u64be(out, block.index);
    put_u64be(out, static_cast<std::uint64_t>(block.timestamp));
    put_bytes(out, block.prev_hash.bytes);
    for (const Record& r : block.records) encode_record(out, r);
    return out;
}

Digest hash_block(const Block& block) {
    return sha256(canonical_block_encoding(block));
}

Block make_block(std::uint64_t index, Tick timestamp, std::vector<Record> records,
                 Digest prev_hash) {
    Block b;
    b.index = index;
    b.timestamp = timestamp;
    b.records = std::move(records);
    b.prev_hash = prev_hash;
    b.digest = hash_block(b);
    return b;
}

Chain genesis(std::vector<Record> records, Tick timestamp) {
    Chain c;
    c.blocks.push_back(make_block(0, timestamp, std::move(records), Digest::zero()));
    return c;
}

Chain append(const Chain& chain, std::vector<Record> records, Tick timestamp) {
    const TamperReport report = verify_chain(chain);
    if (!report.valid) throw AppendToInvalidChain(*report.first_broken_index);

    Chain next = chain;
    const Digest tip_hash = hash_block(chain.tip());
    next.blocks.push_back(
        make_block(chain.tip().index + 1, timestamp, std::move(records), tip_hash));
    return next;
}

TamperReport verify_chain_serial(const Chain& chain) {
    for (std::size_t i = 0; i < chain.blocks.size(); ++i) {
        if (broken_at(chain, i, hash_block(chain.blocks[i])))
            return TamperReport{false, i};
    }
    return TamperReport{true, std::nullopt};
}

TamperReport verify_chain_parallel(const Chain& chain) {
    const std::int64_t n = static_cast<std::int64_t>(chain.blocks.size());
    std::int64_t first_broken = n;  // sentinel: nothing broken

#pragma omp parallel for schedule(static) reduction(min : first_broken)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (broken_at(chain, idx, hash_block(chain.blocks[idx]))) {
            if (i < first_broken) first_broken = i;
        }
    }

    if (first_broken == n) return TamperReport{true, std::nullopt};
    return TamperReport{false, static_cast<std::uint64_t>(first_broken)};
}

TamperReport verify_chain(const Chain& chain) {
    if (chain.blocks.size() >= kParallelThreshold) return verify_chain_parallel(chain);
    return verify_chain_serial(chain);
}

std::uint64_t payload_size(const Block& block) {
    std::uint64_t total = 0;
    for (const Record& r : block.records) total += r.payload.size();
    return total;
}

Chain tamper(const Chain& chain, std::uint64_t block_index, std::uint64_t byte_offset,
             std::uint8_t new_byte) {
    if (block_index >= chain.blocks.size())
        throw OutOfRange("tamper: block index " + std::to_string(block_index) +
                         " >= chain length " + std::to_string(chain.blocks.size()));

    Chain mutated = chain;
    Block& b = mutated.blocks[block_index];
    std::uint64_t remaining = byte_offset;
    for (Record& r : b.records) {
        if (remaining < r.payload.size()) {
            r.payload[remaining] = new_byte;
            return mutated;
        }
        remaining -= r.payload.size();
    }
    throw OutOfRange("tamper: byte offset " + std::to_string(byte_offset) +
                     " >= payload size " + std::to_string(payload_size(b)) + " of block " +
                     std::to_string(block_index));
}

ChainBuilder::ChainBuilder(std::vector<Record> genesis_records, Tick timestamp)
    : chain_(genesis(std::move(genesis_records), timestamp)) {}

void ChainBuilder::add_block(std::vector<Record> records, Tick timestamp) {
    // Valid by construction: prev_hash is the freshly computed tip hash.
    const Block& tip = chain_.tip();
    chain_.blocks.push_back(
        make_block(tip.index + 1, timestamp, std::move(records), tip.digest));
}

}  // namespace ledgerlab
