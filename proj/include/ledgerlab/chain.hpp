#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ledgerlab/digest.hpp"
#include "ledgerlab/record.hpp"

namespace ledgerlab {

using Tick = std::int64_t;  // logical time, not wall-clock; no monotonicity enforced

// One hash-linked block. `digest` caches the block's own hash as computed at
// construction (or as stored in a loaded ledger file); verification recomputes
// it from the canonical encoding, so a mutated block cannot keep its digest.
// The digest and the records' truth labels are not part of the hashed bytes.
struct Block {
    std::uint64_t index = 0;
    Tick timestamp = 0;
    std::vector<Record> records;
    Digest prev_hash;
    Digest digest;

    friend bool operator==(const Block&, const Block&) = default;
};

// Canonical byte encoding: u64be index, u64be timestamp (two's complement),
// raw prev_hash, then each record in order. This is the only input ever hashed.
std::vector<std::uint8_t> canonical_block_encoding(const Block& block);

Digest hash_block(const Block& block);

// Builds a block and fills in its digest.
Block make_block(std::uint64_t index, Tick timestamp, std::vector<Record> records,
                 Digest prev_hash);

struct Chain {
    std::vector<Block> blocks;

    std::size_t length() const { return blocks.size(); }
    const Block& tip() const { return blocks.back(); }

    friend bool operator==(const Chain&, const Chain&) = default;
};

struct TamperReport {
    bool valid = true;
    // Index of the earliest block whose recomputed hash no longer matches its
    // stored digest or its successor's stored prev_hash, or whose own stored
    // linkage is wrong (genesis prev_hash must be all-zero).
    std::optional<std::uint64_t> first_broken_index;
};

Chain genesis(std::vector<Record> records, Tick timestamp);

// Precondition-checked append: verifies the whole chain first and throws
// AppendToInvalidChain when it fails.
Chain append(const Chain& chain, std::vector<Record> records, Tick timestamp);

// Serial reference implementation. Kept as the ground truth the parallel
// kernel is tested against.
TamperReport verify_chain_serial(const Chain& chain);

// OpenMP kernel: per-block recompute with a min-reduction over broken indices.
// Returns exactly what the serial reference returns.
TamperReport verify_chain_parallel(const Chain& chain);

// Dispatches to the parallel kernel above a size threshold, serial below it.
TamperReport verify_chain(const Chain& chain);

// Returns a copy of the chain with exactly one payload byte replaced.
// byte_offset addresses the concatenation of the block's record payloads.
Chain tamper(const Chain& chain, std::uint64_t block_index, std::uint64_t byte_offset,
             std::uint8_t new_byte);

// Total payload bytes of a block (the tamperable surface).
std::uint64_t payload_size(const Block& block);

// Incremental construction that maintains validity without re-verifying the
// prefix on every append; used where chains get long (benchmarks, sweeps).
class ChainBuilder {
  public:
    ChainBuilder(std::vector<Record> genesis_records, Tick timestamp);

    void add_block(std::vector<Record> records, Tick timestamp);

    const Chain& chain() const { return chain_; }
    Chain take() { return std::move(chain_); }

  private:
    Chain chain_;
};

}  // namespace ledgerlab
