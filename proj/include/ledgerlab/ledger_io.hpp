#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ledgerlab/chain.hpp"

namespace ledgerlab {

// Ledger file format: JSON Lines, one block per line:
//   {"index":N,"timestamp":N,"prev_hash":"<64 hex>","hash":"<64 hex>",
//    "records":[{"id":"...","kind":"...","payload":"<base64>","truth_label":"..."}]}
// Hashing always uses the canonical byte encoding, never the JSON text. The
// "hash" field is the block's stored digest; lines without it are accepted
// (the digest is then recomputed from the canonical encoding on load).

std::string block_to_jsonl(const Block& block);

// Throws ParseError (with 1-based line number) on malformed input or
// non-contiguous indices.
Chain load_ledger(const std::filesystem::path& path);
Chain parse_ledger(const std::string& text);

// Write-temp-then-rename; throws IoError on failure.
void save_ledger(const Chain& chain, const std::filesystem::path& path);

// Atomic whole-file write used for every artifact this library emits.
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

std::string base64_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> base64_decode(const std::string& text);

}  // namespace ledgerlab
