#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ledgerlab {

// 256-bit digest of the collision-resistant hash backing every link in the
// ledger. Fixed width; hex rendering round-trips losslessly.
struct Digest {
    static constexpr std::size_t kSize = 32;

    std::array<std::uint8_t, kSize> bytes{};

    static Digest zero() { return Digest{}; }

    bool is_zero() const {
        for (auto b : bytes)
            if (b != 0) return false;
        return true;
    }

    std::string hex() const;
    static Digest from_hex(const std::string& hex);

    friend bool operator==(const Digest&, const Digest&) = default;
};

// SHA-256 over an arbitrary byte span.
Digest sha256(std::span<const std::uint8_t> data);

// Big-endian 64-bit append; the primitive every canonical encoding is built from.
void put_u64be(std::vector<std::uint8_t>& out, std::uint64_t v);

void put_bytes(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> data);

// Length-prefixed field: u64be(len) followed by the raw bytes.
void put_len_prefixed(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> data);
void put_len_prefixed(std::vector<std::uint8_t>& out, const std::string& s);

std::uint64_t read_u64be(std::span<const std::uint8_t> in, std::size_t offset);

}  // namespace ledgerlab
