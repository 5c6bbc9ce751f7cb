#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ledgerlab/digest.hpp"

namespace ledgerlab {

inline constexpr std::size_t kSaltSize = 16;
using Salt = std::array<std::uint8_t, kSaltSize>;

// Hash commitment to a prediction: H(salt || subject || round || message)
// over the canonical encoding below. Binding and hiding come from the hash.
struct Commitment {
    Digest digest;
    std::string subject;
    std::uint64_t round = 0;

    friend bool operator==(const Commitment&, const Commitment&) = default;
};

struct Reveal {
    std::vector<std::uint8_t> message;
    Salt salt{};
    std::string subject;
    std::uint64_t round = 0;

    friend bool operator==(const Reveal&, const Reveal&) = default;
};

// Canonical commitment preimage: length-prefixed salt, length-prefixed
// subject, round as plain u64be, length-prefixed message.
std::vector<std::uint8_t> commitment_preimage(std::span<const std::uint8_t> message,
                                              std::span<const std::uint8_t> salt,
                                              const std::string& subject, std::uint64_t round);

// Throws BadSaltLength unless salt is exactly 16 bytes.
Commitment commit(std::span<const std::uint8_t> message, std::span<const std::uint8_t> salt,
                  const std::string& subject, std::uint64_t round);

Commitment commit(const std::string& message, const Salt& salt, const std::string& subject,
                  std::uint64_t round);

bool verify_reveal(const Commitment& c, const Reveal& r);

// Wire forms used when commitments and reveals ride the ledger as records.
// A reveal's payload is exactly the commitment preimage, so re-hashing the
// payload reproduces the committed digest.
std::vector<std::uint8_t> encode_commitment(const Commitment& c);
Commitment decode_commitment(std::span<const std::uint8_t> payload);
std::vector<std::uint8_t> encode_reveal(const Reveal& r);
Reveal decode_reveal(std::span<const std::uint8_t> payload);

}  // namespace ledgerlab
