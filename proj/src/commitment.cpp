#include "ledgerlab/commitment.hpp"

#include <algorithm>

#include "ledgerlab/errors.hpp"

namespace ledgerlab {

std::vector<std::uint8_t> commitment_preimage(std::span<const std::uint8_t> message,
                                              std::span<const std::uint8_t> salt,
                                              const std::string& subject, std::uint64_t round) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + salt.size() + 8 + subject.size() + 8 + 8 + message.size());
    put_len_prefixed(out, salt);
    put_len_prefixed(out, subject);
    put_u64be(out, round);
    put_len_prefixed(out, message);
    return out;
}

Commitment commit(std::span<const std::uint8_t> message, std::span<const std::uint8_t> salt,
                  const std::string& subject, std::uint64_t round) {
    if (salt.size() != kSaltSize) throw BadSaltLength(salt.size());
    Commitment c;
    c.digest = sha256(commitment_preimage(message, salt, subject, round));
    c.subject = subject;
    c.round = round;
    return c;
}

Commitment commit(const std::string& message, const Salt& salt, const std::string& subject,
                  std::uint64_t round) {
    const std::vector<std::uint8_t> msg(message.begin(), message.end());
    return commit(std::span<const std::uint8_t>(msg), std::span<const std::uint8_t>(salt),
                  subject, round);
}

bool verify_reveal(const Commitment& c, const Reveal& r) {
    if (r.subject != c.subject || r.round != c.round) return false;
    const Commitment recomputed =
        commit(std::span<const std::uint8_t>(r.message), std::span<const std::uint8_t>(r.salt),
               r.subject, r.round);
    return recomputed.digest == c.digest;
}

std::vector<std::uint8_t> encode_commitment(const Commitment& c) {
    std::vector<std::uint8_t> out;
    out.reserve(Digest::kSize + 8 + c.subject.size() + 8);
    put_bytes(out, c.digest.bytes);
    put_len_prefixed(out, c.subject);
    put_u64be(out, c.round);
    return out;
}

Commitment decode_commitment(std::span<const std::uint8_t> payload) {
    Commitment c;
    if (payload.size() < Digest::kSize) throw OutOfRange("commitment payload too short");
    std::copy_n(payload.begin(), Digest::kSize, c.digest.bytes.begin());
    std::size_t pos = Digest::kSize;

    const std::uint64_t subject_len = read_u64be(payload, pos);
    pos += 8;
    if (pos + subject_len + 8 != payload.size())
        throw OutOfRange("commitment payload has a bad subject length");
    c.subject.assign(payload.begin() + pos, payload.begin() + pos + subject_len);
    pos += subject_len;
    c.round = read_u64be(payload, pos);
    return c;
}

std::vector<std::uint8_t> encode_reveal(const Reveal& r) {
    return commitment_preimage(r.message, r.salt, r.subject, r.round);
}

Reveal decode_reveal(std::span<const std::uint8_t> payload) {
    Reveal r;
    std::size_t pos = 0;

    const std::uint64_t salt_len = read_u64be(payload, pos);
    pos += 8;
    if (salt_len != kSaltSize) throw BadSaltLength(salt_len);
    if (pos + salt_len > payload.size()) throw OutOfRange("reveal payload truncated in salt");
    std::copy_n(payload.begin() + pos, kSaltSize, r.salt.begin());
    pos += salt_len;

    const std::uint64_t subject_len = read_u64be(payload, pos);
    pos += 8;
    if (pos + subject_len + 8 > payload.size())
        throw OutOfRange("reveal payload truncated in subject");
    r.subject.assign(payload.begin() + pos, payload.begin() + pos + subject_len);
    pos += subject_len;

    r.round = read_u64be(payload, pos);
    pos += 8;

    const std::uint64_t message_len = read_u64be(payload, pos);
    pos += 8;
    if (pos + message_len != payload.size())
        throw OutOfRange("reveal payload has a bad message length");
    r.message.assign(payload.begin() + pos, payload.end());
    return r;
}

}  // namespace ledgerlab
