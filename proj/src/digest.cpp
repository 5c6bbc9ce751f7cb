#include "ledgerlab/digest.hpp"

#include <openssl/evp.h>

#include <stdexcept>

#include "ledgerlab/errors.hpp"

namespace ledgerlab {

namespace {

constexpr char kHexChars[] = "0123456789abcdef";

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string Digest::hex() const {
    std::string out;
    out.reserve(2 * kSize);
    for (auto b : bytes) {
        out.push_back(kHexChars[b >> 4]);
        out.push_back(kHexChars[b & 0x0F]);
    }
    return out;
}

Digest Digest::from_hex(const std::string& hex) {
    if (hex.size() != 2 * kSize)
        throw OutOfRange("digest hex must be 64 characters, got " + std::to_string(hex.size()));
    Digest d;
    for (std::size_t i = 0; i < kSize; ++i) {
        const int hi = hex_nibble(hex[2 * i]);
        const int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw OutOfRange("digest hex contains a non-hex character");
        d.bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return d;
}

namespace {

// One explicit fetch per process and one context per thread. The implicit
// per-call fetch inside EVP_Digest takes provider locks, which serializes
// concurrent hashing (measured on the benchmark target).
const EVP_MD* fetched_sha256() {
    static EVP_MD* md = EVP_MD_fetch(nullptr, "SHA-256", nullptr);
    return md;
}

struct MdCtx {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    ~MdCtx() { EVP_MD_CTX_free(ctx); }
};

}  // namespace

Digest sha256(std::span<const std::uint8_t> data) {
    thread_local MdCtx tls;

    Digest d;
    unsigned int len = 0;
    if (EVP_DigestInit_ex2(tls.ctx, fetched_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(tls.ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(tls.ctx, d.bytes.data(), &len) != 1 || len != Digest::kSize) {
        throw std::runtime_error("sha256: EVP digest computation failed");
    }
    return d;
}

void put_u64be(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
}

void put_bytes(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> data) {
    out.insert(out.end(), data.begin(), data.end());
}

void put_len_prefixed(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> data) {
    put_u64be(out, data.size());
    put_bytes(out, data);
}

void put_len_prefixed(std::vector<std::uint8_t>& out, const std::string& s) {
    put_u64be(out, s.size());
    out.insert(out.end(), s.begin(), s.end());
}

std::uint64_t read_u64be(std::span<const std::uint8_t> in, std::size_t offset) {
    if (offset + 8 > in.size()) throw OutOfRange("u64 read past end of buffer");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | in[offset + i];
    return v;
}

}  // namespace ledgerlab
