#include "ledgerlab/ledger_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "ledgerlab/errors.hpp"

// The vendored single-header nlohmann/json is on the include path as
// <nlohmann/json.hpp> via the system package and as "json.hpp" via vendor/;
// prefer the system spelling.

namespace ledgerlab {

namespace {

using nlohmann::json;

constexpr char kBase64Chars[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

json record_to_json(const Record& rec) {
    return json{{"id", rec.id},
                {"kind", to_string(rec.kind)},
                {"payload", base64_encode(rec.payload)},
                {"truth_label", to_string(rec.truth_label)}};
}

Record record_from_json(const json& j, std::size_t line_no) {
    if (!j.is_object()) throw ParseError(line_no, "record is not a JSON object");
    try {
        Record rec;
        rec.id = j.at("id").get<std::string>();
        rec.kind = record_kind_from_string(j.at("kind").get<std::string>());
        rec.payload = base64_decode(j.at("payload").get<std::string>());
        rec.truth_label = truth_label_from_string(j.at("truth_label").get<std::string>());
        return rec;
    } catch (const json::exception& e) {
        throw ParseError(line_no, std::string("bad record: ") + e.what());
    } catch (const Error& e) {
        throw ParseError(line_no, std::string("bad record: ") + e.what());
    }
}

Block block_from_json(const json& j, std::size_t line_no) {
    if (!j.is_object()) throw ParseError(line_no, "block is not a JSON object");
    try {
        Block b;
        b.index = j.at("index").get<std::uint64_t>();
        b.timestamp = j.at("timestamp").get<Tick>();
        b.prev_hash = Digest::from_hex(j.at("prev_hash").get<std::string>());
        for (const json& rj : j.at("records")) b.records.push_back(record_from_json(rj, line_no));

        if (j.contains("hash")) {
            b.digest = Digest::from_hex(j.at("hash").get<std::string>());
        } else {
            b.digest = hash_block(b);
        }
        return b;
    } catch (const json::exception& e) {
        throw ParseError(line_no, std::string("bad block: ") + e.what());
    } catch (const Error& e) {
        throw ParseError(line_no, std::string("bad block: ") + e.what());
    }
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 3 <= data.size()) {
        const std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
        out.push_back(kBase64Chars[(v >> 18) & 0x3F]);
        out.push_back(kBase64Chars[(v >> 12) & 0x3F]);
        out.push_back(kBase64Chars[(v >> 6) & 0x3F]);
        out.push_back(kBase64Chars[v & 0x3F]);
        i += 3;
    }
    const std::size_t rest = data.size() - i;
    if (rest == 1) {
        const std::uint32_t v = data[i] << 16;
        out.push_back(kBase64Chars[(v >> 18) & 0x3F]);
        out.push_back(kBase64Chars[(v >> 12) & 0x3F]);
        out += "==";
    } else if (rest == 2) {
        const std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8);
        out.push_back(kBase64Chars[(v >> 18) & 0x3F]);
        out.push_back(kBase64Chars[(v >> 12) & 0x3F]);
        out.push_back(kBase64Chars[(v >> 6) & 0x3F]);
        out.push_back('=');
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    auto value_of = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };

    if (text.size() % 4 != 0) throw OutOfRange("base64 length not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);

    for (std::size_t i = 0; i < text.size(); i += 4) {
        int vals[4];
        int pad = 0;
        for (int j = 0; j < 4; ++j) {
            const char c = text[i + j];
            if (c == '=') {
                if (i + 4 != text.size() || j < 2) throw OutOfRange("base64 padding misplaced");
                vals[j] = 0;
                ++pad;
            } else {
                if (pad > 0) throw OutOfRange("base64 data after padding");
                vals[j] = value_of(c);
                if (vals[j] < 0) throw OutOfRange("base64 contains an invalid character");
            }
        }
        const std::uint32_t v = (vals[0] << 18) | (vals[1] << 12) | (vals[2] << 6) | vals[3];
        out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }
    return out;
}

std::string block_to_jsonl(const Block& block) {
    json j{{"index", block.index},
           {"timestamp", block.timestamp},
           {"prev_hash", block.prev_hash.hex()},
           {"hash", block.digest.hex()},
           {"records", json::array()}};
    for (const Record& rec : block.records) j["records"].push_back(record_to_json(rec));
    return j.dump();
}

Chain parse_ledger(const std::string& text) {
    Chain chain;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;

        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw ParseError(line_no, "line is not valid JSON");

        Block b = block_from_json(j, line_no);
        if (b.index != chain.blocks.size())
            throw ParseError(line_no, "block index " + std::to_string(b.index) +
                                          " breaks the contiguous sequence (expected " +
                                          std::to_string(chain.blocks.size()) + ")");
        chain.blocks.push_back(std::move(b));
    }
    if (chain.blocks.empty()) throw ParseError(0, "ledger file contains no blocks");
    return chain;
}

Chain load_ledger(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open ledger file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_ledger(buffer.str());
}

void save_ledger(const Chain& chain, const std::filesystem::path& path) {
    std::string out;
    for (const Block& block : chain.blocks) {
        out += block_to_jsonl(block);
        out += '\n';
    }
    atomic_write_file(path, out);
}

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                          ec.message());
}

}  // namespace ledgerlab
