#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ledgerlab {

enum class RecordKind : std::uint8_t {
    Transaction = 0,
    PredictionCommit = 1,
    PredictionReveal = 2,
    Garbage = 3,
    Note = 4,
};

// Simulation-only ground truth attached to a record. Never serialized into
// the canonical encoding, never hashed: the ledger is blind to it.
enum class TruthLabel : std::uint8_t {
    True = 0,
    False = 1,
    Unknown = 2,
};

std::string to_string(RecordKind kind);
RecordKind record_kind_from_string(const std::string& s);
std::string to_string(TruthLabel label);
TruthLabel truth_label_from_string(const std::string& s);

struct Record {
    std::string id;
    RecordKind kind = RecordKind::Note;
    std::vector<std::uint8_t> payload;
    TruthLabel truth_label = TruthLabel::Unknown;

    friend bool operator==(const Record&, const Record&) = default;
};

// Canonical byte encoding of one record: kind tag byte, length-prefixed id,
// length-prefixed payload. truth_label is deliberately absent.
void encode_record(std::vector<std::uint8_t>& out, const Record& r);

inline Record make_record(std::string id, RecordKind kind, std::string payload_text,
                          TruthLabel label = TruthLabel::Unknown) {
    Record r;
    r.id = std::move(id);
    r.kind = kind;
    r.payload.assign(payload_text.begin(), payload_text.end());
    r.truth_label = label;
    return r;
}

}  // namespace ledgerlab
