#include "ledgerlab/record.hpp"

#include "ledgerlab/digest.hpp"
#include "ledgerlab/errors.hpp"

namespace ledgerlab {

std::string to_string(RecordKind kind) {
    switch (kind) {
        case RecordKind::Transaction: return "transaction";
        case RecordKind::PredictionCommit: return "prediction_commit";
        case RecordKind::PredictionReveal: return "prediction_reveal";
        case RecordKind::Garbage: return "garbage";
        case RecordKind::Note: return "note";
    }
    throw OutOfRange("unknown record kind tag");
}

RecordKind record_kind_from_string(const std::string& s) {
    if (s == "transaction") return RecordKind::Transaction;
    if (s == "prediction_commit") return RecordKind::PredictionCommit;
    if (s == "prediction_reveal") return RecordKind::PredictionReveal;
    if (s == "garbage") return RecordKind::Garbage;
    if (s == "note") return RecordKind::Note;
    throw OutOfRange("unknown record kind '" + s + "'");
}

std::string to_string(TruthLabel label) {
    switch (label) {
        case TruthLabel::True: return "true";
        case TruthLabel::False: return "false";
        case TruthLabel::Unknown: return "unknown";
    }
    throw OutOfRange("unknown truth label tag");
}

TruthLabel truth_label_from_string(const std::string& s) {
    if (s == "true") return TruthLabel::True;
    if (s == "false") return TruthLabel::False;
    if (s == "unknown") return TruthLabel::Unknown;
    throw OutOfRange("unknown truth label '" + s + "'");
}

void encode_record(std::vector<std::uint8_t>& out, const Record& r) {
    out.push_back(static_cast<std::uint8_t>(r.kind));
    put_len_prefixed(out, r.id);
    put_len_prefixed(out, std::span<const std::uint8_t>(r.payload));
}

}  // namespace ledgerlab
