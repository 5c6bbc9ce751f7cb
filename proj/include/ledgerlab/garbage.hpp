#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ledgerlab/chain.hpp"

namespace ledgerlab {

// Result of checking that a committed record is still there, byte-exact.
// Absence is reported, never thrown.
struct PermanenceAudit {
    std::string record_id;
    bool present = false;
    bool byte_identical = false;
    std::optional<std::uint64_t> block_index;
    TruthLabel truth_label = TruthLabel::Unknown;
};

struct TruthStatistics {
    std::uint64_t total = 0;
    std::uint64_t labeled_true = 0;
    std::uint64_t labeled_false = 0;
    std::uint64_t labeled_unknown = 0;

    friend bool operator==(const TruthStatistics&, const TruthStatistics&) = default;
};

// Appends one block containing all records regardless of truth label. The
// ledger accepts garbage with the same ceremony as anything else.
Chain inject(const Chain& chain, std::vector<Record> records, Tick timestamp);

// Locates the record by id (earliest occurrence) and compares its payload
// byte-for-byte against the caller's original copy.
PermanenceAudit audit_permanence(const Chain& chain, const std::string& record_id,
                                 const Record& original);

TruthStatistics truth_statistics(const Chain& chain);

}  // namespace ledgerlab
