#include "ledgerlab/garbage.hpp"

namespace ledgerlab {

Chain inject(const Chain& chain, std::vector<Record> records, Tick timestamp) {
    return append(chain, std::move(records), timestamp);
}

PermanenceAudit audit_permanence(const Chain& chain, const std::string& record_id,
                                 const Record& original) {
    PermanenceAudit audit;
    audit.record_id = record_id;

    for (const Block& block : chain.blocks) {
        for (const Record& rec : block.records) {
            if (rec.id != record_id) continue;
            audit.present = true;
            audit.byte_identical = rec.payload == original.payload;
            audit.block_index = block.index;
            audit.truth_label = rec.truth_label;
            return audit;
        }
    }
    return audit;
}

TruthStatistics truth_statistics(const Chain& chain) {
    TruthStatistics stats;
    for (const Block& block : chain.blocks) {
        for (const Record& rec : block.records) {
            ++stats.total;
            switch (rec.truth_label) {
                case TruthLabel::True: ++stats.labeled_true; break;
                case TruthLabel::False: ++stats.labeled_false; break;
                case TruthLabel::Unknown: ++stats.labeled_unknown; break;
            }
        }
    }
    return stats;
}

}  // namespace ledgerlab
