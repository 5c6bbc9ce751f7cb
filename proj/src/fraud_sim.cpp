#include "ledgerlab/fraud_sim.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ledgerlab/errors.hpp"
#include "ledgerlab/rng.hpp"

namespace ledgerlab {

namespace {

constexpr const char* kSubject = "ACME";

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw BadTheta(theta);
}

std::string direction_message(Direction d) {
    return d == Direction::Up ? "UP" : "DOWN";
}

}  // namespace

std::string to_string(Direction d) {
    return d == Direction::Up ? "up" : "down";
}

Direction direction_from_string(const std::string& s) {
    if (s == "up") return Direction::Up;
    if (s == "down") return Direction::Down;
    throw OutOfRange("unknown direction '" + s + "'");
}

std::string recipient_id(std::uint64_t index, std::uint64_t population) {
    std::size_t width = 3;
    std::string max_index = std::to_string(population == 0 ? 0 : population - 1);
    if (max_index.size() > width) width = max_index.size();

    std::string digits = std::to_string(index);
    std::string id = "r";
    id.append(width - std::min(width, digits.size()), '0');
    id += digits;
    return id;
}

SchemeTranscript run_scheme(int k, double theta, std::uint64_t seed) {
    if (k < 1 || k > 20) throw BadK(k);
    check_theta(theta);

    const std::uint64_t n = std::uint64_t{1} << k;
    SimRng rng(seed);

    SchemeTranscript t;
    t.k = k;
    t.n = n;
    t.views.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) t.views[i].recipient_id = recipient_id(i, n);

    std::vector<std::uint64_t> living(n);
    std::iota(living.begin(), living.end(), std::uint64_t{0});

    Chain chain = genesis({}, 0);
    Tick tick = 1;

    for (std::uint64_t round = 0; round < static_cast<std::uint64_t>(k); ++round) {
        // Balanced issuance in id order: the first half of the living set is
        // told Up, the second half Down. Draw order per round is fixed: one
        // salt per living recipient (id order), then the outcome coin.
        const std::size_t half = living.size() / 2;

        struct Issued {
            std::uint64_t recipient;
            Direction direction;
            Salt salt;
            Commitment commitment;
        };
        std::vector<Issued> issued;
        issued.reserve(living.size());

        std::vector<Record> commit_records;
        commit_records.reserve(living.size());
        for (std::size_t pos = 0; pos < living.size(); ++pos) {
            const Direction dir = pos < half ? Direction::Up : Direction::Down;
            const Salt salt = rng.salt();
            const Commitment c = commit(direction_message(dir), salt, kSubject, round);

            Record rec;
            rec.id = "commit/" + t.views[living[pos]].recipient_id + "/" +
                     std::to_string(round) + "/" + c.digest.hex();
            rec.kind = RecordKind::PredictionCommit;
            rec.payload = encode_commitment(c);
            rec.truth_label = TruthLabel::Unknown;
            commit_records.push_back(std::move(rec));

            issued.push_back({living[pos], dir, salt, c});
        }
        chain = append(chain, std::move(commit_records), tick++);

        const Direction outcome_dir = rng.coin() ? Direction::Up : Direction::Down;
        t.outcomes.push_back({kSubject, round, outcome_dir});

        Record outcome_rec = make_record(
            "outcome/" + std::string(kSubject) + "/" + std::to_string(round), RecordKind::Note,
            direction_message(outcome_dir), TruthLabel::True);
        chain = append(chain, {std::move(outcome_rec)}, tick++);

        std::vector<Record> reveal_records;
        reveal_records.reserve(issued.size());
        std::vector<std::uint64_t> survivors;
        survivors.reserve(half);

        for (const Issued& item : issued) {
            const bool correct = item.direction == outcome_dir;

            Reveal reveal;
            const std::string msg = direction_message(item.direction);
            reveal.message.assign(msg.begin(), msg.end());
            reveal.salt = item.salt;
            reveal.subject = kSubject;
            reveal.round = round;

            Record rec;
            rec.id = "reveal/" + t.views[item.recipient].recipient_id + "/" +
                     std::to_string(round) + "/" + item.commitment.digest.hex();
            rec.kind = RecordKind::PredictionReveal;
            rec.payload = encode_reveal(reveal);
            rec.truth_label = correct ? TruthLabel::True : TruthLabel::False;
            reveal_records.push_back(std::move(rec));

            RecipientView& view = t.views[item.recipient];
            view.received.push_back({round, item.direction, item.commitment.digest, correct});
            if (correct) {
                view.survived_rounds = round + 1;
                survivors.push_back(item.recipient);
            }

            ++t.issued_total;
            if (correct) ++t.correct_total;
        }
        chain = append(chain, std::move(reveal_records), tick++);

        living = std::move(survivors);
        t.survivors_per_round.push_back(living.size());
    }

    t.chain = std::move(chain);
    return t;
}

Agent survivor_naive_agent(const SchemeTranscript& transcript, double theta,
                           double prior_alpha, double prior_beta) {
    const RecipientView* survivor = nullptr;
    for (const RecipientView& view : transcript.views) {
        if (view.received.empty()) continue;
        const bool all_correct = std::all_of(view.received.begin(), view.received.end(),
                                             [](const ReceivedPrediction& p) { return p.was_correct; });
        if (!all_correct) continue;
        if (survivor == nullptr || view.recipient_id < survivor->recipient_id) survivor = &view;
    }
    if (survivor == nullptr) throw NoSurvivor();

    Agent agent = new_agent(survivor->recipient_id, theta, prior_alpha, prior_beta);
    for (const ReceivedPrediction& p : survivor->received) {
        // Observation time: the reveal block of the round (three blocks per
        // round after genesis).
        agent = observe(agent, p.was_correct, static_cast<Tick>(3 * p.round + 3));
    }
    return agent;
}

bool verify_transcript_onchain(const SchemeTranscript& transcript) {
    if (!verify_chain(transcript.chain).valid) return false;

    struct CommitEntry {
        std::uint64_t block_index;
        Commitment commitment;
    };
    std::map<std::string, CommitEntry> commits;      // digest hex -> entry
    std::map<std::string, Reveal> reveals;           // digest hex -> reveal
    std::map<std::uint64_t, std::uint64_t> outcome_blocks;  // round -> block index

    for (const Block& block : transcript.chain.blocks) {
        for (const Record& rec : block.records) {
            try {
                switch (rec.kind) {
                    case RecordKind::PredictionCommit: {
                        const Commitment c = decode_commitment(rec.payload);
                        commits.emplace(c.digest.hex(), CommitEntry{block.index, c});
                        break;
                    }
                    case RecordKind::PredictionReveal: {
                        const Reveal r = decode_reveal(rec.payload);
                        const Commitment rehashed =
                            commit(std::span<const std::uint8_t>(r.message),
                                   std::span<const std::uint8_t>(r.salt), r.subject, r.round);
                        reveals.emplace(rehashed.digest.hex(), r);
                        break;
                    }
                    case RecordKind::Note: {
                        if (rec.id.rfind("outcome/", 0) == 0) {
                            const auto slash = rec.id.find_last_of('/');
                            const std::uint64_t round = std::stoull(rec.id.substr(slash + 1));
                            outcome_blocks.emplace(round, block.index);
                        }
                        break;
                    }
                    default:
                        break;
                }
            } catch (const std::exception&) {
                return false;  // malformed commitment, reveal or outcome record on-chain
            }
        }
    }

    for (const RecipientView& view : transcript.views) {
        for (const ReceivedPrediction& p : view.received) {
            const std::string hex = p.commitment_digest.hex();

            const auto commit_it = commits.find(hex);
            if (commit_it == commits.end()) return false;

            const auto outcome_it = outcome_blocks.find(p.round);
            if (outcome_it == outcome_blocks.end()) return false;
            if (commit_it->second.block_index >= outcome_it->second) return false;

            const auto reveal_it = reveals.find(hex);
            if (reveal_it == reveals.end()) return false;
            if (!verify_reveal(commit_it->second.commitment, reveal_it->second)) return false;

            const std::string expected_msg = direction_message(p.predicted_direction);
            if (std::string(reveal_it->second.message.begin(), reveal_it->second.message.end()) !=
                expected_msg)
                return false;
        }
    }
    return true;
}

WitnessEvaluation evaluate_witness(const SchemeTranscript& transcript, double theta,
                                   double prior_alpha, double prior_beta) {
    WitnessEvaluation eval;

    eval.witness.immutable = verify_transcript_onchain(transcript);

    const Agent naive = survivor_naive_agent(transcript, theta, prior_alpha, prior_beta);
    eval.witness.naive_value = trust_value(naive);
    eval.witness.naive_trusted = is_trusted(naive);

    const InformedTrust informed = informed_trust(transcript, theta, prior_alpha, prior_beta);
    eval.witness.informed_value = informed.value;
    eval.witness.informed_trusted = informed.trusted;

    if (!eval.witness.immutable) eval.failing_legs.push_back("immutable");
    if (!eval.witness.naive_trusted) eval.failing_legs.push_back("naive_trusted");
    if (eval.witness.informed_trusted) eval.failing_legs.push_back("informed_trusted");
    return eval;
}

Witness counterexample_witness(const SchemeTranscript& transcript, double theta,
                               double prior_alpha, double prior_beta) {
    const WitnessEvaluation eval = evaluate_witness(transcript, theta, prior_alpha, prior_beta);
    if (!eval.succeeded()) {
        throw WitnessFailed(eval.failing_legs.front(),
                            "naive=" + std::to_string(eval.witness.naive_value) +
                                " informed=" + std::to_string(eval.witness.informed_value) +
                                " theta=" + std::to_string(theta));
    }
    return eval.witness;
}

}  // namespace ledgerlab
