#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ledgerlab/chain.hpp"
#include "ledgerlab/commitment.hpp"
#include "ledgerlab/epistemics.hpp"

namespace ledgerlab {

enum class Direction : std::uint8_t { Up = 0, Down = 1 };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

// The resolved market move for one round; drawn from the seeded RNG and
// recorded on-chain. One outcome per (subject, round).
struct Outcome {
    std::string subject;
    std::uint64_t round = 0;
    Direction direction = Direction::Up;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct ReceivedPrediction {
    std::uint64_t round = 0;
    Direction predicted_direction = Direction::Up;
    Digest commitment_digest;
    bool was_correct = false;
};

// What one recipient saw: only their own predictions, nothing from the other
// branches of the scheme.
struct RecipientView {
    std::string recipient_id;
    std::vector<ReceivedPrediction> received;
    std::uint64_t survived_rounds = 0;
};

// Full record of one predictive-fraud run: the ledger the recipients can
// audit plus the global issuance record only the adversary (and the informed
// auditor) holds.
struct SchemeTranscript {
    int k = 0;
    std::uint64_t n = 0;  // 2^k initial recipients
    Chain chain;
    std::vector<Outcome> outcomes;
    std::vector<RecipientView> views;
    std::vector<std::uint64_t> survivors_per_round;  // after each round; halves every time
    std::uint64_t issued_total = 0;
    std::uint64_t correct_total = 0;
};

// Runs the scheme end-to-end on a fresh chain. Per round, three blocks are
// appended: commitments for every living recipient (half Up, half Down by
// position in id order), the outcome, and the reveals. Exactly the matching
// half survives. Throws BadK / BadTheta.
SchemeTranscript run_scheme(int k, double theta, std::uint64_t seed);

// The final survivor's agent: k all-correct observations over the given prior.
// Throws NoSurvivor when no fully-correct view exists (cannot happen for
// balanced issuance; ties break toward the lowest recipient id).
Agent survivor_naive_agent(const SchemeTranscript& transcript, double theta,
                           double prior_alpha = 1.0, double prior_beta = 1.0);

// True iff the chain verifies, every received commitment digest sits in a
// block that precedes its round's outcome block, and every commitment has a
// matching on-chain reveal that passes verify_reveal.
bool verify_transcript_onchain(const SchemeTranscript& transcript);

struct Witness {
    bool immutable = false;
    bool naive_trusted = false;
    bool informed_trusted = true;
    double naive_value = 0.0;
    double informed_value = 0.0;
};

// Non-throwing evaluation of all three conjuncts; empty failing_legs means
// the witness stands.
struct WitnessEvaluation {
    Witness witness;
    std::vector<std::string> failing_legs;

    bool succeeded() const { return failing_legs.empty(); }
};

WitnessEvaluation evaluate_witness(const SchemeTranscript& transcript, double theta,
                                   double prior_alpha = 1.0, double prior_beta = 1.0);

// The executable counterexample: immutable ledger, trusting survivor,
// distrusting informed auditor. Throws WitnessFailed naming the first failing
// conjunct when the conjunction does not hold.
Witness counterexample_witness(const SchemeTranscript& transcript, double theta,
                               double prior_alpha = 1.0, double prior_beta = 1.0);

// Zero-padded decimal recipient ids ("r000", ...) for stable sorting.
std::string recipient_id(std::uint64_t index, std::uint64_t population);

}  // namespace ledgerlab
