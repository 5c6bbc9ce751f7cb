#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ledgerlab/chain.hpp"

namespace ledgerlab {

struct Observation {
    Tick time = 0;
    bool correct = false;

    friend bool operator==(const Observation&, const Observation&) = default;
};

// Beta-Bernoulli belief over "the system's outputs are correct". The prior
// pseudo-counts stay fixed; the posterior counts are maintained incrementally
// and must always agree with a recomputation from the observation list.
struct BeliefState {
    double prior_alpha = 1.0;
    double prior_beta = 1.0;
    double posterior_alpha = 1.0;
    double posterior_beta = 1.0;
    std::vector<Observation> observations;

    double mean() const { return posterior_alpha / (posterior_alpha + posterior_beta); }

    // Independent route: fold the observation list over the prior.
    double recomputed_mean() const;
};

// The threshold carries no library-level default: it is context-dependent and
// comes from the scenario configuration.
struct Agent {
    std::string id;
    BeliefState belief;
    double theta = 0.0;
};

// Throws BadTheta / BadPrior on out-of-range parameters.
Agent new_agent(std::string id, double theta, double prior_alpha = 1.0, double prior_beta = 1.0);

// Value semantics: returns the updated agent, the input is untouched.
Agent observe(const Agent& agent, bool correct, Tick time);

// Posterior expectation that the observed system is correct. Depends only on
// the prior and the observation list; no ledger state enters here.
double trust_value(const Agent& agent);

// Inclusive threshold: trust_value(agent) >= theta.
bool is_trusted(const Agent& agent);

struct SchemeTranscript;

struct InformedTrust {
    double value = 0.0;
    bool trusted = false;
    std::uint64_t issued = 0;
    std::uint64_t correct = 0;
};

// Trust of the omniscient auditor: conditions on every issued prediction
// across all recipients and rounds (correctness re-derived from the recorded
// outcomes, not taken from cached flags), smoothed by the same prior used for
// per-recipient agents. Throws IncompleteTranscript / BadTheta.
InformedTrust informed_trust(const SchemeTranscript& transcript, double theta,
                             double prior_alpha = 1.0, double prior_beta = 1.0);

}  // namespace ledgerlab
