#include "ledgerlab/epistemics.hpp"

#include <cmath>

#include "ledgerlab/errors.hpp"
#include "ledgerlab/fraud_sim.hpp"

namespace ledgerlab {

double BeliefState::recomputed_mean() const {
    double successes = 0.0;
    double failures = 0.0;
    for (const Observation& o : observations) (o.correct ? successes : failures) += 1.0;
    return (prior_alpha + successes) / (prior_alpha + prior_beta + successes + failures);
}

namespace {

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw BadTheta(theta);
}

void check_prior(double alpha, double beta) {
    if (!(std::isfinite(alpha) && std::isfinite(beta) && alpha > 0.0 && beta > 0.0))
        throw BadPrior(alpha, beta);
}

}  // namespace

Agent new_agent(std::string id, double theta, double prior_alpha, double prior_beta) {
    check_theta(theta);
    check_prior(prior_alpha, prior_beta);

    Agent a;
    a.id = std::move(id);
    a.theta = theta;
    a.belief.prior_alpha = prior_alpha;
    a.belief.prior_beta = prior_beta;
    a.belief.posterior_alpha = prior_alpha;
    a.belief.posterior_beta = prior_beta;
    return a;
}

Agent observe(const Agent& agent, bool correct, Tick time) {
    Agent next = agent;
    next.belief.observations.push_back({time, correct});
    if (correct) {
        next.belief.posterior_alpha += 1.0;
    } else {
        next.belief.posterior_beta += 1.0;
    }
    return next;
}

double trust_value(const Agent& agent) {
    return agent.belief.mean();
}

bool is_trusted(const Agent& agent) {
    return trust_value(agent) >= agent.theta;
}

InformedTrust informed_trust(const SchemeTranscript& transcript, double theta,
                             double prior_alpha, double prior_beta) {
    check_theta(theta);
    check_prior(prior_alpha, prior_beta);

    if (transcript.outcomes.size() != static_cast<std::size_t>(transcript.k) ||
        transcript.survivors_per_round.size() != static_cast<std::size_t>(transcript.k)) {
        throw IncompleteTranscript("transcript rounds are not all resolved");
    }

    // Brute-force enumeration: correctness re-derived by matching each issued
    // prediction against the recorded outcome of its round.
    std::uint64_t issued = 0;
    std::uint64_t correct = 0;
    for (const RecipientView& view : transcript.views) {
        for (const ReceivedPrediction& p : view.received) {
            if (p.round >= transcript.outcomes.size())
                throw IncompleteTranscript("prediction references an unresolved round");
            ++issued;
            if (p.predicted_direction == transcript.outcomes[p.round].direction) ++correct;
        }
    }
    if (issued == 0) throw IncompleteTranscript("transcript carries no issued predictions");

    InformedTrust result;
    result.issued = issued;
    result.correct = correct;
    result.value = (prior_alpha + static_cast<double>(correct)) /
                   (prior_alpha + prior_beta + static_cast<double>(issued));
    result.trusted = result.value >= theta;
    return result;
}

}  // namespace ledgerlab
