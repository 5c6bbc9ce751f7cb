// Acceptance suite. Each criterion prints exactly one [PASS]/[FAIL] line;
// the process exits nonzero when any criterion fails. Tolerances are pinned
// in code, not configurable.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ledgerlab/chain.hpp"
#include "ledgerlab/epistemics.hpp"
#include "ledgerlab/errors.hpp"
#include "ledgerlab/fraud_sim.hpp"
#include "ledgerlab/garbage.hpp"
#include "ledgerlab/kernels.hpp"
#include "ledgerlab/ledger_io.hpp"
#include "ledgerlab/rng.hpp"
#include "ledgerlab/scenario.hpp"
#include "support/generators.hpp"

#include <nlohmann/json.hpp>

using namespace ledgerlab;

namespace {

int g_failures = 0;

class Criterion {
  public:
    Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)), start_(clock_type::now()) {}

    void fail(const std::string& why) {
        if (failed_why_.empty()) failed_why_ = why;
    }

    void note(const std::string& detail) { detail_ = detail; }

    double seconds() const {
        return std::chrono::duration<double>(clock_type::now() - start_).count();
    }

    ~Criterion() {
        std::ostringstream line;
        line << (failed_why_.empty() ? "[PASS]" : "[FAIL]") << " criterion " << number_ << ": "
             << title_;
        if (!detail_.empty()) line << " (" << detail_ << ")";
        if (!failed_why_.empty()) line << " -- " << failed_why_;
        std::cout << line.str() << "\n";
        if (!failed_why_.empty()) ++g_failures;
    }

  private:
    using clock_type = std::chrono::steady_clock;
    int number_;
    std::string title_;
    clock_type::time_point start_;
    std::string failed_why_;
    std::string detail_;
};

std::string fmt_seconds(double s) {
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << s << "s";
    return out.str();
}

// 1. Tamper detection: >= 500 randomized chains (lengths 1-32), >= 20 random
//    single-byte mutations each, detected at the mutated block 100% of the
//    time; runtime < 10 s.
void criterion_1() {
    Criterion c(1, "tamper detection over randomized chains");
    SimRng rng(1001);

    const int chains = 500;
    const int mutations_per_chain = 20;
    std::uint64_t detected = 0;
    std::uint64_t total = 0;

    for (int i = 0; i < chains; ++i) {
        const std::size_t length = 1 + rng.below(32);
        const Chain chain = testsupport::random_chain(rng, length);

        for (int m = 0; m < mutations_per_chain; ++m) {
            const auto site = testsupport::random_mutation_site(rng, chain);
            const std::uint8_t new_byte = testsupport::different_byte(rng, site.old_byte);

            const Chain bad = tamper(chain, site.block_index, site.byte_offset, new_byte);
            const TamperReport report = verify_chain(bad);
            ++total;
            if (!report.valid && report.first_broken_index == site.block_index) ++detected;
        }
    }

    if (detected != total)
        c.fail(std::to_string(total - detected) + " mutations went undetected or misattributed");
    const double s = c.seconds();
    if (s >= 10.0) c.fail("runtime " + fmt_seconds(s) + " exceeds 10s budget");
    c.note(std::to_string(detected) + "/" + std::to_string(total) + " detected at the mutated block, " +
           fmt_seconds(s));
}

// 2. Collision sanity: >= 10,000 random single-bit-flip digest pairs, zero
//    collisions; runtime < 5 s.
void criterion_2() {
    Criterion c(2, "collision sanity under single-bit flips");
    const Chain base =
        genesis({make_record("probe", RecordKind::Note, "collision sanity block payload")}, 0);

    const CollisionScanResult result = collision_scan(base.blocks[0], 10000, 2002);
    const CollisionScanResult reference = collision_scan_serial(base.blocks[0], 10000, 2002);

    if (result.collisions != 0)
        c.fail(std::to_string(result.collisions) + " digest collisions observed");
    if (!(result == reference)) c.fail("parallel and serial scans disagree");
    const double s = c.seconds();
    if (s >= 5.0) c.fail("runtime " + fmt_seconds(s) + " exceeds 5s budget");
    c.note(std::to_string(result.trials) + " flips, " + std::to_string(result.collisions) +
           " collisions, " + fmt_seconds(s));
}

// 3. Halving law: for every k in [1,12] and 10 seeds, survivors after round r
//    equal 2^(k-r) exactly (1-based r), ending at exactly one survivor.
void criterion_3() {
    Criterion c(3, "halving law across k in [1,12], 10 seeds each");
    std::uint64_t runs = 0;

    for (int k = 1; k <= 12; ++k) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const SchemeTranscript t = run_scheme(k, 0.75, 7000 + seed);
            ++runs;

            if (t.survivors_per_round.size() != static_cast<std::size_t>(k)) {
                c.fail("k=" + std::to_string(k) + ": wrong round count");
                return;
            }
            for (int r = 1; r <= k; ++r) {
                const std::uint64_t expected = std::uint64_t{1} << (k - r);
                if (t.survivors_per_round[static_cast<std::size_t>(r - 1)] != expected) {
                    c.fail("k=" + std::to_string(k) + " seed=" + std::to_string(seed) +
                           " round=" + std::to_string(r) + ": survivors != 2^(k-r)");
                    return;
                }
            }
            if (t.survivors_per_round.back() != 1) {
                c.fail("k=" + std::to_string(k) + ": final survivor count != 1");
                return;
            }
        }
    }
    c.note(std::to_string(runs) + " runs, " + fmt_seconds(c.seconds()));
}

// 4. Accuracy gap: k=4, theta=0.75, any seed -- naive trust exactly 5/6,
//    informed trust exactly 0.5, witness succeeds. Tolerance 1e-12.
void criterion_4() {
    Criterion c(4, "survivor/population accuracy gap at k=4, theta=0.75");
    const double tol = 1e-12;

    for (std::uint64_t seed : {1ull, 42ull, 1234ull, 987654321ull, 2026ull}) {
        const SchemeTranscript t = run_scheme(4, 0.75, seed);

        const Agent naive = survivor_naive_agent(t, 0.75);
        const InformedTrust informed = informed_trust(t, 0.75);

        if (std::abs(trust_value(naive) - 5.0 / 6.0) > tol) {
            c.fail("seed=" + std::to_string(seed) + ": naive trust != 5/6");
            return;
        }
        if (std::abs(informed.value - 0.5) > tol) {
            c.fail("seed=" + std::to_string(seed) + ": informed trust != 0.5");
            return;
        }
        try {
            const Witness w = counterexample_witness(t, 0.75);
            if (!(w.immutable && w.naive_trusted && !w.informed_trusted)) {
                c.fail("seed=" + std::to_string(seed) + ": witness legs inconsistent");
                return;
            }
        } catch (const WitnessFailed& e) {
            c.fail("seed=" + std::to_string(seed) + ": witness failed on " + e.leg);
            return;
        }
    }
    c.note("naive=5/6 informed=0.5 witness ok on 5 seeds, " + fmt_seconds(c.seconds()));
}

// 5. Witness boundary behavior: k=1/theta=0.75 fails the naive leg;
//    theta=0.4/k=4 fails the informed leg; the error names the conjunct.
void criterion_5() {
    Criterion c(5, "witness boundary behavior names the failing conjunct");

    try {
        counterexample_witness(run_scheme(1, 0.75, 42), 0.75);
        c.fail("k=1/theta=0.75 unexpectedly produced a witness");
    } catch (const WitnessFailed& e) {
        if (e.leg != "naive_trusted")
            c.fail("k=1 failed on '" + e.leg + "', expected 'naive_trusted'");
        if (std::string(e.what()).find("naive_trusted") == std::string::npos)
            c.fail("error text does not name the failing conjunct");
    }

    try {
        counterexample_witness(run_scheme(4, 0.4, 42), 0.4);
        c.fail("theta=0.4/k=4 unexpectedly produced a witness");
    } catch (const WitnessFailed& e) {
        if (e.leg != "informed_trusted")
            c.fail("theta=0.4 failed on '" + e.leg + "', expected 'informed_trusted'");
    }
    c.note(fmt_seconds(c.seconds()));
}

// 6. Garbage permanence: matched true/false pairs audit identically after 100
//    subsequent appends; byte-identical retrieval 100%.
void criterion_6() {
    Criterion c(6, "garbage permanence for matched true/false record pairs");
    SimRng rng(6006);

    const int pairs = 20;
    Chain chain = genesis({}, 0);
    std::vector<Record> originals;

    for (int p = 0; p < pairs; ++p) {
        Record truth = testsupport::random_record(rng, "pair" + std::to_string(p) + "/true", 32);
        truth.kind = RecordKind::Garbage;
        truth.truth_label = TruthLabel::True;
        Record lie = truth;
        lie.id = "pair" + std::to_string(p) + "/false";
        lie.truth_label = TruthLabel::False;

        chain = inject(chain, {truth, lie}, p + 1);
        originals.push_back(truth);
        originals.push_back(lie);
    }

    for (int i = 0; i < 100; ++i)
        chain = append(chain, {make_record("filler" + std::to_string(i), RecordKind::Note, "x")},
                       1000 + i);

    std::uint64_t byte_identical = 0;
    for (int p = 0; p < pairs; ++p) {
        const Record& truth = originals[static_cast<std::size_t>(2 * p)];
        const Record& lie = originals[static_cast<std::size_t>(2 * p + 1)];
        const PermanenceAudit a = audit_permanence(chain, truth.id, truth);
        const PermanenceAudit b = audit_permanence(chain, lie.id, lie);

        if (a.byte_identical) ++byte_identical;
        if (b.byte_identical) ++byte_identical;
        if (!(a.present && b.present && a.byte_identical == b.byte_identical &&
              a.block_index == b.block_index)) {
            c.fail("pair " + std::to_string(p) + ": audits differ across the label");
            return;
        }
    }
    if (byte_identical != static_cast<std::uint64_t>(2 * pairs))
        c.fail("byte-identical retrieval below 100%");
    c.note(std::to_string(2 * pairs) + "/" + std::to_string(2 * pairs) +
           " byte-identical after 100 appends, " + fmt_seconds(c.seconds()));
}

// 7. Orthogonality: trust_value of a fixed observation list is bit-identical
//    before and after ledger tampering.
void criterion_7() {
    Criterion c(7, "trust is orthogonal to ledger tampering");
    SimRng rng(7007);

    Agent agent = new_agent("auditor", 0.75);
    for (int i = 0; i < 10; ++i) agent = observe(agent, rng.coin(), i);
    const double before = trust_value(agent);

    Chain chain = testsupport::random_chain(rng, 8);
    const auto site = testsupport::random_mutation_site(rng, chain);
    chain = tamper(chain, site.block_index, site.byte_offset,
                   testsupport::different_byte(rng, site.old_byte));
    if (verify_chain(chain).valid) {
        c.fail("tamper probe failed to invalidate the ledger");
        return;
    }

    const double after = trust_value(agent);
    if (std::memcmp(&before, &after, sizeof(double)) != 0)
        c.fail("trust value changed across ledger tampering");
    c.note("bit-identical across tampering, " + fmt_seconds(c.seconds()));
}

// 8. Determinism: two scenario runs with identical config produce identical
//    tip digests and identical trust tables.
void criterion_8() {
    Criterion c(8, "scenario determinism");
    ScenarioConfig config;
    config.seed = 77;

    const ScenarioReport a = run_scenario(config);
    const ScenarioReport b = run_scenario(config);

    if (a.chain.tip_digest != b.chain.tip_digest) c.fail("tip digests differ");
    if (a.agents.size() != b.agents.size()) {
        c.fail("trust tables have different sizes");
    } else {
        for (std::size_t i = 0; i < a.agents.size(); ++i) {
            const double va = trust_value(a.agents[i]);
            const double vb = trust_value(b.agents[i]);
            if (a.agents[i].id != b.agents[i].id || std::memcmp(&va, &vb, sizeof(double)) != 0 ||
                is_trusted(a.agents[i]) != is_trusted(b.agents[i])) {
                c.fail("trust tables differ at row " + std::to_string(i));
                break;
            }
        }
    }

    auto strip = [](const ScenarioReport& r) {
        nlohmann::json j = nlohmann::json::parse(report_to_json_text(r));
        j.erase("generated_at");
        return j.dump();
    };
    if (strip(a) != strip(b)) c.fail("reports differ beyond generated_at");
    c.note("tip " + a.chain.tip_digest.substr(0, 12) + "..., " + fmt_seconds(c.seconds()));
}

// 9. Posterior correctness: 1,000 random observation sequences, closed form
//    matched to <= 1e-12 and equal to a brute-force fold.
void criterion_9() {
    Criterion c(9, "posterior matches closed form and brute-force fold");
    SimRng rng(9009);
    const double tol = 1e-12;

    for (int i = 0; i < 1000; ++i) {
        const double alpha = 0.25 + static_cast<double>(rng.below(12)) * 0.25;
        const double beta = 0.25 + static_cast<double>(rng.below(12)) * 0.25;
        const std::size_t length = rng.below(64);

        Agent agent = new_agent("a", 0.5, alpha, beta);
        double fold_alpha = alpha;
        double fold_beta = beta;
        std::uint64_t successes = 0;

        for (std::size_t s = 0; s < length; ++s) {
            const bool correct = rng.coin();
            agent = observe(agent, correct, static_cast<Tick>(s));
            (correct ? fold_alpha : fold_beta) += 1.0;
            if (correct) ++successes;
        }

        const double v = trust_value(agent);
        const double closed = (alpha + static_cast<double>(successes)) /
                              (alpha + beta + static_cast<double>(length));
        const double fold = fold_alpha / (fold_alpha + fold_beta);

        if (std::abs(v - closed) > tol) {
            c.fail("closed-form mismatch at sequence " + std::to_string(i));
            return;
        }
        if (v != fold) {
            c.fail("brute-force fold mismatch at sequence " + std::to_string(i));
            return;
        }
    }
    c.note("1000 sequences, " + fmt_seconds(c.seconds()));
}

}  // namespace

int main() {
    std::cout << "ledgerlab acceptance suite\n";

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();

    if (g_failures == 0) {
        std::cout << "all 9 criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " criteria failed\n";
    return 1;
}
