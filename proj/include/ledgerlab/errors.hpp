#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ledgerlab {

// Base class for every error this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AppendToInvalidChain : Error {
    explicit AppendToInvalidChain(std::uint64_t broken_index)
        : Error("append rejected: chain is invalid (first broken index " +
                std::to_string(broken_index) + ")") {}
};

struct OutOfRange : Error {
    using Error::Error;
};

struct BadSaltLength : Error {
    explicit BadSaltLength(std::size_t got)
        : Error("salt must be exactly 16 bytes, got " + std::to_string(got)) {}
};

struct BadTheta : Error {
    explicit BadTheta(double got)
        : Error("theta must lie in [0,1], got " + std::to_string(got)) {}
};

struct BadPrior : Error {
    BadPrior(double alpha, double beta)
        : Error("prior pseudo-counts must be finite and > 0, got alpha=" +
                std::to_string(alpha) + " beta=" + std::to_string(beta)) {}
};

struct BadK : Error {
    explicit BadK(int got)
        : Error("k must lie in [1,20], got " + std::to_string(got)) {}
};

struct NoSurvivor : Error {
    NoSurvivor() : Error("transcript has no fully-correct survivor") {}
};

struct IncompleteTranscript : Error {
    using Error::Error;
};

// Thrown when the counterexample construction cannot be exhibited for the
// requested (k, theta). Carries the name of the first conjunct that failed:
// "immutable", "naive_trusted" or "informed_trusted".
struct WitnessFailed : Error {
    std::string leg;
    WitnessFailed(std::string failing_leg, const std::string& detail)
        : Error("witness failed on leg '" + failing_leg + "': " + detail),
          leg(std::move(failing_leg)) {}
};

struct ParseError : Error {
    std::size_t line;  // 1-based line number, 0 when not line-addressable
    ParseError(std::size_t line_no, const std::string& what_arg)
        : Error("parse error at line " + std::to_string(line_no) + ": " + what_arg),
          line(line_no) {}
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace ledgerlab
