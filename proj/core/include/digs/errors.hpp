#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace digs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A degree file line that is not "out in" or "id out in".
struct MalformedLineError : Error {
    using Error::Error;
};

// Sum of out-degrees differs from sum of in-degrees.
struct SumMismatchError : Error {
    using Error::Error;
};

// The sequence admits no simple realization.
struct NotDigraphicalError : Error {
    using Error::Error;
};

// Some ordered pair has dout_i * din_j >= 2m, so its acceptance weight would
// be non-positive and the sampling guarantees do not apply.
struct DegreeTooLargeError : Error {
    using Error::Error;
};

struct RetriesExhaustedError : Error {
    RetriesExhaustedError(const std::string& msg, int64_t attempts, int64_t last_failure_step)
        : Error(msg), attempts(attempts), last_failure_step(last_failure_step) {}
    int64_t attempts;
    int64_t last_failure_step;
};

// Exhaustive enumeration exceeded its node budget or vertex cap.
struct BudgetExceededError : Error {
    using Error::Error;
};

// The configuration-model rejection sampler ran out of attempts.
struct RejectionBudgetExceededError : Error {
    using Error::Error;
};

// A count estimate was requested but every run failed.
struct AllRunsFailedError : Error {
    using Error::Error;
};

// A step probability was requested in a state whose denominator is zero
// (the run is stuck; no admissible pair remains).
struct DegenerateDenominatorError : Error {
    using Error::Error;
};

}  // namespace digs
