#pragma once

#include <cstdint>
#include <string>

#include "digs/degree_sequence.hpp"
#include "digs/digraph.hpp"
#include "digs/int128.hpp"

namespace digs {

class SamplerState;

// Exact tallies describing, at step r, which residual stub pairs are
// unusable (delta: self-loops and duplicate edges) and how the remaining
// pairs' acceptance weights tilt (lambda terms).  All integers; rout/rin
// denote residual out/in stubs.
struct PsiBreakdown {
    int64_t r = 0;
    int64_t m = 0;
    i128 delta1 = 0;         // sum_u rout_u rin_u          (self-loop pairs)
    i128 delta2 = 0;         // sum over placed (u,v) of rout_u rin_v (duplicates)
    i128 lambda1_plus = 0;   // sum_u rout_u dout_u
    i128 lambda1_minus = 0;  // sum_v rin_v din_v
    i128 lambda2 = 0;        // sum_u rout_u dout_u rin_u din_u
    i128 lambda3 = 0;        // sum over placed (u,v) of rout_u dout_u rin_v din_v

    i128 delta() const { return delta1 + delta2; }

    // Split-form aggregates, scaled to stay integral.  scaled_psi follows
    // the reporting convention in which the lambda3 share enters doubled;
    // the sampler itself normalizes by scaled_denominator(), which is the
    // admissible weight sum and treats lambda3 singly.
    i128 scaled_lambda() const { return lambda1_plus * lambda1_minus - lambda2 - 2 * lambda3; }
    i128 scaled_psi() const { return i128(4) * m * delta() + scaled_lambda(); }

    // Exact scaled step denominator implied by the tallies,
    //   D_r = 4m (m-r)^2 - 4m delta - 2 (L1+ L1- - L2 - L3),
    // identical to the weight sum over admissible pairs.
    i128 scaled_denominator() const;

    // {"r":..,"delta1":"..",...,"scaled_psi":"..","scaled_denominator":".."};
    // 128-bit values are decimal strings.
    std::string to_json() const;
};

PsiBreakdown compute_psi_exact(const SamplerState& state);

// Admissible weight sum by direct iteration over all ordered vertex pairs;
// the independent cross-check for the incrementally maintained denominator.
i128 denominator_from_scratch(const SamplerState& state);

// State bounds that hold at every step r < m of a valid run:
//   delta <= (m-r) d_max^2,
//   lambda1_plus/minus <= d_max (m-r),
//   L1+ L1- - L2 - L3 <= d_max^2 (m-r)^2.
bool psi_upper_bounds_hold(const PsiBreakdown& b, int64_t d_max);

// Expected tallies when each edge of g is kept independently with
// probability r/m and residuals are read off the kept subgraph.
struct ExpectedPsiParts {
    double delta1 = 0;
    double delta2 = 0;
    double lambda11 = 0;  // E[lambda1_plus * lambda1_minus]
    double lambda2 = 0;
    double lambda3 = 0;
};
ExpectedPsiParts expected_psi_parts(const DegreeSequence& d, const Digraph& g, int64_t r);

// Combined expectation under the same convention as scaled_psi:
// E[delta1 + delta2] + (E[L1L1] - E[L2]) / 4m - E[L3] / 2m.
double expected_psi(const DegreeSequence& d, const Digraph& g, int64_t r);

}  // namespace digs
