#include "digs/psi.hpp"

#include <cstdio>

#include "digs/sampler.hpp"

namespace digs {

i128 PsiBreakdown::scaled_denominator() const {
    i128 mr = m - r;
    return i128(4) * m * mr * mr - i128(4) * m * delta() -
           2 * (lambda1_plus * lambda1_minus - lambda2 - lambda3);
}

std::string PsiBreakdown::to_json() const {
    std::string s = "{";
    char buf[64];
    std::snprintf(buf, sizeof buf, "\"r\":%lld,", (long long)r);
    s += buf;
    auto field = [&s](const char* name, i128 v, bool last = false) {
        s += '"';
        s += name;
        s += "\":\"";
        s += to_string(v);
        s += last ? "\"" : "\",";
    };
    field("delta1", delta1);
    field("delta2", delta2);
    field("lambda1p", lambda1_plus);
    field("lambda1m", lambda1_minus);
    field("lambda2", lambda2);
    field("lambda3", lambda3);
    field("scaled_psi", scaled_psi());
    field("scaled_denominator", scaled_denominator(), true);
    s += '}';
    return s;
}

PsiBreakdown compute_psi_exact(const SamplerState& state) {
    const DegreeSequence& d = state.degrees();
    PsiBreakdown b;
    b.r = state.step();
    b.m = state.m();
    for (int64_t u = 0; u < state.n(); ++u) {
        i128 ro = state.residual_out(u), ri = state.residual_in(u);
        i128 dout = d.out_degree(u), din = d.in_degree(u);
        b.delta1 += ro * ri;
        b.lambda1_plus += ro * dout;
        b.lambda1_minus += ri * din;
        b.lambda2 += ro * dout * ri * din;
    }
    for (const auto& e : state.edges()) {
        i128 ro = state.residual_out(e.from), ri = state.residual_in(e.to);
        b.delta2 += ro * ri;
        b.lambda3 += ro * d.out_degree(e.from) * ri * d.in_degree(e.to);
    }
    return b;
}

i128 denominator_from_scratch(const SamplerState& state) {
    const DegreeSequence& d = state.degrees();
    const i128 four_m = i128(4) * state.m();
    i128 total = 0;
    for (int64_t u = 0; u < state.n(); ++u) {
        i128 ro = state.residual_out(u);
        if (ro == 0) continue;
        for (int64_t v = 0; v < state.n(); ++v) {
            if (u == v) continue;
            i128 ri = state.residual_in(v);
            if (ri == 0 || state.has_edge(u, v)) continue;
            i128 w = ro * ri * (four_m - 2 * i128(d.out_degree(u)) * d.in_degree(v));
            if (state.clamped() && w < 0) w = 0;
            total += w;
        }
    }
    return total;
}

bool psi_upper_bounds_hold(const PsiBreakdown& b, int64_t d_max) {
    i128 mr = b.m - b.r;
    i128 dm = d_max;
    if (b.delta() > mr * dm * dm) return false;
    if (b.lambda1_plus > dm * mr || b.lambda1_minus > dm * mr) return false;
    if (b.lambda1_plus * b.lambda1_minus - b.lambda2 - b.lambda3 > dm * dm * mr * mr) return false;
    return true;
}

ExpectedPsiParts expected_psi_parts(const DegreeSequence& d, const Digraph& g, int64_t r) {
    const i128 m = d.m();
    const i128 mr = m - r;
    i128 a = 0, c_in = 0, c_out = 0, f = 0;
    for (int64_t v = 0; v < d.n(); ++v) {
        i128 din = d.in_degree(v), dout = d.out_degree(v);
        a += din * dout;
        c_in += din * din;
        c_out += dout * dout;
        f += din * din * dout * dout;
    }
    i128 b2 = 0, e2 = 0, h = 0;
    for (const auto& e : g.edges()) {
        i128 dout = d.out_degree(e.from), din = d.in_degree(e.to);
        b2 += (dout - 1) * (din - 1);
        e2 += dout * din;
        h += dout * (dout - 1) * din * (din - 1);
    }
    double m2 = to_double(m * m), m3 = to_double(m * m * m);
    ExpectedPsiParts p;
    p.delta1 = to_double(a * mr * mr) / m2;
    p.delta2 = to_double(b2 * i128(r) * mr * mr) / m3;
    p.lambda11 = to_double(c_in * c_out * mr * mr) / m2 + to_double(e2 * i128(r) * mr) / m2;
    p.lambda2 = to_double(f * mr * mr) / m2;
    p.lambda3 = to_double(h * i128(r) * mr * mr) / m3;
    return p;
}

double expected_psi(const DegreeSequence& d, const Digraph& g, int64_t r) {
    ExpectedPsiParts p = expected_psi_parts(d, g, r);
    double m = double(d.m());
    return p.delta1 + p.delta2 + (p.lambda11 - p.lambda2) / (4.0 * m) - p.lambda3 / (2.0 * m);
}

}  // namespace digs
