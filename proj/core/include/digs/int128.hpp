#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace digs {

// 128-bit integers back all exact probability accounting.  Step weights are
// products like rout * rin * (4m - 2*dout*din) and their sums over up to n^2
// pairs, which overflow 64 bits well inside the supported input range.
using i128 = __int128;
using u128 = unsigned __int128;

inline double to_double(i128 v) {
    bool neg = v < 0;
    u128 a = neg ? u128(-v) : u128(v);
    double d = std::ldexp(double(uint64_t(a >> 64)), 64) + double(uint64_t(a));
    return neg ? -d : d;
}

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 a = neg ? u128(-v) : u128(v);
    char buf[48];
    int pos = 48;
    while (a > 0) {
        buf[--pos] = char('0' + int(a % 10));
        a /= 10;
    }
    std::string s(buf + pos, 48 - pos);
    return neg ? "-" + s : s;
}

}  // namespace digs
