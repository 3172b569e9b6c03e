#include "digs/degree_sequence.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "digs/errors.hpp"
#include "digs/int128.hpp"

namespace digs {

DegreeSequence DegreeSequence::from_pairs(const std::vector<VertexDegrees>& entries) {
    std::vector<int64_t> ids(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) ids[i] = int64_t(i);

    DegreeSequence d;
    int64_t sum_out = 0, sum_in = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.in < 0 || e.out < 0)
            throw MalformedLineError("negative degree at vertex " + std::to_string(i));
        sum_out += e.out;
        sum_in += e.in;
        if (e.in == 0 && e.out == 0) {
            ++d.stripped_;
            continue;
        }
        d.entries_.push_back(e);
        d.original_ids_.push_back(ids[i]);
        d.d_max_ = std::max({d.d_max_, e.in, e.out});
    }
    if (sum_out != sum_in)
        throw SumMismatchError("sum of out-degrees " + std::to_string(sum_out) +
                               " != sum of in-degrees " + std::to_string(sum_in));
    d.m_ = sum_out;
    return d;
}

DegreeSequence DegreeSequence::parse(const std::string& text) {
    std::vector<VertexDegrees> entries;
    std::vector<int64_t> ids;
    int fields_expected = 0;  // 2 or 3, fixed by the first data line
    std::istringstream in(text);
    std::string line;
    int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<int64_t> fields;
        int64_t x;
        while (ls >> x) fields.push_back(x);
        if (!ls.eof()) {
            ls.clear();
            std::string junk;
            ls >> junk;
            if (!junk.empty())
                throw MalformedLineError("line " + std::to_string(lineno) +
                                         ": unexpected token '" + junk + "'");
        }
        if (fields.empty()) continue;
        if (fields_expected == 0) {
            if (fields.size() != 2 && fields.size() != 3)
                throw MalformedLineError("line " + std::to_string(lineno) +
                                         ": expected 'out in' or 'id out in'");
            fields_expected = int(fields.size());
        }
        if (int(fields.size()) != fields_expected)
            throw MalformedLineError("line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(fields_expected) + " fields, got " +
                                     std::to_string(fields.size()));
        if (fields_expected == 3) {
            ids.push_back(fields[0]);
            entries.push_back({fields[2], fields[1]});
        } else {
            ids.push_back(int64_t(entries.size()));
            entries.push_back({fields[1], fields[0]});
        }
    }
    DegreeSequence d = from_pairs(entries);
    // from_pairs assigned dense original ids; rewire them through the parsed
    // id column (original_ids_ currently holds indices into `ids`).
    for (auto& id : d.original_ids_) id = ids[size_t(id)];
    return d;
}

std::string DegreeSequence::serialize() const {
    std::string out;
    char buf[64];
    for (const auto& e : entries_) {
        std::snprintf(buf, sizeof buf, "%lld %lld\n", (long long)e.out, (long long)e.in);
        out += buf;
    }
    return out;
}

int64_t DegreeSequence::max_cross_product() const {
    // The max over i != j of dout_i * din_j is realized by the top two of
    // each side: either (top-out, top-in) if they are different vertices, or
    // the better of (top-out, second-in) and (second-out, top-in).
    int64_t best_out = -1, second_out = -1, best_in = -1, second_in = -1;
    size_t best_out_v = 0, best_in_v = 0;
    for (size_t v = 0; v < entries_.size(); ++v) {
        int64_t o = entries_[v].out, i = entries_[v].in;
        if (o > best_out) {
            second_out = best_out;
            best_out = o;
            best_out_v = v;
        } else if (o > second_out) {
            second_out = o;
        }
        if (i > best_in) {
            second_in = best_in;
            best_in = i;
            best_in_v = v;
        } else if (i > second_in) {
            second_in = i;
        }
    }
    if (entries_.size() < 2) return 0;
    if (best_out_v != best_in_v) return best_out * best_in;
    return std::max(best_out * std::max<int64_t>(second_in, 0),
                    std::max<int64_t>(second_out, 0) * best_in);
}

bool DegreeSequence::heavy_degree_warning() const {
    if (m_ == 0) return false;
    i128 d4 = i128(d_max_) * d_max_ * d_max_ * d_max_;
    return d4 >= i128(m_);
}

}  // namespace digs
