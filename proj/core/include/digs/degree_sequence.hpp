#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace digs {

struct VertexDegrees {
    int64_t in = 0;
    int64_t out = 0;
    bool operator==(const VertexDegrees&) const = default;
};

// Validated per-vertex (in, out) degree pairs.  Vertices carry dense 0-based
// internal ids; isolated (0,0) entries are stripped at construction and the
// original ids of the surviving vertices are kept so I/O can restore them.
class DegreeSequence {
public:
    // Throws SumMismatchError unless sum(out) == sum(in).  Negative degrees
    // throw MalformedLineError.
    static DegreeSequence from_pairs(const std::vector<VertexDegrees>& entries);

    // Parses "out in" lines.  A leading id column is autodetected when the
    // first data line has three fields; '#' starts a comment, blank lines
    // are skipped.
    static DegreeSequence parse(const std::string& text);

    int64_t n() const { return int64_t(entries_.size()); }
    int64_t m() const { return m_; }
    int64_t d_max() const { return d_max_; }

    const std::vector<VertexDegrees>& entries() const { return entries_; }
    int64_t in_degree(int64_t v) const { return entries_[size_t(v)].in; }
    int64_t out_degree(int64_t v) const { return entries_[size_t(v)].out; }

    // Original id of internal vertex v (identity mapping unless an id column
    // was parsed or isolated vertices were stripped).
    const std::vector<int64_t>& original_ids() const { return original_ids_; }
    int64_t stripped_count() const { return stripped_; }

    // Normalized "out in" lines, one per surviving vertex, newline-terminated.
    std::string serialize() const;

    // Largest dout_i * din_j over ordered pairs i != j.  The sampler requires
    // this to stay below 2m so every acceptance weight is positive.
    int64_t max_cross_product() const;

    // d_max^4 >= m: inputs outside the regime where the estimates backing
    // the sampler and the closed-form count are meaningful.
    bool heavy_degree_warning() const;

private:
    std::vector<VertexDegrees> entries_;
    std::vector<int64_t> original_ids_;
    int64_t m_ = 0;
    int64_t d_max_ = 0;
    int64_t stripped_ = 0;
};

}  // namespace digs
