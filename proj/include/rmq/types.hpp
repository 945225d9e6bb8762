#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rmq {

// Malformed serialized data (truncated payload, bad magic, inconsistent
// lengths).
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested computation exceeds the configured desk-scale limits.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 1-based cell position: row first, then column.
struct Pos {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const Pos&, const Pos&) = default;
};

enum class Sidedness : uint8_t { one = 1, two = 2, three = 3, four = 4 };

// Query rectangle [i1..i2] x [j1..j2], 1-based inclusive. A k-sided query
// has 4-k sides anchored at the top-left array boundary:
//   1-sided: i1=1, i2=m, j1=1     (column prefix over all rows)
//   2-sided: i1=1, j1=1
//   3-sided: i1=1                 (open to the top)
//   4-sided: arbitrary rectangle
struct QueryRect {
    Sidedness sidedness = Sidedness::four;
    int i1 = 1, i2 = 1, j1 = 1, j2 = 1;

    static QueryRect sided1(int m, int j) { return {Sidedness::one, 1, m, 1, j}; }
    static QueryRect sided2(int i, int j) { return {Sidedness::two, 1, i, 1, j}; }
    static QueryRect sided3(int i, int j1, int j2) { return {Sidedness::three, 1, i, j1, j2}; }
    static QueryRect sided4(int i1, int i2, int j1, int j2) {
        return {Sidedness::four, i1, i2, j1, j2};
    }

    bool contains(Pos p) const {
        return i1 <= p.row && p.row <= i2 && j1 <= p.col && p.col <= j2;
    }
    friend auto operator<=>(const QueryRect&, const QueryRect&) = default;
};

// Throws std::out_of_range unless q is well-formed for an m x n matrix,
// including the anchoring required by its sidedness.
void validate_query(const QueryRect& q, int m, int n);

inline int ceil_log2_u64(uint64_t v) {
    // smallest w with 2^w >= v; v >= 1
    int w = 0;
    uint64_t p = 1;
    while (p < v) {
        p <<= 1;
        ++w;
    }
    return w;
}

}  // namespace rmq
