#pragma once

#include <cstdint>
#include <vector>

#include "rmq/bitstream.hpp"
#include "rmq/matrix.hpp"

namespace rmq {

// Prefix-maxima position list. 1-sided: the positions maximal in
// [1..m]x[1..j], in increasing column order. 2-sided: the positions
// maximal in [1..i]x[1..j], sorted by decreasing value. Each position is
// stored in ceil(log2(nm+1)) bits; a gamma-coded count header is counted
// separately from the position bits.
struct PrefixMaxEncoding {
    Sidedness variant = Sidedness::one;
    int m = 0, n = 0;
    std::vector<Pos> positions;

    int position_width() const { return ceil_log2_u64(uint64_t(m) * uint64_t(n) + 1); }
    size_t position_bits() const { return positions.size() * size_t(position_width()); }
    Bits to_bits() const;
    static PrefixMaxEncoding from_bits(Sidedness variant, int m, int n, const Bits& bits);
};

PrefixMaxEncoding encode_1sided(const RankMatrix& a);
Pos query_1sided(const PrefixMaxEncoding& e, int j);

PrefixMaxEncoding encode_2sided(const RankMatrix& a);
Pos query_2sided(const PrefixMaxEncoding& e, int i, int j);

// Region delimiters for 4-sided queries: per position, the clockwise list
// (starting from the position above in its column) of cells (k,l) that are
// largest in the rectangle spanned by (i,j) and (k,l) with (i,j) second
// largest. A query is answered by the unique position none of whose
// delimiters falls inside it.
struct RegionEncoding4 {
    int m = 0, n = 0;
    std::vector<std::vector<Pos>> delims;  // row-major by position

    Bits to_bits() const;
    static RegionEncoding4 from_bits(int m, int n, const Bits& bits);
};

RegionEncoding4 encode_4sided_regions(const RankMatrix& a);
Pos query_4sided(const RegionEncoding4& e, const QueryRect& q);

// Delimiter pairs for 3-sided (top-open) queries, stored only for column
// prefix maxima: the next prefix maximum below in the column (virtual row
// m+1 when absent) plus the Pareto-minimal blocking cells on each side
// under (row reach, column distance). Sorted by p's column; rows in fixed
// width, column difference gamma-coded.
struct Region3Group {
    Pos p;
    std::vector<Pos> qs;  // blocking cells; q.row == m+1 marks the virtual below delimiter
};

struct RegionEncoding3 {
    int m = 0, n = 0;
    std::vector<Region3Group> groups;  // sorted by (p.col, p.row)

    size_t pair_count() const;
    Bits to_bits() const;
    static RegionEncoding3 from_bits(int m, int n, const Bits& bits);
};

RegionEncoding3 encode_3sided(const RankMatrix& a);
Pos query_3sided(const RegionEncoding3& e, const QueryRect& q);

}  // namespace rmq
