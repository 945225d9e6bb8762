#pragma once

#include "rmq/bitstream.hpp"
#include "rmq/cartesian.hpp"
#include "rmq/matrix.hpp"

namespace rmq {

// Query structures for 2 x n arrays.
//   indexed7:   joint-tree BP (2n) + per-column row indicators (n) + two
//               row BPs (4n) = 7n bits; both-row queries via joint LCA
//               plus the answer column's indicator bit.
//   streaming5: two row BPs (4n) + merge bits (n) = 5n bits; both-row
//               queries walk the merge bits from the root, skipping whole
//               subtrees by offset arithmetic, worst case O(n).
enum class TwoRowVariant { indexed7, streaming5 };

class TwoRowStructure {
public:
    static TwoRowStructure build(const RankMatrix& a, TwoRowVariant v);
    static TwoRowStructure from_bits(TwoRowVariant v, int n, const Bits& payload);

    Pos query(const QueryRect& q) const;
    const Bits& payload() const { return payload_; }
    TwoRowVariant variant() const { return variant_; }
    int cols() const { return n_; }

    static size_t expected_payload_bits(TwoRowVariant v, int n) {
        return v == TwoRowVariant::indexed7 ? 7 * size_t(n) : 5 * size_t(n);
    }

private:
    TwoRowVariant variant_ = TwoRowVariant::indexed7;
    int n_ = 0;
    CartesianTree top_, bottom_;
    CartesianTree joint_;             // indexed7
    std::vector<uint8_t> col_bottom_; // indexed7: 1 = bottom holds the column max
    Bits merge_bits_;                 // streaming5
    Bits payload_;
};

}  // namespace rmq
