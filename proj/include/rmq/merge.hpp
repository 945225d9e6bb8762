#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rmq/bitstream.hpp"
#include "rmq/cartesian.hpp"
#include "rmq/matrix.hpp"

namespace rmq {

// answers a column-range query [j1..j2] over some fixed row range
using RangeAnswerer = std::function<Pos(int, int)>;
// when set and returning a position, the comparison outcome for that range
// is already determined and no merge bit is stored
using KnownWinner = std::function<std::optional<Pos>(int, int)>;

inline RangeAnswerer row_answerer(const CartesianTree& t, int row) {
    return [&t, row](int j1, int j2) { return Pos{row, t.rmq(j1, j2)}; };
}

// Cartesian tree over the column-wise maxima of a row range, each node
// resolved to the row its maximum came from. Nodes are identified by
// column (in-order index).
struct JointCT {
    CartesianTree shape;
    std::vector<int32_t> winner_row;  // [col-1], 1-based rows
    std::vector<int32_t> bit_index;   // [col-1], merge-bit index, -1 if skipped (auxiliary)

    Pos answer(int j1, int j2) const {
        int c = shape.rmq(j1, j2);
        return {winner_row[c - 1], c};
    }
    friend bool operator==(const JointCT& a, const JointCT& b) {
        return a.shape == b.shape && a.winner_row == b.winner_row;
    }
};

struct MergeResult {
    JointCT joint;
    Bits bits;
};

// One comparison bit per recursion step (pre-order of the joint tree);
// bit = 1 means the bottom row wins. `upper` answers the rows above
// `bottom_row`; comparisons read the matrix. With `known`, steps whose
// winner it reports emit no bit.
MergeResult merge_build(const RankMatrix& a, int bottom_row, const RangeAnswerer& upper,
                        const CartesianTree& lower, const KnownWinner& known = nullptr);

// Reconstructs the joint tree without access to the matrix; inverse of
// merge_build for all inputs.
JointCT merge_decode(int n, int bottom_row, const RangeAnswerer& upper,
                     const CartesianTree& lower, BitReader& r, const KnownWinner& known = nullptr);
JointCT merge_decode(int n, int bottom_row, const RangeAnswerer& upper,
                     const CartesianTree& lower, const Bits& bits);

// Row Cartesian trees in balanced parentheses plus one merge-bit vector
// per row range [i..k]: n*m(m+3)/2 payload bits answering every 4-sided
// query on small-m arrays.
class StackedEncoding {
public:
    static StackedEncoding encode(const RankMatrix& a);
    static StackedEncoding decode(const Bits& payload, int m, int n);

    Pos query(const QueryRect& q) const;
    const Bits& payload() const { return payload_; }
    int rows() const { return m_; }
    int cols() const { return n_; }
    const CartesianTree& row_tree(int i) const { return row_trees_[i - 1]; }
    const JointCT& joint(int i, int k) const { return joints_[k][i]; }

    static size_t expected_payload_bits(int m, int n) {
        return size_t(n) * size_t(m) * size_t(m + 3) / 2;
    }

private:
    int m_ = 0, n_ = 0;
    std::vector<CartesianTree> row_trees_;
    std::vector<std::vector<JointCT>> joints_;  // [k][i] = rows [i..k], i < k
    Bits payload_;
};

// The m=3 encoding: three row trees (6n bits), the joint-tree winner-row
// sequence arithmetic-coded with Pr[M] = x, Pr[T] = Pr[B] = (1-x)/2, and
// merge bits for TM/MB reduced by the joint answers.
class ThreeRowEncoding {
public:
    static ThreeRowEncoding encode(const RankMatrix& a);
    static ThreeRowEncoding decode(const Bits& payload, int n);

    Pos query(const QueryRect& q) const;
    const Bits& payload() const { return payload_; }
    int cols() const { return n_; }

    uint64_t middle_count() const { return cnt_m_; }
    size_t extra_bits() const { return payload_.bit_len - 6 * size_t(n_); }
    size_t reduced_tm_bits() const { return tm_bits_; }
    size_t reduced_mb_bits() const { return mb_bits_; }
    size_t label_code_bits() const { return label_bits_; }

private:
    int n_ = 0;
    CartesianTree row_t_, row_m_, row_b_;
    JointCT tm_, mb_, tmb_;
    uint64_t cnt_m_ = 0;
    size_t tm_bits_ = 0, mb_bits_ = 0, label_bits_ = 0;
    Bits payload_;
};

// extra bits per column of the m=3 encoding as a function of the realized
// middle fraction: 2(1-x) - x log2 x - (1-x) log2(1-x); maximum log2 5 at
// x = 1/5
double three_row_cost(double x);

// Number of distinct 4-sided answer signatures over all (mn)! matrices.
// Desk scale only: requires m*n <= 9.
uint64_t count_equiv_classes(int m, int n);

}  // namespace rmq
