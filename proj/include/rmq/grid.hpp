#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rmq/bitstream.hpp"
#include "rmq/bitvector.hpp"
#include "rmq/matrix.hpp"

namespace rmq {

// exponential quantile bucket of rank z among N values, clamped to
// [1, lambda]
int label_of(int64_t z, uint64_t n_cells, int lambda);
int grid_lambda(uint64_t n_cells);  // ceil(2 log2 log2 N) + 1

// Random-input 4-sided structure: a unary-coded label matrix, per-label
// relative ranks inside four shifted grids of boxes of side 2^(2x),
// global ranks for the top label, and an explicit table answering the
// queries that fit no box. Queries resolve the maximal label via a
// block-decomposed index over the labels, then compare stored ranks.
class GridStructure {
public:
    struct FailEntry {
        QueryRect q;
        Pos answer;
    };
    struct SpaceReport {
        uint64_t label_bits = 0;        // (a) unary label matrix
        uint64_t box_rank_bits = 0;     // (b) shifted-grid relative ranks
        uint64_t global_rank_bits = 0;  // (c) top-label global ranks
        uint64_t fail_bits = 0;         // (d) fail table incl. its header
        uint64_t directory_bits = 0;    // rank/select + block-index aux
        uint64_t payload_total() const {
            return label_bits + box_rank_bits + global_rank_bits + fail_bits;
        }
    };

    static GridStructure build(const RankMatrix& a);
    static GridStructure from_bits(int m, int n, const Bits& payload);

    Pos query(const QueryRect& q) const;
    const Bits& payload() const { return payload_; }
    SpaceReport space_report() const { return report_; }
    int lambda() const { return lambda_; }
    const std::vector<FailEntry>& fail_entries() const { return fail_; }
    int max_label(const QueryRect& q) const;
    // label read through the rank/select view of the unary string
    int label_via_select(int i, int j) const;

private:
    void build_index();
    void parse_components(BitReader& r);

    int m_ = 0, n_ = 0, lambda_ = 0;
    std::vector<uint8_t> label_;                     // row-major
    std::vector<std::vector<uint32_t>> rel_rank_;    // [(x-1)*4+s][cell]
    std::vector<std::pair<uint32_t, uint64_t>> top_; // (cell, global rank), row-major
    std::vector<FailEntry> fail_;                    // sorted by (i1,i2,j1,j2)
    IndexedBitvector label_unary_;
    // block-decomposed max-label index: 8x8 block maxima under a 2D
    // doubling table
    static constexpr int kBlock = 8;
    int mb_ = 0, nb_ = 0;
    std::vector<std::vector<uint8_t>> sparse_;  // [ki*levels+kj] flattened mb x nb
    int levels_r_ = 0, levels_c_ = 0;
    Bits payload_;
    SpaceReport report_;
};

}  // namespace rmq
