#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rmq/types.hpp"

namespace rmq {

// m x n grid of distinct totally ordered priorities: a permutation of
// 0..mn-1 in row-major order. Only comparisons matter, so ranks stand in
// for the real-valued model and ties are impossible by construction.
class RankMatrix {
public:
    RankMatrix(int m, int n, std::vector<int64_t> cells);

    int rows() const { return m_; }
    int cols() const { return n_; }
    size_t count() const { return cells_.size(); }
    // 1-based access
    int64_t at(int i, int j) const { return cells_[size_t(i - 1) * n_ + (j - 1)]; }
    const std::vector<int64_t>& cells() const { return cells_; }

private:
    int m_, n_;
    std::vector<int64_t> cells_;
};

// Deterministic for a fixed seed: mt19937_64 + Fisher-Yates over the
// identity ranks, drawing bounds by rejection so results do not depend on
// the standard library's distribution internals.
RankMatrix gen_random_matrix(int m, int n, uint64_t seed);

// Position of the unique maximum cell in q, by linear scan.
Pos oracle_rmq(const RankMatrix& a, const QueryRect& q);

// All queries of the given sidedness in canonical lexicographic
// (i1,i2,j1,j2) order.
std::vector<QueryRect> enumerate_queries(int m, int n, Sidedness s);

// Oracle answers over enumerate_queries in canonical order; two matrices
// are RMQ-equivalent iff their signatures are equal.
std::vector<Pos> answer_signature(const RankMatrix& a, Sidedness s);

// Text format: "m n" then m lines of n decimal ranks. Strict: exactly
// m*n values forming a permutation of 0..mn-1.
std::string write_matrix_text(const RankMatrix& a);
RankMatrix parse_matrix_text(const std::string& text);

// splitmix64: per-trial seed derivation from a master seed
uint64_t splitmix64(uint64_t& state);
inline uint64_t derive_seed(uint64_t master, uint64_t trial) {
    uint64_t s = master + 0x9e3779b97f4a7c15ULL * (trial + 1);
    return splitmix64(s);
}

}  // namespace rmq
