#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rmq/bitstream.hpp"

namespace rmq {

// Static symbol model with exact rational probabilities weight[s] / total.
// Probabilities like 1/3 are represented exactly, so size accounting never
// drifts.
class StaticModel {
public:
    explicit StaticModel(std::vector<uint64_t> weights);

    size_t alphabet_size() const { return cum_.size() - 1; }
    uint64_t total() const { return cum_.back(); }
    uint64_t cum(size_t s) const { return cum_[s]; }
    uint64_t weight(size_t s) const { return cum_[s + 1] - cum_[s]; }
    // -log2 p(s)
    double bits_of(size_t s) const;

private:
    std::vector<uint64_t> cum_;  // cum_[0]=0 .. cum_[k]=total
};

// Binary arithmetic coder over a 62-bit integer interval. Output length is
// within 2 bits of ceil(sum -log2 p(s_i)) on every input; encode checks
// this. Decoding needs the symbol count; the reader supplies phantom zero
// bits past the payload for the decoder's lookahead window.
Bits arith_encode(std::span<const uint32_t> symbols, const StaticModel& model);
std::vector<uint32_t> arith_decode(BitReader& r, size_t count, const StaticModel& model);
std::vector<uint32_t> arith_decode(const Bits& bits, size_t count, const StaticModel& model);

// ceil of the model's ideal code length for the given symbol sequence
uint64_t ideal_code_bits(std::span<const uint32_t> symbols, const StaticModel& model);

}  // namespace rmq
