#pragma once

#include <cstdint>
#include <vector>

#include "rmq/bitstream.hpp"

namespace rmq {

// Plain bit string with a two-level rank directory: one absolute 64-bit
// count per 4096-bit superblock plus one relative 16-bit count per 512-bit
// block (~4.7% overhead on top of the t raw bits). select is a binary
// search over the directory followed by a word scan, O(log t).
class IndexedBitvector {
public:
    IndexedBitvector() = default;
    explicit IndexedBitvector(const Bits& bits);

    size_t size() const { return n_; }
    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    // occurrences of `bit` in positions 1..i (1-based prefix, 0 <= i <= t)
    uint64_t rank(bool bit, uint64_t i) const;
    // 1-based position of the k-th occurrence of `bit`, 1 <= k <= count(bit)
    uint64_t select(bool bit, uint64_t k) const;

    uint64_t count(bool bit) const { return bit ? ones_ : n_ - ones_; }
    // directory size, reported as auxiliary space
    uint64_t directory_bits() const;

private:
    uint64_t rank1(uint64_t i) const;

    std::vector<uint64_t> words_;
    std::vector<uint64_t> super_;   // cumulative ones per 4096-bit superblock
    std::vector<uint16_t> block_;   // ones within superblock, per 512-bit block
    uint64_t n_ = 0;
    uint64_t ones_ = 0;
};

}  // namespace rmq
