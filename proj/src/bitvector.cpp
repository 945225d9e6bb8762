#include "rmq/bitvector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace rmq {

namespace {
constexpr uint64_t kSuperBits = 4096;
constexpr uint64_t kBlockBits = 512;
constexpr uint64_t kWordsPerBlock = kBlockBits / 64;
}  // namespace

IndexedBitvector::IndexedBitvector(const Bits& bits) : n_(bits.bit_len) {
    words_.assign((n_ + 63) / 64, 0);
    for (size_t i = 0; i < bits.bytes.size(); ++i)
        words_[i / 8] |= uint64_t(bits.bytes[i]) << (8 * (i % 8));
    // clear padding past bit_len
    if (n_ % 64) words_.back() &= (~uint64_t(0)) >> (64 - n_ % 64);
    if (words_.empty()) words_.push_back(0);

    size_t nblocks = (n_ + kBlockBits - 1) / kBlockBits + 1;
    block_.assign(nblocks, 0);
    super_.assign((nblocks * kBlockBits) / kSuperBits + 2, 0);
    uint64_t total = 0, in_super = 0;
    for (size_t b = 0; b < nblocks; ++b) {
        if (b * kBlockBits % kSuperBits == 0) {
            super_[b * kBlockBits / kSuperBits] = total;
            in_super = 0;
        }
        block_[b] = uint16_t(in_super);
        uint64_t cnt = 0;
        for (size_t w = b * kWordsPerBlock; w < (b + 1) * kWordsPerBlock && w < words_.size(); ++w)
            cnt += std::popcount(words_[w]);
        total += cnt;
        in_super += cnt;
    }
    ones_ = total;
}

uint64_t IndexedBitvector::rank1(uint64_t i) const {
    // ones in positions [0, i)
    uint64_t r = super_[i / kSuperBits] + block_[i / kBlockBits];
    uint64_t w = (i / kBlockBits) * kWordsPerBlock;
    for (; (w + 1) * 64 <= i; ++w) r += std::popcount(words_[w]);
    if (i % 64) r += std::popcount(words_[w] & ((uint64_t(1) << (i % 64)) - 1));
    return r;
}

uint64_t IndexedBitvector::rank(bool bit, uint64_t i) const {
    if (i > n_) throw std::out_of_range("rank position past end of bit string");
    uint64_t r1 = rank1(i);
    return bit ? r1 : i - r1;
}

uint64_t IndexedBitvector::select(bool bit, uint64_t k) const {
    if (k == 0 || k > count(bit)) throw std::out_of_range("select ordinal out of range");
    // superblock: largest s with count-before(s * kSuperBits) < k
    size_t lo = 0, hi = (n_ + kSuperBits - 1) / kSuperBits;
    auto before = [&](uint64_t pos_blocks) {
        uint64_t ones = super_[pos_blocks];
        return bit ? ones : pos_blocks * kSuperBits - ones;
    };
    while (lo + 1 < hi) {
        size_t mid = (lo + hi) / 2;
        if (before(mid) < k) lo = mid; else hi = mid;
    }
    uint64_t base = lo * kSuperBits;
    uint64_t need = k - before(lo);
    // walk blocks within the superblock
    size_t b = base / kBlockBits;
    size_t bend = std::min<size_t>(b + kSuperBits / kBlockBits, (n_ + kBlockBits - 1) / kBlockBits);
    while (b + 1 < bend) {
        uint64_t in_block = bit ? block_[b + 1] : (b + 1 - base / kBlockBits) * kBlockBits - block_[b + 1];
        if (in_block < need) { /* keep scanning */ } else break;
        ++b;
    }
    // rewind: block_[b] counts ones before block b within the superblock
    uint64_t done = bit ? block_[b] : (b - base / kBlockBits) * kBlockBits - block_[b];
    need -= done;
    for (size_t w = b * kWordsPerBlock;; ++w) {
        uint64_t word = bit ? words_[w] : ~words_[w];
        unsigned pc = std::popcount(word);
        if (pc >= need) {
            // need-th set bit within word
            for (int i = 0;; ++i) {
                if ((word >> i) & 1) {
                    if (--need == 0) return w * 64 + i + 1;
                }
            }
        }
        need -= pc;
    }
}

uint64_t IndexedBitvector::directory_bits() const {
    return super_.size() * 64 + block_.size() * 16;
}

}  // namespace rmq
