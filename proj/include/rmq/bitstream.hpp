#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rmq/types.hpp"

namespace rmq {

// An exact-length bit string. Bit i lives in bytes[i/8] at 1 << (i%8)
// (LSB-first within each byte); fixed-width fields are little-endian.
// This single convention is shared by every payload and golden file.
struct Bits {
    std::vector<uint8_t> bytes;
    size_t bit_len = 0;

    bool get(size_t i) const { return (bytes[i >> 3] >> (i & 7)) & 1; }
    friend bool operator==(const Bits& a, const Bits& b) {
        return a.bit_len == b.bit_len && a.bytes == b.bytes;
    }
};

class BitWriter {
public:
    void put(bool bit) {
        if ((nbits_ & 7) == 0) bytes_.push_back(0);
        if (bit) bytes_.back() |= uint8_t(1u << (nbits_ & 7));
        ++nbits_;
    }
    // width lowest bits of value, LSB first
    void put_bits(uint64_t value, int width) {
        for (int i = 0; i < width; ++i) put((value >> i) & 1);
    }
    void append(const Bits& b) {
        for (size_t i = 0; i < b.bit_len; ++i) put(b.get(i));
    }
    size_t bit_count() const { return nbits_; }
    Bits take() {
        Bits b{std::move(bytes_), nbits_};
        bytes_ = {};
        nbits_ = 0;
        return b;
    }

private:
    std::vector<uint8_t> bytes_;
    size_t nbits_ = 0;
};

class BitReader {
public:
    explicit BitReader(const Bits& b) : bits_(&b) {}

    bool get() {
        if (pos_ >= bits_->bit_len) throw FormatError("bit stream exhausted");
        return bits_->get(pos_++);
    }
    // get() that yields 0 past the end; used by the arithmetic decoder,
    // which reads a fixed window ahead of its content.
    bool get_or_zero() {
        if (pos_ >= bits_->bit_len) {
            ++pos_;
            return false;
        }
        return bits_->get(pos_++);
    }
    bool peek() const {
        if (pos_ >= bits_->bit_len) throw FormatError("bit stream exhausted");
        return bits_->get(pos_);
    }
    uint64_t get_bits(int width) {
        uint64_t v = 0;
        for (int i = 0; i < width; ++i)
            if (get()) v |= uint64_t(1) << i;
        return v;
    }
    size_t pos() const { return pos_; }
    void seek(size_t p) { pos_ = p; }
    size_t remaining() const { return pos_ >= bits_->bit_len ? 0 : bits_->bit_len - pos_; }

private:
    const Bits* bits_;
    size_t pos_ = 0;
};

// Elias gamma code of v >= 1: floor(log2 v) zeros, then v's binary digits
// most significant first. Length 2*floor(log2 v) + 1.
void gamma_encode(BitWriter& w, uint64_t v);
uint64_t gamma_decode(BitReader& r);

// Unsigned LEB128 over bytes (container header fields).
void leb128_encode(std::vector<uint8_t>& out, uint64_t v);
uint64_t leb128_decode(const std::vector<uint8_t>& in, size_t& off);

// 0 -> 1, -1 -> 2, 1 -> 3, -2 -> 4, ... maps signed deltas to gamma-codable
// positive integers.
inline uint64_t zigzag(int64_t d) {
    return d >= 0 ? (uint64_t(d) << 1) + 1 : (uint64_t(-d) << 1);
}
inline int64_t unzigzag(uint64_t z) {
    return (z & 1) ? int64_t(z >> 1) : -int64_t(z >> 1);
}

}  // namespace rmq
