#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>

#include "rmq/bitstream.hpp"

namespace rmq {

// Arbitrary-precision mixed-radix integer. Digits are pushed least
// significant first: push(d, s) maps (value, weight) to
// (d * weight + value, weight * s), so the latest digit is the most
// significant so far. Weights reach n! scale, far beyond machine words.
class MixedRadixAccumulator {
public:
    MixedRadixAccumulator() : value_(0), weight_(1) {}

    void push(uint64_t digit, uint64_t radix);

    // (value mod radix, value div radix)
    static std::pair<uint64_t, mpz_class> pop(const mpz_class& value, uint64_t radix);

    const mpz_class& value() const { return value_; }
    const mpz_class& weight() const { return weight_; }

    // ceil(log2 weight): the exact serialized width
    size_t bit_width() const { return width_for(weight_); }
    static size_t width_for(const mpz_class& weight);

    // value as a fixed-width little-endian bit field of bit_width() bits
    void serialize(BitWriter& w) const;
    static mpz_class deserialize(BitReader& r, size_t width);

private:
    mpz_class value_, weight_;
};

}  // namespace rmq
