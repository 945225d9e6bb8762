#include "rmq/arith.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace rmq {

namespace {
constexpr int kStateBits = 62;
constexpr uint64_t kTop = uint64_t(1) << kStateBits;
constexpr uint64_t kHalf = kTop >> 1;
constexpr uint64_t kQuarter = kTop >> 2;
constexpr uint64_t kMaxTotal = uint64_t(1) << 40;
using u128 = unsigned __int128;
}  // namespace

StaticModel::StaticModel(std::vector<uint64_t> weights) {
    if (weights.empty()) throw std::invalid_argument("model needs at least one symbol");
    cum_.assign(weights.size() + 1, 0);
    for (size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0) throw std::invalid_argument("model weights must be positive");
        cum_[i + 1] = cum_[i] + weights[i];
    }
    if (cum_.back() > kMaxTotal)
        throw std::invalid_argument("model total weight too large for coder precision");
}

double StaticModel::bits_of(size_t s) const {
    return std::log2(double(total())) - std::log2(double(weight(s)));
}

uint64_t ideal_code_bits(std::span<const uint32_t> symbols, const StaticModel& model) {
    long double bits = 0;
    for (uint32_t s : symbols) bits += model.bits_of(s);
    return uint64_t(std::ceil((double)bits - 1e-9));
}

Bits arith_encode(std::span<const uint32_t> symbols, const StaticModel& model) {
    BitWriter w;
    uint64_t low = 0, high = kTop - 1, pending = 0;
    auto emit = [&](bool bit) {
        w.put(bit);
        for (; pending; --pending) w.put(!bit);
    };
    const uint64_t den = model.total();
    for (uint32_t s : symbols) {
        if (s >= model.alphabet_size()) throw std::invalid_argument("symbol outside model alphabet");
        u128 width = u128(high - low) + 1;
        high = low + uint64_t(width * model.cum(s + 1) / den) - 1;
        low = low + uint64_t(width * model.cum(s) / den);
        for (;;) {
            if (high < kHalf) {
                emit(false);
            } else if (low >= kHalf) {
                emit(true);
                low -= kHalf;
                high -= kHalf;
            } else if (low >= kQuarter && high < 3 * kQuarter) {
                ++pending;
                low -= kQuarter;
                high -= kQuarter;
            } else {
                break;
            }
            low <<= 1;
            high = (high << 1) | 1;
        }
    }
    ++pending;
    emit(low >= kQuarter);
    Bits out = w.take();
    assert(out.bit_len <= ideal_code_bits(symbols, model) + 2);
    return out;
}

std::vector<uint32_t> arith_decode(BitReader& r, size_t count, const StaticModel& model) {
    uint64_t low = 0, high = kTop - 1, code = 0;
    for (int i = 0; i < kStateBits; ++i) code = (code << 1) | uint64_t(r.get_or_zero());
    const uint64_t den = model.total();
    std::vector<uint32_t> out;
    out.reserve(count);
    for (size_t k = 0; k < count; ++k) {
        u128 width = u128(high - low) + 1;
        uint64_t target = uint64_t((u128(code - low + 1) * den - 1) / width);
        // find s with cum(s) <= target < cum(s+1)
        size_t lo = 0, hi = model.alphabet_size();
        while (lo + 1 < hi) {
            size_t mid = (lo + hi) / 2;
            if (model.cum(mid) <= target) lo = mid; else hi = mid;
        }
        uint32_t s = uint32_t(lo);
        out.push_back(s);
        high = low + uint64_t(width * model.cum(s + 1) / den) - 1;
        low = low + uint64_t(width * model.cum(s) / den);
        for (;;) {
            if (high < kHalf) {
                // nothing
            } else if (low >= kHalf) {
                low -= kHalf;
                high -= kHalf;
                code -= kHalf;
            } else if (low >= kQuarter && high < 3 * kQuarter) {
                low -= kQuarter;
                high -= kQuarter;
                code -= kQuarter;
            } else {
                break;
            }
            low <<= 1;
            high = (high << 1) | 1;
            code = (code << 1) | uint64_t(r.get_or_zero());
        }
    }
    return out;
}

std::vector<uint32_t> arith_decode(const Bits& bits, size_t count, const StaticModel& model) {
    BitReader r(bits);
    return arith_decode(r, count, model);
}

}  // namespace rmq
