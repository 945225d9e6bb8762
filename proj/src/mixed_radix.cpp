#include "rmq/mixed_radix.hpp"

#include <stdexcept>

namespace rmq {

void MixedRadixAccumulator::push(uint64_t digit, uint64_t radix) {
    if (radix == 0) throw std::invalid_argument("radix must be >= 1");
    if (digit >= radix) throw std::invalid_argument("digit must be < radix");
    mpz_class term;
    mpz_mul_ui(term.get_mpz_t(), weight_.get_mpz_t(), digit);
    value_ += term;
    mpz_mul_ui(weight_.get_mpz_t(), weight_.get_mpz_t(), radix);
}

std::pair<uint64_t, mpz_class> MixedRadixAccumulator::pop(const mpz_class& value, uint64_t radix) {
    if (radix == 0) throw std::invalid_argument("radix must be >= 1");
    mpz_class q;
    uint64_t rem = mpz_fdiv_q_ui(q.get_mpz_t(), value.get_mpz_t(), radix);
    return {rem, q};
}

size_t MixedRadixAccumulator::width_for(const mpz_class& weight) {
    if (weight <= 0) throw std::invalid_argument("weight must be >= 1");
    if (weight == 1) return 0;
    mpz_class top = weight - 1;
    return mpz_sizeinbase(top.get_mpz_t(), 2);
}

void MixedRadixAccumulator::serialize(BitWriter& w) const {
    size_t width = bit_width();
    for (size_t i = 0; i < width; ++i) w.put(mpz_tstbit(value_.get_mpz_t(), i));
}

mpz_class MixedRadixAccumulator::deserialize(BitReader& r, size_t width) {
    mpz_class v = 0;
    for (size_t i = 0; i < width; ++i)
        if (r.get()) mpz_setbit(v.get_mpz_t(), i);
    return v;
}

}  // namespace rmq
