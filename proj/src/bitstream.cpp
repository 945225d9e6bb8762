#include "rmq/bitstream.hpp"

namespace rmq {

void gamma_encode(BitWriter& w, uint64_t v) {
    if (v == 0) throw std::invalid_argument("gamma code requires v >= 1");
    int nbits = 64 - __builtin_clzll(v);  // floor(log2 v) + 1
    for (int i = 0; i < nbits - 1; ++i) w.put(false);
    for (int i = nbits - 1; i >= 0; --i) w.put((v >> i) & 1);
}

uint64_t gamma_decode(BitReader& r) {
    int zeros = 0;
    while (!r.get()) {
        if (++zeros > 63) throw FormatError("gamma code prefix too long");
    }
    uint64_t v = 1;
    for (int i = 0; i < zeros; ++i) v = (v << 1) | uint64_t(r.get());
    return v;
}

void leb128_encode(std::vector<uint8_t>& out, uint64_t v) {
    do {
        uint8_t b = v & 0x7f;
        v >>= 7;
        if (v) b |= 0x80;
        out.push_back(b);
    } while (v);
}

uint64_t leb128_decode(const std::vector<uint8_t>& in, size_t& off) {
    uint64_t v = 0;
    int shift = 0;
    while (true) {
        if (off >= in.size()) throw FormatError("truncated LEB128 field");
        uint8_t b = in[off++];
        if (shift > 63 || (shift == 63 && (b & 0x7f) > 1))
            throw FormatError("LEB128 value overflows 64 bits");
        v |= uint64_t(b & 0x7f) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
    }
}

}  // namespace rmq
