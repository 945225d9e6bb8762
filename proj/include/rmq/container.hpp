#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rmq/bitstream.hpp"
#include "rmq/matrix.hpp"

namespace rmq {

// Serialized container: magic "RMQE", version byte 1, scheme id byte,
// m and n as unsigned LEB128, payload bit length as LEB128, payload bits
// zero-padded to a byte boundary.
enum class Scheme : uint8_t {
    offsets = 1,
    types = 2,
    stacked = 3,
    threerow = 4,
    onesided = 5,
    twosided = 6,
    region4 = 7,
    region3 = 8,
    grid = 9,
    twoxn7 = 10,
    twoxn5 = 11,
};

constexpr Scheme kAllSchemes[] = {Scheme::offsets, Scheme::types,   Scheme::stacked,
                                  Scheme::threerow, Scheme::onesided, Scheme::twosided,
                                  Scheme::region4, Scheme::region3, Scheme::grid,
                                  Scheme::twoxn7,  Scheme::twoxn5};

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);
Sidedness scheme_sidedness(Scheme s);
// dimension constraints (m=1 for the 1D codecs, m=2/3 for the fixed-row
// structures, N>=4 for the grid)
bool scheme_supports(Scheme s, int m, int n);

struct Container {
    Scheme scheme;
    int m, n;
    Bits payload;
};

std::vector<uint8_t> container_write(const Container& c);
Container container_read(const std::vector<uint8_t>& bytes);

// encode a matrix under a scheme (payload only)
Bits encode_scheme(Scheme s, const RankMatrix& a);

// A decoded structure ready to answer queries of the scheme's sidedness.
// Decoding never touches the source matrix.
class DecodedScheme {
public:
    static DecodedScheme decode(Scheme s, int m, int n, const Bits& payload);
    static DecodedScheme decode(const Container& c) {
        return decode(c.scheme, c.m, c.n, c.payload);
    }
    ~DecodedScheme();
    DecodedScheme(DecodedScheme&&) noexcept;
    DecodedScheme& operator=(DecodedScheme&&) noexcept;

    Pos query(const QueryRect& q) const;
    Scheme scheme() const { return scheme_; }
    int rows() const { return m_; }
    int cols() const { return n_; }

private:
    DecodedScheme();
    struct Impl;
    Scheme scheme_ = Scheme::offsets;
    int m_ = 0, n_ = 0;
    std::unique_ptr<Impl> impl_;
};

}  // namespace rmq
