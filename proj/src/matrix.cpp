#include "rmq/matrix.hpp"

#include <limits>
#include <random>
#include <sstream>

namespace rmq {

namespace {
// practical index cap: anything larger cannot be materialized anyway
constexpr uint64_t kMaxCells = uint64_t(1) << 40;

void check_dims(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
    if (uint64_t(m) > kMaxCells / uint64_t(n))
        throw std::overflow_error("m*n overflows the supported index range");
}
}  // namespace

RankMatrix::RankMatrix(int m, int n, std::vector<int64_t> cells)
    : m_(m), n_(n), cells_(std::move(cells)) {
    check_dims(m, n);
    size_t total = size_t(m) * size_t(n);
    if (cells_.size() != total) throw std::invalid_argument("cell count must equal m*n");
    std::vector<bool> seen(total, false);
    for (int64_t v : cells_) {
        if (v < 0 || uint64_t(v) >= total || seen[size_t(v)])
            throw std::invalid_argument("cells must be a permutation of 0..mn-1");
        seen[size_t(v)] = true;
    }
}

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {
// unbiased draw from [0, bound) by rejection
uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound) {
    uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % bound;
    for (;;) {
        uint64_t v = rng();
        if (v < limit) return v % bound;
    }
}
}  // namespace

RankMatrix gen_random_matrix(int m, int n, uint64_t seed) {
    check_dims(m, n);
    size_t total = size_t(m) * size_t(n);
    std::vector<int64_t> cells(total);
    for (size_t i = 0; i < total; ++i) cells[i] = int64_t(i);
    std::mt19937_64 rng(seed);
    for (size_t i = total - 1; i > 0; --i) {
        size_t j = size_t(uniform_below(rng, i + 1));
        std::swap(cells[i], cells[j]);
    }
    return RankMatrix(m, n, std::move(cells));
}

void validate_query(const QueryRect& q, int m, int n) {
    if (!(1 <= q.i1 && q.i1 <= q.i2 && q.i2 <= m && 1 <= q.j1 && q.j1 <= q.j2 && q.j2 <= n))
        throw std::out_of_range("query rectangle out of bounds");
    switch (q.sidedness) {
        case Sidedness::one:
            if (q.i1 != 1 || q.i2 != m || q.j1 != 1)
                throw std::out_of_range("1-sided query must span all rows and anchor at column 1");
            break;
        case Sidedness::two:
            if (q.i1 != 1 || q.j1 != 1)
                throw std::out_of_range("2-sided query must anchor at (1,1)");
            break;
        case Sidedness::three:
            if (q.i1 != 1) throw std::out_of_range("3-sided query must anchor at row 1");
            break;
        case Sidedness::four:
            break;
    }
}

Pos oracle_rmq(const RankMatrix& a, const QueryRect& q) {
    validate_query(q, a.rows(), a.cols());
    Pos best{q.i1, q.j1};
    int64_t best_val = a.at(q.i1, q.j1);
    for (int i = q.i1; i <= q.i2; ++i)
        for (int j = q.j1; j <= q.j2; ++j)
            if (a.at(i, j) > best_val) {
                best_val = a.at(i, j);
                best = {i, j};
            }
    return best;
}

std::vector<QueryRect> enumerate_queries(int m, int n, Sidedness s) {
    if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
    std::vector<QueryRect> out;
    switch (s) {
        case Sidedness::one:
            for (int j = 1; j <= n; ++j) out.push_back(QueryRect::sided1(m, j));
            break;
        case Sidedness::two:
            for (int i = 1; i <= m; ++i)
                for (int j = 1; j <= n; ++j) out.push_back(QueryRect::sided2(i, j));
            break;
        case Sidedness::three:
            for (int i = 1; i <= m; ++i)
                for (int j1 = 1; j1 <= n; ++j1)
                    for (int j2 = j1; j2 <= n; ++j2) out.push_back(QueryRect::sided3(i, j1, j2));
            break;
        case Sidedness::four:
            for (int i1 = 1; i1 <= m; ++i1)
                for (int i2 = i1; i2 <= m; ++i2)
                    for (int j1 = 1; j1 <= n; ++j1)
                        for (int j2 = j1; j2 <= n; ++j2)
                            out.push_back(QueryRect::sided4(i1, i2, j1, j2));
            break;
    }
    return out;
}

std::vector<Pos> answer_signature(const RankMatrix& a, Sidedness s) {
    std::vector<Pos> sig;
    for (const QueryRect& q : enumerate_queries(a.rows(), a.cols(), s))
        sig.push_back(oracle_rmq(a, q));
    return sig;
}

std::string write_matrix_text(const RankMatrix& a) {
    std::ostringstream os;
    os << a.rows() << ' ' << a.cols() << '\n';
    for (int i = 1; i <= a.rows(); ++i) {
        for (int j = 1; j <= a.cols(); ++j) {
            if (j > 1) os << ' ';
            os << a.at(i, j);
        }
        os << '\n';
    }
    return os.str();
}

RankMatrix parse_matrix_text(const std::string& text) {
    std::istringstream is(text);
    long long m = 0, n = 0;
    if (!(is >> m >> n)) throw FormatError("matrix header must be 'm n'");
    if (m < 1 || n < 1 || m > (1 << 30) || n > (1 << 30))
        throw FormatError("matrix dimensions out of range");
    std::vector<int64_t> cells;
    cells.reserve(size_t(m) * size_t(n));
    int64_t v;
    while (is >> v) cells.push_back(v);
    if (!is.eof()) throw FormatError("matrix body contains a non-numeric token");
    if (cells.size() != size_t(m) * size_t(n))
        throw FormatError("matrix body must contain exactly m*n values");
    try {
        return RankMatrix(int(m), int(n), std::move(cells));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

}  // namespace rmq
