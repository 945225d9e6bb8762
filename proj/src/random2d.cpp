#include "rmq/random2d.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace rmq {

Bits PrefixMaxEncoding::to_bits() const {
    BitWriter w;
    gamma_encode(w, positions.size() + 1);
    int width = position_width();
    for (Pos p : positions)
        w.put_bits(uint64_t(p.row - 1) * uint64_t(n) + uint64_t(p.col - 1), width);
    return w.take();
}

PrefixMaxEncoding PrefixMaxEncoding::from_bits(Sidedness variant, int m, int n, const Bits& bits) {
    PrefixMaxEncoding e{variant, m, n, {}};
    BitReader r(bits);
    uint64_t count = gamma_decode(r) - 1;
    if (count > uint64_t(m) * uint64_t(n)) throw FormatError("position list longer than the grid");
    int width = e.position_width();
    for (uint64_t k = 0; k < count; ++k) {
        uint64_t lin = r.get_bits(width);
        if (lin >= uint64_t(m) * uint64_t(n)) throw FormatError("position index out of range");
        e.positions.push_back({int(lin / uint64_t(n)) + 1, int(lin % uint64_t(n)) + 1});
    }
    if (r.pos() != bits.bit_len) throw FormatError("prefix-maxima payload has trailing bits");
    return e;
}

PrefixMaxEncoding encode_1sided(const RankMatrix& a) {
    PrefixMaxEncoding e{Sidedness::one, a.rows(), a.cols(), {}};
    int64_t best = -1;
    for (int j = 1; j <= a.cols(); ++j) {
        int row = 0;
        for (int i = 1; i <= a.rows(); ++i)
            if (a.at(i, j) > best) {
                best = a.at(i, j);
                row = i;
            }
        if (row) e.positions.push_back({row, j});
    }
    return e;
}

Pos query_1sided(const PrefixMaxEncoding& e, int j) {
    if (e.variant != Sidedness::one) throw std::invalid_argument("not a 1-sided encoding");
    if (j < 1 || j > e.n) throw std::out_of_range("column out of range");
    // stored columns increase; take the last one <= j
    Pos best{};
    for (Pos p : e.positions) {
        if (p.col > j) break;
        best = p;
    }
    return best;
}

PrefixMaxEncoding encode_2sided(const RankMatrix& a) {
    PrefixMaxEncoding e{Sidedness::two, a.rows(), a.cols(), {}};
    std::vector<std::pair<int64_t, Pos>> found;
    std::vector<int64_t> colbest(a.cols() + 1, -1);  // max of [1..i] x [1..j] as i grows
    for (int i = 1; i <= a.rows(); ++i) {
        int64_t rowbest = -1;
        for (int j = 1; j <= a.cols(); ++j) {
            colbest[j] = std::max(colbest[j], a.at(i, j));
            rowbest = std::max(rowbest, colbest[j]);
            if (a.at(i, j) == rowbest) found.push_back({rowbest, Pos{i, j}});
        }
    }
    std::sort(found.begin(), found.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    for (auto& [v, p] : found) e.positions.push_back(p);
    return e;
}

Pos query_2sided(const PrefixMaxEncoding& e, int i, int j) {
    if (e.variant != Sidedness::two) throw std::invalid_argument("not a 2-sided encoding");
    if (i < 1 || i > e.m || j < 1 || j > e.n) throw std::out_of_range("corner out of range");
    for (Pos p : e.positions)
        if (p.row <= i && p.col <= j) return p;
    throw std::logic_error("2-sided list must contain (1,1)");
}

namespace {

// nearest strictly-larger cell along a row/column axis; 0 row/col if none
Pos axis_delimiter(const RankMatrix& a, Pos p, int dr, int dc) {
    int64_t val = a.at(p.row, p.col);
    int i = p.row + dr, j = p.col + dc;
    while (i >= 1 && i <= a.rows() && j >= 1 && j <= a.cols()) {
        if (a.at(i, j) > val) return {i, j};
        i += dr;
        j += dc;
    }
    return {0, 0};
}

// staircase of span-minimal larger cells in one quadrant. rowdir/coldir in
// {-1,+1}; near_row bounds candidate rows at the axis delimiter of this
// vertical direction; stop_col is the column of the horizontal axis
// delimiter (exclusive), 0 when absent. Emits columns in sweep order
// (moving away from p).
std::vector<Pos> quadrant_sweep(const RankMatrix& a, Pos p, int rowdir, int coldir, int axis_row,
                                int stop_col) {
    std::vector<Pos> out;
    int64_t val = a.at(p.row, p.col);
    // deepest admissible row, exclusive: starts at the vertical axis
    // delimiter (its span swallows anything deeper)
    int limit = axis_row != 0 ? axis_row : (rowdir < 0 ? 0 : a.rows() + 1);
    for (int l = p.col + coldir; l >= 1 && l <= a.cols(); l += coldir) {
        if (stop_col != 0 && l * coldir >= stop_col * coldir) break;
        // nearest-to-p larger cell strictly between limit and p.row
        for (int k = p.row + rowdir; k != limit; k += rowdir) {
            if (a.at(k, l) > val) {
                out.push_back({k, l});
                limit = k;
                break;
            }
        }
        if (limit == p.row + rowdir) break;  // staircase reached the row next to p
    }
    return out;
}

}  // namespace

RegionEncoding4 encode_4sided_regions(const RankMatrix& a) {
    RegionEncoding4 e{a.rows(), a.cols(), {}};
    e.delims.resize(a.count());
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j) {
            Pos p{i, j};
            Pos north = axis_delimiter(a, p, -1, 0);
            Pos east = axis_delimiter(a, p, 0, +1);
            Pos south = axis_delimiter(a, p, +1, 0);
            Pos west = axis_delimiter(a, p, 0, -1);
            std::vector<Pos> ne = quadrant_sweep(a, p, -1, +1, north.row, east.col);
            std::vector<Pos> se = quadrant_sweep(a, p, +1, +1, south.row, east.col);
            std::vector<Pos> sw = quadrant_sweep(a, p, +1, -1, south.row, west.col);
            std::vector<Pos> nw = quadrant_sweep(a, p, -1, -1, north.row, west.col);
            std::vector<Pos>& list = e.delims[size_t(i - 1) * a.cols() + (j - 1)];
            auto add = [&](Pos d) {
                if (d.row != 0 || d.col != 0) list.push_back(d);
            };
            add(north);
            for (Pos d : ne) add(d);                                  // ascending column
            add(east);
            for (auto it = se.rbegin(); it != se.rend(); ++it) add(*it);  // descending column
            add(south);
            for (Pos d : sw) add(d);                                  // descending column
            add(west);
            for (auto it = nw.rbegin(); it != nw.rend(); ++it) add(*it);  // ascending column
        }
    return e;
}

Bits RegionEncoding4::to_bits() const {
    BitWriter w;
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) {
            const std::vector<Pos>& list = delims[size_t(i - 1) * n + (j - 1)];
            gamma_encode(w, list.size() + 1);
            for (Pos d : list) {
                gamma_encode(w, zigzag(d.row - i));
                gamma_encode(w, zigzag(d.col - j));
            }
        }
    return w.take();
}

RegionEncoding4 RegionEncoding4::from_bits(int m, int n, const Bits& bits) {
    RegionEncoding4 e{m, n, {}};
    e.delims.resize(size_t(m) * n);
    BitReader r(bits);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) {
            uint64_t count = gamma_decode(r) - 1;
            if (count > uint64_t(m) * n) throw FormatError("delimiter list longer than the grid");
            std::vector<Pos>& list = e.delims[size_t(i - 1) * n + (j - 1)];
            for (uint64_t k = 0; k < count; ++k) {
                int dr = int(unzigzag(gamma_decode(r)));
                int dc = int(unzigzag(gamma_decode(r)));
                list.push_back({i + dr, j + dc});
            }
        }
    if (r.pos() != bits.bit_len) throw FormatError("region payload has trailing bits");
    return e;
}

Pos query_4sided(const RegionEncoding4& e, const QueryRect& q) {
    validate_query(q, e.m, e.n);
    Pos answer{};
    for (int i = q.i1; i <= q.i2; ++i)
        for (int j = q.j1; j <= q.j2; ++j) {
            bool blocked = false;
            for (Pos d : e.delims[size_t(i - 1) * e.n + (j - 1)])
                if (q.contains(d)) {
                    blocked = true;
                    break;
                }
            if (!blocked) {
                if (answer.row != 0)
                    throw std::logic_error("two positions claim the same 4-sided query");
                answer = {i, j};
            }
        }
    if (answer.row == 0) throw std::logic_error("no position claims the 4-sided query");
    return answer;
}

namespace {

// Pareto-minimal blockers of p on one horizontal side for top-open
// queries. A cell (k,l) blocks [1..i'] x [j1..j2] iff max(p.row,k) <= i'
// and l lies in the column range; minimal cells have strictly decreasing
// row reach as the column distance grows. cap = row of the real below
// delimiter (blockers reaching at least as deep are dominated by it).
void side_blockers(const RankMatrix& a, Pos p, int coldir, int cap, std::vector<Pos>& out) {
    int64_t val = a.at(p.row, p.col);
    int cur = cap;  // strict upper bound on admissible reach
    for (int l = p.col + coldir; l >= 1 && l <= a.cols(); l += coldir) {
        // best candidate in this column: minimal reach, then maximal value
        int reach = 0;
        Pos cand{};
        int64_t cval = -1;
        for (int k = 1; k <= a.rows(); ++k) {
            if (a.at(k, l) <= val) continue;
            int kreach = std::max(p.row, k);
            if (reach == 0 || kreach < reach || (kreach == reach && a.at(k, l) > cval)) {
                reach = kreach;
                cand = {k, l};
                cval = a.at(k, l);
            }
        }
        if (reach != 0 && reach < cur) {
            out.push_back(cand);
            cur = reach;
            if (cur == p.row) break;  // no shallower reach is possible
        }
    }
}

}  // namespace

RegionEncoding3 encode_3sided(const RankMatrix& a) {
    RegionEncoding3 e{a.rows(), a.cols(), {}};
    for (int j = 1; j <= a.cols(); ++j) {
        int64_t colbest = -1;
        for (int i = 1; i <= a.rows(); ++i) {
            if (a.at(i, j) <= colbest) continue;  // not a column prefix maximum
            colbest = a.at(i, j);
            Pos p{i, j};
            Region3Group g{p, {}};
            Pos below = axis_delimiter(a, p, +1, 0);
            if (below.row == 0) below = {a.rows() + 1, j};  // virtual one past the edge
            g.qs.push_back(below);
            int cap = below.row;
            side_blockers(a, p, +1, cap, g.qs);
            side_blockers(a, p, -1, cap, g.qs);
            e.groups.push_back(std::move(g));
        }
    }
    // sorted by (p.col, p.row) by construction of the outer loops? columns
    // ascend, rows ascend within a column
    return e;
}

size_t RegionEncoding3::pair_count() const {
    size_t c = 0;
    for (const Region3Group& g : groups) c += g.qs.size();
    return c;
}

Bits RegionEncoding3::to_bits() const {
    BitWriter w;
    gamma_encode(w, pair_count() + 1);
    int prow_width = ceil_log2_u64(uint64_t(m));
    int qrow_width = ceil_log2_u64(uint64_t(m) + 1);
    int prev_col = 1;
    for (const Region3Group& g : groups) {
        for (Pos q : g.qs) {
            gamma_encode(w, uint64_t(g.p.col - prev_col) + 1);
            prev_col = g.p.col;
            w.put_bits(uint64_t(g.p.row - 1), prow_width);
            int side = q.col == g.p.col ? 0 : (q.col > g.p.col ? 1 : 2);
            w.put_bits(uint64_t(side), 2);
            w.put_bits(uint64_t(q.row - 1), qrow_width);
            gamma_encode(w, uint64_t(std::abs(q.col - g.p.col)) + 1);
        }
    }
    return w.take();
}

RegionEncoding3 RegionEncoding3::from_bits(int m, int n, const Bits& bits) {
    RegionEncoding3 e{m, n, {}};
    BitReader r(bits);
    uint64_t count = gamma_decode(r) - 1;
    int prow_width = ceil_log2_u64(uint64_t(m));
    int qrow_width = ceil_log2_u64(uint64_t(m) + 1);
    int prev_col = 1;
    for (uint64_t k = 0; k < count; ++k) {
        int pcol = prev_col + int(gamma_decode(r) - 1);
        prev_col = pcol;
        int prow = int(r.get_bits(prow_width)) + 1;
        int side = int(r.get_bits(2));
        int qrow = int(r.get_bits(qrow_width)) + 1;
        int dist = int(gamma_decode(r) - 1);
        if (pcol > n || prow > m || qrow > m + 1 || side > 2)
            throw FormatError("3-sided pair fields out of range");
        int qcol = side == 0 ? pcol : (side == 1 ? pcol + dist : pcol - dist);
        if (qcol < 1 || qcol > n) throw FormatError("3-sided pair column out of range");
        Pos p{prow, pcol};
        if (e.groups.empty() || !(e.groups.back().p == p)) e.groups.push_back({p, {}});
        e.groups.back().qs.push_back({qrow, qcol});
    }
    if (r.pos() != bits.bit_len) throw FormatError("3-sided payload has trailing bits");
    return e;
}

Pos query_3sided(const RegionEncoding3& e, const QueryRect& q) {
    validate_query(q, e.m, e.n);
    if (q.sidedness == Sidedness::four && q.i1 != 1)
        throw std::out_of_range("3-sided encoding answers top-open queries only");
    Pos answer{};
    for (const Region3Group& g : e.groups) {
        if (!q.contains(g.p)) continue;
        bool blocked = false;
        for (Pos d : g.qs)
            if (d.row <= q.i2 && q.j1 <= d.col && d.col <= q.j2) {
                blocked = true;
                break;
            }
        if (!blocked) {
            if (answer.row != 0) throw std::logic_error("two positions claim the same 3-sided query");
            answer = g.p;
        }
    }
    if (answer.row == 0) throw std::logic_error("no position claims the 3-sided query");
    return answer;
}

}  // namespace rmq
