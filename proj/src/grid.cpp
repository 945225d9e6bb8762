#include "rmq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmq {

int grid_lambda(uint64_t n_cells) {
    if (n_cells < 4) throw std::invalid_argument("grid structure requires at least 4 cells");
    long double ll = std::log2(std::log2((long double)n_cells));
    return int(std::ceil(2.0L * ll - 1e-12L)) + 1;
}

int label_of(int64_t z, uint64_t n_cells, int lambda) {
    // smallest t with 2^t >= N / (N - z), clamped to [1, lambda]
    if (z < 0 || uint64_t(z) >= n_cells) throw std::invalid_argument("rank out of range");
    uint64_t rest = n_cells - uint64_t(z);
    int t = 0;
    while (rest < n_cells && t < lambda) {
        rest <<= 1;
        ++t;
    }
    return std::max(1, t);
}

namespace {

struct Shift {
    int dr, dc;
};

std::array<Shift, 4> shifts_for(int64_t r) {
    int64_t h = r / 2;
    return {Shift{0, 0}, Shift{0, int(h)}, Shift{int(h), 0}, Shift{int(h), int(h)}};
}

// box index of a cell along one dimension
inline int64_t box_ix(int coord, int off, int64_t r) { return (coord - 1 + off) / r; }

}  // namespace

GridStructure GridStructure::build(const RankMatrix& a) {
    GridStructure g;
    g.m_ = a.rows();
    g.n_ = a.cols();
    const uint64_t total = a.count();
    g.lambda_ = grid_lambda(total);
    const int m = g.m_, n = g.n_;

    g.label_.resize(total);
    for (size_t c = 0; c < total; ++c)
        g.label_[c] = uint8_t(label_of(a.cells()[c], total, g.lambda_));

    BitWriter w;
    // (a) unary labels
    for (size_t c = 0; c < total; ++c) {
        for (int k = 0; k < g.label_[c]; ++k) w.put(true);
        w.put(false);
    }
    g.report_.label_bits = w.bit_count();

    // (b) relative ranks of label-x cells inside each shifted box
    g.rel_rank_.assign(size_t(g.lambda_ - 1) * 4, {});
    for (int x = 1; x <= g.lambda_ - 1; ++x) {
        int64_t r = int64_t(1) << (2 * x);
        auto sh = shifts_for(r);
        for (int s = 0; s < 4; ++s) {
            auto& rel = g.rel_rank_[size_t(x - 1) * 4 + s];
            rel.assign(total, 0);
            int64_t nbr = box_ix(m, sh[s].dr, r), nbc = box_ix(n, sh[s].dc, r);
            for (int64_t bi = 0; bi <= nbr; ++bi)
                for (int64_t bj = 0; bj <= nbc; ++bj) {
                    std::vector<std::pair<int64_t, size_t>> members;  // (value, cell)
                    int ilo = std::max<int64_t>(1, bi * r - sh[s].dr + 1);
                    int ihi = std::min<int64_t>(m, (bi + 1) * r - sh[s].dr);
                    int jlo = std::max<int64_t>(1, bj * r - sh[s].dc + 1);
                    int jhi = std::min<int64_t>(n, (bj + 1) * r - sh[s].dc);
                    for (int i = ilo; i <= ihi; ++i)
                        for (int j = jlo; j <= jhi; ++j) {
                            size_t c = size_t(i - 1) * n + (j - 1);
                            if (g.label_[c] == x) members.push_back({a.cells()[c], c});
                        }
                    if (members.empty()) continue;
                    std::vector<std::pair<int64_t, size_t>> sorted = members;
                    std::sort(sorted.begin(), sorted.end());
                    int width = ceil_log2_u64(members.size());
                    for (auto& [val, c] : members) {
                        uint32_t rank = uint32_t(
                            std::lower_bound(sorted.begin(), sorted.end(), std::pair{val, c}) -
                            sorted.begin());
                        rel[c] = rank;
                        w.put_bits(rank, width);
                    }
                }
        }
    }
    g.report_.box_rank_bits = w.bit_count() - g.report_.label_bits;

    // (c) global ranks of top-label cells
    int rank_width = ceil_log2_u64(total);
    for (size_t c = 0; c < total; ++c)
        if (g.label_[c] == g.lambda_) {
            g.top_.push_back({uint32_t(c), uint64_t(a.cells()[c])});
            w.put_bits(uint64_t(a.cells()[c]), rank_width);
        }
    g.report_.global_rank_bits =
        w.bit_count() - g.report_.label_bits - g.report_.box_rank_bits;

    // (d) failing queries: maximal label x < lambda and no granularity-x
    // box contains the rectangle
    {
        std::vector<uint8_t> collab(n + 1);
        std::vector<int64_t> colval(n + 1);
        std::vector<int> colrow(n + 1);
        for (int i1 = 1; i1 <= m; ++i1) {
            std::fill(collab.begin(), collab.end(), 0);
            std::fill(colval.begin(), colval.end(), -1);
            for (int i2 = i1; i2 <= m; ++i2) {
                for (int j = 1; j <= n; ++j) {
                    size_t c = size_t(i2 - 1) * n + (j - 1);
                    collab[j] = std::max(collab[j], g.label_[c]);
                    if (a.cells()[c] > colval[j]) {
                        colval[j] = a.cells()[c];
                        colrow[j] = i2;
                    }
                }
                for (int j1 = 1; j1 <= n; ++j1) {
                    int lab = 0;
                    int64_t best = -1;
                    Pos bp{};
                    for (int j2 = j1; j2 <= n; ++j2) {
                        lab = std::max(lab, int(collab[j2]));
                        if (colval[j2] > best) {
                            best = colval[j2];
                            bp = {colrow[j2], j2};
                        }
                        if (lab == g.lambda_) break;  // supersets see the same top label
                        int64_t r = int64_t(1) << (2 * lab);
                        auto sh = shifts_for(r);
                        bool fits = false;
                        for (int s = 0; s < 4 && !fits; ++s)
                            fits = box_ix(i1, sh[s].dr, r) == box_ix(i2, sh[s].dr, r) &&
                                   box_ix(j1, sh[s].dc, r) == box_ix(j2, sh[s].dc, r);
                        if (!fits)
                            g.fail_.push_back({QueryRect::sided4(i1, i2, j1, j2), bp});
                    }
                }
            }
        }
    }
    size_t before = w.bit_count();
    gamma_encode(w, g.fail_.size() + 1);
    int iw = ceil_log2_u64(uint64_t(m)), jw = ceil_log2_u64(uint64_t(n));
    for (const FailEntry& f : g.fail_) {
        w.put_bits(uint64_t(f.q.i1 - 1), iw);
        w.put_bits(uint64_t(f.q.i2 - 1), iw);
        w.put_bits(uint64_t(f.q.j1 - 1), jw);
        w.put_bits(uint64_t(f.q.j2 - 1), jw);
        w.put_bits(uint64_t(f.answer.row - f.q.i1), ceil_log2_u64(uint64_t(f.q.i2 - f.q.i1 + 1)));
        w.put_bits(uint64_t(f.answer.col - f.q.j1), ceil_log2_u64(uint64_t(f.q.j2 - f.q.j1 + 1)));
    }
    g.report_.fail_bits = w.bit_count() - before;

    g.payload_ = w.take();
    g.build_index();
    return g;
}

void GridStructure::parse_components(BitReader& r) {
    const uint64_t total = uint64_t(m_) * uint64_t(n_);
    const int m = m_, n = n_;
    label_.resize(total);
    for (size_t c = 0; c < total; ++c) {
        int x = 0;
        while (r.get()) {
            if (++x > lambda_) throw FormatError("label exceeds lambda");
        }
        if (x < 1) throw FormatError("label must be at least 1");
        label_[c] = uint8_t(x);
    }
    report_.label_bits = r.pos();

    rel_rank_.assign(size_t(lambda_ - 1) * 4, {});
    for (int x = 1; x <= lambda_ - 1; ++x) {
        int64_t rr = int64_t(1) << (2 * x);
        auto sh = shifts_for(rr);
        for (int s = 0; s < 4; ++s) {
            auto& rel = rel_rank_[size_t(x - 1) * 4 + s];
            rel.assign(total, 0);
            int64_t nbr = box_ix(m, sh[s].dr, rr), nbc = box_ix(n, sh[s].dc, rr);
            for (int64_t bi = 0; bi <= nbr; ++bi)
                for (int64_t bj = 0; bj <= nbc; ++bj) {
                    std::vector<size_t> members;
                    int ilo = std::max<int64_t>(1, bi * rr - sh[s].dr + 1);
                    int ihi = std::min<int64_t>(m, (bi + 1) * rr - sh[s].dr);
                    int jlo = std::max<int64_t>(1, bj * rr - sh[s].dc + 1);
                    int jhi = std::min<int64_t>(n, (bj + 1) * rr - sh[s].dc);
                    for (int i = ilo; i <= ihi; ++i)
                        for (int j = jlo; j <= jhi; ++j) {
                            size_t c = size_t(i - 1) * n + (j - 1);
                            if (label_[c] == x) members.push_back(c);
                        }
                    if (members.empty()) continue;
                    int width = ceil_log2_u64(members.size());
                    for (size_t c : members) rel[c] = uint32_t(r.get_bits(width));
                }
        }
    }
    report_.box_rank_bits = r.pos() - report_.label_bits;

    int rank_width = ceil_log2_u64(total);
    for (size_t c = 0; c < total; ++c)
        if (label_[c] == lambda_) top_.push_back({uint32_t(c), r.get_bits(rank_width)});
    report_.global_rank_bits = r.pos() - report_.label_bits - report_.box_rank_bits;

    size_t before = r.pos();
    uint64_t fails = gamma_decode(r) - 1;
    int iw = ceil_log2_u64(uint64_t(m)), jw = ceil_log2_u64(uint64_t(n));
    for (uint64_t k = 0; k < fails; ++k) {
        int i1 = int(r.get_bits(iw)) + 1, i2 = int(r.get_bits(iw)) + 1;
        int j1 = int(r.get_bits(jw)) + 1, j2 = int(r.get_bits(jw)) + 1;
        if (i1 > i2 || i2 > m || j1 > j2 || j2 > n) throw FormatError("fail entry out of range");
        int ar = int(r.get_bits(ceil_log2_u64(uint64_t(i2 - i1 + 1)))) + i1;
        int ac = int(r.get_bits(ceil_log2_u64(uint64_t(j2 - j1 + 1)))) + j1;
        fail_.push_back({QueryRect::sided4(i1, i2, j1, j2), Pos{ar, ac}});
    }
    report_.fail_bits = r.pos() - before;
}

GridStructure GridStructure::from_bits(int m, int n, const Bits& payload) {
    GridStructure g;
    g.m_ = m;
    g.n_ = n;
    g.lambda_ = grid_lambda(uint64_t(m) * uint64_t(n));
    BitReader r(payload);
    g.parse_components(r);
    if (r.pos() != payload.bit_len) throw FormatError("grid payload has trailing bits");
    g.payload_ = payload;
    g.build_index();
    return g;
}

void GridStructure::build_index() {
    // rank/select view of the unary label string
    {
        BitWriter w;
        for (size_t c = 0; c < label_.size(); ++c) {
            for (int k = 0; k < label_[c]; ++k) w.put(true);
            w.put(false);
        }
        label_unary_ = IndexedBitvector(w.take());
    }
    mb_ = (m_ + kBlock - 1) / kBlock;
    nb_ = (n_ + kBlock - 1) / kBlock;
    levels_r_ = 1;
    while ((1 << levels_r_) <= mb_) ++levels_r_;
    levels_c_ = 1;
    while ((1 << levels_c_) <= nb_) ++levels_c_;
    sparse_.assign(size_t(levels_r_) * levels_c_, std::vector<uint8_t>(size_t(mb_) * nb_, 0));
    auto& base = sparse_[0];
    for (int i = 1; i <= m_; ++i)
        for (int j = 1; j <= n_; ++j) {
            size_t b = size_t((i - 1) / kBlock) * nb_ + size_t((j - 1) / kBlock);
            base[b] = std::max(base[b], label_[size_t(i - 1) * n_ + (j - 1)]);
        }
    for (int ki = 0; ki < levels_r_; ++ki)
        for (int kj = 0; kj < levels_c_; ++kj) {
            if (ki == 0 && kj == 0) continue;
            auto& cur = sparse_[size_t(ki) * levels_c_ + kj];
            int pi = ki > 0 ? ki - 1 : 0, pj = ki > 0 ? kj : kj - 1;
            const auto& prev = sparse_[size_t(pi) * levels_c_ + pj];
            int stepr = ki > 0 ? (1 << (ki - 1)) : 0;
            int stepc = ki > 0 ? 0 : (1 << (kj - 1));
            for (int bi = 0; bi + (1 << ki) <= mb_; ++bi)
                for (int bj = 0; bj + (1 << kj) <= nb_; ++bj) {
                    size_t at = size_t(bi) * nb_ + bj;
                    size_t other = size_t(bi + stepr) * nb_ + (bj + stepc);
                    cur[at] = std::max(prev[at], prev[other]);
                }
        }
    uint64_t dir = label_unary_.directory_bits();
    for (auto& t : sparse_) dir += t.size() * 8;
    report_.directory_bits = dir;
}

int GridStructure::label_via_select(int i, int j) const {
    uint64_t idx = uint64_t(i - 1) * uint64_t(n_) + uint64_t(j - 1) + 1;
    uint64_t end = label_unary_.select(false, idx);
    uint64_t start = idx == 1 ? 0 : label_unary_.select(false, idx - 1);
    return int(end - start - 1);
}

int GridStructure::max_label(const QueryRect& q) const {
    int best = 0;
    auto scan_rows = [&](int lo, int hi) {
        for (int i = lo; i <= hi; ++i)
            for (int j = q.j1; j <= q.j2; ++j)
                best = std::max(best, int(label_[size_t(i - 1) * n_ + (j - 1)]));
    };
    auto scan_cols = [&](int lo, int hi, int rlo, int rhi) {
        for (int j = lo; j <= hi; ++j)
            for (int i = rlo; i <= rhi; ++i)
                best = std::max(best, int(label_[size_t(i - 1) * n_ + (j - 1)]));
    };
    // block-aligned interior
    int bi1 = (q.i1 - 1 + kBlock - 1) / kBlock, bi2 = q.i2 / kBlock;  // full blocks [bi1, bi2)
    int bj1 = (q.j1 - 1 + kBlock - 1) / kBlock, bj2 = q.j2 / kBlock;
    if (bi1 < bi2 && bj1 < bj2) {
        int ki = 0;
        while ((2 << ki) <= bi2 - bi1) ++ki;
        int kj = 0;
        while ((2 << kj) <= bj2 - bj1) ++kj;
        const auto& t = sparse_[size_t(ki) * levels_c_ + kj];
        auto at = [&](int bi, int bj) { return t[size_t(bi) * nb_ + bj]; };
        best = std::max<int>(best, at(bi1, bj1));
        best = std::max<int>(best, at(bi2 - (1 << ki), bj1));
        best = std::max<int>(best, at(bi1, bj2 - (1 << kj)));
        best = std::max<int>(best, at(bi2 - (1 << ki), bj2 - (1 << kj)));
        // partial strips around the interior
        scan_rows(q.i1, std::min(q.i2, bi1 * kBlock));
        if (bi2 * kBlock + 1 <= q.i2) scan_rows(bi2 * kBlock + 1, q.i2);
        int rlo = bi1 * kBlock + 1, rhi = bi2 * kBlock;
        scan_cols(q.j1, std::min(q.j2, bj1 * kBlock), rlo, rhi);
        if (bj2 * kBlock + 1 <= q.j2) scan_cols(bj2 * kBlock + 1, q.j2, rlo, rhi);
    } else {
        scan_rows(q.i1, q.i2);
    }
    return best;
}

Pos GridStructure::query(const QueryRect& q) const {
    validate_query(q, m_, n_);
    int x = max_label(q);
    auto cell_pos = [&](size_t c) { return Pos{int(c / n_) + 1, int(c % n_) + 1}; };
    if (x == lambda_) {
        uint64_t best = 0;
        size_t bc = SIZE_MAX;
        for (auto& [c, rank] : top_) {
            Pos p = cell_pos(c);
            if (q.contains(p) && (bc == SIZE_MAX || rank > best)) {
                best = rank;
                bc = c;
            }
        }
        if (bc == SIZE_MAX) throw std::logic_error("top label vanished from its own query");
        return cell_pos(bc);
    }
    int64_t r = int64_t(1) << (2 * x);
    auto sh = shifts_for(r);
    for (int s = 0; s < 4; ++s) {
        if (box_ix(q.i1, sh[s].dr, r) != box_ix(q.i2, sh[s].dr, r) ||
            box_ix(q.j1, sh[s].dc, r) != box_ix(q.j2, sh[s].dc, r))
            continue;
        const auto& rel = rel_rank_[size_t(x - 1) * 4 + s];
        uint32_t best = 0;
        size_t bc = SIZE_MAX;
        for (int i = q.i1; i <= q.i2; ++i)
            for (int j = q.j1; j <= q.j2; ++j) {
                size_t c = size_t(i - 1) * n_ + (j - 1);
                if (label_[c] != x) continue;
                if (bc == SIZE_MAX || rel[c] > best) {
                    best = rel[c];
                    bc = c;
                }
            }
        if (bc == SIZE_MAX) throw std::logic_error("maximal label vanished from its own query");
        return cell_pos(bc);
    }
    // fail table
    auto it = std::lower_bound(fail_.begin(), fail_.end(), q,
                               [](const FailEntry& f, const QueryRect& want) {
                                   return std::tuple(f.q.i1, f.q.i2, f.q.j1, f.q.j2) <
                                          std::tuple(want.i1, want.i2, want.j1, want.j2);
                               });
    if (it == fail_.end() || !(it->q.i1 == q.i1 && it->q.i2 == q.i2 && it->q.j1 == q.j1 &&
                               it->q.j2 == q.j2))
        throw std::logic_error("query fits no grid box and is missing from the fail table");
    return it->answer;
}

}  // namespace rmq
