#include "rmq/merge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_set>

#include "rmq/arith.hpp"

namespace rmq {

namespace {

struct Range {
    int l, r, parent, is_left;
};

JointCT assemble_joint(int root, std::vector<int32_t> left, std::vector<int32_t> right,
                       std::vector<int32_t> winner, std::vector<int32_t> bit_index) {
    JointCT j;
    j.shape = CartesianTree::from_links(root, std::move(left), std::move(right));
    j.winner_row = std::move(winner);
    j.bit_index = std::move(bit_index);
    return j;
}

}  // namespace

MergeResult merge_build(const RankMatrix& a, int bottom_row, const RangeAnswerer& upper,
                        const CartesianTree& lower, const KnownWinner& known) {
    const int n = a.cols();
    if (bottom_row < 2 || bottom_row > a.rows())
        throw std::invalid_argument("bottom row must have rows above it");
    std::vector<int32_t> left(n, -1), right(n, -1), winner(n, 0), bit_index(n, -1);
    BitWriter w;
    int root = -1;
    std::vector<Range> stack{{1, n, -1, 0}};
    while (!stack.empty()) {
        Range f = stack.back();
        stack.pop_back();
        if (f.l > f.r) continue;
        Pos win{};
        std::optional<Pos> pre = known ? known(f.l, f.r) : std::nullopt;
        if (pre) {
            win = *pre;
        } else {
            Pos top = upper(f.l, f.r);
            int bcol = lower.rmq(f.l, f.r);
            bool bottom_wins = a.at(bottom_row, bcol) > a.at(top.row, top.col);
            win = bottom_wins ? Pos{bottom_row, bcol} : top;
            bit_index[win.col - 1] = int(w.bit_count());
            w.put(bottom_wins);
        }
        int c = win.col;
        winner[c - 1] = win.row;
        if (f.parent >= 1) {
            if (f.is_left) left[f.parent - 1] = c - 1;
            else right[f.parent - 1] = c - 1;
        } else {
            root = c - 1;
        }
        stack.push_back({c + 1, f.r, c, 0});
        stack.push_back({f.l, c - 1, c, 1});
    }
    return {assemble_joint(root, std::move(left), std::move(right), std::move(winner),
                           std::move(bit_index)),
            w.take()};
}

JointCT merge_decode(int n, int bottom_row, const RangeAnswerer& upper, const CartesianTree& lower,
                     BitReader& r, const KnownWinner& known) {
    std::vector<int32_t> left(n, -1), right(n, -1), winner(n, 0), bit_index(n, -1);
    int root = -1;
    std::vector<Range> stack{{1, n, -1, 0}};
    while (!stack.empty()) {
        Range f = stack.back();
        stack.pop_back();
        if (f.l > f.r) continue;
        Pos win{};
        std::optional<Pos> pre = known ? known(f.l, f.r) : std::nullopt;
        if (pre) {
            win = *pre;
        } else {
            int idx = int(r.pos());
            if (r.get()) {
                win = {bottom_row, lower.rmq(f.l, f.r)};
            } else {
                win = upper(f.l, f.r);
            }
            bit_index[win.col - 1] = idx;
        }
        int c = win.col;
        winner[c - 1] = win.row;
        if (f.parent >= 1) {
            if (f.is_left) left[f.parent - 1] = c - 1;
            else right[f.parent - 1] = c - 1;
        } else {
            root = c - 1;
        }
        stack.push_back({c + 1, f.r, c, 0});
        stack.push_back({f.l, c - 1, c, 1});
    }
    return assemble_joint(root, std::move(left), std::move(right), std::move(winner),
                          std::move(bit_index));
}

JointCT merge_decode(int n, int bottom_row, const RangeAnswerer& upper, const CartesianTree& lower,
                     const Bits& bits) {
    if (bits.bit_len != size_t(n)) throw FormatError("merge bit vector must be exactly n bits");
    BitReader r(bits);
    JointCT j = merge_decode(n, bottom_row, upper, lower, r, nullptr);
    if (r.pos() != bits.bit_len) throw FormatError("merge bit vector has trailing bits");
    return j;
}

StackedEncoding StackedEncoding::encode(const RankMatrix& a) {
    StackedEncoding e;
    e.m_ = a.rows();
    e.n_ = a.cols();
    BitWriter w;
    for (int i = 1; i <= e.m_; ++i) {
        std::vector<int64_t> row(a.cells().begin() + size_t(i - 1) * e.n_,
                                 a.cells().begin() + size_t(i) * e.n_);
        e.row_trees_.push_back(CartesianTree::build(row));
        w.append(ct_encode_bp(e.row_trees_.back()));
    }
    e.joints_.assign(e.m_ + 1, {});
    for (int k = 2; k <= e.m_; ++k) {
        e.joints_[k].assign(k, {});
        for (int i = 1; i <= k - 1; ++i) {
            RangeAnswerer up = i == k - 1 ? row_answerer(e.row_trees_[i - 1], i)
                                          : RangeAnswerer([&e, i, k](int j1, int j2) {
                                                return e.joints_[k - 1][i].answer(j1, j2);
                                            });
            MergeResult res = merge_build(a, k, up, e.row_trees_[k - 1]);
            w.append(res.bits);
            e.joints_[k][i] = std::move(res.joint);
        }
    }
    e.payload_ = w.take();
    return e;
}

StackedEncoding StackedEncoding::decode(const Bits& payload, int m, int n) {
    if (payload.bit_len != expected_payload_bits(m, n))
        throw FormatError("stacked payload has wrong bit length");
    StackedEncoding e;
    e.m_ = m;
    e.n_ = n;
    BitReader r(payload);
    for (int i = 1; i <= m; ++i) e.row_trees_.push_back(ct_decode_bp(r, n));
    e.joints_.assign(m + 1, {});
    for (int k = 2; k <= m; ++k) {
        e.joints_[k].assign(k, {});
        for (int i = 1; i <= k - 1; ++i) {
            RangeAnswerer up = i == k - 1 ? row_answerer(e.row_trees_[i - 1], i)
                                          : RangeAnswerer([&e, i, k](int j1, int j2) {
                                                return e.joints_[k - 1][i].answer(j1, j2);
                                            });
            e.joints_[k][i] = merge_decode(n, k, up, e.row_trees_[k - 1], r, nullptr);
        }
    }
    e.payload_ = payload;
    return e;
}

Pos StackedEncoding::query(const QueryRect& q) const {
    validate_query(q, m_, n_);
    if (q.i1 == q.i2) return {q.i1, row_trees_[q.i1 - 1].rmq(q.j1, q.j2)};
    return joints_[q.i2][q.i1].answer(q.j1, q.j2);
}

namespace {

// winner-row model: Pr[M] = cntM/n, Pr[T] = Pr[B] = (n-cntM)/(2n), with
// zero-probability symbols dropped
struct LabelModel {
    StaticModel model;
    std::array<int, 3> sym_of_row;  // -1 when absent
    std::vector<int> row_of_sym;
};

LabelModel make_label_model(int n, uint64_t cnt_m) {
    std::array<uint64_t, 3> weights = {uint64_t(n) - cnt_m, 2 * cnt_m, uint64_t(n) - cnt_m};
    LabelModel lm{StaticModel({1}), {-1, -1, -1}, {}};
    std::vector<uint64_t> present;
    for (int row = 0; row < 3; ++row) {
        if (weights[row] > 0) {
            lm.sym_of_row[row] = int(present.size());
            lm.row_of_sym.push_back(row);
            present.push_back(weights[row]);
        }
    }
    lm.model = StaticModel(present);
    return lm;
}

}  // namespace

ThreeRowEncoding ThreeRowEncoding::encode(const RankMatrix& a) {
    if (a.rows() != 3) throw std::invalid_argument("three-row encoding requires m = 3");
    ThreeRowEncoding e;
    const int n = e.n_ = a.cols();

    std::array<CartesianTree*, 3> rows = {&e.row_t_, &e.row_m_, &e.row_b_};
    BitWriter w;
    for (int i = 1; i <= 3; ++i) {
        std::vector<int64_t> row(a.cells().begin() + size_t(i - 1) * n,
                                 a.cells().begin() + size_t(i) * n);
        *rows[i - 1] = CartesianTree::build(row);
        w.append(ct_encode_bp(*rows[i - 1]));
    }

    // joint tree over all three rows: column maxima, winner = argmax row
    {
        std::vector<int64_t> colmax(n);
        std::vector<int32_t> winner(n);
        for (int j = 1; j <= n; ++j) {
            int br = 1;
            for (int i = 2; i <= 3; ++i)
                if (a.at(i, j) > a.at(br, j)) br = i;
            colmax[j - 1] = a.at(br, j);
            winner[j - 1] = br;
        }
        e.tmb_.shape = CartesianTree::build(colmax);
        e.tmb_.winner_row = std::move(winner);
        e.tmb_.bit_index.assign(n, -1);
    }
    e.cnt_m_ = uint64_t(std::count(e.tmb_.winner_row.begin(), e.tmb_.winner_row.end(), 2));

    gamma_encode(w, e.cnt_m_ + 1);

    // winner labels in pre-order, arithmetic-coded
    LabelModel lm = make_label_model(n, e.cnt_m_);
    std::vector<uint32_t> syms;
    syms.reserve(n);
    for (int col : e.tmb_.shape.preorder())
        syms.push_back(uint32_t(lm.sym_of_row[e.tmb_.winner_row[col - 1] - 1]));
    Bits code = arith_encode(syms, lm.model);
    e.label_bits_ = code.bit_len;
    gamma_encode(w, code.bit_len + 1);
    w.append(code);

    // reduced merges: a bit only where the three-row answer does not settle
    // the comparison
    KnownWinner tm_known = [&e](int j1, int j2) -> std::optional<Pos> {
        Pos p = e.tmb_.answer(j1, j2);
        return p.row <= 2 ? std::optional<Pos>(p) : std::nullopt;
    };
    KnownWinner mb_known = [&e](int j1, int j2) -> std::optional<Pos> {
        Pos p = e.tmb_.answer(j1, j2);
        return p.row >= 2 ? std::optional<Pos>(p) : std::nullopt;
    };
    MergeResult tm = merge_build(a, 2, row_answerer(e.row_t_, 1), e.row_m_, tm_known);
    MergeResult mb = merge_build(a, 3, row_answerer(e.row_m_, 2), e.row_b_, mb_known);
    e.tm_ = std::move(tm.joint);
    e.mb_ = std::move(mb.joint);
    e.tm_bits_ = tm.bits.bit_len;
    e.mb_bits_ = mb.bits.bit_len;
    w.append(tm.bits);
    w.append(mb.bits);
    e.payload_ = w.take();
    return e;
}

ThreeRowEncoding ThreeRowEncoding::decode(const Bits& payload, int n) {
    ThreeRowEncoding e;
    e.n_ = n;
    BitReader r(payload);
    e.row_t_ = ct_decode_bp(r, n);
    e.row_m_ = ct_decode_bp(r, n);
    e.row_b_ = ct_decode_bp(r, n);

    uint64_t cnt_m = gamma_decode(r) - 1;
    if (cnt_m > uint64_t(n)) throw FormatError("middle-winner count exceeds n");
    e.cnt_m_ = cnt_m;
    uint64_t code_len = gamma_decode(r) - 1;
    if (code_len > r.remaining()) throw FormatError("label code extends past payload");
    BitWriter sub;
    for (uint64_t i = 0; i < code_len; ++i) sub.put(r.get());
    e.label_bits_ = size_t(code_len);
    LabelModel lm = make_label_model(n, cnt_m);
    std::vector<uint32_t> syms = arith_decode(sub.take(), size_t(n), lm.model);

    // rebuild the joint tree: each pre-order label names the winning row,
    // whose row tree gives the column
    {
        std::array<const CartesianTree*, 3> rows = {&e.row_t_, &e.row_m_, &e.row_b_};
        std::vector<int32_t> left(n, -1), right(n, -1), winner(n, 0);
        int root = -1;
        size_t next = 0;
        std::vector<Range> stack{{1, n, -1, 0}};
        while (!stack.empty()) {
            Range f = stack.back();
            stack.pop_back();
            if (f.l > f.r) continue;
            if (next >= syms.size()) throw FormatError("label sequence too short");
            uint32_t s = syms[next++];
            if (s >= lm.row_of_sym.size()) throw FormatError("label symbol out of range");
            int row = lm.row_of_sym[s] + 1;
            int c = rows[row - 1]->rmq(f.l, f.r);
            winner[c - 1] = row;
            if (f.parent >= 1) {
                if (f.is_left) left[f.parent - 1] = c - 1;
                else right[f.parent - 1] = c - 1;
            } else {
                root = c - 1;
            }
            stack.push_back({c + 1, f.r, c, 0});
            stack.push_back({f.l, c - 1, c, 1});
        }
        e.tmb_ = assemble_joint(root, std::move(left), std::move(right), std::move(winner),
                                std::vector<int32_t>(n, -1));
    }
    uint64_t seen_m = uint64_t(std::count(e.tmb_.winner_row.begin(), e.tmb_.winner_row.end(), 2));
    if (seen_m != cnt_m) throw FormatError("label sequence disagrees with stored middle count");

    KnownWinner tm_known = [&e](int j1, int j2) -> std::optional<Pos> {
        Pos p = e.tmb_.answer(j1, j2);
        return p.row <= 2 ? std::optional<Pos>(p) : std::nullopt;
    };
    KnownWinner mb_known = [&e](int j1, int j2) -> std::optional<Pos> {
        Pos p = e.tmb_.answer(j1, j2);
        return p.row >= 2 ? std::optional<Pos>(p) : std::nullopt;
    };
    size_t before = r.pos();
    e.tm_ = merge_decode(n, 2, row_answerer(e.row_t_, 1), e.row_m_, r, tm_known);
    e.tm_bits_ = r.pos() - before;
    before = r.pos();
    e.mb_ = merge_decode(n, 3, row_answerer(e.row_m_, 2), e.row_b_, r, mb_known);
    e.mb_bits_ = r.pos() - before;
    if (r.pos() != payload.bit_len) throw FormatError("three-row payload has trailing bits");
    e.payload_ = payload;
    return e;
}

Pos ThreeRowEncoding::query(const QueryRect& q) const {
    validate_query(q, 3, n_);
    if (q.i1 == q.i2) {
        const CartesianTree& t = q.i1 == 1 ? row_t_ : q.i1 == 2 ? row_m_ : row_b_;
        return {q.i1, t.rmq(q.j1, q.j2)};
    }
    if (q.i1 == 1 && q.i2 == 2) return tm_.answer(q.j1, q.j2);
    if (q.i1 == 2 && q.i2 == 3) return mb_.answer(q.j1, q.j2);
    return tmb_.answer(q.j1, q.j2);
}

double three_row_cost(double x) {
    if (x < 0 || x > 1) throw std::invalid_argument("fraction must be in [0,1]");
    double h = 0;
    if (x > 0) h -= x * std::log2(x);
    if (x < 1) h -= (1 - x) * std::log2(1 - x);
    return 2 * (1 - x) + h;
}

uint64_t count_equiv_classes(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
    if (int64_t(m) * n > 9) throw ResourceError("class counting is limited to m*n <= 9");
    const int total = m * n;
    std::vector<int64_t> perm(total);
    for (int i = 0; i < total; ++i) perm[i] = i;
    auto queries = enumerate_queries(m, n, Sidedness::four);
    std::unordered_set<std::string> sigs;
    do {
        RankMatrix a(m, n, perm);
        std::string sig;
        sig.reserve(queries.size());
        for (const QueryRect& q : queries) {
            Pos p = oracle_rmq(a, q);
            sig.push_back(char((p.row - 1) * 16 + (p.col - 1)));
        }
        sigs.insert(std::move(sig));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sigs.size();
}

}  // namespace rmq
