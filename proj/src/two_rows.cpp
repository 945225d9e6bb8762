#include "rmq/two_rows.hpp"

#include <algorithm>

#include "rmq/merge.hpp"

namespace rmq {

TwoRowStructure TwoRowStructure::build(const RankMatrix& a, TwoRowVariant v) {
    if (a.rows() != 2) throw std::invalid_argument("two-row structure requires m = 2");
    TwoRowStructure s;
    s.variant_ = v;
    const int n = s.n_ = a.cols();
    std::vector<int64_t> top(a.cells().begin(), a.cells().begin() + n);
    std::vector<int64_t> bottom(a.cells().begin() + n, a.cells().end());
    s.top_ = CartesianTree::build(top);
    s.bottom_ = CartesianTree::build(bottom);

    BitWriter w;
    if (v == TwoRowVariant::indexed7) {
        std::vector<int64_t> colmax(n);
        s.col_bottom_.resize(n);
        for (int j = 0; j < n; ++j) {
            s.col_bottom_[j] = bottom[j] > top[j];
            colmax[j] = std::max(top[j], bottom[j]);
        }
        s.joint_ = CartesianTree::build(colmax);
        w.append(ct_encode_bp(s.joint_));
        for (int j = 0; j < n; ++j) w.put(s.col_bottom_[j]);
        w.append(ct_encode_bp(s.top_));
        w.append(ct_encode_bp(s.bottom_));
    } else {
        w.append(ct_encode_bp(s.top_));
        w.append(ct_encode_bp(s.bottom_));
        MergeResult res = merge_build(a, 2, row_answerer(s.top_, 1), s.bottom_);
        s.merge_bits_ = res.bits;
        w.append(res.bits);
    }
    s.payload_ = w.take();
    return s;
}

TwoRowStructure TwoRowStructure::from_bits(TwoRowVariant v, int n, const Bits& payload) {
    if (payload.bit_len != expected_payload_bits(v, n))
        throw FormatError("two-row payload has wrong bit length");
    TwoRowStructure s;
    s.variant_ = v;
    s.n_ = n;
    BitReader r(payload);
    if (v == TwoRowVariant::indexed7) {
        s.joint_ = ct_decode_bp(r, n);
        s.col_bottom_.resize(n);
        for (int j = 0; j < n; ++j) s.col_bottom_[j] = r.get();
        s.top_ = ct_decode_bp(r, n);
        s.bottom_ = ct_decode_bp(r, n);
    } else {
        s.top_ = ct_decode_bp(r, n);
        s.bottom_ = ct_decode_bp(r, n);
        BitWriter sub;
        for (int j = 0; j < n; ++j) sub.put(r.get());
        s.merge_bits_ = sub.take();
    }
    s.payload_ = payload;
    return s;
}

Pos TwoRowStructure::query(const QueryRect& q) const {
    validate_query(q, 2, n_);
    if (q.i1 == q.i2) {
        const CartesianTree& t = q.i1 == 1 ? top_ : bottom_;
        return {q.i1, t.rmq(q.j1, q.j2)};
    }
    if (variant_ == TwoRowVariant::indexed7) {
        int c = joint_.rmq(q.j1, q.j2);
        return {col_bottom_[c - 1] ? 2 : 1, c};
    }
    // streaming: walk merge bits from the root toward the deciding
    // comparison, skipping left subtrees by size
    int l = 1, r = n_;
    size_t pos = 0;
    for (;;) {
        bool bottom_wins = merge_bits_.get(pos);
        int c = (bottom_wins ? bottom_ : top_).rmq(l, r);
        if (q.j1 <= c && c <= q.j2) return {bottom_wins ? 2 : 1, c};
        if (c > q.j2) {
            r = c - 1;
            pos += 1;
        } else {
            pos += 1 + size_t(c - l);  // skip the left subtree's bits
            l = c + 1;
        }
    }
}

}  // namespace rmq
