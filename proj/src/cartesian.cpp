#include "rmq/cartesian.hpp"

#include <cmath>
#include <stdexcept>

#include "rmq/arith.hpp"
#include "rmq/mixed_radix.hpp"

namespace rmq {

namespace {
// Links use pre-order ids; renumber nodes by in-order position and
// assemble.
CartesianTree relabel_preorder(int n, const std::vector<int32_t>& left,
                               const std::vector<int32_t>& right) {
    std::vector<int32_t> in_of(n, -1);
    int counter = 0;
    std::vector<int32_t> st;
    int v = 0;  // pre-order root is id 0
    while (v != -1 || !st.empty()) {
        while (v != -1) {
            st.push_back(v);
            v = left[v];
        }
        v = st.back();
        st.pop_back();
        in_of[v] = counter++;
        v = right[v];
    }
    std::vector<int32_t> left2(n, -1), right2(n, -1);
    for (int u = 0; u < n; ++u) {
        if (left[u] != -1) left2[in_of[u]] = in_of[left[u]];
        if (right[u] != -1) right2[in_of[u]] = in_of[right[u]];
    }
    return CartesianTree::from_links(in_of[0], std::move(left2), std::move(right2));
}
}  // namespace

CartesianTree CartesianTree::build(std::span<const int64_t> values) {
    int n = int(values.size());
    if (n < 1) throw std::invalid_argument("sequence must be non-empty");
    std::vector<int32_t> left(n, -1), right(n, -1);
    std::vector<int32_t> spine;  // rightmost spine, increasing positions, decreasing values
    spine.reserve(n);
    for (int i = 0; i < n; ++i) {
        int32_t last = -1;
        while (!spine.empty() && values[spine.back()] < values[i]) {
            last = spine.back();
            spine.pop_back();
        }
        if (!spine.empty() && values[spine.back()] == values[i])
            throw std::invalid_argument("priorities must be distinct");
        left[i] = last;
        if (!spine.empty()) right[spine.back()] = i;
        spine.push_back(i);
    }
    return from_links(spine[0], std::move(left), std::move(right));
}

CartesianTree CartesianTree::from_links(int root, std::vector<int32_t> left,
                                        std::vector<int32_t> right) {
    CartesianTree t;
    t.n_ = int(left.size());
    t.root_ = root;
    t.left_ = std::move(left);
    t.right_ = std::move(right);
    t.parent_.assign(t.n_, -1);
    t.size_.assign(t.n_, 0);
    t.offset_.assign(t.n_, 0);
    t.depth_.assign(t.n_, 0);

    // iterative post-order for sizes, pre-order pass for depth/parent,
    // in-order check
    std::vector<int32_t> stack;
    stack.push_back(t.root_);
    std::vector<int32_t> order;  // pre-order
    order.reserve(t.n_);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        if (v < 0 || v >= t.n_) throw std::invalid_argument("child link out of range");
        for (int c : {t.right_[v], t.left_[v]})
            if (c != -1) {
                t.parent_[c] = v;
                t.depth_[c] = t.depth_[v] + 1;
                stack.push_back(c);
            }
    }
    if (int(order.size()) != t.n_) throw std::invalid_argument("links do not form a single tree");
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        int ls = t.left_[v] == -1 ? 0 : t.size_[t.left_[v]];
        int rs = t.right_[v] == -1 ? 0 : t.size_[t.right_[v]];
        t.size_[v] = 1 + ls + rs;
        t.offset_[v] = ls;
    }
    // in-order traversal must visit 0,1,...,n-1
    {
        int counter = 0;
        std::vector<int32_t> st;
        int v = t.root_;
        while (v != -1 || !st.empty()) {
            while (v != -1) {
                st.push_back(v);
                v = t.left_[v];
            }
            v = st.back();
            st.pop_back();
            if (v != counter++) throw std::invalid_argument("links violate in-order numbering");
            v = t.right_[v];
        }
    }
    return t;
}

int CartesianTree::rmq(int l, int r) const {
    if (!(1 <= l && l <= r && r <= n_)) throw std::out_of_range("range invalid");
    int a = l - 1, b = r - 1;
    while (a != b) {
        if (depth_[a] > depth_[b]) a = parent_[a];
        else b = parent_[b];
    }
    return a + 1;
}

std::vector<int32_t> CartesianTree::preorder() const {
    std::vector<int32_t> order;
    order.reserve(n_);
    std::vector<int32_t> stack{root_};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v + 1);
        if (right_[v] != -1) stack.push_back(right_[v]);
        if (left_[v] != -1) stack.push_back(left_[v]);
    }
    return order;
}

std::vector<NodeType> ct_types(const CartesianTree& t) {
    std::vector<NodeType> out;
    out.reserve(t.size());
    for (int v : t.preorder()) {
        bool l = t.left(v) != 0, r = t.right(v) != 0;
        out.push_back(l && r ? NodeType::two
                             : l ? NodeType::left_only
                                 : r ? NodeType::right_only
                                     : NodeType::leaf);
    }
    return out;
}

Bits ct_encode_bp(const CartesianTree& t) {
    BitWriter w;
    // first-child/next-sibling: '(' subtree-of-left-chain ')', siblings via
    // right links; iterative with an explicit frame stack
    struct Frame {
        int v;        // current node in sibling chain, 1-based, 0 = none
        bool opened;  // whether v's '(' has been written
    };
    std::vector<Frame> stack{{t.root(), false}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.v == 0) {
            stack.pop_back();
            continue;
        }
        if (!f.opened) {
            w.put(true);
            f.opened = true;
            stack.push_back({t.left(f.v), false});
        } else {
            w.put(false);
            f.v = t.right(f.v);
            f.opened = false;
        }
    }
    return w.take();
}

CartesianTree ct_decode_bp(BitReader& r, int n) {
    if (n < 1) throw std::invalid_argument("tree size must be >= 1");
    std::vector<int32_t> left(n, -1), right(n, -1);
    // pre-order ids; explicit stack of (node, phase)
    int next_id = 0;
    struct Frame {
        int node;  // -2 top-level sentinel
        int prev;  // previous sibling at this level
    };
    std::vector<Frame> stack{{-2, -1}};
    size_t consumed = 0;
    const size_t total = size_t(2) * size_t(n);
    while (!stack.empty()) {
        bool open = false;
        if (consumed < total) {
            open = r.peek();
        }
        if (consumed < total && open) {
            r.get();
            ++consumed;
            if (next_id >= n) throw FormatError("balanced parentheses encode too many nodes");
            int id = next_id++;
            Frame& f = stack.back();
            if (f.prev == -1) {
                if (f.node >= 0) left[f.node] = id;
            } else {
                right[f.prev] = id;
            }
            f.prev = id;
            stack.push_back({id, -1});
        } else {
            // close current level
            if (stack.size() == 1) break;  // top level ends only at bit exhaustion
            if (consumed >= total) throw FormatError("balanced parentheses truncated");
            if (r.get()) throw FormatError("expected closing parenthesis");
            ++consumed;
            stack.pop_back();
        }
    }
    if (next_id != n || consumed != total) throw FormatError("balanced parentheses length mismatch");
    return relabel_preorder(n, left, right);
}

CartesianTree ct_decode_bp(const Bits& bits, int n) {
    if (bits.bit_len != size_t(2) * size_t(n)) throw FormatError("balanced parentheses must be exactly 2n bits");
    BitReader r(bits);
    return ct_decode_bp(r, n);
}

Bits ct_encode_offsets(const CartesianTree& t) {
    MixedRadixAccumulator acc;
    for (int v : t.preorder()) acc.push(uint64_t(t.offset(v)), uint64_t(t.subtree_size(v)));
    BitWriter w;
    acc.serialize(w);
    return w.take();
}

CartesianTree ct_decode_offsets(const Bits& bits, int n) {
    if (n < 1) throw std::invalid_argument("tree size must be >= 1");
    BitReader r(bits);
    mpz_class value = MixedRadixAccumulator::deserialize(r, bits.bit_len);
    mpz_class weight = 1;
    std::vector<int32_t> left(n, -1), right(n, -1);
    // pre-order reconstruction: each frame is a subtree (in-order base,
    // size) whose root pops the next digit
    struct Frame {
        int base, size, parent;
        bool is_left;
    };
    std::vector<Frame> stack{{0, n, -1, false}};
    int root = -1;
    mpz_class cur = value;
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.size == 0) continue;
        auto [digit, quot] = MixedRadixAccumulator::pop(cur, uint64_t(f.size));
        cur = quot;
        mpz_mul_ui(weight.get_mpz_t(), weight.get_mpz_t(), uint64_t(f.size));
        int o = int(digit);
        int v = f.base + o;
        if (f.parent >= 0) {
            if (f.is_left) left[f.parent] = v;
            else right[f.parent] = v;
        } else {
            root = v;
        }
        // pre-order: left subtree before right; stack is LIFO
        stack.push_back({f.base + o + 1, f.size - 1 - o, v, false});
        stack.push_back({f.base, o, v, true});
    }
    if (cur != 0) throw FormatError("offset payload exceeds the mixed-radix weight");
    if (bits.bit_len != MixedRadixAccumulator::width_for(weight))
        throw FormatError("offset payload width mismatch");
    if (value >= weight) throw FormatError("offset payload value out of range");
    return CartesianTree::from_links(root, std::move(left), std::move(right));
}

namespace {
const StaticModel& type_model() {
    // {leaf, two, left, right} with probabilities {1/3, 1/3, 1/6, 1/6}
    static const StaticModel model({2, 2, 1, 1});
    return model;
}
}  // namespace

Bits ct_encode_types(const CartesianTree& t) {
    std::vector<uint32_t> syms;
    syms.reserve(t.size());
    for (NodeType ty : ct_types(t)) syms.push_back(uint32_t(ty));
    return arith_encode(syms, type_model());
}

CartesianTree ct_decode_types(const Bits& bits, int n) {
    if (n < 1) throw std::invalid_argument("tree size must be >= 1");
    std::vector<uint32_t> syms = arith_decode(bits, size_t(n), type_model());
    std::vector<int32_t> left(n, -1), right(n, -1);
    struct Expect {
        int node;
        bool want_left, want_right;
    };
    std::vector<Expect> stack;
    auto expects = [](NodeType ty) {
        bool l = ty == NodeType::two || ty == NodeType::left_only;
        bool r = ty == NodeType::two || ty == NodeType::right_only;
        return std::pair{l, r};
    };
    for (int id = 0; id < n; ++id) {
        NodeType ty = NodeType(syms[id]);
        auto [wl, wr] = expects(ty);
        if (id > 0) {
            if (stack.empty()) throw FormatError("type sequence closes the tree early");
            Expect& top = stack.back();
            if (top.want_left) {
                left[top.node] = id;
                top.want_left = false;
            } else {
                right[top.node] = id;
                top.want_right = false;
            }
        }
        while (!stack.empty() && !stack.back().want_left && !stack.back().want_right)
            stack.pop_back();
        if (wl || wr) stack.push_back({id, wl, wr});
    }
    if (!stack.empty()) throw FormatError("type sequence leaves unfilled children");
    return relabel_preorder(n, left, right);
}

double expected_offset_bits(int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n <= 1) return 0.0;
    long double sum = 0;
    for (int i = 1; i <= n - 1; ++i)
        sum += std::log2((long double)i) / ((long double)(i + 1) * (i + 2));
    return double(std::log2((long double)n) + 2.0L * (n + 1) * sum);
}

double offset_bits_constant(uint64_t terms) {
    if (terms < 1) throw std::invalid_argument("terms must be >= 1");
    long double sum = 0;
    for (uint64_t k = terms; k >= 1; --k)
        sum += std::log2((long double)k) / ((long double)(k + 1) * (k + 2));
    return double(2.0L * sum);
}

}  // namespace rmq
