#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rmq/bitstream.hpp"
#include "rmq/types.hpp"

namespace rmq {

// Binary max-heap over a sequence with in-order = array order. Nodes are
// identified by their 1-based in-order index (= array position). Carries
// subtree sizes and relative offsets; LCA queries walk parent pointers, so
// a range query costs O(depth).
class CartesianTree {
public:
    CartesianTree() = default;

    // unique Cartesian tree of a sequence of distinct priorities, O(n)
    // rightmost-spine stack construction
    static CartesianTree build(std::span<const int64_t> values);
    // assemble from explicit child links (0-based arrays, -1 = absent);
    // validates in-order consistency and fills sizes/offsets/depths
    static CartesianTree from_links(int root, std::vector<int32_t> left, std::vector<int32_t> right);

    int size() const { return n_; }
    int root() const { return root_ + 1; }
    // 1-based; 0 = absent
    int parent(int v) const { return parent_[v - 1] + 1; }
    int left(int v) const { return left_[v - 1] + 1; }
    int right(int v) const { return right_[v - 1] + 1; }
    int subtree_size(int v) const { return size_[v - 1]; }
    int offset(int v) const { return offset_[v - 1]; }
    int depth(int v) const { return depth_[v - 1]; }

    // in-order index of the range maximum of [l..r] = LCA of nodes l and r
    int rmq(int l, int r) const;

    // 1-based in-order indices in pre-order
    std::vector<int32_t> preorder() const;

    friend bool operator==(const CartesianTree& a, const CartesianTree& b) {
        return a.n_ == b.n_ && a.root_ == b.root_ && a.left_ == b.left_ && a.right_ == b.right_;
    }

private:
    int n_ = 0;
    int root_ = -1;
    std::vector<int32_t> parent_, left_, right_;
    std::vector<int32_t> size_, offset_, depth_;
};

enum class NodeType : uint8_t { leaf = 0, two = 1, left_only = 2, right_only = 3 };

// child-configuration label of each node, in pre-order
std::vector<NodeType> ct_types(const CartesianTree& t);

// Balanced-parentheses codec via first-child/next-sibling: exactly 2n bits,
// '(' = 1, pre-order.
Bits ct_encode_bp(const CartesianTree& t);
CartesianTree ct_decode_bp(const Bits& bits, int n);
CartesianTree ct_decode_bp(BitReader& r, int n);

// Offset codec: the pre-order sequence of relative offsets o_v read as a
// mixed-radix integer with radix s_v per digit (root least significant),
// serialized in exactly ceil(log2 prod s_v) bits. Decoding re-derives each
// radix as it pops digits, O(n^2) overall.
Bits ct_encode_offsets(const CartesianTree& t);
CartesianTree ct_decode_offsets(const Bits& bits, int n);

// Type codec: pre-order child-configuration labels arithmetic-coded under
// the fixed model {leaf:1/3, two:1/3, left:1/6, right:1/6}; decoding
// rebuilds the shape in one pre-order pass, linear time.
Bits ct_encode_types(const CartesianTree& t);
CartesianTree ct_decode_types(const Bits& bits, int n);

// Expected value of sum_v log2 s_v over random arrays of size n (exact
// closed form); the expected offset payload is this up to the final
// ceiling.
double expected_offset_bits(int n);

// Partial sum of 2 * sum_{k>=1} log2(k) / ((k+1)(k+2)): the limiting
// expected offset bits per element (~1.736). Monotone in `terms`.
double offset_bits_constant(uint64_t terms);

}  // namespace rmq
