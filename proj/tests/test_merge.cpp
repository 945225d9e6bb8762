#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "oracle_sweep.hpp"
#include "rmq/merge.hpp"

using namespace rmq;

namespace {
std::string to_string01(const Bits& b) {
    std::string s;
    for (size_t i = 0; i < b.bit_len; ++i) s += b.get(i) ? '1' : '0';
    return s;
}

CartesianTree row_tree(const RankMatrix& a, int row) {
    std::vector<int64_t> vals;
    for (int j = 1; j <= a.cols(); ++j) vals.push_back(a.at(row, j));
    return CartesianTree::build(vals);
}

// column maxima over rows [1..m]
std::vector<int64_t> col_maxima(const RankMatrix& a) {
    std::vector<int64_t> cm(a.cols());
    for (int j = 1; j <= a.cols(); ++j) {
        int64_t best = a.at(1, j);
        for (int i = 2; i <= a.rows(); ++i) best = std::max(best, a.at(i, j));
        cm[j - 1] = best;
    }
    return cm;
}

// m=3 matrix with per-column winners and all column bands increasing, so
// every per-column value beats every value of the previous column
RankMatrix banded_three_rows(int n, const std::vector<int>& winner_rows) {
    std::vector<int64_t> cells(3 * size_t(n));
    for (int j = 0; j < n; ++j) {
        int w = winner_rows[j];
        int64_t lo = 3 * int64_t(j);
        int next = 0;
        for (int i = 0; i < 3; ++i) {
            if (i == w - 1) cells[size_t(i) * n + j] = lo + 2;
            else cells[size_t(i) * n + j] = lo + (next++);
        }
    }
    return RankMatrix(3, n, std::move(cells));
}
}  // namespace

TEST_CASE("merge bits for hand-traced 2x3 examples") {
    RankMatrix a(2, 3, {1, 3, 0, 2, 4, 5});
    CartesianTree top = row_tree(a, 1), bottom = row_tree(a, 2);
    MergeResult res = merge_build(a, 2, row_answerer(top, 1), bottom);
    CHECK(to_string01(res.bits) == "111");

    RankMatrix b(2, 3, {5, 4, 3, 0, 1, 2});
    CartesianTree top2 = row_tree(b, 1), bottom2 = row_tree(b, 2);
    MergeResult res2 = merge_build(b, 2, row_answerer(top2, 1), bottom2);
    CHECK(to_string01(res2.bits) == "000");

    // n=1: one bit, set iff the bottom cell is larger
    RankMatrix c(2, 1, {0, 1});
    MergeResult res3 = merge_build(c, 2, row_answerer(row_tree(c, 1), 1), row_tree(c, 2));
    CHECK(to_string01(res3.bits) == "1");
    RankMatrix d(2, 1, {1, 0});
    MergeResult res4 = merge_build(d, 2, row_answerer(row_tree(d, 1), 1), row_tree(d, 2));
    CHECK(to_string01(res4.bits) == "0");
}

TEST_CASE("joint tree shape equals the Cartesian tree of column maxima") {
    for (int trial = 0; trial < 40; ++trial) {
        int m = 2 + int(derive_seed(50, trial) % 4);
        RankMatrix a = gen_random_matrix(m, 48, derive_seed(51, trial));
        StackedEncoding e = StackedEncoding::encode(a);
        CHECK(e.joint(1, m).shape == CartesianTree::build(col_maxima(a)));
        // winner rows: answer over each node's subtree range matches oracle
        const JointCT& j = e.joint(1, m);
        for (int c = 1; c <= a.cols(); ++c) {
            int lo = c - j.shape.offset(c);
            int hi = lo + j.shape.subtree_size(c) - 1;
            Pos p = oracle_rmq(a, QueryRect::sided4(1, m, lo, hi));
            REQUIRE(p.col == c);
            REQUIRE(p.row == j.winner_row[c - 1]);
        }
    }
}

TEST_CASE("merge roundtrip and bit independence, exhaustive 2xn for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<int64_t> perm(2 * size_t(n));
        for (size_t i = 0; i < perm.size(); ++i) perm[i] = int64_t(i);
        // (top BP, bottom BP, bits) -> both-row answer signature
        std::map<std::tuple<std::string, std::string, std::string>, std::string> seen;
        do {
            RankMatrix a(2, n, perm);
            CartesianTree top = row_tree(a, 1), bottom = row_tree(a, 2);
            MergeResult res = merge_build(a, 2, row_answerer(top, 1), bottom);
            REQUIRE(res.bits.bit_len == size_t(n));
            JointCT dec = merge_decode(n, 2, row_answerer(top, 1), bottom, res.bits);
            REQUIRE(dec == res.joint);

            std::string sig;
            for (int j1 = 1; j1 <= n; ++j1)
                for (int j2 = j1; j2 <= n; ++j2) {
                    Pos p = dec.answer(j1, j2);
                    REQUIRE(p == oracle_rmq(a, QueryRect::sided4(1, 2, j1, j2)));
                    sig += char('0' + p.row);
                    sig += char('0' + p.col);
                }
            auto key = std::tuple(to_string01(ct_encode_bp(top)), to_string01(ct_encode_bp(bottom)),
                                  to_string01(res.bits));
            auto [it, inserted] = seen.emplace(key, sig);
            if (!inserted) REQUIRE(it->second == sig);
        } while (std::next_permutation(perm.begin(), perm.end()));

        // same row trees, different bits => some both-row query differs
        std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>> by_trees;
        for (auto& [key, sig] : seen)
            by_trees[{std::get<0>(key), std::get<1>(key)}][std::get<2>(key)] = sig;
        for (auto& [trees, bitmap] : by_trees) {
            std::set<std::string> sigs;
            for (auto& [bits, sig] : bitmap) sigs.insert(sig);
            REQUIRE(sigs.size() == bitmap.size());
        }
    }
}

TEST_CASE("stacked payload bit budget") {
    RankMatrix a1 = gen_random_matrix(1, 9, 3);
    CHECK(StackedEncoding::encode(a1).payload().bit_len == 18);  // 2n
    RankMatrix a2 = gen_random_matrix(2, 3, 4);
    CHECK(StackedEncoding::encode(a2).payload().bit_len == 15);  // 5n
    RankMatrix a3 = gen_random_matrix(3, 4, 5);
    CHECK(StackedEncoding::encode(a3).payload().bit_len == 36);  // n*m(m+3)/2
    for (int m = 1; m <= 6; ++m)
        for (int n : {1, 2, 7, 64}) {
            RankMatrix a = gen_random_matrix(m, n, uint64_t(m * 100 + n));
            REQUIRE(StackedEncoding::encode(a).payload().bit_len ==
                    StackedEncoding::expected_payload_bits(m, n));
        }
}

TEST_CASE("stacked queries: hand examples") {
    RankMatrix a(2, 3, {1, 3, 0, 2, 4, 5});
    StackedEncoding e = StackedEncoding::encode(a);
    CHECK(e.query(QueryRect::sided4(1, 2, 1, 2)) == Pos{2, 2});
    CHECK(e.query(QueryRect::sided4(1, 1, 1, 3)) == Pos{1, 2});
    CHECK(e.query(QueryRect::sided4(1, 2, 3, 3)) == Pos{2, 3});
    CHECK_THROWS_AS(e.query(QueryRect::sided4(1, 3, 1, 1)), std::out_of_range);
}

TEST_CASE("stacked equals oracle exhaustively for m,n <= 3") {
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
            std::vector<int64_t> perm(size_t(m) * n);
            for (size_t i = 0; i < perm.size(); ++i) perm[i] = int64_t(i);
            do {
                RankMatrix a(m, n, perm);
                StackedEncoding e = StackedEncoding::decode(
                    StackedEncoding::encode(a).payload(), m, n);
                rmqtest::for_each_4sided(a, [&](const QueryRect& q, Pos want) {
                    REQUIRE(e.query(q) == want);
                });
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
}

TEST_CASE("stacked equals oracle on random matrices up to m = 6") {
    for (int m = 2; m <= 6; ++m) {
        for (int trial = 0; trial < 30; ++trial) {
            RankMatrix a = gen_random_matrix(m, 64, derive_seed(uint64_t(m), trial));
            StackedEncoding e =
                StackedEncoding::decode(StackedEncoding::encode(a).payload(), m, 64);
            rmqtest::for_each_4sided(a, [&](const QueryRect& q, Pos want) {
                REQUIRE(e.query(q) == want);
            });
        }
    }
}

TEST_CASE("three-row encoding requires m = 3") {
    RankMatrix a = gen_random_matrix(2, 4, 1);
    CHECK_THROWS_AS(ThreeRowEncoding::encode(a), std::invalid_argument);
}

TEST_CASE("three-row: all winners in the middle row") {
    // middle row holds the top band, column-aligned decreasing
    const int n = 64;
    std::vector<int64_t> cells(3 * size_t(n));
    for (int j = 0; j < n; ++j) {
        cells[size_t(0) * n + j] = 2 * j;            // top
        cells[size_t(1) * n + j] = 3 * n - 1 - j;    // middle: 2n..3n-1 decreasing
        cells[size_t(2) * n + j] = 2 * j + 1;        // bottom
    }
    RankMatrix a(3, n, std::move(cells));
    ThreeRowEncoding e = ThreeRowEncoding::encode(a);
    CHECK(e.middle_count() == uint64_t(n));
    CHECK(e.reduced_tm_bits() == 0);
    CHECK(e.reduced_mb_bits() == 0);
    CHECK(e.label_code_bits() <= 2);
    ThreeRowEncoding d = ThreeRowEncoding::decode(e.payload(), n);
    rmqtest::for_each_4sided(a, [&](const QueryRect& q, Pos want) {
        REQUIRE(d.query(q) == want);
    });
}

TEST_CASE("three-row equals oracle exhaustively at n = 2") {
    std::vector<int64_t> perm{0, 1, 2, 3, 4, 5};
    int queries_checked = 0;
    do {
        RankMatrix a(3, 2, perm);
        ThreeRowEncoding e = ThreeRowEncoding::decode(ThreeRowEncoding::encode(a).payload(), 2);
        queries_checked = 0;
        rmqtest::for_each_4sided(a, [&](const QueryRect& q, Pos want) {
            REQUIRE(e.query(q) == want);
            ++queries_checked;
        });
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(queries_checked == 18);  // 6 row ranges x 3 column ranges
}

TEST_CASE("three-row equals oracle on random matrices") {
    for (int trial = 0; trial < 60; ++trial) {
        RankMatrix a = gen_random_matrix(3, 48, derive_seed(77, trial));
        ThreeRowEncoding e =
            ThreeRowEncoding::decode(ThreeRowEncoding::encode(a).payload(), 48);
        rmqtest::for_each_4sided(a, [&](const QueryRect& q, Pos want) {
            REQUIRE(e.query(q) == want);
        });
    }
}

TEST_CASE("three-row banded inputs: reduced bits equal (1-x)n exactly") {
    const int n = 1000;
    for (double x : {0.0, 0.2, 0.5, 1.0}) {
        std::vector<int> winners(n, 1);
        int cnt = int(x * n + 0.5);
        for (int j = 0; j < cnt; ++j) winners[j] = 2;
        // spread non-middle winners over T and B
        for (int j = cnt; j < n; ++j) winners[j] = (j % 2) ? 1 : 3;
        RankMatrix a = banded_three_rows(n, winners);
        ThreeRowEncoding e = ThreeRowEncoding::encode(a);
        REQUIRE(e.middle_count() == uint64_t(cnt));
        REQUIRE(e.reduced_tm_bits() + e.reduced_mb_bits() == size_t(n - cnt));
        ThreeRowEncoding d = ThreeRowEncoding::decode(e.payload(), n);
        // spot-check queries
        uint64_t s = 900 + uint64_t(x * 10);
        for (int k = 0; k < 300; ++k) {
            int j1 = 1 + int(splitmix64(s) % n), j2 = 1 + int(splitmix64(s) % n);
            if (j1 > j2) std::swap(j1, j2);
            int i1 = 1 + int(splitmix64(s) % 3), i2 = 1 + int(splitmix64(s) % 3);
            if (i1 > i2) std::swap(i1, i2);
            QueryRect q = QueryRect::sided4(i1, i2, j1, j2);
            REQUIRE(d.query(q) == oracle_rmq(a, q));
        }
    }
}

TEST_CASE("three-row extra bits approach n log2 5 at x = 1/5") {
    const int n = 10000;
    std::vector<int> winners(n);
    for (int j = 0; j < n; ++j) winners[j] = (j % 5 == 0) ? 2 : ((j % 2) ? 1 : 3);
    RankMatrix a = banded_three_rows(n, winners);
    ThreeRowEncoding e = ThreeRowEncoding::encode(a);
    double per_col = double(e.extra_bits()) / n;
    CHECK(per_col > std::log2(5.0) - 0.05);
    CHECK(per_col < std::log2(5.0) + 0.05);
}

TEST_CASE("three-row cost function") {
    CHECK(three_row_cost(0.2) == doctest::Approx(std::log2(5.0)).epsilon(1e-12));
    CHECK(three_row_cost(0.0) == doctest::Approx(2.0));
    CHECK(three_row_cost(1.0) == doctest::Approx(0.0));
    // maximum at x = 1/5 over a fine sweep
    double best_x = 0, best = -1;
    for (int i = 0; i <= 1000; ++i) {
        double x = i / 1000.0;
        if (three_row_cost(x) > best) {
            best = three_row_cost(x);
            best_x = x;
        }
    }
    CHECK(best_x == doctest::Approx(0.2));
    CHECK(best == doctest::Approx(std::log2(5.0)).epsilon(1e-9));
}

TEST_CASE("effective entropy class counts") {
    CHECK(count_equiv_classes(1, 1) == 1);
    CHECK(count_equiv_classes(1, 2) == 2);
    CHECK(count_equiv_classes(1, 3) == 5);
    CHECK(count_equiv_classes(1, 4) == 14);  // Catalan numbers
    CHECK(count_equiv_classes(2, 1) == 2);
    CHECK(count_equiv_classes(2, 2) == 16);
    CHECK(count_equiv_classes(2, 3) == 200);  // Catalan(3)^2 * 2^3
    CHECK_THROWS_AS(count_equiv_classes(2, 5), ResourceError);
}

TEST_CASE("class count matches Catalan(n)^2 * 2^n for two rows up to n = 4") {
    auto catalan = [](int n) {
        std::vector<int64_t> c(n + 1, 0);
        c[0] = 1;
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
        return c[n];
    };
    for (int n = 1; n <= 4; ++n)
        REQUIRE(count_equiv_classes(2, n) ==
                uint64_t(catalan(n) * catalan(n)) << unsigned(n));
}
