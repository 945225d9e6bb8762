#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracle_sweep.hpp"
#include "rmq/random2d.hpp"

using namespace rmq;

TEST_CASE("1-sided prefix maxima, hand examples") {
    RankMatrix a(1, 3, {1, 0, 2});  // values 2,1,3
    PrefixMaxEncoding e = encode_1sided(a);
    CHECK(e.positions == std::vector<Pos>{{1, 1}, {1, 3}});
    CHECK(query_1sided(e, 2) == Pos{1, 1});
    CHECK(query_1sided(e, 3) == Pos{1, 3});
    CHECK_THROWS_AS(query_1sided(e, 4), std::out_of_range);

    RankMatrix b(2, 3, {1, 3, 0, 2, 4, 5});
    PrefixMaxEncoding eb = encode_1sided(b);
    CHECK(eb.positions == std::vector<Pos>{{2, 1}, {2, 2}, {2, 3}});
}

TEST_CASE("1-sided invariants: columns and values strictly increase") {
    for (int trial = 0; trial < 30; ++trial) {
        RankMatrix a = gen_random_matrix(4, 50, derive_seed(300, trial));
        PrefixMaxEncoding e = encode_1sided(a);
        for (size_t k = 1; k < e.positions.size(); ++k) {
            REQUIRE(e.positions[k - 1].col < e.positions[k].col);
            REQUIRE(a.at(e.positions[k - 1].row, e.positions[k - 1].col) <
                    a.at(e.positions[k].row, e.positions[k].col));
        }
        rmqtest::for_each_1sided(a, [&](const QueryRect& q, Pos want) {
            REQUIRE(query_1sided(e, q.j2) == want);
        });
    }
}

TEST_CASE("1-sided expected count is harmonic for a single row") {
    const int trials = 10000, n = 100;
    double total = 0;
    for (int t = 0; t < trials; ++t)
        total += double(encode_1sided(gen_random_matrix(1, n, derive_seed(301, t))).positions.size());
    double mean = total / trials;
    double harmonic = 0;
    for (int j = 1; j <= n; ++j) harmonic += 1.0 / j;
    CHECK(std::abs(mean - harmonic) < 0.1);
}

TEST_CASE("2-sided prefix maxima, hand example") {
    RankMatrix a(2, 3, {1, 3, 0, 2, 4, 5});
    PrefixMaxEncoding e = encode_2sided(a);
    CHECK(e.positions ==
          std::vector<Pos>{{2, 3}, {2, 2}, {1, 2}, {2, 1}, {1, 1}});
    CHECK(query_2sided(e, 2, 2) == Pos{2, 2});
    CHECK(query_2sided(e, 1, 1) == Pos{1, 1});
}

TEST_CASE("2-sided invariants and oracle agreement") {
    for (int trial = 0; trial < 30; ++trial) {
        RankMatrix a = gen_random_matrix(5, 40, derive_seed(310, trial));
        PrefixMaxEncoding e = encode_2sided(a);
        REQUIRE(a.at(e.positions[0].row, e.positions[0].col) == int64_t(a.count()) - 1);
        for (size_t k = 1; k < e.positions.size(); ++k)
            REQUIRE(a.at(e.positions[k].row, e.positions[k].col) <
                    a.at(e.positions[k - 1].row, e.positions[k - 1].col));
        rmqtest::for_each_2sided(a, [&](const QueryRect& q, Pos want) {
            REQUIRE(query_2sided(e, q.i2, q.j2) == want);
        });
    }
}

TEST_CASE("2-sided expected count is H_m * H_n") {
    const int trials = 400, m = 8, n = 64;
    double total = 0;
    for (int t = 0; t < trials; ++t)
        total += double(encode_2sided(gen_random_matrix(m, n, derive_seed(311, t))).positions.size());
    double mean = total / trials;
    auto harmonic = [](int k) {
        double h = 0;
        for (int i = 1; i <= k; ++i) h += 1.0 / i;
        return h;
    };
    double expect = harmonic(m) * harmonic(n);
    CHECK(mean > expect * 0.95);
    CHECK(mean < expect * 1.05);
}

TEST_CASE("prefix-maxima payload roundtrip and bit identity") {
    for (int trial = 0; trial < 20; ++trial) {
        RankMatrix a = gen_random_matrix(3, 30, derive_seed(320, trial));
        for (auto variant : {Sidedness::one, Sidedness::two}) {
            PrefixMaxEncoding e = variant == Sidedness::one ? encode_1sided(a) : encode_2sided(a);
            REQUIRE(e.position_bits() ==
                    e.positions.size() * size_t(ceil_log2_u64(uint64_t(a.count()) + 1)));
            Bits b = e.to_bits();
            PrefixMaxEncoding d = PrefixMaxEncoding::from_bits(variant, 3, 30, b);
            REQUIRE(d.positions == e.positions);
        }
    }
}

TEST_CASE("4-sided regions, hand examples") {
    // values [[4,1],[3,2]] -> ranks [[3,0],[2,1]]
    RankMatrix a(2, 2, {3, 0, 2, 1});
    RegionEncoding4 e = encode_4sided_regions(a);
    const std::vector<Pos>& d22 = e.delims[3];
    CHECK(std::find(d22.begin(), d22.end(), Pos{2, 1}) != d22.end());
    CHECK(query_4sided(e, QueryRect::sided4(2, 2, 2, 2)) == Pos{2, 2});
    CHECK(query_4sided(e, QueryRect::sided4(2, 2, 1, 2)) == Pos{2, 1});
    // the global maximum's region is the whole array
    CHECK(e.delims[0].empty());
    CHECK(query_4sided(e, QueryRect::sided4(1, 2, 1, 2)) == Pos{1, 1});
}

TEST_CASE("region delimiters satisfy the span condition exactly") {
    for (int trial = 0; trial < 10; ++trial) {
        RankMatrix a = gen_random_matrix(6, 9, derive_seed(330, trial));
        RegionEncoding4 e = encode_4sided_regions(a);
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 9; ++j) {
                std::vector<Pos> want;
                for (int k = 1; k <= 6; ++k)
                    for (int l = 1; l <= 9; ++l) {
                        if (k == i && l == j) continue;
                        QueryRect span = QueryRect::sided4(std::min(i, k), std::max(i, k),
                                                           std::min(j, l), std::max(j, l));
                        if (oracle_rmq(a, span) != Pos{k, l}) continue;
                        int64_t second = -1;
                        Pos sp{};
                        for (int x = span.i1; x <= span.i2; ++x)
                            for (int y = span.j1; y <= span.j2; ++y)
                                if (!(x == k && y == l) && a.at(x, y) > second) {
                                    second = a.at(x, y);
                                    sp = {x, y};
                                }
                        if (sp == Pos{i, j}) want.push_back({k, l});
                    }
                std::vector<Pos> got = e.delims[size_t(i - 1) * 9 + (j - 1)];
                std::sort(got.begin(), got.end());
                std::sort(want.begin(), want.end());
                REQUIRE(got == want);
            }
    }
}

TEST_CASE("4-sided region queries equal oracle") {
    for (int trial = 0; trial < 20; ++trial) {
        RankMatrix a = gen_random_matrix(5, 12, derive_seed(331, trial));
        RegionEncoding4 e =
            RegionEncoding4::from_bits(5, 12, encode_4sided_regions(a).to_bits());
        rmqtest::for_each_4sided(a, [&](const QueryRect& q, Pos want) {
            REQUIRE(query_4sided(e, q) == want);
        });
    }
}

TEST_CASE("region containment matches oracle equivalence cell by cell") {
    RankMatrix a = gen_random_matrix(4, 8, 5150);
    RegionEncoding4 e = encode_4sided_regions(a);
    rmqtest::for_each_4sided(a, [&](const QueryRect& q, Pos want) {
        for (int i = q.i1; i <= q.i2; ++i)
            for (int j = q.j1; j <= q.j2; ++j) {
                bool contained = true;
                for (Pos d : e.delims[size_t(i - 1) * 8 + (j - 1)])
                    if (q.contains(d)) contained = false;
                REQUIRE(contained == (want == Pos{i, j}));
            }
    });
}

TEST_CASE("3-sided encoding answers degenerate 1D case") {
    RankMatrix a(1, 3, {1, 0, 2});
    RegionEncoding3 e = encode_3sided(a);
    rmqtest::for_each_3sided(a, [&](const QueryRect& q, Pos want) {
        REQUIRE(query_3sided(e, q) == want);
    });
}

TEST_CASE("3-sided exhaustive over all 2x2 permutations") {
    std::vector<int64_t> perm{0, 1, 2, 3};
    do {
        RankMatrix a(2, 2, perm);
        RegionEncoding3 e = RegionEncoding3::from_bits(2, 2, encode_3sided(a).to_bits());
        rmqtest::for_each_3sided(a, [&](const QueryRect& q, Pos want) {
            REQUIRE(query_3sided(e, q) == want);
        });
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("3-sided equals oracle on random matrices") {
    for (int trial = 0; trial < 20; ++trial) {
        RankMatrix a = gen_random_matrix(6, 24, derive_seed(340, trial));
        RegionEncoding3 e =
            RegionEncoding3::from_bits(6, 24, encode_3sided(a).to_bits());
        rmqtest::for_each_3sided(a, [&](const QueryRect& q, Pos want) {
            REQUIRE(query_3sided(e, q) == want);
        });
    }
}

TEST_CASE("3-sided stores groups only for column prefix maxima") {
    RankMatrix a = gen_random_matrix(5, 20, 606);
    RegionEncoding3 e = encode_3sided(a);
    size_t expected = 0;
    for (int j = 1; j <= 20; ++j) {
        int64_t best = -1;
        for (int i = 1; i <= 5; ++i)
            if (a.at(i, j) > best) {
                best = a.at(i, j);
                ++expected;
            }
    }
    CHECK(e.groups.size() == expected);
    for (const Region3Group& g : e.groups) {
        bool below = false;
        for (Pos q : g.qs) below |= q.col == g.p.col;
        REQUIRE(below);
    }
}

TEST_CASE("3-sided bits stay proportional to n (log m)^2 across m") {
    const int n = 128, trials = 60;
    auto mean_bits = [&](int m, uint64_t seedbase) {
        double total = 0;
        for (int t = 0; t < trials; ++t)
            total += double(encode_3sided(gen_random_matrix(m, n, derive_seed(seedbase, t)))
                                .to_bits()
                                .bit_len);
        return total / trials;
    };
    double b4 = mean_bits(4, 350), b16 = mean_bits(16, 351);
    double r4 = b4 / (n * 4.0), r16 = b16 / (n * 16.0);  // bits / (n (log m)^2)
    CHECK(std::max(r4, r16) / std::min(r4, r16) < 1.3 / 0.7);
}
