#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rtlab/grid.hpp"
#include "rtlab/rng.hpp"

using namespace rtlab;

TEST_CASE("endpoints are exact rationals") {
    GridInterval unit{0, 0, 0, 1};
    auto [a, b] = endpoints(unit);
    CHECK(a == Rat(0));
    CHECK(b == Rat(1));

    GridInterval g{0, 0, 3, 41};
    auto [ga, gb] = endpoints(g);
    CHECK(ga == Rat(3, 41));
    CHECK(gb == Rat(44, 41));

    // (i=-3, l=5, L=1, N=41): 1/8*(5+1/41) = 206/328 = 103/164
    GridInterval h{-3, 5, 1, 41};
    auto [ha, hb] = endpoints(h);
    CHECK(ha == Rat(206, 328));
    CHECK(hb == Rat(247, 328));
    CHECK(hb - ha == pow2(-3));
}

TEST_CASE("relate classifies by exact comparison") {
    GridInterval whole{0, 0, 0, 1};
    auto [s1, s2] = whole.sons();
    CHECK(relate(whole, s1) == Relation::b_inside_a);
    CHECK(relate(s1, whole) == Relation::a_inside_b);

    GridInterval a{0, 0, 3, 41}, b{0, 1, 3, 41};
    CHECK(relate(a, b) == Relation::disjoint);  // adjacent, shared endpoint

    // [0,1] vs [1/2, 3/2]
    GridInterval half{-1, 1, 0, 1};
    CHECK(relate_endpoints(Rat(0), Rat(1), Rat(1, 2), Rat(3, 2)) == Relation::violation);
    CHECK(relate(whole, whole) == Relation::a_inside_b);  // equality convention
    (void)half;
}

TEST_CASE("sons partition the parent exactly") {
    GridInterval g{0, 0, 3, 41};
    auto [s1, s2] = g.sons();
    CHECK(s1.left() == g.left());
    CHECK(s1.right() == Rat(47, 82));
    CHECK(s2.left() == Rat(47, 82));
    CHECK(s2.right() == g.right());
    CHECK(s1.length() == pow2(-1));

    // descendants of [0,2] reach [0,1/2]
    GridInterval two{1, 0, 0, 1};
    auto d = two.sons().first.sons().first;
    CHECK(d.left() == Rat(0));
    CHECK(d.right() == Rat(1, 2));
}

TEST_CASE("enumerate: standard grid window") {
    GridSpec s;  // N = 1
    auto v = enumerate_grid(s, 0, 0, Rat(0), Rat(3));
    REQUIRE(v.size() == 3);
    CHECK(v[0].left() == Rat(0));
    CHECK(v[1].left() == Rat(1));
    CHECK(v[2].left() == Rat(2));
}

TEST_CASE("enumerate: 41-adic family at one scale") {
    GridSpec s{41, 0, 3, false};
    auto v = enumerate_grid(s, 0, 0, Rat(0), Rat(2));
    // [-38/41, 3/41] meets [0,2) in (0, 3/41), then [3/41,44/41], [44/41,85/41]
    REQUIRE(v.size() == 3);
    CHECK(v[0].left() == Rat(-38, 41));
    CHECK(v[1].left() == Rat(3, 41));
    CHECK(v[2].left() == Rat(44, 41));
    // scale 1 is not populated when unsaturated (1 != 0 mod 40)
    CHECK(enumerate_grid(s, 1, 1, Rat(0), Rat(2)).empty());
}

TEST_CASE("enumerate: saturation adds sons") {
    GridSpec s{41, 0, 0, true};
    auto v = enumerate_grid(s, -1, 0, Rat(0), Rat(1));
    REQUIRE(v.size() == 3);
    CHECK(v[0].i == -1);
    CHECK(v[0].left() == Rat(0));
    CHECK(v[1].left() == Rat(1, 2));
    CHECK(v[2].i == 0);
    CHECK(v[2].left() == Rat(0));
}

TEST_CASE("saturated offsets double per halving") {
    GridSpec s{41, 0, 3, true};
    // one halving below the native scale 0: offset 6/41
    auto v = enumerate_grid(s, -1, -1, Rat(0), Rat(1, 2));
    REQUIRE(!v.empty());
    CHECK(v[0].L == 6);
    // sons of native intervals are members
    auto natives = enumerate_grid(s, 0, 0, Rat(0), Rat(1));
    for (const auto& g : natives) {
        auto [s1, s2] = g.sons();
        auto at = enumerate_grid(s, -1, -1, s1.left(), s1.right());
        bool found = false;
        for (const auto& c : at)
            if (c == s1) found = true;
        CHECK(found);
    }
}

TEST_CASE("verify_grid: clean families have no violations") {
    GridSpec s41{41, 0, 0, false};
    auto rep = verify_grid(s41, -40, 40, Rat(0), Rat(4));
    CHECK(rep.violations.empty());
    CHECK(rep.checked_pairs > 0);

    GridSpec std1;
    auto rep2 = verify_grid(std1, -2, 2, Rat(0), Rat(4));
    CHECK(rep2.method == "pairwise");
    CHECK(rep2.violations.empty());

    // saturated closure stays nested too
    GridSpec sat{41, 3, 7, true};
    auto rep3 = verify_grid(sat, -5, 5, Rat(0), Rat(2));
    CHECK(rep3.violations.empty());
}

TEST_CASE("verify_grid boundary method agrees with pairwise") {
    GridSpec s{41, 0, 5, true};
    auto brute = verify_grid(s, -6, 2, Rat(0), Rat(2));
    auto bd = verify_grid(s, -6, 2, Rat(0), Rat(2), /*pair_budget=*/1);
    CHECK(brute.method == "pairwise");
    CHECK(bd.method == "scale-pair");
    CHECK(brute.violations.size() == bd.violations.size());
}

TEST_CASE("corrupted family is detected") {
    // mix scale-0 and scale-1 intervals with the same 3/41 offset:
    // offsets fail to double, so halves straddle
    GridSpec s{41, 0, 3, false};
    auto v = enumerate_grid(s, 0, 0, Rat(0), Rat(2));
    std::vector<GridInterval> bad = v;
    bad.push_back(GridInterval{1, 0, 3, 41});  // scale 1 = j+1 mod 40 intruder
    auto rep = verify_intervals(bad);
    CHECK(!rep.violations.empty());
}

TEST_CASE("distinct (j,L) families share no intervals") {
    std::vector<GridSpec> specs;
    for (long j : {0l, 1l, 2l})
        for (long L : {0l, 1l, 5l}) specs.push_back(GridSpec{5, j, L, false});
    CHECK(specs.size() == 9);
    // N=5: j in [0,4), L in [0,5); drop invalid L=5
    specs.erase(std::remove_if(specs.begin(), specs.end(),
                               [](const GridSpec& s) { return !s.valid(); }),
                specs.end());
    CHECK(count_shared_intervals(specs, -8, 8, Rat(0), Rat(4)) == 0);
}

TEST_CASE("property: random family pairs never violate nestedness") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        long N = (trial % 2 == 0) ? 3 : 5;
        GridSpec s{N, rng.integer(0, N - 2), rng.integer(0, N - 1), true};
        long lo = rng.integer(-6, -2), hi = rng.integer(0, 4);
        auto rep = verify_grid(s, lo, hi, Rat(0), Rat(3));
        CHECK(rep.violations.empty());
    }
}

TEST_CASE("json and csv round trips") {
    GridSpec s{41, 7, 12, true};
    auto t = grid_spec_from_json(grid_spec_json(s));
    CHECK(t.N == 41);
    CHECK(t.j == 7);
    CHECK(t.L == 12);
    CHECK(t.saturated);

    auto v = enumerate_grid(GridSpec{}, 0, 0, Rat(0), Rat(2));
    auto csv = enumeration_csv(v);
    CHECK(csv.find("i,l,L,N,left_num,left_den") == 0);
    CHECK(csv.find("0,1,0,1,1,1") != std::string::npos);
}
