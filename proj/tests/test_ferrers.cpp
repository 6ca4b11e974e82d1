#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fdrm/ferrers.hpp"

using namespace fdrm;

TEST_CASE("parse and validate profiles") {
    auto f = parse_diagram("cols:2,3,4,5");
    CHECK(f.m() == 5);
    CHECK(f.n() == 4);
    CHECK(f.dots() == 14);
    CHECK_THROWS(parse_diagram("cols:3,2"));
    CHECK_THROWS(parse_diagram("cols:0,1"));
    CHECK_THROWS(parse_diagram("cols:"));
    auto single = parse_diagram("cols:1");
    CHECK(single.m() == 1);
    CHECK(single.n() == 1);
    CHECK(single.dots() == 1);
}

TEST_CASE("parse grid form") {
    auto f = parse_diagram("***\n.**\n..*\n");
    CHECK(f.gamma() == std::vector<std::size_t>({1, 2, 3}));
    // shorter lines are right-aligned
    auto g = parse_diagram("**\n**\n*");
    // rows (2,2,1) with the short row flush right -> gamma (2,3)
    CHECK(g.gamma() == std::vector<std::size_t>({2, 3}));
    CHECK_THROWS(parse_diagram("*.\n**"));      // dot left of a gap
    CHECK_THROWS(parse_diagram("**\n..\n**"));  // empty row
    CHECK_THROWS(parse_diagram(".*\n*.\n"));    // dots not top-aligned
    // round trip through the grid printer
    CHECK(parse_diagram(diagram_grid_string(f)) == f);
    CHECK(parse_diagram(diagram_profile_string(f)) == f);
}

TEST_CASE("transpose") {
    auto f = parse_diagram("cols:2,3,4,5");
    auto t = transpose(f);
    CHECK(t.m() == 4);
    CHECK(t.n() == 5);
    CHECK(t.gamma() == std::vector<std::size_t>({1, 2, 3, 4, 4}));
    CHECK(transpose(t) == f);
    // m x 1 column -> 1 x m row
    auto col = parse_diagram("cols:6");
    auto row = transpose(col);
    CHECK(row.m() == 1);
    CHECK(row.n() == 6);
    // dot count preserved, row profile maps to column profile
    CHECK(t.dots() == f.dots());
    auto pf = profile(f);
    auto pt = profile(t);
    std::vector<std::size_t> rev(pt.rho.rbegin(), pt.rho.rend());
    CHECK(rev == f.gamma());
}

TEST_CASE("profiles and diagonals") {
    auto f = parse_diagram("cols:2,3,4,5");
    auto p = profile(f);
    CHECK(p.rho == std::vector<std::size_t>({4, 4, 3, 2, 1}));
    CHECK(p.dot_count == 14);
    CHECK(p.theta == std::vector<std::size_t>({1, 2, 3, 4, 4}));
    auto full = parse_diagram("cols:3,3,3");
    auto pf = profile(full);
    CHECK(pf.theta == std::vector<std::size_t>({1, 2, 3}));
    CHECK(pf.rho == std::vector<std::size_t>({3, 3, 3}));
}

TEST_CASE("singleton-like bound") {
    auto f = parse_diagram("cols:2,3,4,5");
    auto b = singleton_like_bound(f, 2);
    CHECK(b.v == std::vector<std::size_t>({9, 10}));
    CHECK(b.k_max == 9);
    CHECK(singleton_like_bound(f, 1).k_max == f.dots());
    CHECK_THROWS(singleton_like_bound(f, 0));
    CHECK_THROWS(singleton_like_bound(f, 5));
    // 10x8 staircase diagram at delta = 4
    auto big = parse_diagram("cols:2,3,3,4,4,4,4,10");
    CHECK(singleton_like_bound(big, 4).k_max == 10);
}

TEST_CASE("bound oracle: direct cell counting, and monotonicity") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 6;
        std::vector<std::size_t> gamma(n);
        std::size_t g = 1 + rng() % 3;
        for (std::size_t j = 0; j < n; ++j) {
            gamma[j] = g;
            g += rng() % 3;
        }
        auto f = FerrersDiagram::from_profile(gamma);
        std::size_t prev = SIZE_MAX;
        for (std::size_t delta = 1; delta <= n; ++delta) {
            auto b = singleton_like_bound(f, delta);
            // oracle: enumerate the dot set directly
            std::size_t kmax = SIZE_MAX;
            for (std::size_t i = 0; i < delta; ++i) {
                std::size_t cnt = 0;
                for (auto [r, c] : f.cells())
                    if (r >= i && c + (delta - 1 - i) < f.n()) ++cnt;
                kmax = std::min(kmax, cnt);
            }
            CHECK(b.k_max == kmax);
            CHECK(b.k_max <= prev);
            prev = b.k_max;
        }
    }
}

TEST_CASE("full rectangle bound matches m(n-delta+1)") {
    for (std::size_t m = 1; m <= 8; ++m)
        for (std::size_t n = 1; n <= m; ++n) {
            std::vector<std::size_t> gamma(n, m);
            auto f = FerrersDiagram::from_profile(gamma);
            for (std::size_t delta = 1; delta <= n; ++delta)
                CHECK(singleton_like_bound(f, delta).k_max == m * (n - delta + 1));
        }
}

// Column-interleaved assembly: F1 is the 6x2 diagram cols:2,6 and
// F2 the 3x2 diagram cols:1,3; interleaving their columns gives a 6x4 target.
static void d1_assembly(FerrersDiagram& f1, FerrersDiagram& f2, CellMap& phi1,
                        CellMap& phi2, FerrersDiagram& d1) {
    f1 = parse_diagram("cols:2,6");
    f2 = parse_diagram("cols:1,3");
    d1 = parse_diagram("cols:1,2,3,6");
    // column interleave: F2 col0 -> target col0, F1 col0 -> col1,
    // F2 col1 -> col2, F1 col1 -> col3 (rows preserved)
    phi1.pairs.clear();
    phi2.pairs.clear();
    for (auto [i, j] : f1.cells()) phi1.pairs.push_back({{i, j}, {i, j == 0 ? 1u : 3u}});
    for (auto [i, j] : f2.cells()) phi2.pairs.push_back({{i, j}, {i, j == 0 ? 0u : 2u}});
}

TEST_CASE("proper combination: column-interleaved assembly") {
    FerrersDiagram f1 = parse_diagram("cols:1"), f2 = f1, d1 = f1;
    CellMap phi1, phi2;
    d1_assembly(f1, f2, phi1, phi2, d1);
    CHECK(proper_combination_check(f1, f2, phi1, phi2, d1));
    CHECK(degeneration_shape(f1, phi1) == ShapeClass::invariant);
    CHECK(degeneration_shape(f2, phi2) == ShapeClass::invariant);
}

TEST_CASE("identity embedding with empty second piece") {
    auto f = parse_diagram("cols:2,3");
    CellMap id = CellMap::identity(f);
    FerrersDiagram none = parse_diagram("cols:1");
    CellMap phi2;  // empty map: piece contributes nothing
    // use a zero-dot trick: the 1-dot diagram with an empty map fails the
    // "defined on all dots" requirement, so the combination is not proper
    CHECK_FALSE(proper_combination_check(f, none, id, phi2, f));
    // but the identity alone, via the vector form, is a proper combination
    CHECK(proper_combination_check({&f}, {&id}, f));
    CHECK(degeneration_shape(f, id) == ShapeClass::invariant);
}

TEST_CASE("coherence violation is detected") {
    auto f1 = parse_diagram("cols:2");  // two dots in one column
    auto f = parse_diagram("cols:1,2");
    // map the two same-column dots to cells sharing neither row nor column
    CellMap phi1;
    phi1.pairs = {{{0, 0}, {0, 1}}, {{1, 0}, {1, 0}}};
    // wait: (1,0) is not a dot of cols:1,2 (gamma[0]=1) -> use (0,0)
    phi1.pairs = {{{0, 0}, {0, 1}}, {{1, 0}, {0, 0}}};
    // images (0,1) and (0,0) share a row: coherent. Make an incoherent one
    // in a bigger target.
    auto big = parse_diagram("cols:2,2");
    CellMap bad;
    bad.pairs = {{{0, 0}, {0, 0}}, {{1, 0}, {1, 1}}};
    auto f2 = parse_diagram("cols:2");
    CellMap other;
    other.pairs = {{{0, 0}, {1, 0}}, {{1, 0}, {0, 1}}};
    CHECK_FALSE(proper_combination_check(f1, f2, bad, other, big));
}

TEST_CASE("errors: non-injective and off-diagram maps") {
    auto f1 = parse_diagram("cols:2");
    auto f = parse_diagram("cols:2,2");
    CellMap dup;
    dup.pairs = {{{0, 0}, {0, 0}}, {{1, 0}, {0, 0}}};
    CellMap id1 = CellMap::identity(f1);
    CHECK_THROWS(proper_combination_check(f1, f1, dup, id1, f));
    CellMap out;
    out.pairs = {{{0, 0}, {5, 5}}, {{1, 0}, {0, 0}}};
    CHECK_THROWS(proper_combination_check(f1, f1, out, id1, f));
}

TEST_CASE("proper_embed places entries and respects rank subadditivity") {
    auto F = make_field(2, 1, 1);
    FerrersDiagram f1 = parse_diagram("cols:1"), f2 = f1, d1 = f1;
    CellMap phi1, phi2;
    d1_assembly(f1, f2, phi1, phi2, d1);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        MatFq m1(F.get(), f1.m(), f1.n());
        MatFq m2(F.get(), f2.m(), f2.n());
        for (auto [i, j] : f1.cells()) m1.at(i, j) = rng() % 2;
        for (auto [i, j] : f2.cells()) m2.at(i, j) = rng() % 2;
        MatFq out = proper_embed(m1, m2, phi1, phi2, d1);
        CHECK(mat_rank(out) <= mat_rank(m1) + mat_rank(m2));
        // entries land where the maps say
        for (const auto& [s, d] : phi1.pairs) CHECK(out.at(d.first, d.second) == m1.at(s.first, s.second));
        for (const auto& [s, d] : phi2.pairs) CHECK(out.at(d.first, d.second) == m2.at(s.first, s.second));
    }
    // support violation
    MatFq bad(F.get(), f1.m(), f1.n());
    bad.at(0, 1) = 1;
    bad.at(5, 0) = 1;  // (5,0) is not a dot of cols:2,6
    MatFq z2(F.get(), f2.m(), f2.n());
    CHECK_THROWS(proper_embed(bad, z2, phi1, phi2, d1));
}

TEST_CASE("degeneration shapes: row, column, transpose") {
    auto f2 = parse_diagram("cols:1,3");  // 4 dots
    // flatten into one row
    auto target_row = parse_diagram("cols:1,1,1,1");
    CellMap row_map;
    std::size_t c = 0;
    for (auto cell : f2.cells()) row_map.pairs.push_back({cell, {0, c++}});
    CHECK(proper_combination_check({&f2}, {&row_map}, target_row));
    CHECK(degeneration_shape(f2, row_map) == ShapeClass::single_row);
    // flatten into one column
    auto target_col = parse_diagram("cols:4");
    CellMap col_map;
    std::size_t r = 0;
    for (auto cell : f2.cells()) col_map.pairs.push_back({cell, {r++, 0}});
    CHECK(proper_combination_check({&f2}, {&col_map}, target_col));
    CHECK(degeneration_shape(f2, col_map) == ShapeClass::single_col);
    // transpose embedding: the literal map (i,j) -> (j,i), placed inside a
    // full 2x3 target together with a second piece covering the leftovers
    auto full23 = parse_diagram("cols:2,2,2");
    CellMap tr;
    for (auto [i, j] : f2.cells()) tr.pairs.push_back({{i, j}, {j, i}});
    // transposed image is {(0,0),(1,0),(1,1),(1,2)}; remaining dots of the
    // target are (0,1) and (0,2)
    auto frow = parse_diagram("cols:1,1");
    CellMap fill;
    fill.pairs = {{{0, 0}, {0, 1}}, {{0, 1}, {0, 2}}};
    CHECK(proper_combination_check({&f2, &frow}, {&tr, &fill}, full23));
    CHECK(degeneration_shape(f2, tr) == ShapeClass::transposed);
    CHECK(degeneration_shape(frow, fill) == ShapeClass::invariant);
}
