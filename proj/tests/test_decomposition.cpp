#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>

#include "treecube/decomposition.hpp"
#include "treecube/rng.hpp"
#include "treecube/tree.hpp"

using namespace treecube;

namespace {

TreeOptions rooted_at(Vertex v) {
    TreeOptions opts;
    opts.root = v;
    return opts;
}

RootedTree path10() { return generate(TreeKind::Path, {10, 0}); }

std::set<Vertex> piece_set(const Piece& p) {
    return std::set<Vertex>(p.vertices.begin(), p.vertices.end());
}

// Random vertex at distance <= budget from u (walk of random length).
Vertex random_nearby(const RootedTree& t, Vertex u, long long budget, SplitMix64& rng) {
    Vertex cur = u;
    const long long steps = static_cast<long long>(rng.uniform_below(
        static_cast<std::uint64_t>(budget + 1)));
    for (long long s = 0; s < steps; ++s) {
        std::vector<Vertex> nbrs;
        if (t.parent(cur) >= 0) nbrs.push_back(t.parent(cur));
        for (Vertex c : t.children(cur)) nbrs.push_back(c);
        cur = nbrs[rng.uniform_below(nbrs.size())];
    }
    return cur;
}

void check_lemma6_invariants(const RootedTree& t, const Ladder& ladder) {
    for (CutMode mode : {CutMode::A, CutMode::B}) {
        std::vector<LevelFamilies> fams;
        for (int i = 0; i <= ladder.max_level(); ++i)
            fams.push_back(decompose(t, ladder.h[static_cast<std::size_t>(i)], mode));

        for (int i = 0; i <= ladder.max_level(); ++i) {
            const auto& fam = fams[static_cast<std::size_t>(i)];
            // (1) height bound
            for (const Piece& p : fam.pieces)
                CHECK(p.height <= 3 * ladder.h[static_cast<std::size_t>(i)]);
            // (3) partition
            long long total = 0;
            for (const Piece& p : fam.pieces) total += static_cast<long long>(p.vertices.size());
            CHECK(total == t.n());
            // edge accounting
            long long edge_sum = std::accumulate(
                fam.pieces.begin(), fam.pieces.end(), 0LL,
                [](long long acc, const Piece& p) {
                    return acc + static_cast<long long>(p.vertices.size()) - 1;
                });
            CHECK(edge_sum + static_cast<long long>(fam.cut_children.size()) == t.n() - 1);
            // (2) cut sets nest across consecutive levels
            if (i + 1 <= ladder.max_level()) {
                const auto& lo = fams[static_cast<std::size_t>(i + 1)];
                std::set<Vertex> lo_cuts(lo.cut_children.begin(), lo.cut_children.end());
                for (Vertex c : fam.cut_children) CHECK(lo_cuts.count(c) == 1);
                // pieces of the finer level live inside one coarser piece
                for (const Piece& p : lo.pieces) {
                    const Vertex host = fam.piece_of[static_cast<std::size_t>(p.root)];
                    for (Vertex v : p.vertices)
                        CHECK(fam.piece_of[static_cast<std::size_t>(v)] == host);
                }
            }
        }
    }
}

}  // namespace

TEST_CASE("ladder for height 1000 (faithful)") {
    auto l = build_ladder(1000);
    CHECK(l.k == 4);
    CHECK(l.h == std::vector<long long>{65536, 256, 16, 4, 2});
    CHECK(l.e == 0);
    CHECK(l.o == 1);
    CHECK(l.rounds() == 0);
}

TEST_CASE("ladder for height 100000 (faithful) has one extension round") {
    auto l = build_ladder(100000);
    CHECK(l.k == 5);
    CHECK(l.h == std::vector<long long>{4294967296LL, 65536, 256, 16, 4, 2});
    CHECK(l.e == 2);
    CHECK(l.o == 1);
    CHECK(l.max_level() == 2);
    CHECK(l.rounds() == 1);
    // the faithful rungs at e and o
    CHECK(l.h[static_cast<std::size_t>(l.e)] == 256);    // 2^(2^3)
    CHECK(l.h[static_cast<std::size_t>(l.o)] == 65536);  // 2^(2^4)
}

TEST_CASE("ladder for height 100 scaled to 16") {
    auto l = build_ladder(100, 16);
    CHECK(l.k == 3);
    CHECK(l.h == std::vector<long long>{256, 16, 4, 2});
    CHECK(l.e == 2);
    CHECK(l.o == 1);
    CHECK(l.rounds() == 1);
}

TEST_CASE("degenerate ladders") {
    auto l1 = build_ladder(1);
    CHECK(l1.k == 0);
    CHECK(l1.h == std::vector<long long>{2});
    CHECK(l1.e == 0);
    CHECK(l1.o == -1);
    auto l3 = build_ladder(3);
    CHECK(l3.k == 1);
    CHECK(l3.h == std::vector<long long>{4, 2});
    CHECK(l3.e == 0);
    CHECK(l3.o == 1);
}

TEST_CASE("ladder validation and square relation") {
    CHECK_THROWS_AS(build_ladder(10, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_ladder(10, 2), std::invalid_argument);
    for (long long h : {5LL, 17LL, 300LL, 70000LL}) {
        auto l = build_ladder(h);
        for (int i = 0; i + 1 <= l.k; ++i)
            CHECK(l.h[static_cast<std::size_t>(i + 1)] * l.h[static_cast<std::size_t>(i + 1)] ==
                  l.h[static_cast<std::size_t>(i)]);
        if (h >= 3) {
            const long long gamma = l.h[0];
            CHECK(h <= gamma);
            CHECK(h * h > gamma);  // sqrt(Gamma) < h
        }
    }
}

TEST_CASE("decompose path-10 with h_i = 2, mode A") {
    auto t = path10();
    auto fam = decompose(t, 2, CutMode::A);  // cuts at depth 6 -> 7
    REQUIRE(fam.pieces.size() == 2);
    CHECK(piece_set(fam.pieces[0]) == std::set<Vertex>{0, 1, 2, 3, 4, 5, 6});
    CHECK(piece_set(fam.pieces[1]) == std::set<Vertex>{7, 8, 9});
    CHECK(fam.cut_children == std::vector<Vertex>{7});
    CHECK(fam.pieces[1].root == 7);
}

TEST_CASE("decompose path-10 with h_i = 2, mode B") {
    auto t = path10();
    auto fam = decompose(t, 2, CutMode::B);  // cuts after depths 2 and 8
    REQUIRE(fam.pieces.size() == 3);
    CHECK(piece_set(fam.pieces[0]) == std::set<Vertex>{0, 1, 2});
    CHECK(piece_set(fam.pieces[1]) == std::set<Vertex>{3, 4, 5, 6, 7, 8});
    CHECK(piece_set(fam.pieces[2]) == std::set<Vertex>{9});
    CHECK(fam.cut_children == std::vector<Vertex>{3, 9});
}

TEST_CASE("no qualifying depth leaves the whole tree in one piece") {
    auto t = generate(TreeKind::RandomPruefer, {80, 0}, 5);
    auto fam = decompose(t, t.height(), CutMode::A);  // 3*h_i > height
    CHECK(fam.pieces.size() == 1);
    CHECK(fam.cut_children.empty());
    CHECK(fam.pieces[0].root == t.root());
}

TEST_CASE("pieces store vertices in preorder with the root first") {
    auto t = generate(TreeKind::RandomPruefer, {200, 0}, 9);
    auto fam = decompose(t, 2, CutMode::B);
    for (const Piece& p : fam.pieces) {
        REQUIRE(!p.vertices.empty());
        CHECK(p.vertices.front() == p.root);
        for (std::size_t i = 1; i < p.vertices.size(); ++i) {
            CHECK(t.tin(p.vertices[i - 1]) < t.tin(p.vertices[i]));
            // parent of a non-root piece member is in the same piece
            CHECK(fam.piece_of[static_cast<std::size_t>(t.parent(p.vertices[i]))] ==
                  fam.piece_of[static_cast<std::size_t>(p.vertices[i])]);
        }
    }
}

TEST_CASE("structural invariants across ladder levels") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto t = generate(TreeKind::RandomPruefer, {300, 0}, seed);
        check_lemma6_invariants(t, build_ladder(t.height(), 16));
        check_lemma6_invariants(t, build_ladder(t.height()));
    }
    auto cat = generate(TreeKind::Caterpillar, {400, 1});
    check_lemma6_invariants(cat, build_ladder(cat.height(), 16));
}

TEST_CASE("pair coverage on path-10") {
    auto t = path10();
    auto a = decompose(t, 2, CutMode::A);
    auto b = decompose(t, 2, CutMode::B);
    // The pair (6,8) spans the A-cut; the B-piece {3..8} catches it.
    CHECK(cover_pair_check(t, a, b, 6, 8));
    CHECK(cover_pair_check(t, a, b, 4, 4));
    CHECK_THROWS_AS(cover_pair_check(t, a, b, 0, 9), std::invalid_argument);
}

TEST_CASE("pair coverage property on random trees") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto t = generate(TreeKind::RandomPruefer, {250, 0}, seed);
        auto ladder = build_ladder(t.height(), 16);
        SplitMix64 rng(seed * 31 + 7);
        for (int i = 0; i <= ladder.max_level(); ++i) {
            const long long hi = ladder.h[static_cast<std::size_t>(i)];
            auto a = decompose(t, hi, CutMode::A);
            auto b = decompose(t, hi, CutMode::B);
            for (int trial = 0; trial < 40; ++trial) {
                const Vertex u = static_cast<Vertex>(rng.uniform_below(
                    static_cast<std::uint64_t>(t.n())));
                const Vertex v = random_nearby(t, u, hi, rng);
                CHECK(cover_pair_check(t, a, b, u, v));
            }
        }
    }
}

TEST_CASE("cut_children matches decompose") {
    auto t = generate(TreeKind::Caterpillar, {120, 2}, 0);
    for (long long hi : {1LL, 2LL, 4LL, 16LL})
        for (CutMode mode : {CutMode::A, CutMode::B})
            CHECK(cut_children(t, hi, mode) == decompose(t, hi, mode).cut_children);
}

TEST_CASE("family debug dump") {
    auto t = path10();
    auto fam = decompose(t, 2, CutMode::A);
    auto dump = dump_families(fam);
    CHECK(dump.find("root=0 size=7 height=6") != std::string::npos);
    CHECK(dump.find("root=7 size=3 height=2") != std::string::npos);
}

TEST_CASE("rooting at a different vertex changes the cuts but not the laws") {
    auto t = parse_tree("7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6", rooted_at(3));
    auto fam = decompose(t, 1, CutMode::A);  // cuts below depth 3
    long long total = 0;
    for (const Piece& p : fam.pieces) {
        total += static_cast<long long>(p.vertices.size());
        CHECK(p.height <= 3);
    }
    CHECK(total == 7);
}
