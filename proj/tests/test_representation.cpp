#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treecube/representation.hpp"
#include "treecube/rng.hpp"
#include "treecube/tree.hpp"

using namespace treecube;

namespace {

TreeOptions rooted_at(Vertex v) {
    TreeOptions opts;
    opts.root = v;
    return opts;
}

RootedTree p3() { return parse_tree("3\n0 1\n1 2", rooted_at(0)); }
RootedTree claw() { return parse_tree("4\n0 1\n0 2\n0 3", rooted_at(0)); }

// Random total weight assignment with entries in {-1, -1/2, 0, 1/2, 1}.
WeightAssignment random_weights(const RootedTree& t, int dim, std::uint64_t seed) {
    WeightAssignment w(t, dim);
    SplitMix64 rng(seed);
    std::vector<Rat> buf(static_cast<std::size_t>(dim));
    const Rat values[5] = {Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1)};
    for (Vertex v = 0; v < t.n(); ++v) {
        if (v == t.root()) continue;
        for (auto& x : buf) x = values[rng.uniform_below(5)];
        w.set_weight(v, buf);
    }
    return w;
}

}  // namespace

TEST_CASE("prefix sums on P3") {
    auto t = p3();
    WeightAssignment w(t, 1);
    w.set_weight(1, {Rat(1)});
    w.set_weight(2, {Rat(1)});
    auto s = sum_vectors(w);
    CHECK(s.row(0)[0] == Rat(0));
    CHECK(s.row(1)[0] == Rat(1));
    CHECK(s.row(2)[0] == Rat(2));
    CHECK(sum_vector(w, 2)[0] == Rat(2));

    w.set_weight(2, {Rat(-1)});
    auto s2 = sum_vectors(w);
    CHECK(s2.row(2)[0] == Rat(0));
}

TEST_CASE("the root sums to zero and partial assignments error") {
    auto t = p3();
    WeightAssignment w(t, 2);
    w.set_weight(1, {Rat(1), Rat(0)});
    CHECK(sum_vector(w, 1) == std::vector<Rat>{Rat(1), Rat(0)});
    CHECK(sum_vector(w, 0) == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK_THROWS_AS(sum_vector(w, 2), std::invalid_argument);  // edge 1-2 undefined
    CHECK_THROWS_AS(sum_vectors(w), std::invalid_argument);
}

TEST_CASE("weights outside [-1,1] are rejected") {
    auto t = p3();
    WeightAssignment w(t, 1);
    CHECK_THROWS_AS(w.set_weight(1, {Rat(3, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(w.set_weight(0, {Rat(1)}), std::invalid_argument);  // root edge
}

TEST_CASE("delta telescopes the path and matches prefix sums") {
    auto t = p3();
    WeightAssignment w(t, 1);
    w.set_weight(1, {Rat(1)});
    w.set_weight(2, {Rat(1)});
    CHECK(delta(w, 2, 0) == std::vector<Rat>{Rat(2)});
    CHECK(delta(w, 1, 1) == std::vector<Rat>{Rat(0)});

    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto tree = generate(TreeKind::RandomPruefer, {60, 0}, seed);
        auto rw = random_weights(tree, 3, seed);
        auto sums = sum_vectors(rw);
        SplitMix64 rng(seed + 99);
        for (int i = 0; i < 50; ++i) {
            Vertex u = static_cast<Vertex>(rng.uniform_below(60));
            Vertex v = static_cast<Vertex>(rng.uniform_below(60));
            auto d = delta(rw, u, v);
            for (int k = 0; k < 3; ++k)
                CHECK(d[static_cast<std::size_t>(k)] ==
                      sums.row(u)[static_cast<std::size_t>(k)] -
                          sums.row(v)[static_cast<std::size_t>(k)]);
        }
        // Adjacent pairs never exceed gap 1, whatever the weights are.
        for (Vertex v = 0; v < tree.n(); ++v) {
            if (v == tree.root()) continue;
            for (const Rat& x : delta(rw, v, tree.parent(v))) {
                CHECK(x >= Rat(-1));
                CHECK(x <= Rat(1));
            }
        }
    }
}

TEST_CASE("weights_to_centers on P3") {
    auto t = p3();
    WeightAssignment good(t, 1);
    good.set_weight(1, {Rat(1)});
    good.set_weight(2, {Rat(1)});
    auto rep = weights_to_centers(good, true);
    CHECK(rep.integral);
    CHECK(rep.at(2, 0) == Rat(2));

    WeightAssignment bad(t, 1);
    bad.set_weight(1, {Rat(1)});
    bad.set_weight(2, {Rat(-1)});
    CHECK_THROWS_AS(weights_to_centers(bad, true), std::runtime_error);
    auto unverified = weights_to_centers(bad, false);
    CHECK(verify_naive(t, unverified).has_value());
}

TEST_CASE("K2 accepts any weights") {
    auto t = parse_tree("2\n0 1", rooted_at(0));
    WeightAssignment w(t, 1);
    w.set_weight(1, {Rat(0)});
    CHECK_NOTHROW(weights_to_centers(w, true));
}

TEST_CASE("centers_to_weights") {
    auto t = p3();
    auto rep = CubeRepresentation::from_integers(3, 1, {0, 1, 2});
    auto w = centers_to_weights(t, rep);
    CHECK(w.weight(1)[0] == Rat(1));
    CHECK(w.weight(2)[0] == Rat(1));

    // Translation is invisible to the weights.
    auto shifted = CubeRepresentation::from_integers(3, 1, {5, 6, 7});
    auto w2 = centers_to_weights(t, shifted);
    CHECK(w2.weight(1)[0] == Rat(1));

    auto broken = CubeRepresentation::from_integers(3, 1, {0, 2, 3});
    CHECK_THROWS_AS(centers_to_weights(t, broken), std::invalid_argument);
}

TEST_CASE("round trip reproduces the representation up to root translation") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto tree = generate(TreeKind::RandomPruefer, {40, 0}, seed);
        auto w = random_weights(tree, 4, seed);
        auto rep = weights_to_centers(w);
        auto again = weights_to_centers(centers_to_weights(tree, rep));
        REQUIRE(again.dim == rep.dim);
        for (Vertex v = 0; v < tree.n(); ++v)
            for (int k = 0; k < rep.dim; ++k)
                CHECK(again.at(v, k) == rep.at(v, k) - rep.at(tree.root(), k));
    }
}

TEST_CASE("verify_naive on the rational claw representation") {
    auto t = claw();
    auto rep = CubeRepresentation::from_rationals(
        4, 2,
        {Rat(3, 4), Rat(3, 4), Rat(0), Rat(0), Rat(3, 2), Rat(0), Rat(0), Rat(3, 2)});
    CHECK_FALSE(rep.integral);
    CHECK_FALSE(verify_naive(t, rep).has_value());

    // Moving a leaf to (1,0) leaves it exactly at distance 1 from (0,0).
    auto bad = CubeRepresentation::from_rationals(
        4, 2, {Rat(3, 4), Rat(3, 4), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(3, 2)});
    auto viol = verify_naive(t, bad);
    REQUIRE(viol.has_value());
    CHECK(viol->kind == Violation::Kind::SpuriousIntersection);
    CHECK(viol->u == 1);
    CHECK(viol->v == 2);
    CHECK(viol->gap == Rat(1));
}

TEST_CASE("dimension-zero representation of K2 verifies") {
    auto t = parse_tree("2\n0 1", rooted_at(0));
    auto rep = CubeRepresentation::from_integers(2, 0, {});
    CHECK_FALSE(verify_naive(t, rep).has_value());
}

TEST_CASE("broken edges are reported") {
    auto t = p3();
    auto rep = CubeRepresentation::from_integers(3, 1, {0, 2, 4});
    auto viol = verify_naive(t, rep);
    REQUIRE(viol.has_value());
    CHECK(viol->kind == Violation::Kind::BrokenEdge);
}

TEST_CASE("verify_spatial agrees with verify_naive") {
    // Valid: path positions. Corrupted: one coordinate nudged.
    auto tree = generate(TreeKind::Path, {400, 0});
    std::vector<std::int64_t> pos(400);
    for (int i = 0; i < 400; ++i) pos[static_cast<std::size_t>(i)] = i;
    auto rep = CubeRepresentation::from_integers(400, 1, std::move(pos));
    CHECK_FALSE(verify_naive(tree, rep).has_value());
    CHECK_FALSE(verify_spatial(tree, rep).has_value());

    auto bad = rep;
    bad.icoords[200] = 50;  // collides with vertex 50's slot
    CHECK(verify_naive(tree, bad).has_value());
    CHECK(verify_spatial(tree, bad).has_value());

    // Random junk representations: verdicts must match on every instance.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto rt = generate(TreeKind::RandomPruefer, {300, 0}, seed);
        SplitMix64 rng(seed);
        std::vector<std::int64_t> coords(300 * 3);
        for (auto& c : coords) c = static_cast<std::int64_t>(rng.uniform_below(12));
        auto r = CubeRepresentation::from_integers(300, 3, std::move(coords));
        CHECK(verify_naive(rt, r).has_value() == verify_spatial(rt, r).has_value());
    }
}

TEST_CASE("concat") {
    auto t = p3();
    WeightAssignment w(t, 1);
    w.set_weight(1, {Rat(1)});
    w.set_weight(2, {Rat(1)});
    auto one = weights_to_centers(w);
    one.blocks = {{"left", 1}};
    auto two = concat_representations(t, {&one, &one});
    CHECK(two.dim == 2);
    CHECK(two.blocks.size() == 2);
    CHECK_FALSE(verify_naive(t, two).has_value());  // separation survives concat

    auto empty = concat_representations(t, {});
    CHECK(empty.dim == 0);
    CHECK(empty.n == 3);

    auto other = CubeRepresentation::from_integers(2, 1, {0, 1});
    CHECK_THROWS_AS(concat_representations(t, {&one, &other}), std::invalid_argument);
}

TEST_CASE("trim drops an all-zero coordinate and keeps minimal inputs") {
    auto t = claw();
    auto valid = CubeRepresentation::from_rationals(
        4, 3, {Rat(3, 4), Rat(3, 4), Rat(0), Rat(0), Rat(0), Rat(0), Rat(3, 2), Rat(0), Rat(0),
               Rat(0), Rat(3, 2), Rat(0)});
    auto trimmed = trim_dimensions(t, valid);
    CHECK(trimmed.dim == 2);
    CHECK_FALSE(verify_naive(t, trimmed).has_value());
    auto again = trim_dimensions(t, trimmed);
    CHECK(again.dim == 2);

    auto invalid = CubeRepresentation::from_integers(4, 1, {0, 0, 0, 0});
    CHECK_THROWS_AS(trim_dimensions(t, invalid), std::invalid_argument);
}

TEST_CASE("json round trip preserves coordinates exactly") {
    auto rep = CubeRepresentation::from_rationals(
        2, 2, {Rat(3, 4), Rat(-7, 3), Rat(2), Rat(0)}, {{"A0", 2}});
    rep.mode = "faithful";
    rep.seed = 42;
    rep.t = 2;
    auto back = representation_from_json(representation_to_json(rep));
    CHECK(back.n == rep.n);
    CHECK(back.dim == rep.dim);
    CHECK(back.at(0, 0) == Rat(3, 4));
    CHECK(back.at(0, 1) == Rat(-7, 3));
    CHECK(back.at(1, 0) == Rat(2));
    CHECK(back.seed == 42);
    CHECK(back.blocks.size() == 1);
    CHECK(representation_to_json(back) == representation_to_json(rep));

    auto ints = CubeRepresentation::from_integers(2, 1, {-3, 9});
    auto back2 = representation_from_json(representation_to_json(ints));
    CHECK(back2.integral);
    CHECK(back2.at(0, 0) == Rat(-3));
}

TEST_CASE("csv export") {
    auto rep = CubeRepresentation::from_rationals(2, 2, {Rat(1, 2), Rat(0), Rat(1), Rat(-2)});
    CHECK(centers_to_csv(rep) == "vertex,c0,c1\n0,1/2,0\n1,1,-2\n");
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-5") == Rat(-5));
    CHECK(parse_rational("6/4") == Rat(3, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK(rational_to_string(Rat(-3, 9)) == "-1/3");
    CHECK(rat_floor(Rat(-3, 2)) == -2);
    CHECK(rat_floor(Rat(3, 2)) == 1);
}
