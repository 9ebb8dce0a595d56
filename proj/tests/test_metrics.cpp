#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "treecube/metrics.hpp"
#include "treecube/rng.hpp"
#include "treecube/tree.hpp"

using namespace treecube;

namespace {

RootedTree star(long long leaves) { return generate(TreeKind::Star, {leaves, 0}); }
RootedTree path(long long n) { return generate(TreeKind::Path, {n, 0}); }

// Brute-force maximum independent set over all vertex subsets (n <= 20).
long long brute_independence(const RootedTree& t) {
    const int n = t.n();
    long long best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (Vertex v = 0; v < n && ok; ++v) {
            if (!((mask >> v) & 1u)) continue;
            Vertex p = t.parent(v);
            if (p >= 0 && ((mask >> p) & 1u)) ok = false;
        }
        if (ok) best = std::max<long long>(best, __builtin_popcount(mask));
    }
    return best;
}

}  // namespace

TEST_CASE("rho of P4: witness is an inner vertex at radius 2") {
    auto r = compute_rho(path(4));
    CHECK(r.value == doctest::Approx(std::log(2.0) / std::log(5.0)).epsilon(1e-9));
    CHECK(r.value == doctest::Approx(0.4307).epsilon(1e-3));
    CHECK(r.witness_radius == 2);
    CHECK(r.witness_ball == 4);
    CHECK((r.witness_vertex == 1 || r.witness_vertex == 2));
    CHECK(r.exact);
    CHECK(r.ceil_rho == 1);
}

TEST_CASE("rho of the claw") {
    auto r = compute_rho(star(3));
    CHECK(r.value == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-9));
    CHECK(r.witness_vertex == 0);
    CHECK(r.witness_radius == 1);
    CHECK(r.ceil_rho == 1);
    CHECK(r.budget_t == 17);  // ceil(22.77 * log2/log3) + 2
}

TEST_CASE("rho of K2 is zero") {
    auto r = compute_rho(path(2));
    CHECK(r.value == 0.0);
    CHECK(r.ceil_rho == 0);
    CHECK(r.budget_t == 2);
}

TEST_CASE("rho of a single vertex is zero with no witness") {
    auto r = compute_rho(path(1));
    CHECK(r.value == 0.0);
    CHECK(r.witness_vertex == -1);
}

TEST_CASE("exact ceilings survive an integer-valued rho") {
    // K_{1,17}: |B(center,1)| = 18 = 2*3^2, so rho = 2 exactly; a float ceil
    // could round it to 3.
    auto r = compute_rho(star(17));
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.ceil_rho == 2);
    CHECK(r.budget_t == 48);  // ceil(45.54) + 2
}

TEST_CASE("sampled rho is a lower bound for exact rho") {
    for (std::uint64_t seed : {3ULL, 4ULL, 5ULL}) {
        auto t = generate(TreeKind::RandomPruefer, {400, 0}, seed);
        auto exact = compute_rho(t);
        RhoMode mode;
        mode.sampled = true;
        mode.samples = 24;
        mode.seed = seed;
        auto sampled = compute_rho(t, mode);
        CHECK_FALSE(sampled.exact);
        CHECK(sampled.value <= exact.value + 1e-12);
        CHECK(sampled.ceil_rho <= exact.ceil_rho);
        CHECK(sampled.budget_t <= exact.budget_t);
    }
}

TEST_CASE("lower-bound report") {
    SUBCASE("K2 is complete") {
        auto b = cubicity_lower_bound(path(2));
        CHECK(b.lb_final == 0);
        CHECK(b.lb_structural == 0);
    }
    SUBCASE("P4 is a non-trivial path") {
        auto b = cubicity_lower_bound(path(4));
        CHECK(b.lb_structural == 1);
        CHECK(b.lb_rho == 1);
        CHECK(b.lb_final == 1);
    }
    SUBCASE("the claw needs two dimensions") {
        auto b = cubicity_lower_bound(star(3));
        CHECK(b.lb_structural == 2);
        CHECK(b.lb_rho == 1);
        CHECK(b.lb_final == 2);
        CHECK(b.t == 17);
    }
}

TEST_CASE("independence numbers") {
    CHECK(independence_number(star(8)) == 8);
    CHECK(independence_number(path(4)) == 2);
    auto bin3 = generate(TreeKind::CompleteKary, {2, 3});
    CHECK(independence_number(bin3) == 10);
    CHECK(independence_number(bin3) == brute_independence(bin3));
}

TEST_CASE("independence agrees with brute force on small random trees") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        auto t = generate(TreeKind::RandomPruefer, {15, 0}, seed);
        CHECK(independence_number(t) == brute_independence(t));
    }
}

TEST_CASE("general lower bound") {
    CHECK(general_lower_bound(2, 3) == 1);
    CHECK(general_lower_bound(1, 5) == 0);
    CHECK(general_lower_bound(10, 6) == 2);
    CHECK_THROWS_AS(general_lower_bound(0, 1), std::invalid_argument);
}

TEST_CASE("dimension budget") {
    CHECK(dimension_budget(0.6309) == 17);
    CHECK(dimension_budget(0.0) == 2);
    CHECK(dimension_budget(1.369) == 34);
    CHECK(dimension_budget(compute_rho(star(8))) == 34);
}

TEST_CASE("binomial non-separation probabilities") {
    CHECK(binom_unsep_prob(2) == BigRational(1, 2));
    CHECK(binom_unsep_prob(3) == BigRational(3, 4));
    CHECK(binom_unsep_prob(1) == BigRational(1));  // S in {-1, +1}
    const double p64 = binom_unsep_prob(64).convert_to<double>();
    CHECK(p64 == doctest::Approx(0.0993).epsilon(1e-3));
}

TEST_CASE("binomial probability is within 1.61/sqrt(l) for 64 <= l <= 1024") {
    for (long long l = 64; l <= 1024; ++l) CHECK(binom_unsep_within_sqrt_bound(l));
}

TEST_CASE("union-bound arithmetic") {
    CHECK(lemma7_bound(256, 1.0, 25) <= 0.33);
    CHECK(lemma7_bound(256, 1.0, 1) > 1.0);
    double prev = lemma7_bound(256, 1.0, 10);
    for (int t = 11; t < 80; ++t) {
        const double cur = lemma7_bound(256, 1.0, t);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("ball-count bound holds with the exact rho") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto t = generate(TreeKind::RandomPruefer, {150, 0}, seed);
        auto rho = compute_rho(t);
        for (Vertex v = 0; v < t.n(); ++v)
            for (long long r = 1; r <= t.diameter(); ++r) {
                const double bound = 2.0 * std::pow(2.0 * r + 1.0, rho.value);
                CHECK(static_cast<double>(t.ball_size(v, r)) <= bound * (1 + 1e-9));
            }
    }
}

TEST_CASE("growth rate") {
    auto g = growth_rate(path(5));
    CHECK(g.value == doctest::Approx(std::log(5.0) / std::log(2.0)).epsilon(1e-9));
    CHECK(g.witness_radius == 2);
    CHECK(growth_rate(path(2)).value == doctest::Approx(1.0));
    CHECK(growth_rate(star(8)).value == doctest::Approx(std::log(9.0) / std::log(2.0)));
}
