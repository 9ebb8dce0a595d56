#pragma once

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "treecube/tree.hpp"

namespace treecube {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// rho(T) = max over v, 1 <= r <= diameter of log(|B_{v,r}|/2) / log(2r+1).
//
// The witness (vertex, radius, ball size) is kept so that all ceilings can
// be recomputed exactly; `value` is a 64-bit float for display only.
// ceil_rho and budget_t come from exact integer-power comparisons, never
// from rounding the float.
struct RhoResult {
    double value = 0.0;
    Vertex witness_vertex = -1;
    long long witness_radius = 0;
    long long witness_ball = 0;
    bool exact = true;   // false when only a sample of centers was scanned
    int ceil_rho = 0;    // max over candidates of ceil(rho_candidate)
    int budget_t = 2;    // max over candidates of ceil(22.77 * rho_candidate) + 2
};

struct RhoMode {
    bool sampled = false;
    int samples = 512;
    std::uint64_t seed = 0;
};

RhoResult compute_rho(const RootedTree& tree, const RhoMode& mode = {});

struct BoundsReport {
    RhoResult rho;
    int lb_rho = 0;         // ceil(rho)
    int lb_structural = 0;  // 0 complete, 1 longer path, 2 if some degree >= 3
    int lb_lemma2 = 0;      // ceil(log alpha / log(diam+1))
    int lb_final = 0;       // max of the above
    int alpha = 0;
    long long diameter = 0;
    int t = 2;              // dimension budget ceil(22.77*rho)+2
};

BoundsReport cubicity_lower_bound(const RootedTree& tree, const RhoMode& mode = {});

// Maximum independent set size, bottom-up dynamic program.
long long independence_number(const RootedTree& tree);

// ceil(log(alpha) / log(diam+1)), decided exactly: the smallest g >= 0 with
// (diam+1)^g >= alpha.
int general_lower_bound(long long alpha, long long diam);

// Smallest g >= 0 with (cnum/cden) * log(ball/2)/log(m) <= g, decided by
// exact integer exponentiation (ball^cnum <= 2^cnum * m^(cden*g)).
// Requires ball >= 2 and odd m >= 3.
int exact_ceil_log_ratio(long long ball, long long m, long long cnum, long long cden);

// t = ceil(22.77 * rho) + 2. The float overload is for ad-hoc values; the
// RhoResult overload returns the exactly computed budget.
int dimension_budget(double rho);
int dimension_budget(const RhoResult& rho);

// P(|S_l| <= 1) for S_l a sum of l iid +-1 variables, as an exact rational:
// even l: C(l, l/2) / 2^l; odd l: 2*C(l, (l-1)/2) / 2^l.
BigRational binom_unsep_prob(long long l);

// Exact check of binom_unsep_prob(l) <= 1.61/sqrt(l), via p^2 * l <= 1.61^2.
bool binom_unsep_within_sqrt_bound(long long l);

// Union-bound value 8*(6*h_i^4+1)^rho * (4*h_i^2+1)^rho * (1.61/sqrt(h_i/4))^t.
double lemma7_bound(long long h_i, double rho, int t);

struct GrowthRateResult {
    double value = 0.0;
    Vertex witness_vertex = -1;
    long long witness_radius = 0;
};

// eta(T): max over v and integer r in [2, max(2, diameter)] of log|B_{v,r}|/log r.
GrowthRateResult growth_rate(const RootedTree& tree);

}  // namespace treecube
