#include "treecube/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "treecube/rng.hpp"

namespace treecube {

namespace {

BigInt bigpow(long long base, long long exp) {
    BigInt b = base;
    BigInt acc = 1;
    while (exp > 0) {
        if (exp & 1) acc *= b;
        b *= b;
        exp >>= 1;
    }
    return acc;
}

// Distances from one center; returns eccentricity and fills cnt[d] with the
// number of vertices at each distance. Buffers reused across centers.
long long bfs_counts(const RootedTree& t, Vertex center, std::vector<Vertex>& queue,
                     std::vector<long long>& dist, std::vector<long long>& cnt) {
    queue.clear();
    queue.push_back(center);
    dist[static_cast<std::size_t>(center)] = 0;
    long long ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        const long long dv = dist[static_cast<std::size_t>(v)];
        ecc = std::max(ecc, dv);
        auto visit = [&](Vertex w) {
            if (w < 0 || dist[static_cast<std::size_t>(w)] >= 0) return;
            dist[static_cast<std::size_t>(w)] = dv + 1;
            queue.push_back(w);
        };
        visit(t.parent(v));
        for (Vertex w : t.children(v)) visit(w);
    }
    cnt.assign(static_cast<std::size_t>(ecc) + 1, 0);
    for (Vertex v : queue) cnt[static_cast<std::size_t>(dist[static_cast<std::size_t>(v)])]++;
    for (Vertex v : queue) dist[static_cast<std::size_t>(v)] = -1;  // reset for next center
    return ecc;
}

}  // namespace

int exact_ceil_log_ratio(long long ball, long long m, long long cnum, long long cden) {
    if (ball < 2 || m < 3 || cnum < 1 || cden < 1)
        throw std::invalid_argument("exact_ceil_log_ratio: bad arguments");
    if (ball == 2) return 0;
    const double f = static_cast<double>(cnum) / static_cast<double>(cden) *
                     (std::log2(static_cast<double>(ball)) - 1.0) /
                     std::log2(static_cast<double>(m));
    int g = std::max(0, static_cast<int>(std::ceil(f - 1e-9)) - 1);
    const BigInt lhs = bigpow(ball, cnum);
    const BigInt two_pow = bigpow(2, cnum);
    auto holds = [&](int gg) { return lhs <= two_pow * bigpow(m, cden * gg); };
    while (!holds(g)) ++g;
    while (g > 0 && holds(g - 1)) --g;
    return g;
}

RhoResult compute_rho(const RootedTree& tree, const RhoMode& mode) {
    RhoResult res;
    const Vertex n = tree.n();
    if (n <= 1) return res;

    std::vector<Vertex> centers;
    if (mode.sampled && mode.samples < n) {
        res.exact = false;
        // Partial Fisher-Yates for distinct centers.
        std::vector<Vertex> ids(static_cast<std::size_t>(n));
        for (Vertex i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
        SplitMix64 rng(derive_seed({mode.seed, 0x72686f73616d70ULL}));
        for (int i = 0; i < mode.samples; ++i) {
            const auto j = i + static_cast<long long>(rng.uniform_below(
                                   static_cast<std::uint64_t>(n - i)));
            std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]);
            centers.push_back(ids[static_cast<std::size_t>(i)]);
        }
        std::sort(centers.begin(), centers.end());
    } else {
        centers.resize(static_cast<std::size_t>(n));
        for (Vertex i = 0; i < n; ++i) centers[static_cast<std::size_t>(i)] = i;
    }

    // log tables: ball sizes are in [1, n], radii odd factors 2r+1 <= 2*diam+1.
    std::vector<double> log_int(static_cast<std::size_t>(n) + 1, 0.0);
    for (long long b = 1; b <= n; ++b)
        log_int[static_cast<std::size_t>(b)] = std::log(static_cast<double>(b));
    const long long diam = tree.diameter();
    std::vector<double> inv_log_odd(static_cast<std::size_t>(diam) + 1, 0.0);
    for (long long r = 1; r <= diam; ++r)
        inv_log_odd[static_cast<std::size_t>(r)] = 1.0 / std::log(static_cast<double>(2 * r + 1));
    const double ln2 = std::log(2.0);

    std::vector<Vertex> queue;
    queue.reserve(static_cast<std::size_t>(n));
    std::vector<long long> dist(static_cast<std::size_t>(n), -1);
    std::vector<long long> cnt;

    double best = -1.0;
    int g1 = 0;
    int gt = 0;
    for (Vertex v : centers) {
        const long long ecc = bfs_counts(tree, v, queue, dist, cnt);
        long long ball = 1;
        for (long long r = 1; r <= ecc; ++r) {
            ball += cnt[static_cast<std::size_t>(r)];
            const double f = (log_int[static_cast<std::size_t>(ball)] - ln2) *
                             inv_log_odd[static_cast<std::size_t>(r)];
            if (f > best + 1e-12) {
                best = f;
                res.witness_vertex = v;
                res.witness_radius = r;
                res.witness_ball = ball;
            }
            // Exact ceilings: only candidates near the running maxima need the
            // big-integer comparison; clearly-below candidates cannot raise them.
            if (ball > 2) {
                if (f > static_cast<double>(g1) - 1e-9)
                    g1 = std::max(g1, exact_ceil_log_ratio(ball, 2 * r + 1, 1, 1));
                if (f * 22.77 > static_cast<double>(gt) - 1e-6)
                    gt = std::max(gt, exact_ceil_log_ratio(ball, 2 * r + 1, 2277, 100));
            }
        }
    }
    res.value = std::max(0.0, best);
    res.ceil_rho = g1;
    res.budget_t = gt + 2;
    return res;
}

long long independence_number(const RootedTree& tree) {
    const Vertex n = tree.n();
    std::vector<long long> take(static_cast<std::size_t>(n), 0);
    std::vector<long long> skip(static_cast<std::size_t>(n), 0);
    for (Vertex i = n - 1; i >= 0; --i) {  // reverse preorder: children first
        Vertex v = tree.preorder_vertex(i);
        long long tk = 1, sk = 0;
        for (Vertex c : tree.children(v)) {
            tk += skip[static_cast<std::size_t>(c)];
            sk += std::max(take[static_cast<std::size_t>(c)], skip[static_cast<std::size_t>(c)]);
        }
        take[static_cast<std::size_t>(v)] = tk;
        skip[static_cast<std::size_t>(v)] = sk;
    }
    Vertex r = tree.root();
    return std::max(take[static_cast<std::size_t>(r)], skip[static_cast<std::size_t>(r)]);
}

int general_lower_bound(long long alpha, long long diam) {
    if (alpha < 1 || diam < 1) throw std::invalid_argument("need alpha >= 1 and diam >= 1");
    const BigInt a = alpha;
    BigInt p = 1;
    int g = 0;
    while (p < a) {
        p *= (diam + 1);
        ++g;
    }
    return g;
}

int dimension_budget(double rho) {
    if (rho < 0) throw std::invalid_argument("rho must be non-negative");
    return static_cast<int>(std::ceil(22.77 * rho)) + 2;
}

int dimension_budget(const RhoResult& rho) { return rho.budget_t; }

BoundsReport cubicity_lower_bound(const RootedTree& tree, const RhoMode& mode) {
    BoundsReport rep;
    rep.rho = compute_rho(tree, mode);
    rep.lb_rho = rep.rho.ceil_rho;
    rep.diameter = tree.diameter();
    rep.alpha = static_cast<int>(independence_number(tree));
    if (tree.n() <= 2) {
        rep.lb_structural = 0;  // K_1 and K_2 are complete
    } else if (tree.max_degree() >= 3) {
        rep.lb_structural = 2;  // induced K_{1,3}
    } else {
        rep.lb_structural = 1;
    }
    rep.lb_lemma2 = rep.diameter >= 1 ? general_lower_bound(rep.alpha, rep.diameter) : 0;
    rep.lb_final = std::max({rep.lb_rho, rep.lb_structural, rep.lb_lemma2});
    rep.t = rep.rho.budget_t;
    return rep;
}

BigRational binom_unsep_prob(long long l) {
    if (l < 1) throw std::invalid_argument("l must be >= 1");
    // C(l, floor(l/2))
    BigInt num = 1, den = 1;
    const long long k = l / 2;
    for (long long i = 1; i <= k; ++i) {
        num *= (l - k + i);
        den *= i;
    }
    BigInt binom = num / den;
    if (l % 2 == 1) binom *= 2;
    BigRational p(binom, bigpow(2, l));
    return p;
}

bool binom_unsep_within_sqrt_bound(long long l) {
    const BigRational p = binom_unsep_prob(l);
    // p <= 1.61/sqrt(l)  <=>  p^2 * l <= (161/100)^2
    return p * p * l <= BigRational(161 * 161, 100 * 100);
}

double lemma7_bound(long long h_i, double rho, int t) {
    if (h_i < 2) throw std::invalid_argument("h_i must be >= 2");
    const double h1 = static_cast<double>(h_i) * static_cast<double>(h_i);  // h_{i-1}
    const double h2 = h1 * h1;                                              // h_{i-2}
    return 8.0 * std::pow(6.0 * h2 + 1.0, rho) * std::pow(4.0 * h1 + 1.0, rho) *
           std::pow(1.61 / std::sqrt(static_cast<double>(h_i) / 4.0), static_cast<double>(t));
}

GrowthRateResult growth_rate(const RootedTree& tree) {
    GrowthRateResult res;
    const Vertex n = tree.n();
    if (n <= 1) return res;

    std::vector<Vertex> queue;
    queue.reserve(static_cast<std::size_t>(n));
    std::vector<long long> dist(static_cast<std::size_t>(n), -1);
    std::vector<long long> cnt;

    for (Vertex v = 0; v < n; ++v) {
        const long long ecc = bfs_counts(tree, v, queue, dist, cnt);
        const long long rmax = std::max<long long>(2, ecc);
        long long ball = 1;
        long long r_have = 0;
        for (long long r = 2; r <= rmax; ++r) {
            while (r_have < std::min(r, ecc)) {
                ++r_have;
                ball += cnt[static_cast<std::size_t>(r_have)];
            }
            const double f = std::log(static_cast<double>(ball)) /
                             std::log(static_cast<double>(r));
            if (f > res.value + 1e-12) {
                res.value = f;
                res.witness_vertex = v;
                res.witness_radius = r;
            }
        }
    }
    return res;
}

}  // namespace treecube
