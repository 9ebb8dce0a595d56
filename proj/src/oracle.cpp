#include "treecube/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace treecube {

namespace {

constexpr int kMaxN = 8;

struct PairTable {
    std::array<std::array<int, kMaxN>, kMaxN> idx{};
    PairTable() {
        int next = 0;
        for (int u = 0; u < kMaxN; ++u)
            for (int v = u + 1; v < kMaxN; ++v) {
                idx[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = next;
                idx[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = next;
                ++next;
            }
    }
};
const PairTable kPairs;

}  // namespace

int pair_index(int u, int v) {
    if (u == v || u < 0 || v < 0 || u >= kMaxN || v >= kMaxN)
        throw std::invalid_argument("bad vertex pair");
    return kPairs.idx[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
}

void SmallGraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("vertex out of range");
    if (u == v) throw std::invalid_argument("self loop");
    adj[static_cast<std::size_t>(u)] |= static_cast<std::uint8_t>(1u << v);
    adj[static_cast<std::size_t>(v)] |= static_cast<std::uint8_t>(1u << u);
}

bool SmallGraph::has_edge(int u, int v) const {
    return (adj[static_cast<std::size_t>(u)] >> v) & 1u;
}

bool SmallGraph::complete() const {
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!has_edge(u, v)) return false;
    return true;
}

int SmallGraph::edge_count() const { return std::popcount(edge_mask()); }

std::uint32_t SmallGraph::edge_mask() const {
    std::uint32_t mask = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (has_edge(u, v)) mask |= 1u << pair_index(u, v);
    return mask;
}

SmallGraph SmallGraph::from_edge_mask(int n, std::uint32_t mask) {
    SmallGraph g;
    g.n = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((mask >> pair_index(u, v)) & 1u) g.add_edge(u, v);
    return g;
}

SmallGraph SmallGraph::from_tree(const RootedTree& tree) {
    if (tree.n() > kMaxN) throw std::invalid_argument("tree too large for the oracle");
    SmallGraph g;
    g.n = tree.n();
    for (Vertex v = 0; v < tree.n(); ++v)
        if (tree.parent(v) >= 0) g.add_edge(tree.parent(v), v);
    return g;
}

SmallGraph SmallGraph::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    SmallGraph g;
    bool have_n = false;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        if (!have_n) {
            long long n;
            if (!(ls >> n)) continue;  // blank
            if (n < 1 || n > kMaxN)
                throw std::invalid_argument("graph size must be between 1 and 8");
            g.n = static_cast<int>(n);
            have_n = true;
            continue;
        }
        long long u, v;
        if (!(ls >> u)) continue;
        if (!(ls >> v)) throw std::invalid_argument("malformed edge line: " + line);
        if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
            throw std::invalid_argument("duplicate edge");
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    if (!have_n) throw std::invalid_argument("empty graph input");
    return g;
}

// ---------------------------------------------------------------------------
// Unit interval graph enumeration
// ---------------------------------------------------------------------------

namespace {

// Enumerates all unit interval graphs realized by an ordering `perm` with
// non-decreasing right-reach, accumulating edge masks along the DFS.
void enumerate_reaches(const std::array<int, kMaxN>& perm, int n, int p, int prev_reach,
                       std::uint32_t mask, std::unordered_set<std::uint32_t>& sink) {
    if (p == n - 1) {
        sink.insert(mask);
        return;
    }
    const int lo = std::max(p, prev_reach);
    std::uint32_t m = mask;
    for (int q = p + 1; q <= lo; ++q)  // forced by monotone reach
        m |= 1u << pair_index(perm[static_cast<std::size_t>(p)], perm[static_cast<std::size_t>(q)]);
    enumerate_reaches(perm, n, p + 1, lo, m, sink);
    for (int r = lo + 1; r <= n - 1; ++r) {
        m |= 1u << pair_index(perm[static_cast<std::size_t>(p)], perm[static_cast<std::size_t>(r)]);
        enumerate_reaches(perm, n, p + 1, r, m, sink);
    }
}

}  // namespace

const std::vector<std::uint32_t>& all_unit_interval_graphs(int n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("n must be between 1 and 8");
    static std::vector<std::uint32_t> cache[kMaxN + 1];
    auto& entry = cache[n];
    if (!entry.empty() || n == 0) return entry;

    std::unordered_set<std::uint32_t> masks;
    std::array<int, kMaxN> perm{};
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
        enumerate_reaches(perm, n, 0, 0, 0, masks);
    } while (std::next_permutation(perm.begin(), perm.begin() + n));
    entry.assign(masks.begin(), masks.end());
    std::sort(entry.begin(), entry.end());
    if (entry.empty()) entry.push_back(0);  // n = 1: the single empty graph
    return entry;
}

std::vector<SmallGraph> proper_interval_supergraphs(const SmallGraph& g) {
    if (g.n < 1 || g.n > kMaxN) throw std::invalid_argument("graph too large");
    const std::uint32_t gmask = g.edge_mask();
    std::vector<SmallGraph> out;
    for (std::uint32_t mask : all_unit_interval_graphs(g.n))
        if ((mask & gmask) == gmask) out.push_back(SmallGraph::from_edge_mask(g.n, mask));
    return out;
}

// ---------------------------------------------------------------------------
// Exact cubicity via set cover over non-edges
// ---------------------------------------------------------------------------

namespace {

struct CoverSearch {
    std::vector<std::uint32_t> masks;              // coverage over non-edge indices
    std::vector<std::vector<int>> covering;        // per element: masks covering it
    std::uint32_t full = 0;
    std::chrono::steady_clock::time_point deadline{};
    bool has_deadline = false;

    bool dfs(std::uint32_t covered, int k) const {
        if (covered == full) return true;
        if (k == 0) return false;
        if (has_deadline && std::chrono::steady_clock::now() > deadline)
            throw std::runtime_error("oracle timeout");
        // Branch on the uncovered element with the fewest covering masks.
        int best_e = -1;
        std::size_t best_count = SIZE_MAX;
        for (std::size_t e = 0; e < covering.size(); ++e) {
            if ((covered >> e) & 1u) continue;
            if (covering[e].size() < best_count) {
                best_count = covering[e].size();
                best_e = static_cast<int>(e);
            }
        }
        if (best_e < 0) return true;
        for (int mi : covering[static_cast<std::size_t>(best_e)])
            if (dfs(covered | masks[static_cast<std::size_t>(mi)], k - 1)) return true;
        return false;
    }
};

}  // namespace

int exact_cubicity(const SmallGraph& g, const OracleOptions& options) {
    if (g.n < 1) throw std::invalid_argument("empty graph");
    if (g.n > options.max_n || g.n > kMaxN)
        throw std::invalid_argument("graph larger than the oracle cap (n = " +
                                    std::to_string(g.n) + ", cap " +
                                    std::to_string(options.max_n) + ")");

    // Non-edges of g, renumbered densely.
    std::vector<int> non_edges;  // pair_index values
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (!g.has_edge(u, v)) non_edges.push_back(pair_index(u, v));
    if (non_edges.empty()) return 0;

    const std::uint32_t gmask = g.edge_mask();
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> covers;
    for (std::uint32_t mask : all_unit_interval_graphs(g.n)) {
        if ((mask & gmask) != gmask) continue;
        std::uint32_t cover = 0;
        for (std::size_t e = 0; e < non_edges.size(); ++e)
            if (!((mask >> non_edges[e]) & 1u)) cover |= 1u << e;
        if (cover != 0 && seen.insert(cover).second) covers.push_back(cover);
    }

    // Keep only maximal coverage masks.
    std::sort(covers.begin(), covers.end(), [](std::uint32_t a, std::uint32_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa > pb;
        return a < b;
    });
    std::vector<std::uint32_t> maximal;
    for (std::uint32_t c : covers) {
        bool dominated = false;
        for (std::uint32_t m : maximal)
            if ((c & m) == c) {
                dominated = true;
                break;
            }
        if (!dominated) maximal.push_back(c);
    }

    CoverSearch search;
    search.masks = std::move(maximal);
    search.full = non_edges.size() == 32 ? ~0u : ((1u << non_edges.size()) - 1u);
    search.covering.resize(non_edges.size());
    for (std::size_t mi = 0; mi < search.masks.size(); ++mi)
        for (std::size_t e = 0; e < non_edges.size(); ++e)
            if ((search.masks[mi] >> e) & 1u)
                search.covering[e].push_back(static_cast<int>(mi));
    for (const auto& c : search.covering)
        if (c.empty())
            throw std::runtime_error("no unit interval supergraph separates some non-edge");
    if (options.timeout_seconds > 0) {
        search.has_deadline = true;
        search.deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(options.timeout_seconds));
    }

    const int k_bound = (2 * g.n + 2) / 3;  // cubicity <= ceil(2n/3)
    for (int k = 1; k <= k_bound; ++k)
        if (search.dfs(0, k)) return k;
    throw std::runtime_error("set cover exceeded the ceil(2n/3) bound");
}

}  // namespace treecube
