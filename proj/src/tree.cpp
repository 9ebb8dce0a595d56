#include "treecube/tree.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "treecube/rng.hpp"

namespace treecube {

namespace {

// BFS over an adjacency list; returns (farthest vertex, distance array).
// Ties broken toward the smallest vertex id by scan order.
std::pair<Vertex, std::vector<long long>> bfs_farthest(
    const std::vector<std::vector<Vertex>>& adj, Vertex start) {
    const std::size_t n = adj.size();
    std::vector<long long> dist(n, -1);
    std::vector<Vertex> queue;
    queue.reserve(n);
    queue.push_back(start);
    dist[static_cast<std::size_t>(start)] = 0;
    Vertex far = start;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        for (Vertex w : adj[static_cast<std::size_t>(v)]) {
            if (dist[static_cast<std::size_t>(w)] >= 0) continue;
            dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
            if (dist[static_cast<std::size_t>(w)] > dist[static_cast<std::size_t>(far)]) far = w;
            queue.push_back(w);
        }
    }
    return {far, std::move(dist)};
}

Vertex tree_center(const std::vector<std::vector<Vertex>>& adj) {
    auto [a, dist_a0] = bfs_farthest(adj, 0);
    auto [b, dist_a] = bfs_farthest(adj, a);
    // Reconstruct the a..b path by walking downhill from b.
    std::vector<Vertex> path;
    Vertex cur = b;
    path.push_back(cur);
    while (cur != a) {
        for (Vertex w : adj[static_cast<std::size_t>(cur)]) {
            if (dist_a[static_cast<std::size_t>(w)] == dist_a[static_cast<std::size_t>(cur)] - 1) {
                cur = w;
                break;
            }
        }
        path.push_back(cur);
    }
    const std::size_t len = path.size() - 1;  // diameter
    Vertex c1 = path[len / 2];
    Vertex c2 = path[(len + 1) / 2];
    return std::min(c1, c2);
}

}  // namespace

std::span<const Vertex> RootedTree::children(Vertex v) const {
    const auto b = static_cast<std::size_t>(child_off_[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(child_off_[static_cast<std::size_t>(v) + 1]);
    return {child_data_.data() + b, e - b};
}

int RootedTree::degree(Vertex v) const {
    return static_cast<int>(children(v).size()) + (v == root_ ? 0 : 1);
}

void RootedTree::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range: " + std::to_string(v));
}

RootedTree RootedTree::from_edges(Vertex n,
                                  const std::vector<std::pair<Vertex, Vertex>>& edges,
                                  const TreeOptions& options) {
    if (n <= 0) throw std::invalid_argument("vertex count must be positive");
    if (static_cast<long long>(edges.size()) != static_cast<long long>(n) - 1)
        throw std::invalid_argument("a tree on " + std::to_string(n) + " vertices needs exactly " +
                                    std::to_string(n - 1) + " edges, got " +
                                    std::to_string(edges.size()));

    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("vertex id out of range in edge list");
        if (u == v) throw std::invalid_argument("self loop in edge list");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge in edge list");
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

    // Connectivity; with n-1 edges this also rules out cycles.
    auto [far, dist] = bfs_farthest(adj, 0);
    (void)far;
    for (Vertex v = 0; v < n; ++v)
        if (dist[static_cast<std::size_t>(v)] < 0)
            throw std::invalid_argument("disconnected input: vertex " + std::to_string(v) +
                                        " unreachable");

    Vertex root = 0;
    if (options.root) {
        root = *options.root;
        if (root < 0 || root >= n) throw std::invalid_argument("root vertex out of range");
    } else if (options.root_policy == RootPolicy::Center) {
        root = tree_center(adj);
    }

    RootedTree t;
    t.build_from_adjacency(adj, root);
    return t;
}

void RootedTree::build_from_adjacency(const std::vector<std::vector<Vertex>>& adj, Vertex root) {
    n_ = static_cast<Vertex>(adj.size());
    root_ = root;
    const std::size_t n = adj.size();

    parent_.assign(n, -1);
    depth_.assign(n, 0);

    // Orient edges away from the root (BFS keeps this stack-safe on deep paths).
    {
        std::vector<Vertex> queue;
        queue.reserve(n);
        std::vector<char> visited(n, 0);
        queue.push_back(root_);
        visited[static_cast<std::size_t>(root_)] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex v = queue[head];
            for (Vertex w : adj[static_cast<std::size_t>(v)]) {
                if (visited[static_cast<std::size_t>(w)]) continue;
                visited[static_cast<std::size_t>(w)] = 1;
                parent_[static_cast<std::size_t>(w)] = v;
                depth_[static_cast<std::size_t>(w)] = depth_[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            }
        }
    }

    child_off_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v)
        if (parent_[v] >= 0) child_off_[static_cast<std::size_t>(parent_[v]) + 1]++;
    for (std::size_t i = 0; i < n; ++i) child_off_[i + 1] += child_off_[i];
    child_data_.assign(n - 1 + (n == 0 ? 1 : 0), 0);
    child_data_.resize(n > 0 ? n - 1 : 0);
    {
        std::vector<Vertex> cursor(child_off_.begin(), child_off_.end() - 1);
        for (Vertex v = 0; v < n_; ++v) {  // ascending ids -> children sorted
            Vertex p = parent_[static_cast<std::size_t>(v)];
            if (p >= 0) child_data_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(p)]++)] = v;
        }
    }

    max_degree_ = 0;
    height_ = 0;
    for (Vertex v = 0; v < n_; ++v) {
        max_degree_ = std::max(max_degree_, degree(v));
        height_ = std::max(height_, depth_[static_cast<std::size_t>(v)]);
    }

    // Iterative preorder DFS + Euler tour.
    preorder_.clear();
    preorder_.reserve(n);
    tin_.assign(n, 0);
    tout_.assign(n, 0);
    euler_.clear();
    euler_.reserve(2 * n);
    euler_first_.assign(n, -1);

    // Stack entries: (vertex, index of next child to visit).
    std::vector<std::pair<Vertex, std::size_t>> stack;
    stack.reserve(64);
    stack.emplace_back(root_, 0);
    tin_[static_cast<std::size_t>(root_)] = 0;
    preorder_.push_back(root_);
    euler_first_[static_cast<std::size_t>(root_)] = 0;
    euler_.push_back(root_);
    while (!stack.empty()) {
        auto& [v, idx] = stack.back();
        auto kids = children(v);
        if (idx < kids.size()) {
            Vertex w = kids[idx++];
            tin_[static_cast<std::size_t>(w)] = static_cast<Vertex>(preorder_.size());
            preorder_.push_back(w);
            euler_first_[static_cast<std::size_t>(w)] = static_cast<Vertex>(euler_.size());
            euler_.push_back(w);
            stack.emplace_back(w, 0);
        } else {
            tout_[static_cast<std::size_t>(v)] = static_cast<Vertex>(preorder_.size());
            stack.pop_back();
            if (!stack.empty()) euler_.push_back(stack.back().first);
        }
    }

    // Sparse table over euler depths (argmin positions).
    const std::size_t m = euler_.size();
    log2_.assign(m + 1, 0);
    for (std::size_t i = 2; i <= m; ++i) log2_[i] = log2_[i / 2] + 1;
    const int levels = log2_[m] + 1;
    sparse_.assign(static_cast<std::size_t>(levels), {});
    sparse_[0].resize(m);
    for (std::size_t i = 0; i < m; ++i) sparse_[0][i] = static_cast<Vertex>(i);
    auto edepth = [&](Vertex pos) {
        return depth_[static_cast<std::size_t>(euler_[static_cast<std::size_t>(pos)])];
    };
    for (int j = 1; j < levels; ++j) {
        const std::size_t span = std::size_t{1} << j;
        sparse_[static_cast<std::size_t>(j)].resize(m - span + 1);
        for (std::size_t i = 0; i + span <= m; ++i) {
            Vertex left = sparse_[static_cast<std::size_t>(j - 1)][i];
            Vertex right = sparse_[static_cast<std::size_t>(j - 1)][i + span / 2];
            sparse_[static_cast<std::size_t>(j)][i] = edepth(left) <= edepth(right) ? left : right;
        }
    }

    // Diameter via double BFS on the oriented structure (parent + children).
    if (n_ == 1) {
        diameter_ = 0;
    } else {
        std::vector<std::vector<Vertex>> und(n);
        for (Vertex v = 0; v < n_; ++v)
            if (parent_[static_cast<std::size_t>(v)] >= 0) {
                und[static_cast<std::size_t>(v)].push_back(parent_[static_cast<std::size_t>(v)]);
                und[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])].push_back(v);
            }
        auto [a, d0] = bfs_farthest(und, 0);
        auto [b, d1] = bfs_farthest(und, a);
        diameter_ = d1[static_cast<std::size_t>(b)];
    }
}

Vertex RootedTree::lca(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    Vertex pu = euler_first_[static_cast<std::size_t>(u)];
    Vertex pv = euler_first_[static_cast<std::size_t>(v)];
    if (pu > pv) std::swap(pu, pv);
    const std::size_t len = static_cast<std::size_t>(pv - pu) + 1;
    const int j = log2_[len];
    Vertex left = sparse_[static_cast<std::size_t>(j)][static_cast<std::size_t>(pu)];
    Vertex right = sparse_[static_cast<std::size_t>(j)]
                          [static_cast<std::size_t>(pv) + 1 - (std::size_t{1} << j)];
    auto edepth = [&](Vertex pos) {
        return depth_[static_cast<std::size_t>(euler_[static_cast<std::size_t>(pos)])];
    };
    return euler_[static_cast<std::size_t>(edepth(left) <= edepth(right) ? left : right)];
}

long long RootedTree::dist(Vertex u, Vertex v) const {
    Vertex a = lca(u, v);
    return depth(u) + depth(v) - 2 * depth(a);
}

long long RootedTree::ball_size(Vertex v, long long r) const {
    check_vertex(v);
    if (r < 0) throw std::invalid_argument("ball radius must be non-negative");
    std::vector<long long> dist(static_cast<std::size_t>(n_), -1);
    std::vector<Vertex> queue;
    queue.push_back(v);
    dist[static_cast<std::size_t>(v)] = 0;
    long long count = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex x = queue[head];
        long long dx = dist[static_cast<std::size_t>(x)];
        if (dx == r) continue;
        auto visit = [&](Vertex w) {
            if (w < 0 || dist[static_cast<std::size_t>(w)] >= 0) return;
            dist[static_cast<std::size_t>(w)] = dx + 1;
            ++count;
            queue.push_back(w);
        };
        visit(parent(x));
        for (Vertex w : children(x)) visit(w);
    }
    return count;
}

std::vector<std::pair<Vertex, Vertex>> RootedTree::canonical_edges() const {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(n_ > 0 ? n_ - 1 : 0));
    for (Vertex v = 0; v < n_; ++v) {
        Vertex p = parent(v);
        if (p >= 0) edges.emplace_back(std::min(v, p), std::max(v, p));
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

namespace {

bool parse_int(std::string_view s, long long& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc{} && res.ptr == e;
}

}  // namespace

RootedTree parse_tree(std::string_view text, const TreeOptions& options) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    long long n = -1;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                              : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        // trim
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t' || line.front() == '\r'))
            line.remove_prefix(1);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.remove_suffix(1);
        if (line.empty()) continue;

        if (n < 0) {
            if (!parse_int(line, n) || n < 1 || n > (1LL << 31) - 1)
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": expected positive vertex count");
            continue;
        }
        std::size_t sp = line.find_first_of(" \t");
        if (sp == std::string_view::npos)
            throw std::invalid_argument("line " + std::to_string(line_no) + ": malformed edge");
        std::string_view us = line.substr(0, sp);
        std::string_view vs = line.substr(sp);
        while (!vs.empty() && (vs.front() == ' ' || vs.front() == '\t')) vs.remove_prefix(1);
        long long u, v;
        if (!parse_int(us, u) || !parse_int(vs, v))
            throw std::invalid_argument("line " + std::to_string(line_no) + ": malformed edge");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": vertex id out of range");
        if (static_cast<long long>(edges.size()) >= n - 1)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": too many edges (cycle or wrong vertex count)");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (n < 0) throw std::invalid_argument("empty input");
    return RootedTree::from_edges(static_cast<Vertex>(n), edges, options);
}

std::string format_tree(const RootedTree& tree) {
    std::ostringstream out;
    out << tree.n() << '\n';
    for (const auto& [u, v] : tree.canonical_edges()) out << u << ' ' << v << '\n';
    return out.str();
}

TreeKind parse_tree_kind(std::string_view name) {
    if (name == "path") return TreeKind::Path;
    if (name == "star") return TreeKind::Star;
    if (name == "caterpillar") return TreeKind::Caterpillar;
    if (name == "broom") return TreeKind::Broom;
    if (name == "complete_kary") return TreeKind::CompleteKary;
    if (name == "random_pruefer") return TreeKind::RandomPruefer;
    throw std::invalid_argument("unknown tree kind: " + std::string(name));
}

std::string_view tree_kind_name(TreeKind kind) {
    switch (kind) {
        case TreeKind::Path: return "path";
        case TreeKind::Star: return "star";
        case TreeKind::Caterpillar: return "caterpillar";
        case TreeKind::Broom: return "broom";
        case TreeKind::CompleteKary: return "complete_kary";
        case TreeKind::RandomPruefer: return "random_pruefer";
    }
    return "?";
}

RootedTree generate(TreeKind kind, const GenParams& params, std::uint64_t seed) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    long long n = 0;
    switch (kind) {
        case TreeKind::Path: {
            n = params.a;
            if (n < 1) throw std::invalid_argument("path size must be >= 1");
            for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            break;
        }
        case TreeKind::Star: {
            if (params.a < 1) throw std::invalid_argument("star leaf count must be >= 1");
            n = params.a + 1;
            for (Vertex i = 1; i < n; ++i) edges.emplace_back(0, i);
            break;
        }
        case TreeKind::Caterpillar: {
            const long long spine = params.a, legs = params.b;
            if (spine < 1 || legs < 0)
                throw std::invalid_argument("caterpillar needs spine >= 1, legs >= 0");
            n = spine * (1 + legs);
            for (Vertex i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
            Vertex next = static_cast<Vertex>(spine);
            for (Vertex i = 0; i < spine; ++i)
                for (long long j = 0; j < legs; ++j) edges.emplace_back(i, next++);
            break;
        }
        case TreeKind::Broom: {
            const long long handle = params.a, bristles = params.b;
            if (handle < 1 || bristles < 0)
                throw std::invalid_argument("broom needs handle >= 1, bristles >= 0");
            n = handle + bristles;
            for (Vertex i = 0; i + 1 < handle; ++i) edges.emplace_back(i, i + 1);
            for (long long j = 0; j < bristles; ++j)
                edges.emplace_back(static_cast<Vertex>(handle - 1),
                                   static_cast<Vertex>(handle + j));
            break;
        }
        case TreeKind::CompleteKary: {
            const long long arity = params.a, depth = params.b;
            if (arity < 2) throw std::invalid_argument("k-ary arity must be >= 2");
            if (depth < 0) throw std::invalid_argument("k-ary depth must be >= 0");
            n = 1;
            long long level = 1;
            for (long long d = 0; d < depth; ++d) {
                level *= arity;
                n += level;
                if (n > (1LL << 31)) throw std::invalid_argument("k-ary tree too large");
            }
            for (Vertex v = 1; v < n; ++v)
                edges.emplace_back(static_cast<Vertex>((v - 1) / arity), v);
            break;
        }
        case TreeKind::RandomPruefer: {
            n = params.a;
            if (n < 1) throw std::invalid_argument("tree size must be >= 1");
            if (n >= 3) {
                SplitMix64 rng(derive_seed({seed, 0x7072756566657231ULL}));
                std::vector<Vertex> pruefer(static_cast<std::size_t>(n - 2));
                for (auto& x : pruefer)
                    x = static_cast<Vertex>(rng.uniform_below(static_cast<std::uint64_t>(n)));
                // Standard linear-time decode.
                std::vector<int> deg(static_cast<std::size_t>(n), 1);
                for (Vertex x : pruefer) deg[static_cast<std::size_t>(x)]++;
                Vertex ptr = 0;
                while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
                Vertex leaf = ptr;
                for (Vertex x : pruefer) {
                    edges.emplace_back(leaf, x);
                    if (--deg[static_cast<std::size_t>(x)] == 1 && x < ptr) {
                        leaf = x;
                    } else {
                        ++ptr;
                        while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
                        leaf = ptr;
                    }
                }
                edges.emplace_back(leaf, static_cast<Vertex>(n - 1));
            } else if (n == 2) {
                edges.emplace_back(0, 1);
            }
            break;
        }
    }
    if (n > (1LL << 31) - 1) throw std::invalid_argument("generated tree too large");
    TreeOptions opts;
    opts.root = 0;  // generators define their own natural rooting
    return RootedTree::from_edges(static_cast<Vertex>(n), edges, opts);
}

}  // namespace treecube
