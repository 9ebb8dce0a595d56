#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treecube {

using Vertex = std::int32_t;

enum class RootPolicy {
    Center,  // re-root at a tree center (minimizes height)
    Keep,    // keep vertex 0 (the implicit root of the edge-list format)
};

struct TreeOptions {
    RootPolicy root_policy = RootPolicy::Center;
    std::optional<Vertex> root;  // explicit root overrides the policy
};

// Immutable rooted tree with depth/parent tables, preorder intervals and
// O(1) LCA queries (Euler tour + sparse table). Construction validates that
// the input is connected and acyclic. Safe for concurrent reads.
class RootedTree {
public:
    static RootedTree from_edges(Vertex n,
                                 const std::vector<std::pair<Vertex, Vertex>>& edges,
                                 const TreeOptions& options = {});

    Vertex n() const { return n_; }
    Vertex root() const { return root_; }
    Vertex parent(Vertex v) const { return parent_[static_cast<std::size_t>(v)]; }
    std::span<const Vertex> children(Vertex v) const;
    long long depth(Vertex v) const { return depth_[static_cast<std::size_t>(v)]; }
    long long height() const { return height_; }
    long long diameter() const { return diameter_; }
    int degree(Vertex v) const;
    int max_degree() const { return max_degree_; }

    // True iff every vertex has degree at most two (single vertex counts).
    bool is_path() const { return max_degree_ <= 2; }

    Vertex lca(Vertex u, Vertex v) const;
    long long dist(Vertex u, Vertex v) const;

    // |B_{v,r}|: number of vertices within tree distance r of v (inclusive).
    long long ball_size(Vertex v, long long r) const;

    // Preorder interval [tin(v), tout(v)) covers exactly the subtree of v.
    Vertex tin(Vertex v) const { return tin_[static_cast<std::size_t>(v)]; }
    Vertex tout(Vertex v) const { return tout_[static_cast<std::size_t>(v)]; }
    Vertex preorder_vertex(Vertex i) const { return preorder_[static_cast<std::size_t>(i)]; }
    Vertex subtree_size(Vertex v) const { return tout(v) - tin(v); }

    bool adjacent(Vertex u, Vertex v) const {
        return (u != v) && (parent(u) == v || parent(v) == u);
    }

    void check_vertex(Vertex v) const;

    // Edges as (min,max) pairs sorted ascending; independent of rooting.
    std::vector<std::pair<Vertex, Vertex>> canonical_edges() const;

private:
    RootedTree() = default;
    void build_from_adjacency(const std::vector<std::vector<Vertex>>& adj, Vertex root);

    Vertex n_ = 0;
    Vertex root_ = 0;
    std::vector<Vertex> parent_;
    std::vector<Vertex> child_data_;   // CSR payload, children in ascending order
    std::vector<Vertex> child_off_;    // size n+1
    std::vector<long long> depth_;
    long long height_ = 0;
    long long diameter_ = 0;
    int max_degree_ = 0;

    std::vector<Vertex> preorder_;
    std::vector<Vertex> tin_, tout_;

    // Euler tour LCA
    std::vector<Vertex> euler_;        // vertex per tour position, size 2n-1
    std::vector<Vertex> euler_first_;  // first tour position of each vertex
    std::vector<std::vector<Vertex>> sparse_;  // positions of minimum depth
    std::vector<int> log2_;
};

// Parses the edge-list format: first non-comment line "n", then n-1 lines
// "u v". Blank lines and '#' comments are ignored.
RootedTree parse_tree(std::string_view text, const TreeOptions& options = {});

// Canonical edge-list bytes: "n\n" then sorted "u v" lines with u < v.
std::string format_tree(const RootedTree& tree);

enum class TreeKind {
    Path,
    Star,
    Caterpillar,
    Broom,
    CompleteKary,
    RandomPruefer,
};

TreeKind parse_tree_kind(std::string_view name);
std::string_view tree_kind_name(TreeKind kind);

// Meaning of (a, b) per kind:
//   Path:          a = vertex count
//   Star:          a = leaf count (n = a+1)
//   Caterpillar:   a = spine vertices, b = legs per spine vertex
//   Broom:         a = handle vertices, b = bristle leaves at the far end
//   CompleteKary:  a = arity (>= 2), b = depth (n = (a^(b+1)-1)/(a-1))
//   RandomPruefer: a = vertex count, seeded
struct GenParams {
    long long a = 0;
    long long b = 0;
};

// Deterministic for fixed (kind, params, seed). Trees are rooted at
// vertex 0 (path end, star center, spine head, k-ary root).
RootedTree generate(TreeKind kind, const GenParams& params, std::uint64_t seed = 0);

}  // namespace treecube
