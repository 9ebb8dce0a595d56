#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "treecube/tree.hpp"

namespace treecube {

// Tiny general graph (n <= 8), adjacency as per-vertex bitmasks.
struct SmallGraph {
    int n = 0;
    std::array<std::uint8_t, 8> adj{};

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    bool complete() const;
    int edge_count() const;
    std::uint32_t edge_mask() const;

    static SmallGraph from_edge_mask(int n, std::uint32_t mask);
    static SmallGraph from_tree(const RootedTree& tree);
    // Edge-list format; unlike trees, any edge count is allowed.
    static SmallGraph parse(std::string_view text);
};

// Triangular index of the unordered pair {u, v} (u != v), shared by all mask
// encodings below. Stable across graph sizes up to 8.
int pair_index(int u, int v);

// Edge masks of every unit interval graph on n labeled vertices, sorted.
// Enumerated through vertex orderings with non-decreasing right-reach (the
// umbrella characterization); cached per n.
const std::vector<std::uint32_t>& all_unit_interval_graphs(int n);

// Unit interval graphs whose edge set contains E(g).
std::vector<SmallGraph> proper_interval_supergraphs(const SmallGraph& g);

struct OracleOptions {
    int max_n = 7;               // raise to 8 explicitly for the larger search
    double timeout_seconds = 0;  // 0 = unlimited
};

// Smallest d such that g is the intersection of d unit interval graphs on the
// same vertex set; 0 for complete graphs. Exact set-cover over non-edges.
int exact_cubicity(const SmallGraph& g, const OracleOptions& options = {});

}  // namespace treecube
