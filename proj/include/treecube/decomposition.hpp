#pragma once

#include <vector>

#include "treecube/tree.hpp"

namespace treecube {

// Height ladder: h_0 = Gamma = 2^(2^k), h_{i+1} = sqrt(h_i) down to h_k = 2,
// where k is minimal with h <= 2^(2^k). `e` / `o` are the minimum even/odd
// indices whose rung is at most the base-height threshold; `o` is -1 when no
// odd index exists (k = 0, i.e. h <= 2).
struct Ladder {
    long long height = 0;
    long long h_base = 0;
    int k = 0;
    std::vector<long long> h;  // h[i] for 0 <= i <= k
    int e = 0;
    int o = -1;

    int max_level() const { return o < 0 ? e : std::max(e, o); }
    // Extension rounds executed by the pipeline: i = max(e,o), ..., 2.
    int rounds() const { return std::max(0, max_level() - 1); }
};

// h_base must be a power of two >= 4 (2^16 is the faithful setting; smaller
// values scale the machinery down for testing, at the cost of the analytic
// guarantees).
Ladder build_ladder(long long height, long long h_base = 1LL << 16);

enum class CutMode { A, B };

// Whether the edge from depth j to depth j+1 is removed at a level with rung
// h_i: mode A cuts at positive multiples of 3*h_i, mode B at j = h_i mod 3*h_i.
bool is_cut_depth(long long parent_depth, long long h_i, CutMode mode);

// One rooted subtree of the level family. Vertices are sorted by preorder, so
// the piece root comes first and parents precede children.
struct Piece {
    Vertex root = -1;
    std::vector<Vertex> vertices;
    long long height = 0;
};

struct LevelFamilies {
    CutMode mode = CutMode::A;
    long long h_i = 0;
    std::vector<Piece> pieces;
    std::vector<Vertex> piece_of;      // vertex -> index into pieces
    std::vector<Vertex> cut_children;  // child endpoint of each removed edge, ascending
};

LevelFamilies decompose(const RootedTree& tree, long long h_i, CutMode mode);

// Lemma: any pair at distance <= h_i shares a piece in A_i union B_i.
// Precondition dist(u,v) <= h_i; returns whether some shared piece exists.
bool cover_pair_check(const RootedTree& tree, const LevelFamilies& fam_a,
                      const LevelFamilies& fam_b, Vertex u, Vertex v);

// Just the child endpoints of cut edges at a level, without building pieces.
std::vector<Vertex> cut_children(const RootedTree& tree, long long h_i, CutMode mode);

// One line per piece: level rung, mode, root, size, height.
std::string dump_families(const LevelFamilies& fam);

}  // namespace treecube
