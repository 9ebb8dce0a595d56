#include "treecube/decomposition.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace treecube {

Ladder build_ladder(long long height, long long h_base) {
    if (height < 0) throw std::invalid_argument("height must be non-negative");
    if (h_base < 4 || (h_base & (h_base - 1)) != 0)
        throw std::invalid_argument("base-height threshold must be a power of two >= 4");

    Ladder ladder;
    ladder.height = height;
    ladder.h_base = h_base;

    // Minimal k with height <= 2^(2^k). Heights beyond 2^32 would need k >= 6
    // and a tree too large to hold in memory anyway.
    int k = 0;
    while ((1LL << (1LL << k)) < std::max<long long>(height, 2)) {
        ++k;
        if (k > 5) throw std::invalid_argument("tree height exceeds 2^32");
    }
    ladder.k = k;
    ladder.h.resize(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i)
        ladder.h[static_cast<std::size_t>(i)] = 1LL << (1LL << (k - i));  // 2^(2^(k-i))

    ladder.e = -1;
    ladder.o = -1;
    for (int i = 0; i <= k; ++i) {
        if (ladder.h[static_cast<std::size_t>(i)] > h_base) continue;
        if (i % 2 == 0 && ladder.e < 0) ladder.e = i;
        if (i % 2 == 1 && ladder.o < 0) ladder.o = i;
    }
    // h_k = 2 <= h_base always, so e exists; o is absent only for k = 0.
    return ladder;
}

bool is_cut_depth(long long parent_depth, long long h_i, CutMode mode) {
    if (h_i < 1) throw std::invalid_argument("h_i must be >= 1");
    const long long m = 3 * h_i;
    if (mode == CutMode::A) return parent_depth > 0 && parent_depth % m == 0;
    return parent_depth % m == h_i;
}

LevelFamilies decompose(const RootedTree& tree, long long h_i, CutMode mode) {
    LevelFamilies fam;
    fam.mode = mode;
    fam.h_i = h_i;
    const Vertex n = tree.n();
    fam.piece_of.assign(static_cast<std::size_t>(n), -1);

    std::vector<Vertex> piece_root_of(static_cast<std::size_t>(n), -1);
    for (Vertex i = 0; i < n; ++i) {  // preorder: parents first
        const Vertex v = tree.preorder_vertex(i);
        const Vertex p = tree.parent(v);
        if (p < 0 || is_cut_depth(tree.depth(p), h_i, mode)) {
            piece_root_of[static_cast<std::size_t>(v)] = v;
            if (p >= 0) fam.cut_children.push_back(v);
            fam.piece_of[static_cast<std::size_t>(v)] = static_cast<Vertex>(fam.pieces.size());
            fam.pieces.push_back(Piece{v, {v}, 0});
        } else {
            const Vertex r = piece_root_of[static_cast<std::size_t>(p)];
            piece_root_of[static_cast<std::size_t>(v)] = r;
            const Vertex pi = fam.piece_of[static_cast<std::size_t>(p)];
            fam.piece_of[static_cast<std::size_t>(v)] = pi;
            Piece& piece = fam.pieces[static_cast<std::size_t>(pi)];
            piece.vertices.push_back(v);
            piece.height = std::max(piece.height, tree.depth(v) - tree.depth(r));
        }
    }
    std::sort(fam.cut_children.begin(), fam.cut_children.end());
    return fam;
}

bool cover_pair_check(const RootedTree& tree, const LevelFamilies& fam_a,
                      const LevelFamilies& fam_b, Vertex u, Vertex v) {
    if (fam_a.h_i != fam_b.h_i || fam_a.mode != CutMode::A || fam_b.mode != CutMode::B)
        throw std::invalid_argument("cover_pair_check needs the A and B families of one level");
    if (tree.dist(u, v) > fam_a.h_i)
        throw std::invalid_argument("cover_pair_check requires dist(u,v) <= h_i");
    return fam_a.piece_of[static_cast<std::size_t>(u)] == fam_a.piece_of[static_cast<std::size_t>(v)] ||
           fam_b.piece_of[static_cast<std::size_t>(u)] == fam_b.piece_of[static_cast<std::size_t>(v)];
}

std::vector<Vertex> cut_children(const RootedTree& tree, long long h_i, CutMode mode) {
    std::vector<Vertex> cuts;
    for (Vertex v = 0; v < tree.n(); ++v) {
        const Vertex p = tree.parent(v);
        if (p >= 0 && is_cut_depth(tree.depth(p), h_i, mode)) cuts.push_back(v);
    }
    return cuts;
}

std::string dump_families(const LevelFamilies& fam) {
    std::ostringstream out;
    for (const Piece& p : fam.pieces)
        out << "h_i=" << fam.h_i << " mode=" << (fam.mode == CutMode::A ? 'A' : 'B')
            << " root=" << p.root << " size=" << p.vertices.size() << " height=" << p.height
            << '\n';
    return out.str();
}

}  // namespace treecube
