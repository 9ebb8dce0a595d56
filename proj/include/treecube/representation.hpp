#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "treecube/tree.hpp"

namespace treecube {

// Exact rational coordinate. The pipeline only ever produces integers; the
// rational form is for hand-built and externally loaded representations.
using Rat = boost::rational<std::int64_t>;

Rat parse_rational(std::string_view text);  // "p" or "p/q"
std::string rational_to_string(const Rat& r);
long long rat_floor(const Rat& r);

struct BlockInfo {
    std::string name;
    int dim = 0;
};

// Per-edge weight vectors W(e) in [-1,1]^d. The edge incident to a non-root
// vertex v from its parent is addressed by v. May be partial (a declared
// subset of E(T)) while a pipeline is in flight.
class WeightAssignment {
public:
    WeightAssignment(const RootedTree& tree, int dim);

    const RootedTree& tree() const { return *tree_; }
    int dim() const { return dim_; }
    bool defined(Vertex child) const;
    std::span<const Rat> weight(Vertex child) const;
    void set_weight(Vertex child, std::span<const Rat> values);
    void set_weight(Vertex child, std::initializer_list<Rat> values);
    void unset_weight(Vertex child);
    bool total() const;  // defined on every parent edge

private:
    const RootedTree* tree_;
    int dim_;
    std::vector<Rat> values_;
    std::vector<char> defined_;
    long long defined_count_ = 0;
};

// All prefix sums S_W at once (O(n d), preorder pass). Requires a total W.
struct SumTable {
    int dim = 0;
    std::vector<Rat> values;  // n * dim
    std::span<const Rat> row(Vertex v) const {
        return {values.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
};
SumTable sum_vectors(const WeightAssignment& w);

// Single S_W(v) by walking the root path; errors if an edge on it is undefined.
std::vector<Rat> sum_vector(const WeightAssignment& w, Vertex v);

// S_W(u) - S_W(v) computed by telescoping the signed weights along the u-v
// path (up-edges positive, down-edges negative past the LCA). Deliberately a
// different route than sum_vectors.
std::vector<Rat> delta(const WeightAssignment& w, Vertex u, Vertex v);

// Per-vertex cube centers. Integer coordinates are stored compactly; exact
// rationals otherwise. `t` / `mode` / `seed` are pipeline provenance.
struct CubeRepresentation {
    Vertex n = 0;
    int dim = 0;
    bool integral = true;
    std::vector<std::int64_t> icoords;  // n*dim, used when integral
    std::vector<Rat> rcoords;           // n*dim, used otherwise
    std::vector<BlockInfo> blocks;
    std::string mode;
    std::uint64_t seed = 0;
    int t = 0;

    Rat at(Vertex v, int k) const;
    std::span<const std::int64_t> int_row(Vertex v) const;
    std::span<const Rat> rat_row(Vertex v) const;

    static CubeRepresentation from_integers(Vertex n, int dim, std::vector<std::int64_t> coords,
                                            std::vector<BlockInfo> blocks = {});
    // Collapses to integer storage when every coordinate has denominator 1.
    static CubeRepresentation from_rationals(Vertex n, int dim, std::vector<Rat> coords,
                                             std::vector<BlockInfo> blocks = {});
};

struct Violation {
    enum class Kind {
        SpuriousIntersection,  // non-adjacent pair at l-inf distance <= 1
        BrokenEdge,            // adjacent pair at l-inf distance > 1
    };
    Kind kind = Kind::SpuriousIntersection;
    Vertex u = -1, v = -1;
    int coord = -1;  // BrokenEdge: a dimension with gap > 1; Spurious: dimension of max gap
    Rat gap{0};

    std::string describe() const;
};

// Checks the adjacency law ||f(u)-f(v)||_inf <= 1 <=> uv in E(T) over all
// n(n-1)/2 pairs with exact arithmetic. Returns the first violation in
// lexicographic (u,v) order, or nullopt.
std::optional<Violation> verify_naive(const RootedTree& tree, const CubeRepresentation& rep);

// Same verdict as verify_naive on every input; uses a unit-width grid over
// up to 3 high-variance coordinates to retrieve candidate close pairs, plus a
// direct scan of tree edges. Falls back to the naive check for n < 256.
std::optional<Violation> verify_spatial(const RootedTree& tree, const CubeRepresentation& rep);

// f(v) = S_W(v). With verify set, throws if the result breaks the adjacency law.
CubeRepresentation weights_to_centers(const WeightAssignment& w, bool verify = false);

// W(uv) = f(u) - f(v) for u a child of v; errors if some entry leaves [-1,1].
WeightAssignment centers_to_weights(const RootedTree& tree, const CubeRepresentation& rep);

// Concatenates coordinate blocks; dimension is the sum, block metadata kept
// in argument order.
CubeRepresentation concat_representations(const RootedTree& tree,
                                          const std::vector<const CubeRepresentation*>& parts);

// Greedily drops coordinates (ascending scan) whose removal keeps the
// verifier happy. Input must verify Ok.
CubeRepresentation trim_dimensions(const RootedTree& tree, const CubeRepresentation& rep);

// JSON document {format, n, dim, blocks, centers, mode, seed, t}; centers are
// integers or "p/q" strings. Byte-deterministic for a given representation.
std::string representation_to_json(const CubeRepresentation& rep);
CubeRepresentation representation_from_json(std::string_view text);
void save_representation(const CubeRepresentation& rep, const std::string& path);
CubeRepresentation load_representation(const std::string& path);

std::string centers_to_csv(const CubeRepresentation& rep);

}  // namespace treecube
