#include "treecube/representation.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace treecube {

namespace {

std::size_t idx(Vertex v, int k, int dim) {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(dim) +
           static_cast<std::size_t>(k);
}

long long parse_ll(std::string_view s) {
    long long out = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer: " + std::string(s));
    return out;
}

}  // namespace

Rat parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_ll(text));
    long long num = parse_ll(text.substr(0, slash));
    long long den = parse_ll(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
}

std::string rational_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

long long rat_floor(const Rat& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

// ---------------------------------------------------------------------------
// WeightAssignment
// ---------------------------------------------------------------------------

WeightAssignment::WeightAssignment(const RootedTree& tree, int dim)
    : tree_(&tree), dim_(dim) {
    if (dim < 0) throw std::invalid_argument("dimension must be non-negative");
    values_.assign(static_cast<std::size_t>(tree.n()) * static_cast<std::size_t>(dim), Rat(0));
    defined_.assign(static_cast<std::size_t>(tree.n()), 0);
}

bool WeightAssignment::defined(Vertex child) const {
    tree_->check_vertex(child);
    return defined_[static_cast<std::size_t>(child)] != 0;
}

std::span<const Rat> WeightAssignment::weight(Vertex child) const {
    if (!defined(child)) throw std::invalid_argument("weight undefined on edge");
    return {values_.data() + idx(child, 0, dim_), static_cast<std::size_t>(dim_)};
}

void WeightAssignment::set_weight(Vertex child, std::span<const Rat> values) {
    tree_->check_vertex(child);
    if (child == tree_->root()) throw std::invalid_argument("root has no parent edge");
    if (static_cast<int>(values.size()) != dim_)
        throw std::invalid_argument("weight vector has wrong dimension");
    for (const Rat& x : values)
        if (x < Rat(-1) || x > Rat(1))
            throw std::invalid_argument("weight entry outside [-1, 1]");
    std::copy(values.begin(), values.end(), values_.begin() + static_cast<long>(idx(child, 0, dim_)));
    if (!defined_[static_cast<std::size_t>(child)]) {
        defined_[static_cast<std::size_t>(child)] = 1;
        ++defined_count_;
    }
}

void WeightAssignment::set_weight(Vertex child, std::initializer_list<Rat> values) {
    set_weight(child, std::span<const Rat>(values.begin(), values.size()));
}

void WeightAssignment::unset_weight(Vertex child) {
    tree_->check_vertex(child);
    if (defined_[static_cast<std::size_t>(child)]) {
        defined_[static_cast<std::size_t>(child)] = 0;
        --defined_count_;
    }
}

bool WeightAssignment::total() const {
    return defined_count_ == static_cast<long long>(tree_->n()) - 1;
}

SumTable sum_vectors(const WeightAssignment& w) {
    if (!w.total()) throw std::invalid_argument("weight assignment is not total");
    const RootedTree& t = w.tree();
    SumTable table;
    table.dim = w.dim();
    table.values.assign(static_cast<std::size_t>(t.n()) * static_cast<std::size_t>(w.dim()),
                        Rat(0));
    for (Vertex i = 0; i < t.n(); ++i) {  // preorder: parents first
        Vertex v = t.preorder_vertex(i);
        if (v == t.root()) continue;
        auto wv = w.weight(v);
        Vertex p = t.parent(v);
        for (int k = 0; k < w.dim(); ++k)
            table.values[idx(v, k, w.dim())] = table.values[idx(p, k, w.dim())] + wv[static_cast<std::size_t>(k)];
    }
    return table;
}

std::vector<Rat> sum_vector(const WeightAssignment& w, Vertex v) {
    const RootedTree& t = w.tree();
    t.check_vertex(v);
    std::vector<Rat> s(static_cast<std::size_t>(w.dim()), Rat(0));
    for (Vertex x = v; x != t.root(); x = t.parent(x)) {
        if (!w.defined(x))
            throw std::invalid_argument("undefined weight on root path at vertex " +
                                        std::to_string(x));
        auto wx = w.weight(x);
        for (int k = 0; k < w.dim(); ++k) s[static_cast<std::size_t>(k)] += wx[static_cast<std::size_t>(k)];
    }
    return s;
}

std::vector<Rat> delta(const WeightAssignment& w, Vertex u, Vertex v) {
    const RootedTree& t = w.tree();
    const Vertex a = t.lca(u, v);
    std::vector<Rat> d(static_cast<std::size_t>(w.dim()), Rat(0));
    for (Vertex x = u; x != a; x = t.parent(x)) {
        auto wx = w.weight(x);
        for (int k = 0; k < w.dim(); ++k) d[static_cast<std::size_t>(k)] += wx[static_cast<std::size_t>(k)];
    }
    for (Vertex x = v; x != a; x = t.parent(x)) {
        auto wx = w.weight(x);
        for (int k = 0; k < w.dim(); ++k) d[static_cast<std::size_t>(k)] -= wx[static_cast<std::size_t>(k)];
    }
    return d;
}

// ---------------------------------------------------------------------------
// CubeRepresentation
// ---------------------------------------------------------------------------

Rat CubeRepresentation::at(Vertex v, int k) const {
    if (integral) return Rat(icoords[idx(v, k, dim)]);
    return rcoords[idx(v, k, dim)];
}

std::span<const std::int64_t> CubeRepresentation::int_row(Vertex v) const {
    return {icoords.data() + idx(v, 0, dim), static_cast<std::size_t>(dim)};
}

std::span<const Rat> CubeRepresentation::rat_row(Vertex v) const {
    return {rcoords.data() + idx(v, 0, dim), static_cast<std::size_t>(dim)};
}

CubeRepresentation CubeRepresentation::from_integers(Vertex n, int dim,
                                                     std::vector<std::int64_t> coords,
                                                     std::vector<BlockInfo> blocks) {
    if (coords.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(dim))
        throw std::invalid_argument("coordinate matrix has wrong size");
    CubeRepresentation rep;
    rep.n = n;
    rep.dim = dim;
    rep.integral = true;
    rep.icoords = std::move(coords);
    rep.blocks = std::move(blocks);
    return rep;
}

CubeRepresentation CubeRepresentation::from_rationals(Vertex n, int dim, std::vector<Rat> coords,
                                                      std::vector<BlockInfo> blocks) {
    if (coords.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(dim))
        throw std::invalid_argument("coordinate matrix has wrong size");
    const bool all_int = std::all_of(coords.begin(), coords.end(),
                                     [](const Rat& r) { return r.denominator() == 1; });
    if (all_int) {
        std::vector<std::int64_t> ints(coords.size());
        std::transform(coords.begin(), coords.end(), ints.begin(),
                       [](const Rat& r) { return r.numerator(); });
        return from_integers(n, dim, std::move(ints), std::move(blocks));
    }
    CubeRepresentation rep;
    rep.n = n;
    rep.dim = dim;
    rep.integral = false;
    rep.rcoords = std::move(coords);
    rep.blocks = std::move(blocks);
    return rep;
}

std::string Violation::describe() const {
    std::ostringstream out;
    if (kind == Kind::SpuriousIntersection)
        out << "spurious_intersection: non-adjacent pair (" << u << ", " << v
            << ") at l-inf distance " << rational_to_string(gap) << " (max gap in coordinate "
            << coord << ")";
    else
        out << "broken_edge: adjacent pair (" << u << ", " << v << ") with gap "
            << rational_to_string(gap) << " in coordinate " << coord;
    return out.str();
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

namespace {

void check_shapes(const RootedTree& tree, const CubeRepresentation& rep) {
    if (tree.n() != rep.n)
        throw std::invalid_argument("tree and representation disagree on vertex count");
}

// Pair check over integer coordinates. Returns a violation or nullopt.
std::optional<Violation> check_pair_int(const RootedTree& tree, const CubeRepresentation& rep,
                                        Vertex u, Vertex v) {
    const auto* a = rep.icoords.data() + idx(u, 0, rep.dim);
    const auto* b = rep.icoords.data() + idx(v, 0, rep.dim);
    const bool adj = tree.adjacent(u, v);
    if (adj) {
        for (int k = 0; k < rep.dim; ++k) {
            const std::int64_t g = a[k] > b[k] ? a[k] - b[k] : b[k] - a[k];
            if (g > 1)
                return Violation{Violation::Kind::BrokenEdge, u, v, k, Rat(g)};
        }
        return std::nullopt;
    }
    std::int64_t maxgap = 0;
    int maxk = 0;
    for (int k = 0; k < rep.dim; ++k) {
        const std::int64_t g = a[k] > b[k] ? a[k] - b[k] : b[k] - a[k];
        if (g > 1) return std::nullopt;  // separated
        if (g > maxgap) {
            maxgap = g;
            maxk = k;
        }
    }
    return Violation{Violation::Kind::SpuriousIntersection, u, v, maxk, Rat(maxgap)};
}

std::optional<Violation> check_pair_rat(const RootedTree& tree, const CubeRepresentation& rep,
                                        Vertex u, Vertex v) {
    auto a = rep.rat_row(u);
    auto b = rep.rat_row(v);
    const bool adj = tree.adjacent(u, v);
    const Rat one(1);
    if (adj) {
        for (int k = 0; k < rep.dim; ++k) {
            Rat g = a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)];
            if (g < Rat(0)) g = -g;
            if (g > one) return Violation{Violation::Kind::BrokenEdge, u, v, k, g};
        }
        return std::nullopt;
    }
    Rat maxgap(0);
    int maxk = 0;
    for (int k = 0; k < rep.dim; ++k) {
        Rat g = a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)];
        if (g < Rat(0)) g = -g;
        if (g > one) return std::nullopt;
        if (g > maxgap) {
            maxgap = g;
            maxk = k;
        }
    }
    return Violation{Violation::Kind::SpuriousIntersection, u, v, maxk, maxgap};
}

std::optional<Violation> check_pair(const RootedTree& tree, const CubeRepresentation& rep,
                                    Vertex u, Vertex v) {
    return rep.integral ? check_pair_int(tree, rep, u, v) : check_pair_rat(tree, rep, u, v);
}

}  // namespace

std::optional<Violation> verify_naive(const RootedTree& tree, const CubeRepresentation& rep) {
    check_shapes(tree, rep);
    for (Vertex u = 0; u < rep.n; ++u)
        for (Vertex v = u + 1; v < rep.n; ++v)
            if (auto viol = check_pair(tree, rep, u, v)) return viol;
    return std::nullopt;
}

std::optional<Violation> verify_spatial(const RootedTree& tree, const CubeRepresentation& rep) {
    check_shapes(tree, rep);
    if (rep.n < 256 || rep.dim == 0) return verify_naive(tree, rep);

    // Edges first: n-1 direct checks catch every broken edge.
    std::optional<Violation> best;
    auto consider = [&](const std::optional<Violation>& v) {
        if (!v) return;
        if (!best || std::pair(v->u, v->v) < std::pair(best->u, best->v)) best = v;
    };
    for (Vertex v = 0; v < rep.n; ++v) {
        Vertex p = tree.parent(v);
        if (p < 0) continue;
        consider(check_pair(tree, rep, std::min(p, v), std::max(p, v)));
    }

    // Spurious intersections: pairs within distance 1 in every coordinate, in
    // particular in the chosen grid coordinates, land in neighboring cells.
    const int gdims = std::min(3, rep.dim);
    std::vector<int> chosen(static_cast<std::size_t>(gdims));
    {
        std::vector<std::pair<double, int>> variance(static_cast<std::size_t>(rep.dim));
        for (int k = 0; k < rep.dim; ++k) {
            double sum = 0, sum2 = 0;
            for (Vertex v = 0; v < rep.n; ++v) {
                const double x = boost::rational_cast<double>(rep.at(v, k));
                sum += x;
                sum2 += x * x;
            }
            const double mean = sum / rep.n;
            variance[static_cast<std::size_t>(k)] = {sum2 / rep.n - mean * mean, k};
        }
        std::sort(variance.begin(), variance.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (int i = 0; i < gdims; ++i) chosen[static_cast<std::size_t>(i)] = variance[static_cast<std::size_t>(i)].second;
    }

    auto cell_of = [&](Vertex v, int i) -> long long {
        const int k = chosen[static_cast<std::size_t>(i)];
        if (rep.integral) return rep.icoords[idx(v, k, rep.dim)];
        return rat_floor(rep.rcoords[idx(v, k, rep.dim)]);
    };
    auto key_of = [&](std::span<const long long> cell) {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (long long c : cell) {
            h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return h;
    };

    std::unordered_map<std::uint64_t, std::vector<Vertex>> grid;
    grid.reserve(static_cast<std::size_t>(rep.n) * 2);
    std::vector<long long> cell(static_cast<std::size_t>(gdims));
    for (Vertex v = 0; v < rep.n; ++v) {
        for (int i = 0; i < gdims; ++i) cell[static_cast<std::size_t>(i)] = cell_of(v, i);
        grid[key_of(cell)].push_back(v);
    }

    std::vector<long long> probe(static_cast<std::size_t>(gdims));
    const int neighborhoods = gdims == 3 ? 27 : (gdims == 2 ? 9 : 3);
    for (Vertex v = 0; v < rep.n; ++v) {
        for (int i = 0; i < gdims; ++i) cell[static_cast<std::size_t>(i)] = cell_of(v, i);
        for (int nb = 0; nb < neighborhoods; ++nb) {
            int rem = nb;
            for (int i = 0; i < gdims; ++i) {
                probe[static_cast<std::size_t>(i)] = cell[static_cast<std::size_t>(i)] + (rem % 3) - 1;
                rem /= 3;
            }
            auto it = grid.find(key_of(probe));
            if (it == grid.end()) continue;
            for (Vertex u : it->second) {
                if (u >= v) continue;
                if (tree.adjacent(u, v)) continue;  // edges handled above
                consider(check_pair(tree, rep, u, v));
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Lemma 1 conversions, concatenation, trimming
// ---------------------------------------------------------------------------

CubeRepresentation weights_to_centers(const WeightAssignment& w, bool verify) {
    const RootedTree& tree = w.tree();
    SumTable sums = sum_vectors(w);
    CubeRepresentation rep =
        CubeRepresentation::from_rationals(tree.n(), w.dim(), std::move(sums.values));
    if (verify) {
        if (auto viol = verify_naive(tree, rep))
            throw std::runtime_error("weight assignment is not separating: " + viol->describe());
    }
    return rep;
}

WeightAssignment centers_to_weights(const RootedTree& tree, const CubeRepresentation& rep) {
    check_shapes(tree, rep);
    WeightAssignment w(tree, rep.dim);
    std::vector<Rat> buf(static_cast<std::size_t>(rep.dim));
    for (Vertex v = 0; v < tree.n(); ++v) {
        if (v == tree.root()) continue;
        const Vertex p = tree.parent(v);
        for (int k = 0; k < rep.dim; ++k) {
            Rat g = rep.at(v, k) - rep.at(p, k);
            if (g < Rat(-1) || g > Rat(1))
                throw std::invalid_argument(
                    "not a cube representation of this tree: edge (" + std::to_string(p) + ", " +
                    std::to_string(v) + ") has coordinate gap > 1");
            buf[static_cast<std::size_t>(k)] = g;
        }
        w.set_weight(v, buf);
    }
    return w;
}

CubeRepresentation concat_representations(const RootedTree& tree,
                                          const std::vector<const CubeRepresentation*>& parts) {
    int dim = 0;
    bool integral = true;
    for (const auto* p : parts) {
        if (p->n != tree.n()) throw std::invalid_argument("concat: mismatched vertex counts");
        dim += p->dim;
        integral = integral && p->integral;
    }
    std::vector<BlockInfo> blocks;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i]->blocks.empty()) {
            blocks.push_back({"b" + std::to_string(i), parts[i]->dim});
        } else {
            for (const auto& b : parts[i]->blocks) blocks.push_back(b);
        }
    }
    if (integral) {
        std::vector<std::int64_t> coords(static_cast<std::size_t>(tree.n()) *
                                         static_cast<std::size_t>(dim));
        std::size_t off = 0;
        for (Vertex v = 0; v < tree.n(); ++v) {
            for (const auto* p : parts) {
                auto row = p->int_row(v);
                std::copy(row.begin(), row.end(), coords.begin() + static_cast<long>(off));
                off += row.size();
            }
        }
        return CubeRepresentation::from_integers(tree.n(), dim, std::move(coords),
                                                 std::move(blocks));
    }
    std::vector<Rat> coords(static_cast<std::size_t>(tree.n()) * static_cast<std::size_t>(dim));
    std::size_t off = 0;
    for (Vertex v = 0; v < tree.n(); ++v) {
        for (const auto* p : parts) {
            for (int k = 0; k < p->dim; ++k) coords[off++] = p->at(v, k);
        }
    }
    return CubeRepresentation::from_rationals(tree.n(), dim, std::move(coords), std::move(blocks));
}

namespace {

// Naive verification restricted to a subset of coordinates.
bool verify_masked(const RootedTree& tree, const CubeRepresentation& rep,
                   const std::vector<int>& active) {
    const Rat one(1);
    for (Vertex u = 0; u < rep.n; ++u) {
        for (Vertex v = u + 1; v < rep.n; ++v) {
            const bool adj = tree.adjacent(u, v);
            bool separated = false;
            for (int k : active) {
                if (rep.integral) {
                    const std::int64_t a = rep.icoords[idx(u, k, rep.dim)];
                    const std::int64_t b = rep.icoords[idx(v, k, rep.dim)];
                    const std::int64_t g = a > b ? a - b : b - a;
                    if (g > 1) {
                        separated = true;
                        break;
                    }
                } else {
                    Rat g = rep.rcoords[idx(u, k, rep.dim)] - rep.rcoords[idx(v, k, rep.dim)];
                    if (g < Rat(0)) g = -g;
                    if (g > one) {
                        separated = true;
                        break;
                    }
                }
            }
            if (adj == separated) return false;
        }
    }
    return true;
}

}  // namespace

CubeRepresentation trim_dimensions(const RootedTree& tree, const CubeRepresentation& rep) {
    check_shapes(tree, rep);
    if (verify_naive(tree, rep))
        throw std::invalid_argument("trim_dimensions: input representation is not valid");

    std::vector<int> active(static_cast<std::size_t>(rep.dim));
    for (int k = 0; k < rep.dim; ++k) active[static_cast<std::size_t>(k)] = k;
    for (int k = 0; k < rep.dim; ++k) {
        std::vector<int> trial;
        trial.reserve(active.size());
        for (int a : active)
            if (a != k) trial.push_back(a);
        if (verify_masked(tree, rep, trial)) active = std::move(trial);
    }

    // Rebuild with surviving columns; block dims shrink accordingly.
    std::vector<int> col_block(static_cast<std::size_t>(rep.dim), -1);
    {
        int col = 0;
        for (std::size_t b = 0; b < rep.blocks.size(); ++b)
            for (int i = 0; i < rep.blocks[b].dim && col < rep.dim; ++i)
                col_block[static_cast<std::size_t>(col++)] = static_cast<int>(b);
    }
    std::vector<BlockInfo> blocks = rep.blocks;
    for (auto& b : blocks) b.dim = 0;
    for (int k : active)
        if (col_block[static_cast<std::size_t>(k)] >= 0)
            blocks[static_cast<std::size_t>(col_block[static_cast<std::size_t>(k)])].dim++;

    const int new_dim = static_cast<int>(active.size());
    CubeRepresentation out;
    if (rep.integral) {
        std::vector<std::int64_t> coords(static_cast<std::size_t>(rep.n) *
                                         static_cast<std::size_t>(new_dim));
        for (Vertex v = 0; v < rep.n; ++v)
            for (int i = 0; i < new_dim; ++i)
                coords[idx(v, i, new_dim)] = rep.icoords[idx(v, active[static_cast<std::size_t>(i)], rep.dim)];
        out = CubeRepresentation::from_integers(rep.n, new_dim, std::move(coords),
                                                rep.blocks.empty() ? std::vector<BlockInfo>{}
                                                                   : blocks);
    } else {
        std::vector<Rat> coords(static_cast<std::size_t>(rep.n) *
                                static_cast<std::size_t>(new_dim));
        for (Vertex v = 0; v < rep.n; ++v)
            for (int i = 0; i < new_dim; ++i)
                coords[idx(v, i, new_dim)] = rep.rcoords[idx(v, active[static_cast<std::size_t>(i)], rep.dim)];
        out = CubeRepresentation::from_rationals(rep.n, new_dim, std::move(coords),
                                                 rep.blocks.empty() ? std::vector<BlockInfo>{}
                                                                    : blocks);
    }
    out.mode = rep.mode;
    out.seed = rep.seed;
    out.t = rep.t;
    return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string representation_to_json(const CubeRepresentation& rep) {
    nlohmann::json doc;
    doc["format"] = "treecube-representation";
    doc["version"] = 1;
    doc["n"] = rep.n;
    doc["dim"] = rep.dim;
    doc["mode"] = rep.mode;
    doc["seed"] = rep.seed;
    doc["t"] = rep.t;
    auto blocks = nlohmann::json::array();
    for (const auto& b : rep.blocks) blocks.push_back({{"name", b.name}, {"dim", b.dim}});
    doc["blocks"] = blocks;
    auto centers = nlohmann::json::array();
    for (Vertex v = 0; v < rep.n; ++v) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < rep.dim; ++k) {
            if (rep.integral)
                row.push_back(rep.icoords[idx(v, k, rep.dim)]);
            else {
                const Rat& r = rep.rcoords[idx(v, k, rep.dim)];
                if (r.denominator() == 1)
                    row.push_back(r.numerator());
                else
                    row.push_back(rational_to_string(r));
            }
        }
        centers.push_back(std::move(row));
    }
    doc["centers"] = std::move(centers);
    return doc.dump();
}

CubeRepresentation representation_from_json(std::string_view text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    const Vertex n = doc.at("n").get<Vertex>();
    const int dim = doc.at("dim").get<int>();
    const auto& centers = doc.at("centers");
    if (static_cast<Vertex>(centers.size()) != n)
        throw std::invalid_argument("centers row count does not match n");
    std::vector<Rat> coords;
    coords.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(dim));
    for (const auto& row : centers) {
        if (static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("centers column count does not match dim");
        for (const auto& cell : row) {
            if (cell.is_string())
                coords.push_back(parse_rational(cell.get<std::string>()));
            else
                coords.push_back(Rat(cell.get<std::int64_t>()));
        }
    }
    std::vector<BlockInfo> blocks;
    if (doc.contains("blocks"))
        for (const auto& b : doc["blocks"])
            blocks.push_back({b.at("name").get<std::string>(), b.at("dim").get<int>()});
    CubeRepresentation rep =
        CubeRepresentation::from_rationals(n, dim, std::move(coords), std::move(blocks));
    if (doc.contains("mode")) rep.mode = doc["mode"].get<std::string>();
    if (doc.contains("seed")) rep.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("t")) rep.t = doc["t"].get<int>();
    return rep;
}

void save_representation(const CubeRepresentation& rep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << representation_to_json(rep) << '\n';
}

CubeRepresentation load_representation(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return representation_from_json(buf.str());
}

std::string centers_to_csv(const CubeRepresentation& rep) {
    std::ostringstream out;
    out << "vertex";
    for (int k = 0; k < rep.dim; ++k) out << ",c" << k;
    out << '\n';
    for (Vertex v = 0; v < rep.n; ++v) {
        out << v;
        for (int k = 0; k < rep.dim; ++k) out << ',' << rational_to_string(rep.at(v, k));
        out << '\n';
    }
    return out.str();
}

}  // namespace treecube
