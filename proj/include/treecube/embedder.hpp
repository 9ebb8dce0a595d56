#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treecube/decomposition.hpp"
#include "treecube/metrics.hpp"
#include "treecube/representation.hpp"
#include "treecube/tree.hpp"

namespace treecube {

struct EmbedConfig {
    long long h_base = 1LL << 16;  // faithful ladder threshold
    std::optional<int> t_override;
    std::uint64_t seed = 0;
    int retry_cap = 32;        // per-piece redraws before escalating
    int escalation_max = 4;    // dimension escalations per piece
    bool force_sampled_checks = false;
    long long sampled_pairs = 1'000'000;
    long long exact_check_cap = 20000;  // pieces larger than this sample pairs
    bool trim = false;
    long long rho_exact_cap = 20000;  // above this, rho is sampled
    int rho_sample_centers = 512;
    int pipeline_retry_cap = 8;  // whole-pipeline retries after a failed verify
};

struct EscalationEvent {
    std::string block;
    int level = 0;  // ladder index of the family being drawn
    Vertex piece_root = -1;
    int from_t = 0;
    int to_t = 0;
};

struct EmbedReport {
    Vertex n = 0;
    long long height = 0;
    double rho = 0.0;
    bool rho_exact = true;
    Vertex rho_witness_vertex = -1;
    long long rho_witness_radius = 0;
    int lb_rho = 0, lb_structural = 0, lb_lemma2 = 0, lb_final = 0;
    int t = 0;                          // starting per-block dimension budget
    std::array<int, 4> block_t{};       // per-block t actually drawn
    std::array<std::string, 4> block_names{};
    int dim = 0;
    bool trimmed = false;
    int dim_before_trim = 0;
    int ladder_k = 0, ladder_e = -1, ladder_o = -1;
    long long h_e = 0, h_o = 0;
    int extension_rounds = 0;
    long long pieces_embedded = 0;  // pieces that drew at least one vector
    long long total_draws = 0;
    long long max_draws = 0;
    double mean_draws = 0.0;
    std::vector<EscalationEvent> escalations;
    bool sampled_checks_used = false;
    std::string check_mode;  // "exact" or "sampled(N)"
    int pipeline_retries = 0;
    std::string shortcut;  // "", "complete", "path"
    std::string result;    // "ok" | "escalation-exhausted" | "verification-failed"
    bool success = false;
    double ratio = 0.0;  // dim / max(lb_final, 1)
    std::string mode_label;
    std::uint64_t seed = 0;
    // Wall-clock per stage (ms). Kept out of the deterministic JSON report;
    // run manifests and the text summary carry them.
    double ms_rho = 0, ms_pipeline = 0, ms_verify = 0, ms_trim = 0, ms_total = 0;
};

struct EmbedResult {
    std::optional<CubeRepresentation> representation;
    EmbedReport report;
};

// Full construction: complete/path shortcuts, otherwise the four-block
// decompose-and-extend pipeline at t = ceil(22.77*rho)+2 per block, with
// verification-driven retries. A returned representation always verifies Ok.
EmbedResult embed_tree(const RootedTree& tree, const EmbedConfig& config = {});

// --------------------------------------------------------------------------
// Pipeline building blocks (public so tests can drive them directly)
// --------------------------------------------------------------------------

// One coordinate block: a t-dimensional weight vector per parent edge,
// addressed by the child vertex. Entries live in {-1, 0, +1}; rows start
// zeroed, so undrawn edges already carry the all-zeros vector.
class BlockWeights {
public:
    BlockWeights(Vertex n, int t);
    int t() const { return t_; }
    Vertex n() const { return n_; }
    std::span<const std::int8_t> row(Vertex child) const;
    std::span<std::int8_t> row(Vertex child);
    void widen(int new_t);  // zero-pads every row

private:
    Vertex n_ = 0;
    int t_ = 0;
    std::vector<std::int8_t> values_;
};

struct FarCheckPolicy {
    bool sampled = false;
    long long samples = 1'000'000;
};

// Piece-local prefix sums of `block`, then: every vertex pair of the piece at
// tree distance >= min_dist must have some coordinate gap > 1. Returns the
// first unseparated pair (exact mode, deterministic order) or a sampled one.
// min_dist = 2 checks every non-adjacent pair (the base-case contract).
std::optional<std::pair<Vertex, Vertex>> check_far_pairs(const RootedTree& tree,
                                                         const Piece& piece,
                                                         const BlockWeights& block,
                                                         long long min_dist,
                                                         const FarCheckPolicy& policy = {},
                                                         std::uint64_t sample_seed = 0);

struct DrawStats {
    int attempts = 0;
    bool ok = true;
};

// Las Vegas draw: fresh uniform {-1,+1}^t vectors on `fresh_children`,
// redrawn until check_far_pairs passes or retry_cap is exhausted. With no
// fresh edges the piece is returned unchanged (attempts = 0). When
// repair_locally is set, attempts after the first resample only the fresh
// edges lying on failed pairs' paths instead of the whole fresh set; the
// pipeline uses this for base cases, where every edge of the piece is fresh.
DrawStats draw_piece_weights(const RootedTree& tree, const Piece& piece,
                             const std::vector<Vertex>& fresh_children, BlockWeights& block,
                             long long min_dist, const FarCheckPolicy& policy,
                             std::uint64_t seed, int retry_cap, bool repair_locally = false);

// Base case: every edge of the piece gets a fresh uniform {-1,+1}^t vector,
// locally repaired until every non-adjacent pair of the piece is separated.
DrawStats base_case_embed(const RootedTree& tree, const Piece& piece, BlockWeights& block,
                          const FarCheckPolicy& policy, std::uint64_t seed, int retry_cap);

struct LevelExtendResult {
    long long pieces = 0;      // pieces that drew at least one vector
    long long draws = 0;
    long long max_draws = 0;
    std::optional<Vertex> failed_piece;  // root of the first piece that gave up
};

// One extension round: each piece of the level-(i-2) family draws fresh
// vectors on its edges cut at level i (and not at i-2), redrawn until every
// pair at distance >= h_{i-1} inside the piece is separated. Kept edges are
// untouched. `level_from` is i; requires level_from - 2 >= 0.
LevelExtendResult extend_level(const RootedTree& tree, const Ladder& ladder, CutMode mode,
                               int level_from, BlockWeights& block, const FarCheckPolicy& policy,
                               std::uint64_t seed, int retry_cap);

// Writes the all-zeros vector on the given edges (step 4 of the pipeline).
void zero_fill(BlockWeights& block, const std::vector<Vertex>& children);

// Deterministic JSON (no wall times), human text (with them), and the
// timings object for run manifests.
std::string report_to_json(const EmbedReport& report);
std::string report_to_text(const EmbedReport& report);
std::string report_timings_json(const EmbedReport& report);

}  // namespace treecube
