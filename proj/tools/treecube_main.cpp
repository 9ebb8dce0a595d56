#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "treecube/decomposition.hpp"
#include "treecube/embedder.hpp"
#include "treecube/metrics.hpp"
#include "treecube/oracle.hpp"
#include "treecube/representation.hpp"
#include "treecube/tree.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 ok, 1 input error, 2 verification failure, 3 escalation exhausted.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;
constexpr int kExitEscalation = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << bytes;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct RootFlags {
    std::string root = "center";  // center | keep | <vertex id>

    treecube::TreeOptions options() const {
        treecube::TreeOptions opts;
        if (root == "center") {
            opts.root_policy = treecube::RootPolicy::Center;
        } else if (root == "keep") {
            opts.root_policy = treecube::RootPolicy::Keep;
            opts.root = 0;
        } else {
            opts.root = static_cast<treecube::Vertex>(std::stoll(root));
        }
        return opts;
    }
};

long long parse_mode(const std::string& mode) {
    if (mode == "faithful") return 1LL << 16;
    if (mode.rfind("scaled:", 0) == 0) return std::stoll(mode.substr(7));
    throw CLI::ValidationError("--mode", "expected faithful or scaled:<power-of-two>");
}

void apply_check_flag(treecube::EmbedConfig& cfg, const std::string& check) {
    if (check == "exact") {
        cfg.force_sampled_checks = false;
    } else if (check.rfind("sampled", 0) == 0) {
        cfg.force_sampled_checks = true;
        if (auto colon = check.find(':'); colon != std::string::npos)
            cfg.sampled_pairs = std::stoll(check.substr(colon + 1));
    } else {
        throw CLI::ValidationError("--check", "expected exact or sampled[:count]");
    }
}

void write_manifest(const std::string& out_path, const std::vector<std::string>& command,
                    const nlohmann::json& config, const std::string& input_path,
                    const std::string& input_bytes, std::uint64_t seed,
                    const nlohmann::json& timings, const std::vector<std::string>& outputs) {
    nlohmann::json doc;
    doc["command"] = command;
    doc["config"] = config;
    if (!input_path.empty())
        doc["input"] = {{"path", input_path}, {"digest", "fnv1a:" + fnv1a_hex(input_bytes)}};
    doc["seed"] = seed;
    doc["version"] = kVersion;
    doc["timings_ms"] = timings;
    doc["outputs"] = outputs;
    write_file(out_path, doc.dump(2) + "\n");
}

nlohmann::json bounds_to_json(const treecube::BoundsReport& b) {
    nlohmann::json doc;
    doc["rho"] = b.rho.value;
    doc["rho_exact"] = b.rho.exact;
    doc["rho_witness"] = {{"vertex", b.rho.witness_vertex},
                          {"radius", b.rho.witness_radius},
                          {"ball", b.rho.witness_ball}};
    doc["lb_rho"] = b.lb_rho;
    doc["lb_structural"] = b.lb_structural;
    doc["lb_lemma2"] = b.lb_lemma2;
    doc["lb_final"] = b.lb_final;
    doc["alpha"] = b.alpha;
    doc["diameter"] = b.diameter;
    doc["t"] = b.t;
    return doc;
}

std::string bounds_to_text(const treecube::BoundsReport& b) {
    std::ostringstream out;
    out << "rho = " << b.rho.value << (b.rho.exact ? " (exact)" : " (sampled)")
        << "  witness: v=" << b.rho.witness_vertex << " r=" << b.rho.witness_radius
        << " |B|=" << b.rho.witness_ball << '\n';
    out << "lower bounds: ceil(rho)=" << b.lb_rho << "  structural=" << b.lb_structural
        << "  lemma2=" << b.lb_lemma2 << "  => lb=" << b.lb_final << '\n';
    out << "alpha=" << b.alpha << "  diameter=" << b.diameter << "  budget t=" << b.t << '\n';
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unit-cube intersection representations of trees"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    std::vector<std::string> raw_args(argv, argv + argc);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a tree file");
    std::string gen_kind;
    std::vector<long long> gen_params;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("kind", gen_kind,
                    "path|star|caterpillar|broom|complete_kary|random_pruefer")
        ->required();
    gen->add_option("params", gen_params, "size parameters (see README)")->expected(1, 2);
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // ---- bound ----
    auto* bound = app.add_subcommand("bound", "lower bounds and dimension budget");
    std::string bound_tree;
    std::string bound_format = "text";
    std::string bound_rho = "exact";
    RootFlags bound_root;
    bound->add_option("tree", bound_tree, "tree file")->required();
    bound->add_option("--format", bound_format, "text|json");
    bound->add_option("--rho", bound_rho, "exact|sampled:<centers>");
    bound->add_option("--root", bound_root.root, "center|keep|<vertex>");

    // ---- embed ----
    auto* embed = app.add_subcommand("embed", "construct a cube representation");
    std::string embed_tree_path;
    std::string embed_mode = "faithful";
    std::uint64_t embed_seed = 0;
    long long embed_t = 0;
    bool embed_trim = false;
    std::string embed_check = "exact";
    std::string embed_out, embed_report_path, embed_csv;
    std::string embed_format = "text";
    RootFlags embed_root;
    embed->add_option("tree", embed_tree_path, "tree file")->required();
    embed->add_option("--mode", embed_mode, "faithful|scaled:<H>");
    embed->add_option("--seed", embed_seed, "RNG seed");
    embed->add_option("--t", embed_t, "override the per-block dimension budget");
    embed->add_flag("--trim", embed_trim, "greedily drop removable coordinates");
    embed->add_option("--check", embed_check, "exact|sampled[:count]");
    embed->add_option("--out", embed_out, "representation JSON path");
    embed->add_option("--report", embed_report_path, "report JSON path");
    embed->add_option("--csv", embed_csv, "centers CSV path");
    embed->add_option("--format", embed_format, "text|json (stdout report)");
    embed->add_option("--root", embed_root.root, "center|keep|<vertex>");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check a representation against a tree");
    std::string verify_tree, verify_rep;
    bool verify_naive_flag = false;
    RootFlags verify_root;
    verify->add_option("tree", verify_tree, "tree file")->required();
    verify->add_option("representation", verify_rep, "representation JSON")->required();
    verify->add_flag("--naive", verify_naive_flag, "force the all-pairs verifier");
    verify->add_option("--root", verify_root.root, "center|keep|<vertex>");

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "exact cubicity of a tiny graph (n <= 8)");
    std::string oracle_graph;
    int oracle_max_n = 7;
    double oracle_timeout = 0;
    oracle->add_option("graph", oracle_graph, "edge-list file")->required();
    oracle->add_option("--max-n", oracle_max_n, "raise the size cap (at most 8)");
    oracle->add_option("--timeout", oracle_timeout, "seconds; 0 = unlimited");

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "embed every .tree file in a directory");
    std::string bench_dir, bench_out, bench_mode = "faithful";
    std::uint64_t bench_seed = 0;
    std::string bench_check = "exact";
    RootFlags bench_root;
    bench->add_option("corpus", bench_dir, "directory of .tree files")->required();
    bench->add_option("--out", bench_out, "CSV output path (default stdout)");
    bench->add_option("--mode", bench_mode, "faithful|scaled:<H>");
    bench->add_option("--seed", bench_seed, "RNG seed");
    bench->add_option("--check", bench_check, "exact|sampled[:count]");
    bench->add_option("--root", bench_root.root, "center|keep|<vertex>");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            treecube::GenParams params;
            if (!gen_params.empty()) params.a = gen_params[0];
            if (gen_params.size() > 1) params.b = gen_params[1];
            const auto kind = treecube::parse_tree_kind(gen_kind);
            const auto tree = treecube::generate(kind, params, gen_seed);
            const std::string bytes = treecube::format_tree(tree);
            if (gen_out.empty()) {
                std::cout << bytes;
            } else {
                write_file(gen_out, bytes);
                write_manifest(gen_out + ".manifest.json", raw_args,
                               {{"kind", gen_kind}, {"a", params.a}, {"b", params.b}}, "", "",
                               gen_seed, nlohmann::json::object(), {gen_out});
            }
            return kExitOk;
        }

        if (*bound) {
            const std::string bytes = read_file(bound_tree);
            const auto tree = treecube::parse_tree(bytes, bound_root.options());
            treecube::RhoMode mode;
            if (bound_rho.rfind("sampled", 0) == 0) {
                mode.sampled = true;
                if (auto colon = bound_rho.find(':'); colon != std::string::npos)
                    mode.samples = static_cast<int>(std::stoll(bound_rho.substr(colon + 1)));
            }
            const auto report = treecube::cubicity_lower_bound(tree, mode);
            if (bound_format == "json")
                std::cout << bounds_to_json(report).dump() << '\n';
            else
                std::cout << bounds_to_text(report);
            return kExitOk;
        }

        if (*embed) {
            const std::string bytes = read_file(embed_tree_path);
            const auto tree = treecube::parse_tree(bytes, embed_root.options());
            treecube::EmbedConfig cfg;
            cfg.h_base = parse_mode(embed_mode);
            cfg.seed = embed_seed;
            cfg.trim = embed_trim;
            if (embed_t > 0) cfg.t_override = static_cast<int>(embed_t);
            apply_check_flag(cfg, embed_check);
            const auto result = treecube::embed_tree(tree, cfg);

            if (embed_format == "json")
                std::cout << treecube::report_to_json(result.report) << '\n';
            else if (embed_format == "csv" && result.representation)
                std::cout << treecube::centers_to_csv(*result.representation);
            else
                std::cout << treecube::report_to_text(result.report);

            std::vector<std::string> outputs;
            if (result.representation) {
                if (!embed_out.empty()) {
                    write_file(embed_out,
                               treecube::representation_to_json(*result.representation) + "\n");
                    outputs.push_back(embed_out);
                }
                if (!embed_csv.empty()) {
                    write_file(embed_csv, treecube::centers_to_csv(*result.representation));
                    outputs.push_back(embed_csv);
                }
            }
            if (!embed_report_path.empty()) {
                write_file(embed_report_path, treecube::report_to_json(result.report) + "\n");
                outputs.push_back(embed_report_path);
            }
            if (!embed_out.empty()) {
                write_manifest(
                    embed_out + ".manifest.json", raw_args,
                    {{"mode", embed_mode}, {"check", embed_check}, {"trim", embed_trim}},
                    embed_tree_path, bytes, embed_seed,
                    nlohmann::json::parse(treecube::report_timings_json(result.report)), outputs);
            }
            if (!result.report.success) {
                std::cerr << "embedding failed: " << result.report.result << '\n';
                return result.report.result == "escalation-exhausted" ? kExitEscalation
                                                                      : kExitViolation;
            }
            return kExitOk;
        }

        if (*verify) {
            const auto tree = treecube::parse_tree(read_file(verify_tree), verify_root.options());
            const auto rep = treecube::load_representation(verify_rep);
            const auto viol = verify_naive_flag ? treecube::verify_naive(tree, rep)
                                                : treecube::verify_spatial(tree, rep);
            if (viol) {
                std::cout << viol->describe() << '\n';
                return kExitViolation;
            }
            std::cout << "ok: " << rep.n << " vertices, dim " << rep.dim << '\n';
            return kExitOk;
        }

        if (*oracle) {
            const auto g = treecube::SmallGraph::parse(read_file(oracle_graph));
            treecube::OracleOptions opts;
            opts.max_n = oracle_max_n;
            opts.timeout_seconds = oracle_timeout;
            std::cout << treecube::exact_cubicity(g, opts) << '\n';
            return kExitOk;
        }

        if (*bench) {
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(bench_dir))
                if (entry.path().extension() == ".tree") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            treecube::EmbedConfig cfg;
            cfg.h_base = parse_mode(bench_mode);
            cfg.seed = bench_seed;
            apply_check_flag(cfg, bench_check);

            std::ostringstream csv;
            csv << "file,n,h,rho,lb,t,dim,retries,ratio,ms\n";
            for (const auto& path : files) {
                const auto tree = treecube::parse_tree(read_file(path.string()),
                                                       bench_root.options());
                const auto result = treecube::embed_tree(tree, cfg);
                const auto& r = result.report;
                csv << path.filename().string() << ',' << r.n << ',' << r.height << ',' << r.rho
                    << ',' << r.lb_final << ',' << r.t << ',' << r.dim << ',' << r.mean_draws
                    << ',' << r.ratio << ',' << r.ms_total << '\n';
                if (!r.success) {
                    std::cerr << path << ": " << r.result << '\n';
                    return r.result == "escalation-exhausted" ? kExitEscalation : kExitViolation;
                }
            }
            if (bench_out.empty())
                std::cout << csv.str();
            else
                write_file(bench_out, csv.str());
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
