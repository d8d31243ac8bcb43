#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "compactor/compactorfile.hpp"
#include "compactor/corpus.hpp"
#include "compactor/errors.hpp"
#include "compactor/oracle.hpp"

namespace {

using namespace compactor;

constexpr int kExitUsage = 64;
constexpr int kExitUnsupported = 65;
constexpr int kExitStalled = 70;

struct Config {
    std::string problem = "vc";
    int k = 0;
    int t = 0;
    int r = 4;
    int b = 8;
    int d = 5;
    int c = 4;
    uint64_t seed = 1;
    int verbosity = 0;
    std::string modulator_file;
    std::string strategy = "auto";  // auto | regions
};

struct LoadedGraph {
    Graph graph;
    std::vector<std::string> names;

    std::string name_of(vertex_t v) const { return names[static_cast<size_t>(v)]; }
    std::string render(const vset& s) const {
        std::string out;
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) out += ' ';
            out += name_of(s[i]);
        }
        return out;
    }
};

LoadedGraph load_graph(const std::string& path) {
    LoadedGraph lg;
    if (path == "-") {
        lg.graph = parse_edge_list(std::cin, &lg.names);
        return lg;
    }
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open '" + path + "'");
    lg.graph = parse_edge_list(in, &lg.names);
    return lg;
}

PipelineOptions pipeline_options(const Config& cfg, const LoadedGraph& lg) {
    PipelineOptions opt;
    opt.t = cfg.t;
    opt.r = cfg.r;
    opt.mod.b = cfg.b;
    opt.mod.d = cfg.d;
    opt.mod.c = cfg.c;
    opt.mod.force_region_search = cfg.strategy == "regions";
    if (!cfg.modulator_file.empty()) {
        std::ifstream in(cfg.modulator_file);
        if (!in) throw domain_error("cannot open '" + cfg.modulator_file + "'");
        vset mod;
        std::string name;
        while (in >> name) {
            auto it = std::find(lg.names.begin(), lg.names.end(), name);
            if (it == lg.names.end())
                throw domain_error("modulator vertex '" + name + "' is not in the graph");
            mod.push_back(static_cast<vertex_t>(it - lg.names.begin()));
        }
        opt.external_modulator = vs::make(std::move(mod));
    }
    return opt;
}

const ProblemAlgebra& algebra_for(const Config& cfg) {
    const ProblemAlgebra* alg = algebra_by_name(cfg.problem);
    if (!alg) throw domain_error("unknown problem '" + cfg.problem + "'");
    return *alg;
}

void print_report(const CondenseReport& rep, double seconds) {
    std::cerr << "protrusions=" << rep.protrusion_count << " alpha=" << rep.alpha
              << " beta=" << rep.beta << " gamma=" << rep.gamma
              << " max_states=" << rep.max_states_per_protrusion
              << " stored_values=" << rep.stored_values
              << " modulator_size=" << rep.pipeline.modulator.size()
              << " fallback=" << (rep.pipeline.modulator_fallback ? 1 : 0)
              << " decomposition_valid=" << (rep.pd_report.ok ? 1 : 0) << " wall_s=" << seconds
              << "\n";
}

int run_count(const Config& cfg, const std::string& path, bool oracle_mode) {
    LoadedGraph lg = load_graph(path);
    const ProblemAlgebra& alg = algebra_for(cfg);
    auto start = std::chrono::steady_clock::now();
    BigUInt result;
    if (oracle_mode) {
        result = oracle::brute_count(lg.graph, cfg.k, alg);
    } else {
        CompactorFile f;
        CondenseReport rep;
        f = condense(lg.graph, cfg.k, alg, pipeline_options(cfg, lg), &rep);
        result = extract(f);
        if (cfg.verbosity > 0) {
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            print_report(rep, secs);
        }
    }
    std::cout << result.to_decimal() << "\n";
    return 0;
}

int run_condense(const Config& cfg, const std::string& path) {
    LoadedGraph lg = load_graph(path);
    const ProblemAlgebra& alg = algebra_for(cfg);
    auto start = std::chrono::steady_clock::now();
    CondenseReport rep;
    CompactorFile f = condense(lg.graph, cfg.k, alg, pipeline_options(cfg, lg), &rep);
    if (cfg.verbosity > 0) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        print_report(rep, secs);
    }
    std::cout << serialize(f);
    return 0;
}

int run_extract(const std::string& path) {
    std::ostringstream acc;
    if (path == "-") {
        acc << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw domain_error("cannot open '" + path + "'");
        acc << in.rdbuf();
    }
    std::cout << extract(deserialize(acc.str())).to_decimal() << "\n";
    return 0;
}

int run_decompose(const Config& cfg, const std::string& path) {
    LoadedGraph lg = load_graph(path);
    const ProblemAlgebra& alg = algebra_for(cfg);
    auto outcome = full_pipeline_decomposition(lg.graph, cfg.k, alg, pipeline_options(cfg, lg));
    if (std::holds_alternative<NullReport>(outcome)) {
        std::cout << "NULL\n";
        return 0;
    }
    const auto& pd = std::get<ProtrusionDecomposition>(outcome);
    std::cout << "CENTER " << lg.render(pd.center) << "\n";
    for (size_t i = 0; i < pd.protrusions.size(); ++i) {
        const auto& prot = pd.protrusions[i];
        std::cout << "PROTRUSION " << (i + 1) << " boundary: " << lg.render(prot.boundary)
                  << " interior: " << lg.render(vs::subtract(prot.graph.vertices(), prot.boundary))
                  << "\n";
    }
    for (size_t i = 0; i < pd.decompositions.size(); ++i) {
        const auto& dec = pd.decompositions[i];
        std::cout << "DECOMPOSITION " << (i + 1) << " width " << width(dec) << "\n";
        for (size_t q = 0; q < dec.bags.size(); ++q) {
            std::cout << "  node " << q;
            if (dec.root && static_cast<size_t>(*dec.root) == q) std::cout << " (root)";
            std::cout << ": " << lg.render(dec.bags[q]) << "\n";
        }
    }
    PdReport rep = validate_protrusion_decomposition(lg.graph, pd);
    std::cout << "VALID " << (rep.ok ? "yes" : "no") << " alpha=" << pd.alpha
              << " beta=" << pd.beta << " gamma=" << pd.gamma
              << " max_width=" << rep.max_rooted_width << "\n";
    return 0;
}

int run_modulator(const Config& cfg, const std::string& path) {
    LoadedGraph lg = load_graph(path);
    ModulatorOptions opt;
    opt.b = cfg.b;
    opt.d = cfg.d;
    opt.c = cfg.c;
    opt.force_region_search = cfg.strategy == "regions";
    ModulatorResult mr = approx_modulator(lg.graph, cfg.k, cfg.t, opt);
    if (mr.kind == ModulatorResult::Kind::NoSmallModulator) {
        std::cout << "NO-SMALL-MODULATOR\n";
        return 0;
    }
    std::cout << lg.render(mr.modulator) << "\n";
    if (cfg.verbosity > 0)
        std::cerr << "size=" << mr.modulator.size() << " iterations=" << mr.iterations
                  << " replacements=" << mr.replacements
                  << " region_search=" << (mr.region_search_used ? 1 : 0) << "\n";
    return 0;
}

int run_selftest(uint64_t seed, int max_n, int samples) {
    SplitMix64 rng(seed);
    int failures = 0;
    auto corpus = acceptance_corpus(seed, samples, max_n);
    PipelineOptions opt;
    for (size_t i = 0; i < corpus.size(); ++i) {
        const Graph& g = corpus[i];
        for (int k = 0; k <= 3; ++k)
            for (const auto* alg : {&vc_algebra(), &is_algebra()}) {
                BigUInt got = count_end_to_end(g, k, *alg, opt);
                BigUInt want = oracle::brute_count(g, k, *alg);
                if (got != want) {
                    ++failures;
                    std::cout << "FAIL count " << alg->name() << " graph#" << i << " k=" << k
                              << " got " << got.to_decimal() << " want " << want.to_decimal()
                              << "\n";
                }
            }
    }
    for (int i = 0; i < samples; ++i) {
        BGraph bg = random_bgraph(std::min(10, max_n), 3, rng);
        for (const auto* alg : {&vc_algebra(), &is_algebra(), &ds_algebra()}) {
            auto nd = make_nice(decompose_containing(bg.graph, bg.boundary), bg.graph, bg.boundary);
            int k = bg.graph.n();
            CountTable got = count_table(bg, nd, *alg, k);
            CountTable want = oracle::brute_state_table(bg, *alg, k);
            if (got.counts != want.counts) {
                ++failures;
                std::cout << "FAIL table " << alg->name() << " sample#" << i << "\n";
            }
        }
    }
    if (failures == 0) {
        std::cout << "selftest OK\n";
        return 0;
    }
    std::cout << "selftest: " << failures << " failures\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"counting vertex sets on sparse graphs via protrusion condensation"};
    app.require_subcommand(1);

    Config cfg;
    std::string graph_path = "-";
    std::string file_path = "-";

    auto add_common = [&cfg](CLI::App* sub, bool with_k = true) {
        sub->add_option("--problem", cfg.problem, "vc | is | ds");
        if (with_k) sub->add_option("-k,--k", cfg.k, "solution size")->required();
        sub->add_option("--t", cfg.t, "treewidth bound of the modulator target");
        sub->add_option("--r", cfg.r, "neighborhood cut threshold");
        sub->add_option("--b", cfg.b, "region size parameter");
        sub->add_option("--d", cfg.d, "region boundary bound");
        sub->add_option("--c", cfg.c, "modulator budget multiplier");
        sub->add_option("--seed", cfg.seed, "random seed for generators");
        sub->add_option("--modulator-file", cfg.modulator_file,
                        "file with vertex names of an externally supplied modulator");
        sub->add_option("--strategy", cfg.strategy, "auto | regions")
            ->check(CLI::IsMember({"auto", "regions"}));
        sub->add_flag("-v,--verbose", cfg.verbosity, "report measured statistics");
    };

    auto* count = app.add_subcommand("count", "condense then extract; prints the exact count");
    add_common(count);
    count->add_option("graph", graph_path, "edge-list file ('-' for stdin)");

    auto* cond = app.add_subcommand("condense", "write the compactor file to stdout");
    add_common(cond);
    cond->add_option("graph", graph_path, "edge-list file ('-' for stdin)");

    auto* extr = app.add_subcommand("extract", "recover the count from a compactor file");
    extr->add_option("file", file_path, "compactor file ('-' for stdin)");

    auto* orac = app.add_subcommand("oracle", "brute-force count for minting expected values");
    add_common(orac);
    orac->add_option("graph", graph_path, "edge-list file ('-' for stdin)");

    auto* deco = app.add_subcommand("decompose", "print the protrusion decomposition");
    add_common(deco);
    deco->add_option("graph", graph_path, "edge-list file ('-' for stdin)");

    auto* modu = app.add_subcommand("modulator", "print an approximate treewidth modulator");
    add_common(modu);
    modu->add_option("graph", graph_path, "edge-list file ('-' for stdin)");

    int max_n = 12, samples = 35;
    auto* self = app.add_subcommand("selftest", "oracle-equivalence suite on built-in corpora");
    self->add_option("--max-n", max_n, "largest graph size");
    self->add_option("--samples", samples, "graphs per family");
    self->add_option("--seed", cfg.seed, "corpus seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (count->parsed()) return run_count(cfg, graph_path, false);
        if (cond->parsed()) return run_condense(cfg, graph_path);
        if (extr->parsed()) return run_extract(file_path);
        if (orac->parsed()) return run_count(cfg, graph_path, true);
        if (deco->parsed()) return run_decompose(cfg, graph_path);
        if (modu->parsed()) return run_modulator(cfg, graph_path);
        if (self->parsed()) return run_selftest(cfg.seed, max_n, samples);
    } catch (const unsupported_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const stalled_error& e) {
        std::cerr << "stalled: " << e.what() << "\n";
        return kExitStalled;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
