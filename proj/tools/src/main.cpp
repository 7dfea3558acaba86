#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "muntzlab/errors.hpp"
#include "muntzlab/serialize.hpp"

namespace {

using namespace muntzlab;
using nlohmann::json;

struct GlobalOpts {
    std::string config;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned parallel = 1;
};

// Exit contract: 0 every verdict passed, 1 some verdict failed, 2 some run
// was inconclusive (or hit an accuracy/precondition stop), 3 usage or
// config problem.
int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Pass: return 0;
        case Verdict::Fail: return 1;
        default: return 2;
    }
}

int error_exit_code(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Accuracy:
        case ErrorKind::NonConvergence:
        case ErrorKind::Precondition:
            return 2;
        default:
            return 3;
    }
}

std::optional<std::uint64_t> seed_override(const GlobalOpts& g) {
    if (g.seed_set) return g.seed;
    return std::nullopt;
}

// Data commands print their JSON body to stdout when no --out directory is
// given (summary lines then go to stderr so the body stays pipe-clean).
int emit_text(const std::string& body, const std::string& filename, const GlobalOpts& g) {
    if (g.out.empty()) {
        std::cout << body << "\n";
        return 0;
    }
    std::filesystem::create_directories(g.out);
    std::string path = (std::filesystem::path(g.out) / filename).string();
    std::ofstream out(path);
    if (!out) raise(ErrorKind::Config, "cannot write to '" + path + "'");
    out << body << "\n";
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

std::FILE* info_stream(const GlobalOpts& g) { return g.out.empty() ? stderr : stdout; }

void emit_report(const ExperimentReport& rep, const GlobalOpts& g) {
    std::string dir = g.out.empty() ? "reports" : g.out;
    std::vector<std::string> paths = write_report(rep, dir, g.format);
    std::printf("%s: %s", rep.experiment.c_str(), verdict_name(rep.verdict));
    if (!rep.note.empty()) std::printf(" (%s)", rep.note.c_str());
    std::printf("\n");
    for (const auto& p : paths) std::printf("  wrote %s\n", p.c_str());
}

std::function<ExperimentReport()> make_task(const std::string& name, json doc,
                                            const GlobalOpts& g) {
    std::optional<std::uint64_t> seed = seed_override(g);

    if (name == "thmA" || name == "thmB") {
        bool bounded_regime = name == "thmA";
        return [doc, seed, bounded_regime] {
            BlockPartition part = cli::build_partition(doc);
            Measure mu = cli::build_measure(doc);
            InterpolationConfig cfg = cli::build_interpolation(doc, part, mu);
            OperatorFn T = cli::build_operator(doc, part);
            std::size_t family = cli::experiment_size(doc, "family_size", 200);
            Tolerances tol = cli::build_tolerances(doc);
            OptimizerOptions opts = cli::build_optimizer(doc, seed);
            return bounded_regime ? run_theorem_A_check(T, cfg, family, tol, opts)
                                  : run_theorem_B_check(T, cfg, family, tol, opts);
        };
    }
    if (name == "growth-subcritical" || name == "growth-supercritical") {
        GrowthKind kind = name == "growth-subcritical" ? GrowthKind::Subcritical
                                                       : GrowthKind::Supercritical;
        return [doc, kind] {
            return run_counterexample_growth(kind, cli::build_growth(doc, kind),
                                             cli::build_n_list(doc), cli::build_tolerances(doc));
        };
    }
    if (name == "necessity") {
        return [doc, seed] {
            BlockPartition part = cli::build_partition(doc);
            Measure mu = cli::build_measure(doc);
            InterpolationConfig cfg = cli::build_interpolation(doc, part, mu);
            KernelOperator T = cli::build_kernel(doc, part);
            return run_necessity_check(T, cfg, cli::experiment_size(doc, "k_max", 32),
                                       cli::build_tolerances(doc),
                                       cli::build_optimizer(doc, seed));
        };
    }
    if (name == "embed") {
        return [doc, seed] {
            BlockPartition part = cli::build_partition(doc);
            Measure mu = cli::build_measure(doc);
            double alpha = cli::experiment_require(doc, "alpha", "embedding check");
            double beta = cli::experiment_require(doc, "beta", "embedding check");
            double p = cli::experiment_require(doc, "p", "embedding check");
            return run_embedding_corollaries(mu, part, alpha, beta, p,
                                             cli::experiment_r_list(doc),
                                             cli::build_tolerances(doc),
                                             cli::build_optimizer(doc, seed));
        };
    }
    if (name == "remark") {
        return [doc, seed] {
            BlockPartition part = cli::build_partition(doc);
            Measure mu = cli::build_measure(doc);
            InterpolationConfig cfg = cli::build_interpolation(doc, part, mu);
            OperatorFn T = cli::build_operator(doc, part);
            return run_remark_strong_limit(T, cfg,
                                           cli::experiment_size(doc, "sample_count", 100),
                                           cli::build_tolerances(doc),
                                           cli::build_optimizer(doc, seed));
        };
    }
    raise(ErrorKind::Config, "unknown experiment '" + name + "' in run list");
}

int run_seq(const json& doc, const GlobalOpts& g) {
    BlockPartition part = cli::build_partition(doc);
    std::FILE* info = info_stream(g);
    std::fprintf(info, "seq: %zu exponents in %zu blocks (max block size %zu), q=%g%s\n",
                 part.sequence().size(), part.block_count(), part.max_block_size(), part.q(),
                 part.is_lacunary() ? ", lacunary" : "");
    if (part.q_prime()) {
        SubgeometricCheck chk = check_subgeometric(part, *part.q_prime());
        if (chk.ok)
            std::fprintf(info, "seq: subgeometric for q'=%g\n", *part.q_prime());
        else
            std::fprintf(info, "seq: endpoint ratio above q'=%g at block %zu\n",
                         *part.q_prime(), *chk.first_violation);
    }
    return emit_text(to_json(part), "seq.json", g);
}

int run_norm(const json& doc, const GlobalOpts& g) {
    MuntzPolynomial f = cli::build_polynomial(doc);
    Measure mu = cli::build_measure(doc);
    double p = cli::experiment_num(doc, "p", 2.0);

    json out;
    out["p"] = p;
    out["lp_norm"] = lp_norm(f, p, mu);
    out["sup_norm"] = sup_norm(f);
    double level = cli::experiment_num(doc, "level", std::nan(""));
    if (!std::isnan(level)) {
        out["level"] = level;
        out["mass_above"] = distribution(f, mu, level);
    }
    std::fprintf(info_stream(g), "norm: ||f||_%g = %.12g, sup = %.12g\n", p,
                 out["lp_norm"].get<double>(), out["sup_norm"].get<double>());
    return emit_text(out.dump(2), "norm.json", g);
}

int run_typeconst(const json& doc, const GlobalOpts& g) {
    BlockPartition part = cli::build_partition(doc);
    Measure mu = cli::build_measure(doc);
    InterpolationConfig cfg = cli::build_interpolation(doc, part, mu);
    OperatorFn T = cli::build_operator(doc, part);

    std::string kind_str = cli::experiment_str(doc, "constant_kind", "strong");
    ConstantKind kind;
    if (kind_str == "strong")
        kind = ConstantKind::RestrictedStrong;
    else if (kind_str == "weak")
        kind = ConstantKind::RestrictedWeak;
    else
        raise(ErrorKind::Config, "'constant_kind' must be strong or weak");

    std::size_t blocks = part.block_count();
    std::size_t k_max = cli::experiment_size(doc, "k_max", blocks);
    if (blocks == 0 || k_max == 0)
        raise(ErrorKind::Config, "typeconst needs at least one block");
    IndexRange range{0, std::min(k_max, blocks) - 1};

    double s = cli::experiment_num(doc, "s", cfg.r());
    TypeConstantReport rep =
        restricted_profile(T, cfg, s, kind, range, cli::build_optimizer(doc, seed_override(g)));
    std::fprintf(info_stream(g), "typeconst: aggregate %s constant %.12g at s=%g over blocks [0,%zu]\n",
                 kind_str.c_str(), rep.aggregate, s, range.hi);
    return emit_text(to_json(rep), "typeconst.json", g);
}

int run_report_suite(const json& doc, const GlobalOpts& g) {
    std::vector<std::string> names = cli::experiment_run_list(doc);

    struct Slot {
        ExperimentReport rep;
        int code = 3;
        std::string error;
    };
    std::vector<Slot> slots(names.size());
    std::vector<std::function<ExperimentReport()>> tasks;
    tasks.reserve(names.size());
    for (const auto& n : names) tasks.push_back(make_task(n, doc, g));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                slots[i].rep = tasks[i]();
                slots[i].code = verdict_exit(slots[i].rep.verdict);
            } catch (const Error& e) {
                slots[i].code = error_exit_code(e);
                slots[i].error = e.what();
            } catch (const std::exception& e) {
                slots[i].code = 3;
                slots[i].error = e.what();
            }
        }
    };

    std::size_t n_threads = std::min<std::size_t>(std::max(1u, g.parallel), tasks.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    bool any_fail = false, any_inconclusive = false, any_config = false;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!slots[i].error.empty()) {
            std::printf("%s: error: %s\n", names[i].c_str(), slots[i].error.c_str());
        } else {
            emit_report(slots[i].rep, g);
        }
        any_fail |= slots[i].code == 1;
        any_inconclusive |= slots[i].code == 2;
        any_config |= slots[i].code == 3;
    }
    if (any_config) return 3;
    if (any_fail) return 1;
    if (any_inconclusive) return 2;
    return 0;
}

int dispatch(const std::string& cmd, const GlobalOpts& g) {
    if (g.config.empty()) {
        std::cerr << "error: --config <file> is required\n";
        return 3;
    }
    json doc = cli::load_config(g.config);

    if (cmd == "seq") return run_seq(doc, g);
    if (cmd == "norm") return run_norm(doc, g);
    if (cmd == "typeconst") return run_typeconst(doc, g);
    if (cmd == "report") return run_report_suite(doc, g);

    std::string name = cmd;
    if (cmd == "growth") {
        std::string kind = cli::experiment_str(doc, "growth_kind", "");
        if (kind != "subcritical" && kind != "supercritical")
            raise(ErrorKind::Config,
                  "growth needs 'growth_kind' in [experiment]: subcritical or supercritical");
        name = "growth-" + kind;
    }
    ExperimentReport rep = make_task(name, doc, g)();
    emit_report(rep, g);
    return verdict_exit(rep.verdict);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Muntz-space norms, operator type constants, and measure-condition checks"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--config", g.config, "JSON run description (see README for the schema)");
    auto* seed_opt = app.add_option("--seed", g.seed, "override the experiment seed");
    app.add_option("--out", g.out, "output directory (experiments default to ./reports)");
    app.add_option("--format", g.format, "experiment report format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--parallel", g.parallel, "worker threads for the report suite");

    app.add_subcommand("seq", "validate the block partition and write it out");
    app.add_subcommand("norm", "norms of a configured polynomial under the measure");
    app.add_subcommand("typeconst", "restricted strong or weak constant profile");
    app.add_subcommand("thmA", "interpolated strong bound, bounded-moment regime");
    app.add_subcommand("thmB", "interpolated strong bound, summability regime");
    app.add_subcommand("growth", "witness growth for the unbounded kernel constructions");
    app.add_subcommand("necessity", "summability necessity gate for a positive kernel");
    app.add_subcommand("embed", "identity embedding constants and measure conditions");
    app.add_subcommand("report", "run the configured experiment suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }
    g.seed_set = seed_opt->count() > 0;

    auto subs = app.get_subcommands();
    if (subs.empty()) {
        std::cout << app.help();
        return 3;
    }
    try {
        return dispatch(subs.front()->get_name(), g);
    } catch (const muntzlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return error_exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
