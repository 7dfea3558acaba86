#include "config.hpp"

#include <fstream>
#include <utility>

#include "muntzlab/errors.hpp"
#include "muntzlab/operators.hpp"

namespace muntzlab::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) { raise(ErrorKind::Config, message); }

const json& section(const json& doc, const char* name) {
    static const json empty = json::object();
    auto it = doc.find(name);
    if (it == doc.end()) return empty;
    if (!it->is_object()) bad(std::string("section '") + name + "' must be an object");
    return *it;
}

double num_or(const json& sec, const char* key, double def) {
    auto it = sec.find(key);
    if (it == sec.end()) return def;
    if (!it->is_number()) bad(std::string("'") + key + "' must be a number");
    return it->get<double>();
}

double require_num(const json& sec, const char* key, const char* ctx) {
    auto it = sec.find(key);
    if (it == sec.end() || !it->is_number())
        bad(std::string(ctx) + " needs a numeric '" + key + "'");
    return it->get<double>();
}

std::size_t size_or(const json& sec, const char* key, std::size_t def) {
    auto it = sec.find(key);
    if (it == sec.end()) return def;
    if (!it->is_number_integer() || it->get<long long>() < 0)
        bad(std::string("'") + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(it->get<long long>());
}

std::string str_or(const json& sec, const char* key, const std::string& def) {
    auto it = sec.find(key);
    if (it == sec.end()) return def;
    if (!it->is_string()) bad(std::string("'") + key + "' must be a string");
    return it->get<std::string>();
}

std::vector<double> number_list(const json& sec, const char* key, const char* ctx) {
    auto it = sec.find(key);
    if (it == sec.end() || !it->is_array())
        bad(std::string(ctx) + " needs an array '" + key + "'");
    std::vector<double> out;
    out.reserve(it->size());
    for (const auto& v : *it) {
        if (!v.is_number()) bad(std::string("'") + key + "' entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        bad("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) bad("config root must be a JSON object");
    if (doc.contains("schema_version")) {
        const auto& v = doc["schema_version"];
        if (!v.is_number_integer() || v.get<long long>() != 1)
            bad("unsupported schema_version; this build reads version 1");
    }
    return doc;
}

BlockPartition build_partition(const json& doc) {
    const json& s = section(doc, "sequence");
    if (s.empty()) bad("config needs a [sequence] section");

    std::string kind = str_or(s, "kind", "geometric");
    std::optional<ExponentSequence> seq;
    double default_q = 0.0;
    if (kind == "geometric") {
        double lambda0 = num_or(s, "lambda0", 2.0);
        double ratio = num_or(s, "ratio", 2.0);
        std::size_t count = size_or(s, "count", 20);
        seq.emplace(ExponentSequence::geometric(lambda0, ratio, count));
        if (ratio > 1.0) default_q = 0.5 * (1.0 + ratio);
    } else if (kind == "explicit") {
        seq.emplace(number_list(s, "values", "explicit sequence"));
    } else {
        bad("unknown sequence kind '" + kind + "' (expected geometric or explicit)");
    }

    std::vector<std::size_t> sizes;
    if (s.contains("block_sizes")) {
        const auto& arr = s["block_sizes"];
        if (!arr.is_array()) bad("'block_sizes' must be an array of positive integers");
        for (const auto& v : arr) {
            if (!v.is_number_integer() || v.get<long long>() <= 0)
                bad("'block_sizes' entries must be positive integers");
            sizes.push_back(static_cast<std::size_t>(v.get<long long>()));
        }
    } else {
        sizes.assign(seq->size(), 1);
    }

    double q = num_or(s, "q", default_q);
    if (!(q > 1.0)) bad("sequence needs 'q' > 1 (explicit sequences have no default)");
    std::optional<double> q_prime;
    if (s.contains("q_prime")) q_prime = require_num(s, "q_prime", "sequence");

    return BlockPartition(*seq, sizes, q, q_prime);
}

Measure build_measure(const json& doc) {
    const json& m = section(doc, "measure");
    if (m.empty()) bad("config needs a [measure] section");

    std::string kind = str_or(m, "kind", "jacobi");
    std::optional<Measure> mu;
    if (kind == "jacobi") {
        mu = Measure::jacobi(require_num(m, "gamma", "jacobi measure"));
    } else if (kind == "lebesgue") {
        mu = Measure::lebesgue();
    } else if (kind == "zero") {
        mu = Measure::zero();
    } else if (kind == "atomic") {
        mu = Measure::zero();
    } else {
        bad("unknown measure kind '" + kind +
            "' (expected jacobi, lebesgue, atomic, or zero)");
    }

    if (m.contains("atoms")) {
        const auto& arr = m["atoms"];
        if (!arr.is_array()) bad("'atoms' must be an array of {location, mass} objects");
        for (const auto& a : arr) {
            if (!a.is_object()) bad("'atoms' entries must be objects");
            double loc = require_num(a, "location", "atom");
            double mass = require_num(a, "mass", "atom");
            mu = mu->with_atom(loc, mass);
        }
    } else if (kind == "atomic") {
        bad("atomic measure needs an 'atoms' array");
    }
    return *mu;
}

bool operator_is_dilation(const json& doc) {
    return str_or(section(doc, "operator"), "kind", "identity") == "dilation";
}

KernelOperator build_kernel(const json& doc, const BlockPartition& part) {
    const json& o = section(doc, "operator");
    std::string kind = str_or(o, "kind", "identity");
    const ExponentSequence& seq = part.sequence();

    if (kind == "identity") return identity_kernel(seq);
    if (kind == "zero") return diagonal_kernel(seq, std::vector<double>(seq.size(), 0.0));
    if (kind == "diagonal") {
        std::vector<double> diag = number_list(o, "diag", "diagonal operator");
        if (diag.size() != seq.size())
            bad("'diag' length must match the sequence length");
        return diagonal_kernel(seq, diag);
    }
    if (kind == "profile_diagonal") {
        return make_profile_diagonal(part, number_list(o, "eps", "profile diagonal"),
                                     require_num(o, "r", "profile diagonal"),
                                     require_num(o, "alpha", "profile diagonal"),
                                     require_num(o, "beta", "profile diagonal"),
                                     require_num(o, "gamma", "profile diagonal"));
    }
    if (kind == "subcritical") {
        return make_counterexample_subcritical(part, require_num(o, "r", "subcritical kernel"),
                                               require_num(o, "alpha", "subcritical kernel"),
                                               require_num(o, "beta", "subcritical kernel"),
                                               require_num(o, "gamma", "subcritical kernel"),
                                               require_num(o, "eps", "subcritical kernel"));
    }
    if (kind == "supercritical") {
        return make_counterexample_supercritical(
            part, require_num(o, "r", "supercritical kernel"),
            require_num(o, "alpha", "supercritical kernel"),
            require_num(o, "beta", "supercritical kernel"),
            require_num(o, "gamma", "supercritical kernel"),
            require_num(o, "eps", "supercritical kernel"),
            require_num(o, "eta", "supercritical kernel"));
    }
    if (kind == "summable_kernel") {
        std::vector<double> eps;
        if (o.contains("eps")) eps = number_list(o, "eps", "summable kernel");
        return make_example_supercritical(part, require_num(o, "p", "summable kernel"),
                                          require_num(o, "beta", "summable kernel"),
                                          require_num(o, "gamma", "summable kernel"), eps,
                                          num_or(o, "truncation_tol", 1e-12));
    }
    if (kind == "dilation")
        bad("dilation operators have no kernel form; this command needs a kernel kind");
    bad("unknown operator kind '" + kind + "'");
}

OperatorFn build_operator(const json& doc, const BlockPartition& part) {
    const json& o = section(doc, "operator");
    if (str_or(o, "kind", "identity") != "dilation") return as_operator(build_kernel(doc, part));

    if (o.contains("weights") || o.contains("scales")) {
        DilationExample ex = make_dilation_example(number_list(o, "weights", "dilation operator"),
                                                   number_list(o, "scales", "dilation operator"),
                                                   num_or(o, "gamma", 1.0), num_or(o, "p", 2.0));
        return as_operator(ex.op);
    }
    DilationExample ex = make_dilation_example(num_or(o, "gamma", 1.0), num_or(o, "p", 2.0),
                                               size_or(o, "count", 20));
    return as_operator(ex.op);
}

InterpolationConfig build_interpolation(const json& doc, BlockPartition part, Measure mu) {
    const json& e = section(doc, "experiment");
    return InterpolationConfig(std::move(part), require_num(e, "p", "interpolation"),
                               require_num(e, "q", "interpolation"),
                               require_num(e, "r", "interpolation"),
                               require_num(e, "alpha", "interpolation"),
                               require_num(e, "beta", "interpolation"), std::move(mu));
}

Tolerances build_tolerances(const json& doc) {
    const json& e = section(doc, "experiment");
    Tolerances tol;
    if (!e.contains("tolerances")) return tol;
    const json& t = e["tolerances"];
    if (!t.is_object()) bad("'tolerances' must be an object");
    tol.slope = num_or(t, "slope", tol.slope);
    tol.trend_factor = num_or(t, "trend_factor", tol.trend_factor);
    tol.slack_drift = num_or(t, "slack_drift", tol.slack_drift);
    tol.r_squared_min = num_or(t, "r_squared_min", tol.r_squared_min);
    return tol;
}

OptimizerOptions build_optimizer(const json& doc, std::optional<std::uint64_t> seed_override) {
    const json& e = section(doc, "experiment");
    OptimizerOptions opts;
    if (e.contains("optimizer")) {
        const json& o = e["optimizer"];
        if (!o.is_object()) bad("'optimizer' must be an object");
        opts.restarts = size_or(o, "restarts", opts.restarts);
        opts.samples = size_or(o, "samples", opts.samples);
        opts.max_iterations = size_or(o, "max_iterations", opts.max_iterations);
        opts.fd_step = num_or(o, "fd_step", opts.fd_step);
        opts.improvement_tol = num_or(o, "improvement_tol", opts.improvement_tol);
        opts.agreement_tol = num_or(o, "agreement_tol", opts.agreement_tol);
        opts.level_octaves = size_or(o, "level_octaves", opts.level_octaves);
        opts.seed = size_or(o, "seed", opts.seed);
    }
    if (seed_override) opts.seed = *seed_override;
    return opts;
}

GrowthParams build_growth(const json& doc, GrowthKind kind) {
    GrowthParams gp;
    if (kind == GrowthKind::Supercritical) {
        gp.beta = 0.5;
        gp.eps = 0.1;
    }
    const json& e = section(doc, "experiment");
    if (!e.contains("growth")) return gp;
    const json& g = e["growth"];
    if (!g.is_object()) bad("'growth' must be an object");
    gp.r = num_or(g, "r", gp.r);
    gp.alpha = num_or(g, "alpha", gp.alpha);
    gp.beta = num_or(g, "beta", gp.beta);
    gp.gamma = num_or(g, "gamma", gp.gamma);
    gp.eps = num_or(g, "eps", gp.eps);
    gp.eta = num_or(g, "eta", gp.eta);
    gp.lambda0 = num_or(g, "lambda0", gp.lambda0);
    gp.ratio = num_or(g, "ratio", gp.ratio);
    return gp;
}

std::vector<std::size_t> build_n_list(const json& doc) {
    const json& e = section(doc, "experiment");
    if (!e.contains("n_list")) return {8, 16, 32, 64, 128};
    const auto& arr = e["n_list"];
    if (!arr.is_array()) bad("'n_list' must be an array of positive integers");
    std::vector<std::size_t> out;
    for (const auto& v : arr) {
        if (!v.is_number_integer() || v.get<long long>() <= 0)
            bad("'n_list' entries must be positive integers");
        out.push_back(static_cast<std::size_t>(v.get<long long>()));
    }
    return out;
}

MuntzPolynomial build_polynomial(const json& doc) {
    const json& e = section(doc, "experiment");
    auto it = e.find("polynomial");
    if (it == e.end() || !it->is_array())
        bad("this command needs 'polynomial' in [experiment]: an array of [exponent, coeff] pairs");
    std::vector<MuntzPolynomial::Term> terms;
    for (const auto& pair : *it) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            bad("'polynomial' entries must be [exponent, coeff] number pairs");
        terms.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return MuntzPolynomial(terms);
}

double experiment_num(const json& doc, const char* key, double def) {
    return num_or(section(doc, "experiment"), key, def);
}

double experiment_require(const json& doc, const char* key, const char* ctx) {
    return require_num(section(doc, "experiment"), key, ctx);
}

std::size_t experiment_size(const json& doc, const char* key, std::size_t def) {
    return size_or(section(doc, "experiment"), key, def);
}

std::string experiment_str(const json& doc, const char* key, const std::string& def) {
    return str_or(section(doc, "experiment"), key, def);
}

std::vector<double> experiment_r_list(const json& doc) {
    const json& e = section(doc, "experiment");
    if (!e.contains("r_list")) return {require_num(e, "r", "embedding check")};
    return number_list(e, "r_list", "embedding check");
}

std::vector<std::string> experiment_run_list(const json& doc) {
    const json& e = section(doc, "experiment");
    auto it = e.find("run");
    if (it == e.end()) {
        double beta = require_num(e, "beta", "report suite");
        if (beta >= 1.0) return {"thmA", "growth-subcritical", "remark"};
        return {"thmB", "growth-supercritical", "necessity"};
    }
    if (!it->is_array()) bad("'run' must be an array of experiment names");
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string()) bad("'run' entries must be strings");
        out.push_back(v.get<std::string>());
    }
    if (out.empty()) bad("'run' must name at least one experiment");
    return out;
}

}  // namespace muntzlab::cli
