#include "muntzlab/serialize.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "muntzlab/errors.hpp"

namespace muntzlab {

namespace {

using nlohmann::json;

// Shortest round-trip decimal rendering, used for CSV cells.
std::string shortest(double v) {
    char buf[40];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

json measure_json(const Measure& mu) {
    json atoms = json::array();
    for (const Measure::Atom& a : mu.atoms()) {
        atoms.push_back({{"location", a.location}, {"mass", a.mass}});
    }
    json continuous;
    if (mu.jacobi_gamma().has_value()) {
        continuous = {{"kind", "jacobi"}, {"gamma", *mu.jacobi_gamma()}};
    } else if (mu.has_continuous_part()) {
        continuous = {{"kind", "density"}, {"eta", mu.singularity_exponent()}};
    }
    if (mu.atoms().empty()) {
        if (continuous.is_null()) return {{"kind", "zero"}};
        return continuous;
    }
    if (continuous.is_null()) return {{"kind", "atomic"}, {"atoms", atoms}};
    return {{"kind", "mixture"}, {"continuous", continuous}, {"atoms", atoms}};
}

json polynomial_json(const MuntzPolynomial& f) {
    json terms = json::array();
    for (const MuntzPolynomial::Term& t : f.terms()) {
        terms.push_back(json::array({t.lambda, t.coeff}));
    }
    return terms;
}

json table_json(const Table& t) {
    json rows = json::array();
    for (const std::vector<double>& r : t.rows) rows.push_back(r);
    return {{"columns", t.columns}, {"rows", rows}};
}

const char* kind_name(ConstantKind kind) {
    switch (kind) {
        case ConstantKind::RestrictedStrong: return "restricted-strong";
        case ConstantKind::RestrictedWeak: return "restricted-weak";
        default: return "global-strong-lower";
    }
}

}  // namespace

std::string to_json(const ExperimentReport& rep, bool include_wall_clock) {
    json params = json::object();
    for (const NamedValue& p : rep.params) params[p.name] = p.value;
    json fits = json::array();
    for (const FitSummary& f : rep.fits) {
        fits.push_back({{"name", f.name},
                        {"slope", f.slope},
                        {"slope_stderr", f.slope_stderr},
                        {"r_squared", f.r_squared}});
    }
    json checks = json::array();
    for (const CheckLine& c : rep.checks) {
        checks.push_back({{"name", c.name},
                          {"verdict", verdict_name(c.verdict)},
                          {"observed", c.observed},
                          {"reference", c.reference}});
    }
    json tables = json::object();
    for (const Table& t : rep.tables) tables[t.name] = table_json(t);
    json out = {{"schema_version", 1},
                {"experiment", rep.experiment},
                {"seed", rep.seed},
                {"verdict", verdict_name(rep.verdict)},
                {"params", params},
                {"fits", fits},
                {"checks", checks},
                {"tables", tables}};
    if (!rep.note.empty()) out["note"] = rep.note;
    if (include_wall_clock) out["wall_seconds"] = rep.wall_seconds;
    return out.dump(2);
}

std::string to_json(const ExponentSequence& seq) {
    return json{{"values", seq.values()}}.dump(2);
}

std::string to_json(const BlockPartition& part) {
    json blocks = json::array();
    for (const IndexRange& b : part.blocks()) {
        blocks.push_back(json::array({b.lo, b.hi}));
    }
    json out = {{"values", part.sequence().values()},
                {"blocks", blocks},
                {"N", part.max_block_size()},
                {"q", part.q()},
                {"onset_index", part.onset_index()}};
    out["q_prime"] = part.q_prime().has_value() ? json(*part.q_prime()) : json();
    return out.dump(2);
}

std::string to_json(const MuntzPolynomial& f) { return polynomial_json(f).dump(2); }

std::string to_json(const Measure& mu) { return measure_json(mu).dump(2); }

std::string to_json(const KernelOperator& op) {
    json rows = json::array();
    for (std::size_t k = 0; k < op.row_count(); ++k) {
        json row = json::array();
        for (const KernelOperator::Entry& e : op.row(k)) {
            row.push_back(json::array({e.n, e.c}));
        }
        rows.push_back(std::move(row));
    }
    return json{{"source", op.source().values()},
                {"target", op.target().values()},
                {"rows", rows},
                {"positive", op.positive()},
                {"truncation_tol", op.truncation_tol()},
                {"truncation_certificate", op.truncation_certificate()}}
        .dump(2);
}

std::string to_json(const MomentReport& rep) {
    return json{{"block_index", rep.block_index},
                {"endpoint", rep.endpoint},
                {"value", rep.value},
                {"aggregate", rep.aggregate},
                {"verdict", rep.verdict},
                {"verdict_all_k", rep.verdict_all_k},
                {"verdict_tail", rep.verdict_tail},
                {"compact", rep.compact}}
        .dump(2);
}

std::string to_json(const MxReport& rep) {
    return json{{"constant", rep.constant},
                {"verdict", rep.verdict},
                {"eps", rep.eps},
                {"ratio", rep.ratio}}
        .dump(2);
}

std::string to_json(const TypeConstantReport& rep) {
    return json{{"kind", kind_name(rep.kind)},
                {"r", rep.r},
                {"alpha", rep.alpha},
                {"beta", rep.beta},
                {"k", rep.k},
                {"constant", rep.constant},
                {"aggregate", rep.aggregate},
                {"restarts", rep.restarts},
                {"samples", rep.samples},
                {"achieved_tolerance", rep.achieved_tolerance},
                {"eps", rep.eps},
                {"c_eps", rep.c_eps}}
        .dump(2);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const std::vector<double>& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += shortest(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::vector<std::string> write_report(const ExperimentReport& rep, const std::string& out_dir,
                                      const std::string& format) {
    if (format != "json" && format != "csv" && format != "both") {
        raise(ErrorKind::Config, "unknown report format '" + format + "'");
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        raise(ErrorKind::Config, "cannot create output directory " + out_dir);
    }
    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& body) {
        const std::string path = (std::filesystem::path(out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) raise(ErrorKind::Config, "cannot write " + path);
        out << body;
        written.push_back(path);
    };
    if (format != "csv") emit(rep.experiment + ".json", to_json(rep));
    if (format != "json") {
        for (const Table& t : rep.tables) {
            emit(rep.experiment + "_" + t.name + ".csv", to_csv(t));
        }
    }
    return written;
}

}  // namespace muntzlab
