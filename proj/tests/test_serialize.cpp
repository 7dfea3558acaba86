#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "muntzlab/errors.hpp"
#include "muntzlab/exponents.hpp"
#include "muntzlab/measures.hpp"
#include "muntzlab/operators.hpp"
#include "muntzlab/serialize.hpp"
#include "muntzlab/typeconst.hpp"
#include "muntzlab/verify.hpp"

using namespace muntzlab;

namespace {

BlockPartition singleton_partition(std::size_t count) {
    ExponentSequence seq = ExponentSequence::geometric(2.0, 2.0, count);
    std::vector<std::size_t> sizes(count, 1);
    return BlockPartition(std::move(seq), std::move(sizes), 1.5);
}

ExperimentReport sample_report() {
    BlockPartition part = singleton_partition(12);
    InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 1.0, Measure::jacobi(1.0));
    OperatorFn id = as_operator(identity_kernel(part.sequence()));
    return run_theorem_A_check(id, cfg, 16);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("equal experiments render byte-identical json without the clock") {
    ExperimentReport a = sample_report();
    ExperimentReport b = sample_report();
    // The wall-clock field is the only nondeterministic part of a run, so
    // dropping it makes repeated runs byte-identical.
    CHECK(to_json(a, false) == to_json(b, false));

    const std::string doc = to_json(a, false);
    CHECK(doc.find("\"experiment\"") != std::string::npos);
    CHECK(doc.find("\"thmA\"") != std::string::npos);
    CHECK(doc.find("wall_seconds") == std::string::npos);
    CHECK(to_json(a, true).find("wall_seconds") != std::string::npos);
}

TEST_CASE("domain objects serialize with their defining data") {
    BlockPartition part = singleton_partition(4);
    const std::string part_doc = to_json(part);
    CHECK(part_doc.find("\"q\"") != std::string::npos);

    const std::string seq_doc = to_json(part.sequence());
    CHECK(seq_doc.find("16") != std::string::npos);  // largest exponent is 2 * 2^3

    MuntzPolynomial f({{2.0, 1.0}, {4.0, -0.5}});
    const std::string poly_doc = to_json(f);
    CHECK(poly_doc.find("-0.5") != std::string::npos);

    const std::string mu_doc = to_json(Measure::jacobi(1.5));
    CHECK(mu_doc.find("1.5") != std::string::npos);

    const std::string op_doc = to_json(identity_kernel(part.sequence()));
    CHECK(op_doc.find("rows") != std::string::npos);
}

TEST_CASE("csv rendering emits a header and one line per row") {
    Table t;
    t.name = "demo";
    t.columns = {"k", "value"};
    t.rows = {{0.0, 1.5}, {1.0, 0.25}};
    const std::string csv = to_csv(t);

    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "k,value");
    REQUIRE(std::getline(lines, line));
    CHECK(line.find("1.5") != std::string::npos);
    REQUIRE(std::getline(lines, line));
    CHECK(line.find("0.25") != std::string::npos);
    CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("report writer creates the requested files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "muntzlab_serialize_test";
    fs::remove_all(dir);

    ExperimentReport rep = sample_report();
    std::vector<std::string> json_paths = write_report(rep, dir.string(), "json");
    REQUIRE(json_paths.size() == 1);
    CHECK(slurp(json_paths[0]).find("\"thmA\"") != std::string::npos);

    std::vector<std::string> both_paths = write_report(rep, dir.string(), "both");
    CHECK(both_paths.size() >= 2);
    bool saw_csv = false;
    for (const std::string& p : both_paths) saw_csv = saw_csv || p.find(".csv") != std::string::npos;
    CHECK(saw_csv);

    CHECK_THROWS_AS(write_report(rep, dir.string(), "yaml"), Error);
    fs::remove_all(dir);
}
