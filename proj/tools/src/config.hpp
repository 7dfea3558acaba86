#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "muntzlab/typeconst.hpp"
#include "muntzlab/verify.hpp"

namespace muntzlab::cli {

// Loads and validates the declarative run description: sections [sequence],
// [measure], [operator], [experiment], with a versioned schema.
nlohmann::json load_config(const std::string& path);

BlockPartition build_partition(const nlohmann::json& doc);
Measure build_measure(const nlohmann::json& doc);

// Operator construction. Kernel form is required by commands that inspect
// rows or positivity; the generic form also admits dilation operators.
bool operator_is_dilation(const nlohmann::json& doc);
KernelOperator build_kernel(const nlohmann::json& doc, const BlockPartition& part);
OperatorFn build_operator(const nlohmann::json& doc, const BlockPartition& part);

InterpolationConfig build_interpolation(const nlohmann::json& doc, BlockPartition part,
                                        Measure mu);
Tolerances build_tolerances(const nlohmann::json& doc);
OptimizerOptions build_optimizer(const nlohmann::json& doc,
                                 std::optional<std::uint64_t> seed_override);
GrowthParams build_growth(const nlohmann::json& doc, GrowthKind kind);
std::vector<std::size_t> build_n_list(const nlohmann::json& doc);
MuntzPolynomial build_polynomial(const nlohmann::json& doc);

// [experiment] scalar accessors.
double experiment_num(const nlohmann::json& doc, const char* key, double def);
double experiment_require(const nlohmann::json& doc, const char* key, const char* ctx);
std::size_t experiment_size(const nlohmann::json& doc, const char* key, std::size_t def);
std::string experiment_str(const nlohmann::json& doc, const char* key, const std::string& def);
std::vector<double> experiment_r_list(const nlohmann::json& doc);
std::vector<std::string> experiment_run_list(const nlohmann::json& doc);

}  // namespace muntzlab::cli
