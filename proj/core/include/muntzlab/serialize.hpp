#pragma once

#include <string>
#include <vector>

#include "muntzlab/verify.hpp"

namespace muntzlab {

// JSON renderings with sorted keys and round-trip number formatting, so equal
// inputs produce byte-identical documents. The wall-clock field can be left
// out for reproducibility comparisons.
std::string to_json(const ExperimentReport& rep, bool include_wall_clock = true);
std::string to_json(const ExponentSequence& seq);
std::string to_json(const BlockPartition& part);
std::string to_json(const MuntzPolynomial& f);
std::string to_json(const Measure& mu);
std::string to_json(const KernelOperator& op);
std::string to_json(const MomentReport& rep);
std::string to_json(const MxReport& rep);
std::string to_json(const TypeConstantReport& rep);

// One CSV document per table: a header row, then one line per data row.
std::string to_csv(const Table& table);

// Writes <out_dir>/<experiment>.json and/or one <experiment>_<table>.csv per
// table, per format ("json", "csv", or "both"); creates the directory when
// missing. Returns the paths written.
std::vector<std::string> write_report(const ExperimentReport& rep, const std::string& out_dir,
                                      const std::string& format);

}  // namespace muntzlab
