#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "covtypes/oracle.hpp"
#include "covtypes/typing.hpp"

namespace covtypes {

inline constexpr const char* kSchema = "covcheck/1";

/// Reads and elaborates a `.cov` file. Throws CovError (parse/scope/sort)
/// or std::runtime_error when the file cannot be read.
CoreProgram load_file(const std::filesystem::path& path);

/// `path` itself when it is a file, otherwise every `*.cov` below it,
/// sorted.
std::vector<std::filesystem::path> collect_programs(const std::filesystem::path& path);

/// Pairs as arrays, unit as null.
nlohmann::json value_json(const SemanticValue& v);

nlohmann::json check_json(const std::string& file, const CoreProgram& p, const CheckResult& r);
nlohmann::json fundamental_json(const std::string& file, const CoreProgram& p, const CheckResult& r,
                                const FundamentalReport& f);

}  // namespace covtypes
