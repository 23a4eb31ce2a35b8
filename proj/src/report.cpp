#include "covtypes/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "covtypes/elaborate.hpp"

namespace covtypes {

CoreProgram load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_program(ss.str());
}

std::vector<std::filesystem::path> collect_programs(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(path))
    if (e.is_regular_file() && e.path().extension() == ".cov") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json value_json(const SemanticValue& v) {
  if (v.is_int()) return v.as_int();
  if (v.is_bool()) return v.as_bool();
  if (v.is_unit()) return nullptr;
  return nlohmann::json::array({value_json(v.first()), value_json(v.second())});
}

namespace {

nlohmann::json pos_json(const SourcePos& p) {
  if (!p.known()) return nullptr;
  return {{"line", p.line}, {"column", p.column}};
}

}  // namespace

nlohmann::json check_json(const std::string& file, const CoreProgram& p, const CheckResult& r) {
  nlohmann::json vcs = nlohmann::json::array();
  for (const auto& v : r.vcs) {
    nlohmann::json j = {{"id", v.id}, {"rule", v.rule}, {"verdict", v.verdict}, {"method", v.method},
                        {"pos", pos_json(v.pos)}};
    if (!v.witness.empty()) j["witness"] = v.witness;
    vcs.push_back(std::move(j));
  }
  nlohmann::json diags = nlohmann::json::array();
  for (const auto& d : r.diagnostics) {
    nlohmann::json j = {{"code", d.code}, {"message", d.message}, {"pos", pos_json(d.pos)}};
    if (!d.rule.empty()) j["rule"] = d.rule;
    if (!d.witness.empty()) j["witness"] = d.witness;
    diags.push_back(std::move(j));
  }
  nlohmann::json out = {{"schema", kSchema}, {"file", file},         {"goal", p.goal.to_string()},
                        {"window", r.window}, {"result", to_string(r.outcome)}, {"vcs", vcs},
                        {"diagnostics", diags}};
  if (p.pragma.expect_accept) out["expected"] = *p.pragma.expect_accept ? "accepted" : "rejected";
  return out;
}

nlohmann::json fundamental_json(const std::string& file, const CoreProgram& p, const CheckResult& r,
                                const FundamentalReport& f) {
  nlohmann::json out = {{"schema", kSchema}, {"file", file},           {"goal", p.goal.to_string()},
                        {"window", r.window}, {"checker", f.checker}, {"oracle", f.oracle},
                        {"verdict", f.verdict}, {"corollary", f.corollary}};
  if (!f.detail.empty()) out["detail"] = f.detail;
  return out;
}

}  // namespace covtypes
