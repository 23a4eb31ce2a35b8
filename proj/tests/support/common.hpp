#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "covtypes/elaborate.hpp"
#include "covtypes/interpreter.hpp"
#include "covtypes/oracle.hpp"
#include "covtypes/parser.hpp"
#include "covtypes/report.hpp"
#include "covtypes/typing.hpp"

#ifndef COVTYPES_CORPUS_DIR
#error "COVTYPES_CORPUS_DIR must point at the .cov corpus"
#endif

namespace reftest {

inline std::filesystem::path corpus_dir() { return COVTYPES_CORPUS_DIR; }

inline std::filesystem::path corpus_file(const std::string& stem) { return corpus_dir() / (stem + ".cov"); }

inline std::vector<std::filesystem::path> corpus_files() { return covtypes::collect_programs(corpus_dir()); }

inline covtypes::SemanticValue I(std::int64_t n) { return covtypes::SemanticValue::integer(n); }
inline covtypes::SemanticValue B(bool b) { return covtypes::SemanticValue::boolean(b); }
inline covtypes::SemanticValue P(covtypes::SemanticValue a, covtypes::SemanticValue b) {
  return covtypes::SemanticValue::pair(std::move(a), std::move(b));
}

inline std::set<covtypes::SemanticValue> run(const std::string& src, std::int64_t window = 8) {
  covtypes::EvalOptions o;
  o.window = window;
  return covtypes::outcomes(covtypes::load_program(src).term, o).values;
}

inline covtypes::CheckResult check(const covtypes::CoreProgram& p, std::int64_t window = 8) {
  covtypes::CheckOptions o;
  o.window = covtypes::effective_window(window, p.pragma);
  return covtypes::check_program(p, o);
}

inline covtypes::CheckResult check(const std::string& src, std::int64_t window = 8) {
  return check(covtypes::load_program(src), window);
}

inline covtypes::RType T(const std::string& s) { return covtypes::parse_rtype(s); }
inline covtypes::Qualifier Q(const std::string& s) { return covtypes::parse_qualifier(s); }

}  // namespace reftest
