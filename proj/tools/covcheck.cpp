// covcheck: coverage-type checker front end.
//
//   covcheck check|run|oracle|diff|emit-smt PATH [flags]
//
// Exit codes: 0 accepted, 1 rejected (diff: soundness bug), 2 parse or usage
// error, 3 inconclusive.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "covtypes/error.hpp"
#include "covtypes/pretty.hpp"
#include "covtypes/report.hpp"
#include "covtypes/smt.hpp"

namespace fs = std::filesystem;
using namespace covtypes;

namespace {

struct Flags {
  std::string path;
  std::int64_t window = 8;
  std::string backend = "bounded";
  std::string solver_cmd = "z3 -in";
  int timeout_ms = 10000;
  bool json = false;
  bool strict_overapp = false;
  bool unit_payload = false;
  bool no_timing = false;
  std::string out = ".";
};

enum Exit { kOk = 0, kReject = 1, kUsage = 2, kInconclusive = 3 };

struct FileOutput {
  std::string text;
  int code = kOk;
};

CheckOptions check_options(const Flags& f, const CoreProgram& p) {
  CheckOptions o;
  o.window = effective_window(f.window, p.pragma);
  o.backend = f.backend == "smt" ? Backend::Smt : Backend::Bounded;
  o.solver_cmd = f.solver_cmd;
  o.timeout_ms = f.timeout_ms;
  o.strict_overapp = f.strict_overapp;
  o.assert_unit_payload = f.unit_payload;
  return o;
}

OracleOptions oracle_options(const Flags& f, const CoreProgram& p) {
  OracleOptions o;
  o.window = effective_window(f.window, p.pragma);
  o.assert_unit_payload = f.unit_payload;
  return o;
}

std::string dump(const nlohmann::json& j) { return j.dump() + "\n"; }

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int code_of(CheckResult::Outcome o) {
  switch (o) {
    case CheckResult::Outcome::Accepted: return kOk;
    case CheckResult::Outcome::Rejected: return kReject;
    case CheckResult::Outcome::Inconclusive: return kInconclusive;
  }
  return kUsage;
}

FileOutput load_error(const Flags& f, const std::string& file, const std::exception& e) {
  std::string code = "io-error";
  std::string where;
  if (auto* ce = dynamic_cast<const CovError*>(&e)) {
    code = ce->code();
    if (ce->pos().known()) where = ce->pos().to_string() + ": ";
  }
  if (f.json)
    return {dump({{"schema", kSchema}, {"file", file}, {"result", "error"}, {"code", code}, {"message", e.what()}}),
            kUsage};
  return {file + ": " + where + "error [" + code + "]: " + e.what() + "\n", kUsage};
}

FileOutput cmd_check(const Flags& f, const std::string& file, const CoreProgram& p) {
  auto t0 = std::chrono::steady_clock::now();
  CheckResult r = check_program(p, check_options(f, p));
  double ms = elapsed_ms(t0);
  if (f.json) {
    nlohmann::json j = check_json(file, p, r);
    if (!f.no_timing) j["elapsed_ms"] = ms;
    return {dump(j), code_of(r.outcome)};
  }
  std::ostringstream os;
  os << file << ": " << to_string(r.outcome) << " at " << p.goal.to_string() << " (window " << r.window << ", "
     << r.vcs.size() << " VCs";
  if (!f.no_timing) os << ", " << static_cast<long long>(ms) << " ms";
  os << ")\n";
  for (const auto& d : r.diagnostics) {
    os << "  ";
    if (d.pos.known()) os << d.pos.to_string() << ": ";
    os << "[" << d.code << "] " << d.message << "\n";
  }
  for (const auto& v : r.vcs)
    if (v.verdict != "valid" && v.verdict != "invalid")
      os << "  VC " << v.id << " (" << v.rule << "): " << v.verdict << "\n";
  return {os.str(), code_of(r.outcome)};
}

FileOutput cmd_run(const Flags& f, const std::string& file, const CoreProgram& p) {
  EvalOptions eo;
  eo.window = effective_window(f.window, p.pragma);
  eo.assert_unit_payload = f.unit_payload;
  OutcomeSet s = outcomes(p.term, eo);
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : s.values) values.push_back(value_json(v));
  if (f.json) return {dump({{"schema", kSchema}, {"file", file}, {"window", eo.window}, {"values", values}}), kOk};
  return {dump({{"values", values}}), kOk};
}

FileOutput cmd_oracle(const Flags& f, const std::string& file, const CoreProgram& p) {
  OracleOptions o = oracle_options(f, p);
  o.function_probes = top_level_functions(p);
  MemberResult m = member_type(p.term, p.goal, o);
  int code = m.member() ? kOk : m.membership == Membership::NonMember ? kReject : kInconclusive;
  if (f.json) {
    nlohmann::json j = {{"schema", kSchema}, {"file", file}, {"goal", p.goal.to_string()},
                        {"window", o.window}, {"membership", to_string(m.membership)}};
    if (!m.detail.empty()) j["detail"] = m.detail;
    return {dump(j), code};
  }
  std::string line = file + ": " + to_string(m.membership) + " of " + p.goal.to_string();
  if (!m.detail.empty()) line += " (" + m.detail + ")";
  return {line + "\n", code};
}

FileOutput cmd_diff(const Flags& f, const std::string& file, const CoreProgram& p) {
  CheckResult r = check_program(p, check_options(f, p));
  FundamentalReport rep = fundamental_check(p, r, oracle_options(f, p));
  int code = rep.verdict == "SOUNDNESS-BUG" ? kReject : kOk;
  if (f.json) return {dump(fundamental_json(file, p, r, rep)), code};
  std::string line = file + ": " + rep.verdict + " (checker " + rep.checker + ", oracle " + rep.oracle;
  if (rep.corollary != "n/a") line += ", corollary " + rep.corollary;
  line += ")";
  if (!rep.detail.empty() && rep.verdict != "consistent") line += " " + rep.detail;
  return {line + "\n", code};
}

FileOutput cmd_emit_smt(const Flags& f, const std::string& file, const CoreProgram& p) {
  CheckOptions o = check_options(f, p);
  o.backend = Backend::Bounded;
  CheckResult r = check_program(p, o);
  fs::create_directories(f.out);
  std::string stem = fs::path(file).stem().string();
  std::ostringstream os;
  for (const auto& v : r.vcs) {
    fs::path target = fs::path(f.out) / (stem + ".vc" + std::to_string(v.id) + ".smt2");
    std::ofstream(target) << emit_smt2(v.vc);
    os << target.string() << "\n";
  }
  return {f.json ? dump({{"schema", kSchema}, {"file", file}, {"written", static_cast<int>(r.vcs.size())}})
                 : os.str(),
          kOk};
}

using Command = FileOutput (*)(const Flags&, const std::string&, const CoreProgram&);

int run_command(const Flags& f, Command cmd, bool reject_dominates) {
  std::vector<fs::path> files;
  try {
    if (!fs::exists(f.path)) throw std::runtime_error("no such file or directory: " + f.path);
    files = collect_programs(f.path);
  } catch (const std::exception& e) {
    std::cerr << "covcheck: " << e.what() << "\n";
    return kUsage;
  }
  std::vector<FileOutput> outs(files.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].string();
    try {
      CoreProgram p = load_file(files[i]);
      outs[i] = cmd(f, name, p);
    } catch (const ParseError& e) {
      outs[i] = load_error(f, name, e);
    } catch (const CovError& e) {
      // scope and sort errors found while elaborating or evaluating
      outs[i] = load_error(f, name, e);
      if (e.code() != "unbound-name") outs[i].code = reject_dominates ? kReject : kInconclusive;
    } catch (const std::exception& e) {
      outs[i] = load_error(f, name, e);
    }
  }
  bool usage = false, reject = false, unknown = false;
  for (const auto& o : outs) {
    std::cout << o.text;
    usage |= o.code == kUsage;
    reject |= o.code == kReject;
    unknown |= o.code == kInconclusive;
  }
  if (usage) return kUsage;
  if (reject) return kReject;
  if (unknown) return kInconclusive;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covcheck: coverage refinement type checker"};
  app.require_subcommand(1);
  Flags f;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("path", f.path, "program file or directory of .cov files")->required();
    sub->add_option("--window", f.window, "integer window [-N, N] (a file pragma may raise it)")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    sub->add_option("--backend", f.backend, "VC backend")->check(CLI::IsMember({"bounded", "smt"}));
    sub->add_option("--solver-cmd", f.solver_cmd, "SMT solver command reading SMT-LIB2 on stdin");
    sub->add_option("--timeout-ms", f.timeout_ms, "solver timeout per VC");
    sub->add_flag("--json", f.json, "machine-readable output");
    sub->add_flag("--strict-overapp", f.strict_overapp, "over-parameter arguments must cover the domain");
    sub->add_flag("--assert-unit-payload", f.unit_payload, "assert returns (flag, ()) instead of (flag, v)");
    sub->add_flag("--no-timing", f.no_timing, "omit timings (byte-stable output)");
  };

  struct Sub {
    const char* name;
    const char* help;
    Command cmd;
    bool reject_dominates;
  };
  const Sub subs[] = {
      {"check", "type check against the goal", cmd_check, true},
      {"run", "print every outcome of the program", cmd_run, false},
      {"oracle", "decide membership of the program in its goal by execution", cmd_oracle, true},
      {"diff", "compare checker and oracle (fundamental theorem check)", cmd_diff, false},
      {"emit-smt", "write one SMT-LIB2 file per VC", cmd_emit_smt, false},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> registered;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    if (std::string(s.name) == "emit-smt") sub->add_option("--out", f.out, "output directory");
    registered.emplace_back(sub, &s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  for (const auto& [sub, s] : registered)
    if (sub->parsed()) return run_command(f, s->cmd, s->reject_dominates);
  return kUsage;
}
