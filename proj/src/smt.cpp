#include "covtypes/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <sstream>

namespace covtypes {

std::string smt_symbol(const std::string& name) {
  if (name == "\xce\xbd") return "!nu";
  std::string out = "x!";
  for (char c : name) {
    if (c == '\'') out += "!q";
    else out += c;
  }
  return out;
}

namespace {

std::string sort_name(const BaseType& b) {
  switch (b.kind()) {
    case BaseType::Kind::Unit: return "Unit";
    case BaseType::Kind::Bool: return "Bool";
    case BaseType::Kind::Int: return "Int";
    case BaseType::Kind::Prod:
      return "(Pair " + sort_name(b.left()) + " " + sort_name(b.right()) + ")";
  }
  return "Unit";
}

void emit(const Qualifier& q, std::ostream& out) {
  const auto bin = [&](const char* op) {
    out << "(" << op << " ";
    emit(q.arg(0), out);
    out << " ";
    emit(q.arg(1), out);
    out << ")";
  };
  const auto un = [&](const char* op) {
    out << "(" << op << " ";
    emit(q.arg(0), out);
    out << ")";
  };
  switch (q.op()) {
    case QOp::True: out << "true"; return;
    case QOp::False: out << "false"; return;
    case QOp::Nu: out << smt_symbol("\xce\xbd"); return;
    case QOp::Var: out << smt_symbol(q.name()); return;
    case QOp::IntLit:
      if (q.value() < 0) out << "(- " << (0ULL - static_cast<unsigned long long>(q.value())) << ")";
      else out << q.value();
      return;
    case QOp::Eq: bin("="); return;
    case QOp::Le: bin("<="); return;
    case QOp::Lt: bin("<"); return;
    case QOp::Add: bin("+"); return;
    case QOp::Sub: bin("-"); return;
    case QOp::Not: un("not"); return;
    case QOp::And: bin("and"); return;
    case QOp::Or: bin("or"); return;
    case QOp::Implies: bin("=>"); return;
    case QOp::Iff: bin("="); return;
    case QOp::Even:
      out << "(= (mod ";
      emit(q.arg(0), out);
      out << " 2) 0)";
      return;
    case QOp::Odd:
      out << "(= (mod ";
      emit(q.arg(0), out);
      out << " 2) 1)";
      return;
    case QOp::Fst: un("pfst"); return;
    case QOp::Snd: un("psnd"); return;
    case QOp::Forall:
    case QOp::Exists: {
      const bool all = q.op() == QOp::Forall;
      out << "(" << (all ? "forall" : "exists") << " ((" << smt_symbol(q.name()) << " "
          << sort_name(q.bound_sort()) << ")) (" << (all ? "=>" : "and") << " ";
      emit(q.arg(0), out);
      out << " ";
      emit(q.arg(1), out);
      out << "))";
      return;
    }
  }
}

}  // namespace

std::string emit_smt2(const VC& vc) {
  std::ostringstream out;
  out << "; " << vc.to_string() << "\n";
  out << "(set-logic ALL)\n";
  out << "(declare-datatypes ((Unit 0)) (((unit))))\n";
  out << "(declare-datatypes ((Pair 2)) ((par (A B) ((mk-pair (pfst A) (psnd B))))))\n";
  out << "(assert (not ";
  emit(vc.as_formula(), out);
  out << "))\n(check-sat)\n";
  return out.str();
}

const char* to_string(SolverAnswer a) {
  switch (a) {
    case SolverAnswer::Sat: return "sat";
    case SolverAnswer::Unsat: return "unsat";
    case SolverAnswer::Unknown: return "unknown";
    case SolverAnswer::Timeout: return "timeout";
    case SolverAnswer::Failed: return "failed";
  }
  return "?";
}

SolverResult SolverClient::check(const std::string& script) const {
  SolverResult result;
  char path[] = "/tmp/covcheck-XXXXXX";
  int script_fd = mkstemp(path);
  if (script_fd < 0) return result;
  unlink(path);
  for (std::size_t off = 0; off < script.size();) {
    ssize_t n = write(script_fd, script.data() + off, script.size() - off);
    if (n <= 0) {
      close(script_fd);
      return result;
    }
    off += static_cast<std::size_t>(n);
  }
  lseek(script_fd, 0, SEEK_SET);

  int pipefd[2];
  if (pipe(pipefd) != 0) {
    close(script_fd);
    return result;
  }
  pid_t pid = fork();
  if (pid < 0) {
    close(script_fd);
    close(pipefd[0]);
    close(pipefd[1]);
    return result;
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(script_fd, 0);
    dup2(pipefd[1], 1);
    dup2(pipefd[1], 2);
    close(pipefd[0]);
    close(pipefd[1]);
    close(script_fd);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(script_fd);
  close(pipefd[1]);

  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms_);
  bool timed_out = false;
  char buf[4096];
  for (;;) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                    deadline - std::chrono::steady_clock::now())
                    .count();
    if (left <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{pipefd[0], POLLIN, 0};
    int r = poll(&pfd, 1, static_cast<int>(left));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) {
      timed_out = r == 0;
      break;
    }
    ssize_t n = read(pipefd[0], buf, sizeof buf);
    if (n <= 0) break;
    result.output.append(buf, static_cast<std::size_t>(n));
  }
  close(pipefd[0]);
  if (timed_out) kill(-pid, SIGKILL);
  int status = 0;
  waitpid(pid, &status, 0);

  if (timed_out) {
    result.answer = SolverAnswer::Timeout;
    return result;
  }
  std::istringstream lines(result.output);
  std::string first;
  lines >> first;
  if (first == "sat") result.answer = SolverAnswer::Sat;
  else if (first == "unsat") result.answer = SolverAnswer::Unsat;
  else if (first == "unknown") result.answer = SolverAnswer::Unknown;
  else result.answer = SolverAnswer::Failed;
  return result;
}

bool SolverClient::available(const std::string& command) {
  SolverClient probe(command, 5000);
  auto r = probe.check("(assert true)\n(check-sat)\n");
  return r.answer == SolverAnswer::Sat;
}

}  // namespace covtypes
