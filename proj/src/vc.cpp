#include "covtypes/vc.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>

#include "covtypes/error.hpp"

namespace covtypes {

Qualifier VC::as_formula() const {
  Qualifier acc = matrix;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    acc = it->quant == Quant::Forall ? q::forall(it->name, it->sort, it->bound, acc)
                                     : q::exists(it->name, it->sort, it->bound, acc);
  }
  return acc;
}

std::string VC::to_string() const {
  std::string out;
  for (const auto& e : prefix) {
    out += e.quant == Quant::Forall ? "forall " : "exists ";
    out += e.name + ":" + e.sort.to_string();
    if (!e.bound.is_true()) out += " [" + covtypes::to_string(e.bound) + "]";
    out += ". ";
  }
  return out + covtypes::to_string(matrix);
}

void check_closed(const VC& vc) {
  SortEnv env;
  for (const auto& e : vc.prefix) {
    env[e.name] = e.sort;
    check_formula(e.bound, env, std::nullopt);
  }
  check_formula(vc.matrix, env, std::nullopt);
}

std::string Verdict::witness_string() const {
  std::string out;
  for (const auto& [name, value] : witness) {
    if (!out.empty()) out += ", ";
    out += name + "=" + value.to_string();
  }
  return out;
}

const char* to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Valid: return "valid";
    case Verdict::Kind::Invalid: return "invalid";
    case Verdict::Kind::WindowInsufficient: return "window-insufficient";
  }
  return "?";
}

namespace {

std::int64_t vc_max_literal(const VC& vc) {
  std::int64_t m = max_abs_literal(vc.matrix);
  for (const auto& e : vc.prefix) m = std::max(m, max_abs_literal(e.bound));
  return m;
}

// ---------------------------------------------------------------------------
// Compiled kernel

struct CNode {
  QOp op;
  int a = -1;
  int b = -1;
  int slot = -1;
  std::int64_t lit = 0;
  int quant = -1;
};

struct QuantInfo {
  Quant quant;
  std::string name;
  BaseType sort;
  int slot = -1;
  int bound = -1;
  int body = -1;  // nested quantifiers only
  // Integer narrowing: value == t, value >= t + adj, value <= t - adj.
  std::vector<int> equal;
  std::vector<std::pair<int, std::int64_t>> lower;
  std::vector<std::pair<int, std::int64_t>> upper;
  std::vector<SemanticValue> static_domain;  // non-int sorts
};

class Kernel {
 public:
  Kernel(const VC& vc, std::int64_t window) : window_(window) {
    std::vector<std::pair<std::string, int>> scope;
    for (const auto& e : vc.prefix) {
      QuantInfo qi;
      qi.quant = e.quant;
      qi.name = e.name;
      qi.sort = e.sort;
      qi.slot = num_slots_++;
      scope.emplace_back(e.name, qi.slot);
      qi.bound = compile(e.bound, scope);
      finish_quant(qi);
      prefix_.push_back(static_cast<int>(quants_.size()));
      quants_.push_back(std::move(qi));
    }
    matrix_ = compile(vc.matrix, scope);
  }

  int num_slots() const { return num_slots_; }
  std::size_t prefix_size() const { return prefix_.size(); }
  const QuantInfo& entry(std::size_t i) const { return quants_[prefix_[i]]; }

  std::vector<SemanticValue> domain(const QuantInfo& qi, const std::vector<SemanticValue>& slots) const {
    std::vector<SemanticValue> out;
    for_each_value(qi, slots, [&](const SemanticValue& v) {
      out.push_back(v);
      return true;
    });
    return out;
  }

  bool bound_holds(const QuantInfo& qi, std::vector<SemanticValue>& slots) const {
    return eval(qi.bound, slots).as_bool();
  }

  /// Truth of prefix[entry..] followed by the matrix.
  bool holds_from(std::size_t entry, std::vector<SemanticValue>& slots) const {
    if (entry == prefix_.size()) return eval(matrix_, slots).as_bool();
    return quantify(quants_[prefix_[entry]], slots,
                    [&]() { return holds_from(entry + 1, slots); });
  }

  /// Appends the first falsifying assignment of the leading universal block
  /// starting at `entry`; requires holds_from(entry) to be false.
  void extend_witness(std::size_t entry, std::vector<SemanticValue>& slots,
                      std::vector<std::pair<std::string, SemanticValue>>& witness) const {
    if (entry == prefix_.size()) return;
    const QuantInfo& qi = quants_[prefix_[entry]];
    if (qi.quant != Quant::Forall) return;
    bool done = false;
    for_each_value(qi, slots, [&](const SemanticValue& v) {
      slots[qi.slot] = v;
      if (!bound_holds(qi, slots)) return true;
      if (holds_from(entry + 1, slots)) return true;
      witness.emplace_back(qi.name, v);
      extend_witness(entry + 1, slots, witness);
      done = true;
      return false;
    });
    (void)done;
  }

 private:
  template <class Rest>
  bool quantify(const QuantInfo& qi, std::vector<SemanticValue>& slots, Rest&& rest) const {
    const bool universal = qi.quant == Quant::Forall;
    bool result = universal;
    for_each_value(qi, slots, [&](const SemanticValue& v) {
      slots[qi.slot] = v;
      if (!bound_holds(qi, slots)) return true;
      bool r = rest();
      if (universal && !r) {
        result = false;
        return false;
      }
      if (!universal && r) {
        result = true;
        return false;
      }
      return true;
    });
    return result;
  }

  template <class F>
  void for_each_value(const QuantInfo& qi, const std::vector<SemanticValue>& slots, F&& f) const {
    if (qi.sort.kind() != BaseType::Kind::Int) {
      for (const auto& v : qi.static_domain)
        if (!f(v)) return;
      return;
    }
    std::int64_t lo = -window_;
    std::int64_t hi = window_;
    auto& mslots = const_cast<std::vector<SemanticValue>&>(slots);
    try {
      for (int t : qi.equal) {
        std::int64_t v = eval(t, mslots).as_int();
        lo = std::max(lo, v);
        hi = std::min(hi, v);
      }
      for (const auto& [t, adj] : qi.lower) {
        std::int64_t v = eval(t, mslots).as_int();
        if (v > std::numeric_limits<std::int64_t>::max() - adj) return;
        lo = std::max(lo, v + adj);
      }
      for (const auto& [t, adj] : qi.upper) {
        std::int64_t v = eval(t, mslots).as_int();
        if (v < std::numeric_limits<std::int64_t>::min() + adj) return;
        hi = std::min(hi, v - adj);
      }
    } catch (const EvalError&) {
      lo = -window_;
      hi = window_;
    }
    for (std::int64_t n = lo; n <= hi; ++n)
      if (!f(SemanticValue::integer(n))) return;
  }

  void finish_quant(QuantInfo& qi) {
    if (qi.sort.kind() != BaseType::Kind::Int) {
      qi.static_domain = window_domain(qi.sort, window_);
      return;
    }
    std::vector<int> conjuncts;
    flatten_and(qi.bound, conjuncts);
    for (int c : conjuncts) {
      const CNode& n = nodes_[c];
      const bool lhs_is_var = nodes_[n.a].op == QOp::Var && nodes_[n.a].slot == qi.slot;
      const bool rhs_is_var = n.b >= 0 && nodes_[n.b].op == QOp::Var && nodes_[n.b].slot == qi.slot;
      if (lhs_is_var == rhs_is_var) continue;
      int other = lhs_is_var ? n.b : n.a;
      if (uses_slot(other, qi.slot)) continue;
      switch (n.op) {
        case QOp::Eq:
          qi.equal.push_back(other);
          break;
        case QOp::Le:
          if (lhs_is_var) qi.upper.emplace_back(other, 0);
          else qi.lower.emplace_back(other, 0);
          break;
        case QOp::Lt:
          if (lhs_is_var) qi.upper.emplace_back(other, 1);
          else qi.lower.emplace_back(other, 1);
          break;
        default:
          break;
      }
    }
  }

  void flatten_and(int id, std::vector<int>& out) const {
    const CNode& n = nodes_[id];
    if (n.op == QOp::And) {
      flatten_and(n.a, out);
      flatten_and(n.b, out);
      return;
    }
    if (n.op == QOp::Eq || n.op == QOp::Le || n.op == QOp::Lt) out.push_back(id);
  }

  bool uses_slot(int id, int slot) const {
    const CNode& n = nodes_[id];
    if (n.op == QOp::Var) return n.slot == slot;
    if (n.op == QOp::Forall || n.op == QOp::Exists) return true;  // be conservative
    return (n.a >= 0 && uses_slot(n.a, slot)) || (n.b >= 0 && uses_slot(n.b, slot));
  }

  int compile(const Qualifier& qual, std::vector<std::pair<std::string, int>>& scope) {
    CNode n{qual.op()};
    switch (qual.op()) {
      case QOp::Nu:
        throw ScopeError("verification conditions must not mention v directly");
      case QOp::Var: {
        auto it = std::find_if(scope.rbegin(), scope.rend(),
                               [&](const auto& p) { return p.first == qual.name(); });
        if (it == scope.rend()) throw ScopeError("VC mentions unbound name `" + qual.name() + "`");
        n.slot = it->second;
        break;
      }
      case QOp::IntLit:
        n.lit = qual.value();
        break;
      case QOp::Forall:
      case QOp::Exists: {
        QuantInfo qi;
        qi.quant = qual.op() == QOp::Forall ? Quant::Forall : Quant::Exists;
        qi.name = qual.name();
        qi.sort = qual.bound_sort();
        qi.slot = num_slots_++;
        scope.emplace_back(qual.name(), qi.slot);
        qi.bound = compile(qual.arg(0), scope);
        qi.body = compile(qual.arg(1), scope);
        scope.pop_back();
        finish_quant(qi);
        n.quant = static_cast<int>(quants_.size());
        quants_.push_back(std::move(qi));
        break;
      }
      default:
        if (qual.arity() > 0) n.a = compile(qual.arg(0), scope);
        if (qual.arity() > 1) n.b = compile(qual.arg(1), scope);
        break;
    }
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  SemanticValue eval(int id, std::vector<SemanticValue>& slots) const {
    const CNode& n = nodes_[id];
    const auto B = [](bool x) { return SemanticValue::boolean(x); };
    switch (n.op) {
      case QOp::True: return B(true);
      case QOp::False: return B(false);
      case QOp::Var: return slots[n.slot];
      case QOp::IntLit: return SemanticValue::integer(n.lit);
      case QOp::Eq: return B(eval(n.a, slots) == eval(n.b, slots));
      case QOp::Le: return B(eval(n.a, slots).as_int() <= eval(n.b, slots).as_int());
      case QOp::Lt: return B(eval(n.a, slots).as_int() < eval(n.b, slots).as_int());
      case QOp::Add:
      case QOp::Sub: {
        std::int64_t x = eval(n.a, slots).as_int();
        std::int64_t y = eval(n.b, slots).as_int();
        std::int64_t r;
        bool of = n.op == QOp::Add ? __builtin_add_overflow(x, y, &r) : __builtin_sub_overflow(x, y, &r);
        if (of) throw EvalError("integer overflow in qualifier arithmetic");
        return SemanticValue::integer(r);
      }
      case QOp::Not: return B(!eval(n.a, slots).as_bool());
      case QOp::And: return B(eval(n.a, slots).as_bool() && eval(n.b, slots).as_bool());
      case QOp::Or: return B(eval(n.a, slots).as_bool() || eval(n.b, slots).as_bool());
      case QOp::Implies: return B(!eval(n.a, slots).as_bool() || eval(n.b, slots).as_bool());
      case QOp::Iff: return B(eval(n.a, slots).as_bool() == eval(n.b, slots).as_bool());
      case QOp::Even: return B(eval(n.a, slots).as_int() % 2 == 0);
      case QOp::Odd: return B(eval(n.a, slots).as_int() % 2 != 0);
      case QOp::Fst: return eval(n.a, slots).first();
      case QOp::Snd: return eval(n.a, slots).second();
      case QOp::Forall:
      case QOp::Exists: {
        const QuantInfo& qi = quants_[n.quant];
        return B(quantify(qi, slots, [&]() { return eval(qi.body, slots).as_bool(); }));
      }
      case QOp::Nu: break;
    }
    throw EvalError("malformed compiled qualifier");
  }

  std::int64_t window_;
  int num_slots_ = 0;
  std::vector<CNode> nodes_;
  std::vector<QuantInfo> quants_;
  std::vector<int> prefix_;
  int matrix_ = -1;
};

void atomic_min(std::atomic<std::size_t>& target, std::size_t value) {
  std::size_t cur = target.load();
  while (value < cur && !target.compare_exchange_weak(cur, value)) {
  }
}

// ---------------------------------------------------------------------------
// Reference

class Reference {
 public:
  Reference(const VC& vc, std::int64_t window) : vc_(vc), window_(window) {}

  bool holds_from(std::size_t entry, Valuation& val) const {
    if (entry == vc_.prefix.size()) return eval(vc_.matrix, val, window_);
    const PrefixEntry& e = vc_.prefix[entry];
    const bool universal = e.quant == Quant::Forall;
    for (const auto& v : window_domain(e.sort, window_)) {
      val[e.name] = v;
      if (!eval(e.bound, val, window_)) continue;
      bool r = holds_from(entry + 1, val);
      if (universal && !r) return false;
      if (!universal && r) return true;
    }
    return universal;
  }

  void extend_witness(std::size_t entry, Valuation& val,
                      std::vector<std::pair<std::string, SemanticValue>>& witness) const {
    if (entry == vc_.prefix.size() || vc_.prefix[entry].quant != Quant::Forall) return;
    const PrefixEntry& e = vc_.prefix[entry];
    for (const auto& v : window_domain(e.sort, window_)) {
      val[e.name] = v;
      if (!eval(e.bound, val, window_)) continue;
      if (holds_from(entry + 1, val)) continue;
      witness.emplace_back(e.name, v);
      extend_witness(entry + 1, val, witness);
      return;
    }
  }

 private:
  const VC& vc_;
  std::int64_t window_;
};

}  // namespace

Verdict decide_bounded(const VC& vc, std::int64_t window) {
  check_closed(vc);
  if (vc_max_literal(vc) > window) return {Verdict::Kind::WindowInsufficient, {}};

  Kernel kernel(vc, window);
  if (kernel.prefix_size() == 0) {
    std::vector<SemanticValue> slots(kernel.num_slots());
    return {kernel.holds_from(0, slots) ? Verdict::Kind::Valid : Verdict::Kind::Invalid, {}};
  }

  const QuantInfo& head = kernel.entry(0);
  const std::vector<SemanticValue> head_domain =
      kernel.domain(head, std::vector<SemanticValue>(kernel.num_slots()));
  const bool universal = head.quant == Quant::Forall;
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  // Universal head: smallest falsifying index. Existential head: smallest
  // satisfying index.
  std::atomic<std::size_t> hit{none};
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(head_domain.size());

#pragma omp parallel
  {
    std::vector<SemanticValue> slots(kernel.num_slots());
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if (idx > hit.load(std::memory_order_relaxed)) continue;
      try {
        slots[head.slot] = head_domain[idx];
        if (!kernel.bound_holds(head, slots)) continue;
        const bool rest = kernel.holds_from(1, slots);
        if (rest != universal) atomic_min(hit, idx);
      } catch (...) {
#pragma omp critical(covtypes_vc_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  const bool found = hit.load() != none;
  if (!universal) return {found ? Verdict::Kind::Valid : Verdict::Kind::Invalid, {}};
  if (!found) return {Verdict::Kind::Valid, {}};

  Verdict out{Verdict::Kind::Invalid, {}};
  std::vector<SemanticValue> slots(kernel.num_slots());
  slots[head.slot] = head_domain[hit.load()];
  out.witness.emplace_back(head.name, head_domain[hit.load()]);
  kernel.extend_witness(1, slots, out.witness);
  return out;
}

Verdict decide_bounded_reference(const VC& vc, std::int64_t window) {
  check_closed(vc);
  if (vc_max_literal(vc) > window) return {Verdict::Kind::WindowInsufficient, {}};
  Reference ref(vc, window);
  Valuation val;
  if (ref.holds_from(0, val)) return {Verdict::Kind::Valid, {}};
  Verdict out{Verdict::Kind::Invalid, {}};
  val.clear();
  ref.extend_witness(0, val, out.witness);
  return out;
}

bool satisfiable(const Qualifier& qual, const SortEnv& env, std::int64_t window,
                 const std::optional<BaseType>& nu_sort) {
  VC vc;
  for (const auto& name : free_names(qual)) {
    auto it = env.find(name);
    if (it == env.end()) throw ScopeError("unbound name `" + name + "` in qualifier");
    vc.prefix.push_back({Quant::Exists, name, it->second, q::tt()});
  }
  Qualifier body = qual;
  if (nu_sort) {
    const std::string nu_name = "\xce\xbd";  // ν
    vc.prefix.push_back({Quant::Exists, nu_name, *nu_sort, q::tt()});
    body = subst_nu(qual, q::var(nu_name));
  }
  vc.matrix = body;
  // Satisfiability is a plain search; large literals simply find nothing.
  check_closed(vc);
  Kernel kernel(vc, window);
  std::vector<SemanticValue> slots(kernel.num_slots());
  return kernel.holds_from(0, slots);
}

}  // namespace covtypes
