#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quset/formula.hpp"
#include "quset/qset.hpp"

namespace quset {

/// Truth values are projections: 1 is "holds", 0 is "fails", and every
/// other element of the lattice is a proper intermediate value.
using TruthValue = Projection;

inline std::string classify(const TruthValue& p) {
  if (p.is_one()) return "one";
  if (p.is_zero()) return "zero";
  return "proper";
}

/// Which truth-value assignment to use for membership and bounded
/// existential quantification: the De-Morgan-respecting one built on the
/// Sasaki star, or the original one built on the lattice meet.
enum class SemanticsMode { Reformed, Takeuti };

inline std::string to_string(SemanticsMode mode) {
  return mode == SemanticsMode::Reformed ? "reformed" : "takeuti";
}

struct BindError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Delta0Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Named constants of the language over one universe. The von Neumann
/// checks "check:0" ... are always resolvable without declaration.
class Environment {
 public:
  explicit Environment(std::shared_ptr<Universe> uni) : uni_(std::move(uni)) {}
  explicit Environment(std::size_t dim) : uni_(std::make_shared<Universe>(dim)) {}

  Universe& universe() const { return *uni_; }
  std::shared_ptr<Universe> universe_ptr() const { return uni_; }
  LogicContext& logic() const { return uni_->logic(); }

  void define_projection(const std::string& name, const Projection& p) {
    if (&p.context() != &logic()) throw DimensionError("projection from another logic");
    if (!projections_.emplace(name, p).second)
      throw BindError("duplicate projection name '" + name + "'");
  }

  void define_qset(const std::string& name, const QSet& u) {
    if (&u.universe() != uni_.get()) throw UniverseError("set from another universe");
    if (!qsets_.emplace(name, u).second)
      throw BindError("duplicate set name '" + name + "'");
  }

  bool has_qset(const std::string& name) const {
    return qsets_.count(name) || check_index(name).has_value();
  }

  QSet qset(const std::string& name) const {
    auto it = qsets_.find(name);
    if (it != qsets_.end()) return it->second;
    if (auto n = check_index(name)) return uni_->check_embed(HFSet::ordinal(*n));
    throw BindError("unknown set constant '" + name + "'");
  }

  Projection projection(const std::string& name) const {
    auto it = projections_.find(name);
    if (it == projections_.end())
      throw BindError("unknown projection name '" + name + "'");
    return it->second;
  }

  const std::map<std::string, Projection>& projections() const { return projections_; }
  const std::map<std::string, QSet>& qsets() const { return qsets_; }

  /// Name of a defined projection equal to p, if any.
  std::optional<std::string> name_of(const Projection& p) const {
    for (const auto& [name, q] : projections_)
      if (q == p) return name;
    return std::nullopt;
  }

 private:
  static std::optional<std::size_t> check_index(const std::string& name) {
    if (name.rfind("check:", 0) != 0) return std::nullopt;
    std::string digits = name.substr(6);
    if (digits.empty() || digits.size() > 1 ||
        !std::isdigit(static_cast<unsigned char>(digits[0])))
      return std::nullopt;
    return static_cast<std::size_t>(digits[0] - '0');
  }

  std::shared_ptr<Universe> uni_;
  std::map<std::string, Projection> projections_;
  std::map<std::string, QSet> qsets_;
};

/// Assigns Q-valued truth values to closed Delta0 sentences. The atomic
/// clauses for = and "in" recurse into one another with strictly
/// decreasing rank; the pair memo caps the blowup of revisited pairs.
/// One evaluator is single-threaded; run one per thread over a shared
/// environment.
class Evaluator {
 public:
  Evaluator(const Environment& env, SemanticsMode mode, bool memoize = true)
      : env_(env), mode_(mode), memoize_(memoize) {}

  /// Clause for u = v: both inf-sides of Sasaki arrows into membership.
  TruthValue eval_equal(const QSet& u, const QSet& v) {
    // the clause is symmetric in u and v, so the memo key is unordered
    auto key = std::make_pair(std::min(u.id(), v.id()), std::max(u.id(), v.id()));
    if (memoize_) {
      auto it = eq_memo_.find(key);
      if (it != eq_memo_.end()) return it->second;
    }
    LogicContext& ctx = env_.logic();
    TruthValue acc = ctx.one();
    auto side = [&](const QSet& a, const QSet& b) {
      for (const auto& [a1, value] : a.entries()) {
        if (acc.is_zero()) break;
        if (value.is_zero()) continue;  // 0 -> x = 1
        acc = meet(acc, sasaki_arrow(value, eval_member(a1, b)));
      }
    };
    side(u, v);
    side(v, u);
    if (memoize_) eq_memo_.emplace(key, acc);
    return acc;
  }

  /// Clause for u in v: a join over dom(v), through the Sasaki star in
  /// Reformed mode and through the meet in Takeuti mode.
  TruthValue eval_member(const QSet& u, const QSet& v) {
    auto key = std::make_pair(u.id(), v.id());
    if (memoize_) {
      auto it = mem_memo_.find(key);
      if (it != mem_memo_.end()) return it->second;
    }
    LogicContext& ctx = env_.logic();
    TruthValue acc = ctx.zero();
    for (const auto& [v1, value] : v.entries()) {
      if (acc.is_one()) break;
      if (value.is_zero()) continue;  // 0 * x = 0 /\ x = 0
      TruthValue same = eval_equal(u, v1);
      acc = join(acc, mode_ == SemanticsMode::Reformed ? sasaki_star(value, same)
                                                       : meet(value, same));
    }
    if (memoize_) mem_memo_.emplace(key, acc);
    return acc;
  }

  /// Truth value of a closed Delta0 sentence. Derived connectives are
  /// evaluated by their direct clauses; in Reformed mode this provably
  /// coincides with desugaring, in Takeuti mode the direct clauses are
  /// the definition.
  TruthValue eval(const FormulaPtr& f) {
    check_closed(f, {});
    if (!is_delta0(f))
      throw Delta0Error("formula has an unbounded quantifier: " + to_string(f));
    std::map<std::string, QSet> binds;
    return eval_rec(f, binds);
  }

 private:
  void check_closed(const FormulaPtr& f, std::vector<std::string> scope) const {
    auto check_term = [&](const Term& t) {
      if (t.kind == TermKind::Variable) {
        for (const auto& s : scope)
          if (s == t.name) return;
        throw BindError("free variable '" + t.name + "'");
      }
      env_.qset(t.name);  // throws on unknown constants
    };
    switch (f->kind) {
      case FormulaKind::Membership:
      case FormulaKind::Equality:
        check_term(f->lhs);
        check_term(f->rhs);
        return;
      case FormulaKind::Not:
        check_closed(f->left, scope);
        return;
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
      case FormulaKind::Iff:
        check_closed(f->left, scope);
        check_closed(f->right, scope);
        return;
      case FormulaKind::BoundedForAll:
      case FormulaKind::BoundedExists:
        check_term(f->bound);
        scope.push_back(f->bound_var);
        check_closed(f->left, scope);
        return;
      case FormulaKind::ForAll:
      case FormulaKind::Exists:
        scope.push_back(f->bound_var);
        check_closed(f->left, scope);
        return;
    }
  }

  QSet resolve(const Term& t, const std::map<std::string, QSet>& binds) const {
    if (t.kind == TermKind::Variable) {
      auto it = binds.find(t.name);
      if (it == binds.end()) throw BindError("free variable '" + t.name + "'");
      return it->second;
    }
    return env_.qset(t.name);
  }

  TruthValue eval_rec(const FormulaPtr& f, std::map<std::string, QSet>& binds) {
    LogicContext& ctx = env_.logic();
    switch (f->kind) {
      case FormulaKind::Membership:
        return eval_member(resolve(f->lhs, binds), resolve(f->rhs, binds));
      case FormulaKind::Equality:
        return eval_equal(resolve(f->lhs, binds), resolve(f->rhs, binds));
      case FormulaKind::Not:
        return ortho(eval_rec(f->left, binds));
      case FormulaKind::And:
        return meet(eval_rec(f->left, binds), eval_rec(f->right, binds));
      case FormulaKind::Or:
        return join(eval_rec(f->left, binds), eval_rec(f->right, binds));
      case FormulaKind::Implies:
        return sasaki_arrow(eval_rec(f->left, binds), eval_rec(f->right, binds));
      case FormulaKind::Iff:
        return equivalence(eval_rec(f->left, binds), eval_rec(f->right, binds));
      case FormulaKind::BoundedForAll: {
        QSet range = resolve(f->bound, binds);
        TruthValue acc = ctx.one();
        for (const auto& [x, value] : range.entries()) {
          if (acc.is_zero()) break;
          if (value.is_zero()) continue;
          auto saved = swap_binding(binds, f->bound_var, x);
          acc = meet(acc, sasaki_arrow(value, eval_rec(f->left, binds)));
          unswap_binding(binds, f->bound_var, saved);
        }
        return acc;
      }
      case FormulaKind::BoundedExists: {
        QSet range = resolve(f->bound, binds);
        TruthValue acc = ctx.zero();
        for (const auto& [x, value] : range.entries()) {
          if (acc.is_one()) break;
          if (value.is_zero()) continue;
          auto saved = swap_binding(binds, f->bound_var, x);
          TruthValue body = eval_rec(f->left, binds);
          unswap_binding(binds, f->bound_var, saved);
          acc = join(acc, mode_ == SemanticsMode::Reformed ? sasaki_star(value, body)
                                                           : meet(value, body));
        }
        return acc;
      }
      case FormulaKind::ForAll:
      case FormulaKind::Exists:
        throw Delta0Error("formula has an unbounded quantifier: " + to_string(f));
    }
    throw std::logic_error("unreachable formula kind");
  }

  static std::optional<QSet> swap_binding(std::map<std::string, QSet>& binds,
                                          const std::string& name, const QSet& value) {
    auto it = binds.find(name);
    std::optional<QSet> saved;
    if (it != binds.end()) {
      saved = it->second;
      it->second = value;
    } else {
      binds.emplace(name, value);
    }
    return saved;
  }

  static void unswap_binding(std::map<std::string, QSet>& binds, const std::string& name,
                             const std::optional<QSet>& saved) {
    if (saved)
      binds.find(name)->second = *saved;
    else
      binds.erase(name);
  }

  const Environment& env_;
  SemanticsMode mode_;
  bool memoize_;
  std::map<std::pair<std::size_t, std::size_t>, TruthValue> eq_memo_;
  std::map<std::pair<std::size_t, std::size_t>, TruthValue> mem_memo_;
};

inline TruthValue eval_equal(const QSet& u, const QSet& v, SemanticsMode mode) {
  Environment env(std::shared_ptr<Universe>(&u.universe(), [](Universe*) {}));
  return Evaluator(env, mode).eval_equal(u, v);
}

inline TruthValue eval_member(const QSet& u, const QSet& v, SemanticsMode mode) {
  Environment env(std::shared_ptr<Universe>(&u.universe(), [](Universe*) {}));
  return Evaluator(env, mode).eval_member(u, v);
}

inline TruthValue eval(const FormulaPtr& f, const Environment& env, SemanticsMode mode) {
  return Evaluator(env, mode).eval(f);
}

/// Classical constants and the finite universe that unbounded
/// quantifiers range over in two-valued evaluation.
struct ClassicalEnv {
  std::map<std::string, HFSet> constants;
  std::vector<HFSet> universe;
};

namespace detail {

inline bool classical_rec(const FormulaPtr& f, const ClassicalEnv& env,
                          std::map<std::string, HFSet>& binds) {
  auto resolve = [&](const Term& t) -> const HFSet& {
    if (t.kind == TermKind::Variable) {
      auto it = binds.find(t.name);
      if (it == binds.end()) throw BindError("free variable '" + t.name + "'");
      return it->second;
    }
    auto it = env.constants.find(t.name);
    if (it == env.constants.end())
      throw BindError("unknown set constant '" + t.name + "'");
    return it->second;
  };
  auto with_binding = [&](const std::string& name, const HFSet& value, auto&& fn) {
    auto it = binds.find(name);
    std::optional<HFSet> saved;
    if (it != binds.end()) {
      saved = it->second;
      it->second = value;
    } else {
      binds.emplace(name, value);
    }
    bool result = fn();
    if (saved)
      binds.find(name)->second = *saved;
    else
      binds.erase(name);
    return result;
  };
  switch (f->kind) {
    case FormulaKind::Membership:
      return resolve(f->rhs).contains(resolve(f->lhs));
    case FormulaKind::Equality:
      return resolve(f->lhs) == resolve(f->rhs);
    case FormulaKind::Not:
      return !classical_rec(f->left, env, binds);
    case FormulaKind::And:
      return classical_rec(f->left, env, binds) && classical_rec(f->right, env, binds);
    case FormulaKind::Or:
      return classical_rec(f->left, env, binds) || classical_rec(f->right, env, binds);
    case FormulaKind::Implies:
      return !classical_rec(f->left, env, binds) || classical_rec(f->right, env, binds);
    case FormulaKind::Iff:
      return classical_rec(f->left, env, binds) == classical_rec(f->right, env, binds);
    case FormulaKind::BoundedForAll: {
      HFSet range = resolve(f->bound);
      for (const auto& x : range.elements())
        if (!with_binding(f->bound_var, x,
                          [&] { return classical_rec(f->left, env, binds); }))
          return false;
      return true;
    }
    case FormulaKind::BoundedExists: {
      HFSet range = resolve(f->bound);
      for (const auto& x : range.elements())
        if (with_binding(f->bound_var, x,
                         [&] { return classical_rec(f->left, env, binds); }))
          return true;
      return false;
    }
    case FormulaKind::ForAll:
      for (const auto& x : env.universe)
        if (!with_binding(f->bound_var, x,
                          [&] { return classical_rec(f->left, env, binds); }))
          return false;
      return true;
    case FormulaKind::Exists:
      for (const auto& x : env.universe)
        if (with_binding(f->bound_var, x,
                         [&] { return classical_rec(f->left, env, binds); }))
          return true;
      return false;
  }
  throw std::logic_error("unreachable formula kind");
}

}  // namespace detail

/// Two-valued Tarskian truth over hereditarily finite sets.
inline bool eval_classical(const FormulaPtr& f, const ClassicalEnv& env) {
  std::map<std::string, HFSet> binds;
  return detail::classical_rec(f, env, binds);
}

}  // namespace quset
