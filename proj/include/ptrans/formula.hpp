#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ptrans/action.hpp"
#include "ptrans/object.hpp"

namespace ptrans {

// Atomic predicates. Thread subscripts and most arguments may be
// metavariables.
struct ThreadArg {
    bool is_var = false;
    int id = 0;
    std::string var;
    static ThreadArg concrete(int id) { return {false, id, {}}; }
    static ThreadArg metavar(std::string v) { return {true, 0, std::move(v)}; }
    auto operator<=>(const ThreadArg&) const = default;
};

struct AtomNodeAt { // node_t(n)
    ThreadArg t;
    NodeArg n;
    auto operator<=>(const AtomNodeAt&) const = default;
};
struct AtomStmt { // stmt_t(i), i an instruction pattern
    ThreadArg t;
    Instruction pattern;
    auto operator<=>(const AtomStmt&) const = default;
};
struct AtomOut { // out_t(n', l)
    ThreadArg t;
    NodeArg n;
    LabelArg label;
    auto operator<=>(const AtomOut&) const = default;
};
struct AtomStart {
    auto operator<=>(const AtomStart&) const = default;
};
struct AtomExit {
    auto operator<=>(const AtomExit&) const = default;
};
enum class LangPred { Def, NotLoads, NotStores };
struct AtomLang { // def_t(e), not_loads_t(e), not_stores_t(e)
    LangPred pred;
    ThreadArg t;
    Expr e;
    auto operator<=>(const AtomLang&) const = default;
};

using Atom = std::variant<AtomNodeAt, AtomStmt, AtomOut, AtomStart, AtomExit, AtomLang>;

// Core FOCTL connectives. Derived forms (or, implies, forall, EF, AF, EG,
// AG) are expanded by the builders below and never appear in the AST.
enum class FKind { True, Atom, And, Not, AU, EU, AB, EB, Exists };

struct FNode;
using Formula = std::shared_ptr<const FNode>;

struct FNode {
    FKind kind = FKind::True;
    Atom atom;
    Formula lhs, rhs; // And/AU/EU/AB/EB use both, Not/Exists use lhs
    std::string var;  // Exists
};

inline Formula f_true() {
    static const Formula f = std::make_shared<FNode>();
    return f;
}
inline Formula f_atom(Atom a) {
    FNode n;
    n.kind = FKind::Atom;
    n.atom = std::move(a);
    return std::make_shared<FNode>(std::move(n));
}
inline Formula f_and(Formula a, Formula b) {
    FNode n;
    n.kind = FKind::And;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return std::make_shared<FNode>(std::move(n));
}
inline Formula f_not(Formula a) {
    FNode n;
    n.kind = FKind::Not;
    n.lhs = std::move(a);
    return std::make_shared<FNode>(std::move(n));
}
inline Formula f_binary(FKind k, Formula a, Formula b) {
    FNode n;
    n.kind = k;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return std::make_shared<FNode>(std::move(n));
}
inline Formula f_au(Formula a, Formula b) { return f_binary(FKind::AU, std::move(a), std::move(b)); }
inline Formula f_eu(Formula a, Formula b) { return f_binary(FKind::EU, std::move(a), std::move(b)); }
inline Formula f_ab(Formula a, Formula b) { return f_binary(FKind::AB, std::move(a), std::move(b)); }
inline Formula f_eb(Formula a, Formula b) { return f_binary(FKind::EB, std::move(a), std::move(b)); }
inline Formula f_exists(std::string var, Formula body) {
    FNode n;
    n.kind = FKind::Exists;
    n.var = std::move(var);
    n.lhs = std::move(body);
    return std::make_shared<FNode>(std::move(n));
}

inline Formula f_false() { return f_not(f_true()); }
inline Formula f_or(Formula a, Formula b) {
    return f_not(f_and(f_not(std::move(a)), f_not(std::move(b))));
}
inline Formula f_implies(Formula a, Formula b) {
    return f_not(f_and(std::move(a), f_not(std::move(b))));
}
inline Formula f_forall(std::string var, Formula body) {
    return f_not(f_exists(std::move(var), f_not(std::move(body))));
}
inline Formula f_ef(Formula a) { return f_eu(f_true(), std::move(a)); }
inline Formula f_af(Formula a) { return f_au(f_true(), std::move(a)); }
inline Formula f_eg(Formula a) { return f_not(f_af(f_not(std::move(a)))); }
inline Formula f_ag(Formula a) { return f_not(f_ef(f_not(std::move(a)))); }

inline void collect_vars(const Atom& atom, std::map<std::string, Sort>& out) {
    auto thread = [&](const ThreadArg& t) {
        if (t.is_var) note_sort(out, t.var, Sort::Thread);
    };
    struct V {
        decltype(thread)& tf;
        std::map<std::string, Sort>& out;
        void operator()(const AtomNodeAt& a) const {
            tf(a.t);
            if (a.n.is_var) note_sort(out, a.n.var, Sort::Node);
        }
        void operator()(const AtomStmt& a) const {
            tf(a.t);
            collect_vars(a.pattern, out);
        }
        void operator()(const AtomOut& a) const {
            tf(a.t);
            if (a.n.is_var) note_sort(out, a.n.var, Sort::Node);
            if (a.label.is_var) note_sort(out, a.label.var, Sort::Label);
        }
        void operator()(const AtomStart&) const {}
        void operator()(const AtomExit&) const {}
        void operator()(const AtomLang& a) const {
            tf(a.t);
            if (a.e.is_var()) note_sort(out, a.e.name, Sort::Expr);
        }
    };
    std::visit(V{thread, out}, atom);
}

namespace detail {
inline void walk_binders(const Formula& f, std::set<std::string>& out) {
    switch (f->kind) {
    case FKind::True:
    case FKind::Atom: return;
    case FKind::Not: walk_binders(f->lhs, out); return;
    case FKind::Exists: {
        if (!out.insert(f->var).second)
            throw SortMismatch("quantifier reuses the variable name " + f->var);
        walk_binders(f->lhs, out);
        return;
    }
    default:
        walk_binders(f->lhs, out);
        walk_binders(f->rhs, out);
        return;
    }
}

inline void walk_sorts(const Formula& f, std::map<std::string, Sort>& env,
                       const std::set<std::string>& all_binders,
                       std::vector<std::string>& scope) {
    switch (f->kind) {
    case FKind::True: return;
    case FKind::Atom: {
        std::map<std::string, Sort> here;
        collect_vars(f->atom, here);
        for (const auto& [v, s] : here) {
            if (all_binders.count(v) &&
                std::find(scope.begin(), scope.end(), v) == scope.end())
                throw SortMismatch("variable " + v + " used outside its quantifier");
            note_sort(env, v, s);
        }
        return;
    }
    case FKind::Not: walk_sorts(f->lhs, env, all_binders, scope); return;
    case FKind::Exists: {
        scope.push_back(f->var);
        walk_sorts(f->lhs, env, all_binders, scope);
        scope.pop_back();
        return;
    }
    default:
        walk_sorts(f->lhs, env, all_binders, scope);
        walk_sorts(f->rhs, env, all_binders, scope);
        return;
    }
}
} // namespace detail

// Sorts of every metavariable in the formula, quantified ones included.
// Each quantified name must be unique and stay inside its own scope, which
// keeps the name-to-sort map flat and capture-free.
inline std::map<std::string, Sort> infer_sorts(const Formula& f) {
    std::set<std::string> binders;
    detail::walk_binders(f, binders);
    std::map<std::string, Sort> env;
    std::vector<std::string> scope;
    detail::walk_sorts(f, env, binders, scope);
    return env;
}

inline std::set<std::string> bound_vars(const Formula& f) {
    std::set<std::string> out;
    detail::walk_binders(f, out);
    return out;
}

inline std::map<std::string, Sort> free_vars(const Formula& f) {
    std::map<std::string, Sort> env = infer_sorts(f);
    for (const std::string& b : bound_vars(f)) env.erase(b);
    return env;
}

} // namespace ptrans
