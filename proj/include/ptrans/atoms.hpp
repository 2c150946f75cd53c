#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptrans/constraint.hpp"
#include "ptrans/formula.hpp"
#include "ptrans/graph.hpp"

namespace ptrans {

namespace detail {

// Unification of one pattern position against a ground value, rendered as
// equality constraints.
inline Constraint unify_expr(const Expr& pat, const Expr& ground) {
    if (pat.is_var()) return c_eq(pat.name, ground);
    return pat == ground ? c_true() : c_false();
}

inline Constraint unify_type(const Type& pat, const Type& ground) {
    if (!pat.is_var) return pat == ground ? c_true() : c_false();
    if (ground.is_var || ground.stars < pat.stars) return c_false();
    return c_eq(pat.var, Type::int_ty(ground.stars - pat.stars));
}

} // namespace detail

// Most general unifier of an instruction pattern against a ground
// instruction, as a conjunction of bindings (CFalse when the shapes differ).
// A pattern variable used twice yields two equations; the conjunction is
// unsatisfiable unless they agree.
inline Constraint unify_instruction(const Instruction& pattern, const Instruction& ground) {
    using detail::unify_expr;
    using detail::unify_type;
    if (pattern.index() != ground.index()) return c_false();
    struct V {
        const Instruction& ground;
        Constraint operator()(const Arith& p) const {
            const auto& g = std::get<Arith>(ground);
            if (p.op != g.op) return c_false();
            return c_and({unify_expr(p.dst, g.dst), unify_type(p.ty, g.ty),
                          unify_expr(p.lhs, g.lhs), unify_expr(p.rhs, g.rhs)});
        }
        Constraint operator()(const Icmp& p) const {
            const auto& g = std::get<Icmp>(ground);
            if (p.cmp != g.cmp) return c_false();
            return c_and({unify_expr(p.dst, g.dst), unify_type(p.ty, g.ty),
                          unify_expr(p.lhs, g.lhs), unify_expr(p.rhs, g.rhs)});
        }
        Constraint operator()(const BrCond& p) const {
            return unify_expr(p.cond, std::get<BrCond>(ground).cond);
        }
        Constraint operator()(const Br&) const { return c_true(); }
        Constraint operator()(const Call& p) const {
            const auto& g = std::get<Call>(ground);
            if (p.args.size() != g.args.size()) return c_false();
            std::vector<Constraint> parts{unify_expr(p.dst, g.dst), unify_type(p.ty, g.ty)};
            for (size_t i = 0; i < p.args.size(); ++i)
                parts.push_back(unify_expr(p.args[i], g.args[i]));
            return c_and(std::move(parts));
        }
        Constraint operator()(const Return& p) const {
            return unify_expr(p.value, std::get<Return>(ground).value);
        }
        Constraint operator()(const Alloca& p) const {
            const auto& g = std::get<Alloca>(ground);
            return c_and({unify_expr(p.dst, g.dst), unify_type(p.ty, g.ty)});
        }
        Constraint operator()(const Load& p) const {
            const auto& g = std::get<Load>(ground);
            return c_and({unify_expr(p.dst, g.dst), unify_type(p.ptr_ty, g.ptr_ty),
                          unify_expr(p.addr, g.addr)});
        }
        Constraint operator()(const Store& p) const {
            const auto& g = std::get<Store>(ground);
            return c_and({unify_type(p.val_ty, g.val_ty), unify_expr(p.value, g.value),
                          unify_type(p.ptr_ty, g.ptr_ty), unify_expr(p.addr, g.addr)});
        }
        Constraint operator()(const IsPointer& p) const {
            return unify_expr(p.value, std::get<IsPointer>(ground).value);
        }
    };
    return std::visit(V{ground}, pattern);
}

// def / not_loads / not_stores at the instruction a thread is sitting on.
// def holds of the destination the instruction writes, and of a global a
// store writes through literally; aliased writes are not tracked.
inline Constraint eval_lang_atom(LangPred pred, const Instruction& ins, const Expr& arg,
                                 const Substitution& sub) {
    Expr e = arg;
    if (arg.is_var()) {
        if (const ProgramObject* o = sub.find(arg.name)) {
            if (const Expr* r = std::get_if<Expr>(o))
                e = *r;
            else
                throw UnsortableAtom("argument " + arg.name +
                                     " of a language predicate resolves to a non-expression "
                                     "object");
        }
    }
    auto matches = [&](const Expr& ground) -> Constraint {
        return detail::unify_expr(e, ground);
    };
    switch (pred) {
    case LangPred::Def: {
        std::vector<Constraint> ways;
        if (std::optional<Expr> dst = dst_of(ins)) ways.push_back(matches(*dst));
        if (const Store* st = std::get_if<Store>(&ins)) {
            if (st->addr.kind == Expr::Kind::Global) ways.push_back(matches(st->addr));
        }
        return c_or(std::move(ways));
    }
    case LangPred::NotLoads: {
        if (const Load* ld = std::get_if<Load>(&ins)) return c_not(matches(ld->addr));
        return c_true();
    }
    case LangPred::NotStores: {
        if (const Store* st = std::get_if<Store>(&ins)) return c_not(matches(st->addr));
        return c_true();
    }
    }
    return c_false();
}

// Evaluates one atom at a product state, yielding a constraint over the
// atom's unresolved metavariables. Bindings already present in `sub` are
// substituted first; an unbound thread subscript expands to a disjunction
// over the threads of the graph.
inline Constraint eval_atom(const Atom& atom, const Substitution& sub, const TCfg& g,
                            const ProductState& q) {
    auto resolve_thread = [&](const ThreadArg& t) -> std::optional<int> {
        if (!t.is_var) return t.id;
        if (const ProgramObject* o = sub.find(t.var)) {
            if (const ThreadRef* r = std::get_if<ThreadRef>(o)) return r->id;
            throw SortMismatch("metavariable " + t.var + " is not thread-sorted");
        }
        return std::nullopt;
    };

    // Builds the ground-thread constraint, then disjoins over all threads
    // when the subscript is open.
    auto over_threads = [&](const ThreadArg& t,
                            auto&& per_thread) -> Constraint {
        if (std::optional<int> tid = resolve_thread(t)) {
            if (!g.threads.count(*tid)) return c_false();
            return per_thread(*tid);
        }
        std::vector<Constraint> cases;
        for (const auto& [tid, cfg] : g.threads)
            cases.push_back(c_and({c_eq(t.var, ThreadRef{tid}), per_thread(tid)}));
        return c_or(std::move(cases));
    };

    auto node_constraint = [&](const NodeArg& n, int ground) -> Constraint {
        if (n.is_var) {
            if (const ProgramObject* o = sub.find(n.var)) {
                if (const NodeRef* r = std::get_if<NodeRef>(o))
                    return r->id == ground ? c_true() : c_false();
                throw SortMismatch("metavariable " + n.var + " is not node-sorted");
            }
            return c_eq(n.var, NodeRef{ground});
        }
        return n.id == ground ? c_true() : c_false();
    };

    auto label_constraint = [&](const LabelArg& l, EdgeLabel ground) -> Constraint {
        if (l.is_var) {
            if (const ProgramObject* o = sub.find(l.var)) {
                if (const EdgeLabel* r = std::get_if<EdgeLabel>(o))
                    return *r == ground ? c_true() : c_false();
                throw SortMismatch("metavariable " + l.var + " is not label-sorted");
            }
            return c_eq(l.var, ground);
        }
        return l.label == ground ? c_true() : c_false();
    };

    struct V {
        const Substitution& sub;
        const TCfg& g;
        const ProductState& q;
        decltype(over_threads)& threads;
        decltype(node_constraint)& node;
        decltype(label_constraint)& label;

        Constraint operator()(const AtomNodeAt& a) const {
            return threads(a.t, [&](int tid) { return node(a.n, q.at(tid)); });
        }
        Constraint operator()(const AtomStmt& a) const {
            return threads(a.t, [&](int tid) {
                Instruction pat = apply(sub, a.pattern);
                return unify_instruction(pat, g.threads.at(tid).labels.at(q.at(tid)));
            });
        }
        Constraint operator()(const AtomOut& a) const {
            return threads(a.t, [&](int tid) {
                std::vector<Constraint> cases;
                for (const Edge& e : out_edges(g.threads.at(tid), q.at(tid)))
                    cases.push_back(c_and({node(a.n, e.dst), label(a.label, e.label)}));
                return c_or(std::move(cases));
            });
        }
        Constraint operator()(const AtomStart&) const {
            for (const auto& [tid, cfg] : g.threads)
                if (q.at(tid) != cfg.start) return c_false();
            return c_true();
        }
        Constraint operator()(const AtomExit&) const {
            for (const auto& [tid, cfg] : g.threads)
                if (q.at(tid) != cfg.exit) return c_false();
            return c_true();
        }
        Constraint operator()(const AtomLang& a) const {
            return threads(a.t, [&](int tid) {
                return eval_lang_atom(a.pred, g.threads.at(tid).labels.at(q.at(tid)), a.e, sub);
            });
        }
    };
    return std::visit(V{sub, g, q, over_threads, node_constraint, label_constraint}, atom);
}

} // namespace ptrans
