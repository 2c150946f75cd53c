#pragma once

#include <compare>
#include <map>
#include <string>
#include <variant>

#include "ptrans/ast.hpp"
#include "ptrans/errors.hpp"

namespace ptrans {

enum class EdgeLabel { Seq, BranchTrue, BranchFalse };

inline const char* to_string(EdgeLabel l) {
    switch (l) {
    case EdgeLabel::Seq: return "seq";
    case EdgeLabel::BranchTrue: return "branch_true";
    case EdgeLabel::BranchFalse: return "branch_false";
    }
    return "?";
}

// Node and thread ids wrapped so the ProgramObject variant can tell them apart.
struct NodeRef {
    int id = 0;
    auto operator<=>(const NodeRef&) const = default;
};
struct ThreadRef {
    int id = 0;
    auto operator<=>(const ThreadRef&) const = default;
};

enum class Sort { Node, Thread, Label, Expr, Type, Instr };

inline const char* to_string(Sort s) {
    switch (s) {
    case Sort::Node: return "node";
    case Sort::Thread: return "thread";
    case Sort::Label: return "label";
    case Sort::Expr: return "expr";
    case Sort::Type: return "type";
    case Sort::Instr: return "instr";
    }
    return "?";
}

// Anything a metavariable can denote.
using ProgramObject = std::variant<NodeRef, ThreadRef, EdgeLabel, Expr, Type, Instruction>;

inline Sort sort_of(const ProgramObject& o) {
    struct V {
        Sort operator()(const NodeRef&) const { return Sort::Node; }
        Sort operator()(const ThreadRef&) const { return Sort::Thread; }
        Sort operator()(const EdgeLabel&) const { return Sort::Label; }
        Sort operator()(const Expr&) const { return Sort::Expr; }
        Sort operator()(const Type&) const { return Sort::Type; }
        Sort operator()(const Instruction&) const { return Sort::Instr; }
    };
    return std::visit(V{}, o);
}

inline std::string to_string(const ProgramObject& o) {
    struct V {
        std::string operator()(const NodeRef& n) const { return "@n" + std::to_string(n.id); }
        std::string operator()(const ThreadRef& t) const { return std::to_string(t.id); }
        std::string operator()(const EdgeLabel& l) const { return to_string(l); }
        std::string operator()(const Expr& e) const { return to_string(e); }
        std::string operator()(const Type& t) const { return to_string(t); }
        std::string operator()(const Instruction& i) const { return to_string(i); }
    };
    return std::visit(V{}, o);
}

// Records the sort a metavariable is used at, rejecting conflicting uses.
inline void note_sort(std::map<std::string, Sort>& env, const std::string& var, Sort s) {
    auto [it, inserted] = env.emplace(var, s);
    if (!inserted && it->second != s)
        throw SortMismatch("metavariable " + var + " used both as " + to_string(it->second) +
                           " and " + to_string(s));
}

// Finite sort-consistent map from metavariable names to program objects.
struct Substitution {
    std::map<std::string, ProgramObject> bindings;

    bool contains(const std::string& v) const { return bindings.count(v) != 0; }

    const ProgramObject* find(const std::string& v) const {
        auto it = bindings.find(v);
        return it == bindings.end() ? nullptr : &it->second;
    }

    // Binding an already-bound variable to a different object is a sort
    // bookkeeping bug in the caller, not a solver failure.
    void bind(const std::string& v, ProgramObject o) {
        auto it = bindings.find(v);
        if (it != bindings.end()) {
            if (!(it->second == o))
                throw SortMismatch("metavariable " + v + " bound twice to different objects");
            return;
        }
        bindings.emplace(v, std::move(o));
    }

    auto operator<=>(const Substitution&) const = default;
};

inline std::string to_string(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, o] : s.bindings) {
        if (!first) out += ", ";
        first = false;
        out += v + " -> " + to_string(o);
    }
    return out + "}";
}

// Applies a substitution to pattern terms. Unbound variables stay in place.
inline Expr apply(const Substitution& s, const Expr& e) {
    if (!e.is_var()) return e;
    if (const ProgramObject* o = s.find(e.name)) {
        if (const Expr* r = std::get_if<Expr>(o)) return *r;
        throw SortMismatch("metavariable " + e.name + " is not expression-sorted");
    }
    return e;
}

inline Type apply(const Substitution& s, const Type& t) {
    if (!t.is_var) return t;
    if (const ProgramObject* o = s.find(t.var)) {
        if (const Type* r = std::get_if<Type>(o)) {
            if (r->is_var) return Type::var_ty(r->var, r->stars + t.stars);
            return Type::int_ty(r->stars + t.stars);
        }
        throw SortMismatch("metavariable " + t.var + " is not type-sorted");
    }
    return t;
}

inline Instruction apply(const Substitution& s, const Instruction& ins) {
    struct V {
        const Substitution& s;
        Instruction operator()(Arith i) const {
            i.dst = apply(s, i.dst), i.ty = apply(s, i.ty);
            i.lhs = apply(s, i.lhs), i.rhs = apply(s, i.rhs);
            return i;
        }
        Instruction operator()(Icmp i) const {
            i.dst = apply(s, i.dst), i.ty = apply(s, i.ty);
            i.lhs = apply(s, i.lhs), i.rhs = apply(s, i.rhs);
            return i;
        }
        Instruction operator()(BrCond i) const {
            i.cond = apply(s, i.cond);
            return i;
        }
        Instruction operator()(Br i) const { return i; }
        Instruction operator()(Call i) const {
            i.dst = apply(s, i.dst), i.ty = apply(s, i.ty);
            for (auto& a : i.args) a = apply(s, a);
            return i;
        }
        Instruction operator()(Return i) const {
            i.value = apply(s, i.value);
            return i;
        }
        Instruction operator()(Alloca i) const {
            i.dst = apply(s, i.dst), i.ty = apply(s, i.ty);
            return i;
        }
        Instruction operator()(Load i) const {
            i.dst = apply(s, i.dst), i.ptr_ty = apply(s, i.ptr_ty);
            i.addr = apply(s, i.addr);
            return i;
        }
        Instruction operator()(Store i) const {
            i.val_ty = apply(s, i.val_ty), i.value = apply(s, i.value);
            i.ptr_ty = apply(s, i.ptr_ty), i.addr = apply(s, i.addr);
            return i;
        }
        Instruction operator()(IsPointer i) const {
            i.value = apply(s, i.value);
            return i;
        }
    };
    return std::visit(V{s}, ins);
}

} // namespace ptrans
