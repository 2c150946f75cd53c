#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ptrans/object.hpp"

namespace ptrans {

// Non-temporal first-order constraints over metavariables. Nodes are
// immutable and shared, so the Satis tables form a DAG rather than a tree.
enum class CKind { True, False, Eq, And, Or, Not, Exists };

struct CNode;
using Constraint = std::shared_ptr<const CNode>;

struct CNode {
    CKind kind = CKind::True;
    std::string var;          // Eq / Exists
    Sort sort = Sort::Expr;   // Exists
    ProgramObject value;      // Eq
    std::vector<Constraint> kids;
};

inline int c_compare(const Constraint& a, const Constraint& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
    case CKind::True:
    case CKind::False: return 0;
    case CKind::Eq:
        if (a->var != b->var) return a->var < b->var ? -1 : 1;
        if (a->value != b->value) return a->value < b->value ? -1 : 1;
        return 0;
    case CKind::Exists:
        if (a->var != b->var) return a->var < b->var ? -1 : 1;
        if (a->sort != b->sort) return a->sort < b->sort ? -1 : 1;
        return c_compare(a->kids[0], b->kids[0]);
    case CKind::Not: return c_compare(a->kids[0], b->kids[0]);
    case CKind::And:
    case CKind::Or: {
        if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
        for (size_t i = 0; i < a->kids.size(); ++i)
            if (int c = c_compare(a->kids[i], b->kids[i])) return c;
        return 0;
    }
    }
    return 0;
}

inline bool c_equal(const Constraint& a, const Constraint& b) { return c_compare(a, b) == 0; }

inline const Constraint& c_true() {
    static const Constraint c = std::make_shared<CNode>(CNode{CKind::True});
    return c;
}
inline const Constraint& c_false() {
    static const Constraint c = std::make_shared<CNode>(CNode{CKind::False});
    return c;
}

inline Constraint c_eq(std::string var, ProgramObject value) {
    CNode n;
    n.kind = CKind::Eq;
    n.var = std::move(var);
    n.value = std::move(value);
    return std::make_shared<CNode>(std::move(n));
}

// And/Or flatten nested nodes of the same kind, fold constants, and sort +
// deduplicate children; all of this preserves model sets.
inline Constraint c_and(std::vector<Constraint> kids);
inline Constraint c_or(std::vector<Constraint> kids);

inline Constraint c_and(std::vector<Constraint> kids) {
    std::vector<Constraint> flat;
    for (auto& k : kids) {
        if (k->kind == CKind::False) return c_false();
        if (k->kind == CKind::True) continue;
        if (k->kind == CKind::And)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(std::move(k));
    }
    std::sort(flat.begin(), flat.end(),
              [](const Constraint& a, const Constraint& b) { return c_compare(a, b) < 0; });
    flat.erase(std::unique(flat.begin(), flat.end(), c_equal), flat.end());
    // A metavariable equated with two distinct objects is unsatisfiable.
    for (size_t i = 0; i + 1 < flat.size(); ++i) {
        if (flat[i]->kind == CKind::Eq && flat[i + 1]->kind == CKind::Eq &&
            flat[i]->var == flat[i + 1]->var && flat[i]->value != flat[i + 1]->value)
            return c_false();
    }
    if (flat.empty()) return c_true();
    if (flat.size() == 1) return flat.front();
    CNode n;
    n.kind = CKind::And;
    n.kids = std::move(flat);
    return std::make_shared<CNode>(std::move(n));
}

inline Constraint c_or(std::vector<Constraint> kids) {
    std::vector<Constraint> flat;
    for (auto& k : kids) {
        if (k->kind == CKind::True) return c_true();
        if (k->kind == CKind::False) continue;
        if (k->kind == CKind::Or)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(std::move(k));
    }
    std::sort(flat.begin(), flat.end(),
              [](const Constraint& a, const Constraint& b) { return c_compare(a, b) < 0; });
    flat.erase(std::unique(flat.begin(), flat.end(), c_equal), flat.end());
    if (flat.empty()) return c_false();
    if (flat.size() == 1) return flat.front();
    CNode n;
    n.kind = CKind::Or;
    n.kids = std::move(flat);
    return std::make_shared<CNode>(std::move(n));
}

inline Constraint c_not(Constraint c) {
    if (c->kind == CKind::True) return c_false();
    if (c->kind == CKind::False) return c_true();
    if (c->kind == CKind::Not) return c->kids[0];
    CNode n;
    n.kind = CKind::Not;
    n.kids = {std::move(c)};
    return std::make_shared<CNode>(std::move(n));
}

// The quantifier wrapper is kept even when the body ignores the variable:
// an exists over an empty object pool is false, and only evaluation knows
// the pools.
inline Constraint c_exists(std::string var, Sort sort, Constraint body) {
    if (body->kind == CKind::False) return c_false();
    CNode n;
    n.kind = CKind::Exists;
    n.var = std::move(var);
    n.sort = sort;
    n.kids = {std::move(body)};
    return std::make_shared<CNode>(std::move(n));
}

inline std::string to_string(const Constraint& c) {
    switch (c->kind) {
    case CKind::True: return "true";
    case CKind::False: return "false";
    case CKind::Eq: return c->var + " = " + to_string(c->value);
    case CKind::Not: return "~" + to_string(c->kids[0]);
    case CKind::Exists:
        return "(exists " + c->var + ":" + std::string(to_string(c->sort)) + ". " +
               to_string(c->kids[0]) + ")";
    case CKind::And:
    case CKind::Or: {
        std::string sep = c->kind == CKind::And ? " /\\ " : " \\/ ";
        std::string out = "(";
        for (size_t i = 0; i < c->kids.size(); ++i) {
            if (i) out += sep;
            out += to_string(c->kids[i]);
        }
        return out + ")";
    }
    }
    return "?";
}

inline void free_vars(const Constraint& c, std::set<std::string>& bound,
                      std::map<std::string, Sort>& out) {
    switch (c->kind) {
    case CKind::Eq:
        if (!bound.count(c->var)) note_sort(out, c->var, sort_of(c->value));
        return;
    case CKind::Exists: {
        bool added = bound.insert(c->var).second;
        free_vars(c->kids[0], bound, out);
        if (added) bound.erase(c->var);
        return;
    }
    default:
        for (const Constraint& k : c->kids) free_vars(k, bound, out);
        return;
    }
}

inline std::map<std::string, Sort> free_vars(const Constraint& c) {
    std::set<std::string> bound;
    std::map<std::string, Sort> out;
    free_vars(c, bound, out);
    return out;
}

inline size_t dag_size(const Constraint& c, std::set<const CNode*>& seen) {
    if (!seen.insert(c.get()).second) return 0;
    size_t n = 1;
    for (const Constraint& k : c->kids) n += dag_size(k, seen);
    return n;
}

} // namespace ptrans
