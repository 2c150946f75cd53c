#pragma once

#include <vector>

#include "ptrans/atoms.hpp"
#include "ptrans/domain.hpp"
#include "ptrans/product.hpp"

namespace ptrans {

namespace detail {

inline bool atom_holds(const Atom& atom, const Substitution& sub, const TCfg& g,
                       const ProductState& q) {
    Constraint c = eval_atom(atom, sub, g, q);
    if (c->kind == CKind::True) return true;
    if (c->kind == CKind::False) return false;
    throw UnboundVariable("atom still mentions unbound metavariables: " + to_string(c));
}

// Labels every product state with the truth of `f` under the ground
// substitution. Until operators are least fixpoints; the back-to operators
// use the same fixpoints along the predecessor relation.
inline std::vector<bool> sat_states(const Formula& f, const Substitution& sub,
                                    const ProductGraph& prod, const Domain& dom,
                                    const std::map<std::string, Sort>& sorts) {
    const TCfg& g = *prod.graph;
    int n = prod.size();
    auto result = std::vector<bool>(static_cast<size_t>(n), false);

    auto until_fixpoint = [&](const std::vector<bool>& inv, const std::vector<bool>& fin,
                              const std::vector<std::vector<int>>& step, bool universal) {
        std::vector<bool> in(fin);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < n; ++v) {
                if (in[v] || !inv[v] || step[v].empty()) continue;
                bool ok = universal;
                for (int w : step[v]) {
                    bool hit = in[w];
                    if (universal ? !hit : hit) {
                        ok = !universal;
                        break;
                    }
                }
                if (ok) in[v] = true, changed = true;
            }
        }
        return in;
    };

    switch (f->kind) {
    case FKind::True:
        result.assign(static_cast<size_t>(n), true);
        return result;
    case FKind::Atom:
        for (int v = 0; v < n; ++v) result[v] = atom_holds(f->atom, sub, g, prod.state_of(v));
        return result;
    case FKind::And: {
        std::vector<bool> a = sat_states(f->lhs, sub, prod, dom, sorts);
        std::vector<bool> b = sat_states(f->rhs, sub, prod, dom, sorts);
        for (int v = 0; v < n; ++v) result[v] = a[v] && b[v];
        return result;
    }
    case FKind::Not: {
        std::vector<bool> a = sat_states(f->lhs, sub, prod, dom, sorts);
        for (int v = 0; v < n; ++v) result[v] = !a[v];
        return result;
    }
    case FKind::EU:
    case FKind::AU: {
        std::vector<bool> inv = sat_states(f->lhs, sub, prod, dom, sorts);
        std::vector<bool> fin = sat_states(f->rhs, sub, prod, dom, sorts);
        return until_fixpoint(inv, fin, prod.succs, f->kind == FKind::AU);
    }
    case FKind::EB:
    case FKind::AB: {
        std::vector<bool> inv = sat_states(f->lhs, sub, prod, dom, sorts);
        std::vector<bool> fin = sat_states(f->rhs, sub, prod, dom, sorts);
        return until_fixpoint(inv, fin, prod.preds, f->kind == FKind::AB);
    }
    case FKind::Exists: {
        auto it = sorts.find(f->var);
        if (it == sorts.end()) {
            // The body never uses the variable; semantics still require a
            // witness, so the result is empty only over an empty pool. Any
            // nonempty pool works; nodes always exist.
            return sat_states(f->lhs, sub, prod, dom, sorts);
        }
        Sort sort = it->second;
        for (size_t i = 0; i < dom.pool_size(sort); ++i) {
            Substitution ext = sub;
            ext.bindings.insert_or_assign(f->var, dom.object_at(sort, i));
            std::vector<bool> a = sat_states(f->lhs, ext, prod, dom, sorts);
            for (int v = 0; v < n; ++v) result[v] = result[v] || a[v];
        }
        return result;
    }
    }
    return result;
}

} // namespace detail

// Reference semantics of the satisfaction relation, evaluated per ground
// substitution. `sub` must bind every free variable of `f`.
inline bool satisfies(const TCfg& g, const Substitution& sub, const ProductState& q,
                      const Formula& f, const ProductGraph& prod, const Domain& dom) {
    std::map<std::string, Sort> sorts = infer_sorts(f);
    std::vector<bool> states = detail::sat_states(f, sub, prod, dom, sorts);
    (void)g;
    return states[static_cast<size_t>(prod.index_of(q))];
}

inline bool satisfies(const TCfg& g, const Substitution& sub, const ProductState& q,
                      const Formula& f) {
    ProductGraph prod = build_product(g);
    Domain dom = extract_domain(g);
    return satisfies(g, sub, q, f, prod, dom);
}

} // namespace ptrans
