#pragma once

#include <algorithm>
#include <vector>

#include "ptrans/graph.hpp"
#include "ptrans/object.hpp"

namespace ptrans {

// Finite quantification pools, derived from what occurs syntactically in a
// tCFG. Pools are sorted and deduplicated, so extraction is deterministic.
struct Domain {
    std::vector<int> nodes;
    std::vector<int> threads;
    std::vector<EdgeLabel> labels;
    std::vector<Expr> exprs;
    std::vector<Type> types;
    std::vector<Instruction> instrs;

    size_t pool_size(Sort s) const {
        switch (s) {
        case Sort::Node: return nodes.size();
        case Sort::Thread: return threads.size();
        case Sort::Label: return labels.size();
        case Sort::Expr: return exprs.size();
        case Sort::Type: return types.size();
        case Sort::Instr: return instrs.size();
        }
        return 0;
    }

    ProgramObject object_at(Sort s, size_t i) const {
        switch (s) {
        case Sort::Node: return NodeRef{nodes[i]};
        case Sort::Thread: return ThreadRef{threads[i]};
        case Sort::Label: return labels[i];
        case Sort::Expr: return exprs[i];
        case Sort::Type: return types[i];
        case Sort::Instr: return instrs[i];
        }
        return NodeRef{};
    }

    // Index of an object in its sort's pool, or npos.
    static constexpr size_t npos = static_cast<size_t>(-1);
    size_t index_of(const ProgramObject& o) const {
        struct V {
            const Domain& d;
            size_t operator()(const NodeRef& n) const { return find(d.nodes, n.id); }
            size_t operator()(const ThreadRef& t) const { return find(d.threads, t.id); }
            size_t operator()(const EdgeLabel& l) const { return find(d.labels, l); }
            size_t operator()(const Expr& e) const { return find(d.exprs, e); }
            size_t operator()(const Type& t) const { return find(d.types, t); }
            size_t operator()(const Instruction& i) const { return find(d.instrs, i); }
            template <class T>
            static size_t find(const std::vector<T>& pool, const T& x) {
                auto it = std::lower_bound(pool.begin(), pool.end(), x);
                if (it == pool.end() || !(*it == x)) return npos;
                return static_cast<size_t>(it - pool.begin());
            }
        };
        return std::visit(V{*this}, o);
    }

    bool contains(const ProgramObject& o) const { return index_of(o) != npos; }
};

inline Domain extract_domain(const TCfg& g) {
    Domain d;
    std::set<int> nodes, threads;
    std::set<Expr> exprs;
    std::set<Type> types;
    std::set<Instruction> instrs;

    auto add_type = [&](const Type& t) {
        for (int s = t.stars; s >= 0; --s) types.insert(Type{t.is_var, t.var, s});
    };

    for (const auto& [tid, cfg] : g.threads) {
        threads.insert(tid);
        nodes.insert(cfg.nodes.begin(), cfg.nodes.end());
        for (const auto& [n, ins] : cfg.labels) {
            instrs.insert(ins);
            for_each_expr(ins, [&](const Expr& e) { exprs.insert(e); });
            for_each_type(ins, add_type);
        }
    }

    d.nodes.assign(nodes.begin(), nodes.end());
    d.threads.assign(threads.begin(), threads.end());
    d.labels = {EdgeLabel::Seq, EdgeLabel::BranchTrue, EdgeLabel::BranchFalse};
    d.exprs.assign(exprs.begin(), exprs.end());
    d.types.assign(types.begin(), types.end());
    d.instrs.assign(instrs.begin(), instrs.end());
    return d;
}

} // namespace ptrans
