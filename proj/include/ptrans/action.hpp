#pragma once

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "ptrans/graph.hpp"
#include "ptrans/object.hpp"

namespace ptrans {

// Action arguments are either concrete or metavariables.
struct NodeArg {
    bool is_var = false;
    int id = 0;
    std::string var;
    static NodeArg concrete(int id) { return {false, id, {}}; }
    static NodeArg metavar(std::string v) { return {true, 0, std::move(v)}; }
    auto operator<=>(const NodeArg&) const = default;
};

struct LabelArg {
    bool is_var = false;
    EdgeLabel label = EdgeLabel::Seq;
    std::string var;
    static LabelArg concrete(EdgeLabel l) { return {false, l, {}}; }
    static LabelArg metavar(std::string v) { return {true, EdgeLabel::Seq, std::move(v)}; }
    auto operator<=>(const LabelArg&) const = default;
};

struct AddEdgeAction {
    NodeArg n, m;
    LabelArg label;
    auto operator<=>(const AddEdgeAction&) const = default;
};
struct RemoveEdgeAction {
    NodeArg n, m;
    LabelArg label;
    auto operator<=>(const RemoveEdgeAction&) const = default;
};
struct SplitEdgeAction {
    NodeArg n, m;
    LabelArg label;
    Instruction instr;
    auto operator<=>(const SplitEdgeAction&) const = default;
};
struct ReplaceAction {
    NodeArg n;
    std::vector<Instruction> instrs; // nonempty
    auto operator<=>(const ReplaceAction&) const = default;
};

using Action = std::variant<AddEdgeAction, RemoveEdgeAction, SplitEdgeAction, ReplaceAction>;

namespace detail {

inline int resolve_node(const NodeArg& a, const Substitution& s) {
    if (!a.is_var) return a.id;
    const ProgramObject* o = s.find(a.var);
    if (!o) throw UnboundMetaVariable("node metavariable " + a.var + " is unbound");
    if (const NodeRef* n = std::get_if<NodeRef>(o)) return n->id;
    throw SortMismatch("metavariable " + a.var + " is not node-sorted");
}

inline EdgeLabel resolve_label(const LabelArg& a, const Substitution& s) {
    if (!a.is_var) return a.label;
    const ProgramObject* o = s.find(a.var);
    if (!o) throw UnboundMetaVariable("label metavariable " + a.var + " is unbound");
    if (const EdgeLabel* l = std::get_if<EdgeLabel>(o)) return *l;
    throw SortMismatch("metavariable " + a.var + " is not label-sorted");
}

inline Instruction resolve_instr(const Instruction& pat, const Substitution& s) {
    Instruction out = apply(s, pat);
    if (!is_ground(out))
        throw UnboundMetaVariable("instruction pattern " + to_string(pat) +
                                  " still contains metavariables after substitution");
    return out;
}

// Thread owning all the given nodes.
inline int owning_thread(const TCfg& g, const std::vector<int>& nodes) {
    int tid = -1;
    for (int n : nodes) {
        auto t = g.thread_of(n);
        if (!t) throw MissingNode("node " + std::to_string(n) + " does not exist");
        if (tid >= 0 && *t != tid)
            throw NodesInDifferentThreads("nodes " + std::to_string(nodes.front()) + " and " +
                                          std::to_string(n) + " live in different threads");
        tid = *t;
    }
    return tid;
}

// Smallest positive ids unused anywhere in the tCFG, ascending.
inline std::vector<int> fresh_node_ids(const TCfg& g, size_t count) {
    std::set<int> used;
    for (const auto& [tid, cfg] : g.threads) used.insert(cfg.nodes.begin(), cfg.nodes.end());
    std::vector<int> out;
    for (int cand = 1; out.size() < count; ++cand)
        if (!used.count(cand)) out.push_back(cand);
    return out;
}

} // namespace detail

inline TCfg apply_action(const Action& action, const Substitution& sub, const TCfg& g) {
    using namespace detail;
    struct V {
        const Substitution& sub;
        const TCfg& g;

        TCfg operator()(const AddEdgeAction& a) const {
            int n = resolve_node(a.n, sub), m = resolve_node(a.m, sub);
            EdgeLabel l = resolve_label(a.label, sub);
            int tid = owning_thread(g, {n, m});
            TCfg out = g;
            out.threads[tid].edges.insert(Edge{n, m, l});
            return out;
        }

        TCfg operator()(const RemoveEdgeAction& a) const {
            int n = resolve_node(a.n, sub), m = resolve_node(a.m, sub);
            EdgeLabel l = resolve_label(a.label, sub);
            int tid = owning_thread(g, {n, m});
            TCfg out = g;
            out.threads[tid].edges.erase(Edge{n, m, l}); // absent edge: no-op
            return out;
        }

        TCfg operator()(const SplitEdgeAction& a) const {
            int n = resolve_node(a.n, sub), m = resolve_node(a.m, sub);
            EdgeLabel l = resolve_label(a.label, sub);
            Instruction ins = resolve_instr(a.instr, sub);
            int tid = owning_thread(g, {n, m});
            const Cfg& cfg = g.threads.at(tid);
            if (!cfg.edges.count(Edge{n, m, l}))
                throw MissingEdge("no edge " + std::to_string(n) + " -" + to_string(l) + "-> " +
                                  std::to_string(m) + " to split");
            int fresh = fresh_node_ids(g, 1).front();
            TCfg out = g;
            Cfg& c = out.threads[tid];
            c.nodes.insert(fresh);
            c.edges.erase(Edge{n, m, l});
            c.edges.insert(Edge{n, fresh, l});
            c.edges.insert(Edge{fresh, m, EdgeLabel::Seq});
            c.labels.emplace(fresh, std::move(ins));
            return out;
        }

        TCfg operator()(const ReplaceAction& a) const {
            int n = resolve_node(a.n, sub);
            std::vector<Instruction> instrs;
            instrs.reserve(a.instrs.size());
            for (const Instruction& pat : a.instrs) instrs.push_back(resolve_instr(pat, sub));
            if (instrs.empty()) throw ActionError("replace needs at least one instruction");
            int tid = owning_thread(g, {n});

            size_t k = instrs.size();
            std::vector<int> chain{n};
            for (int f : fresh_node_ids(g, k - 1)) chain.push_back(f);

            TCfg out = g;
            Cfg& c = out.threads[tid];
            if (k > 1 && n == c.exit)
                throw ActionError("replacing the exit node with an instruction sequence would "
                                  "give the exit an outgoing edge");
            for (size_t j = 1; j < k; ++j) c.nodes.insert(chain[j]);
            // Re-source the out-edges of n to the last node of the chain.
            int last = chain.back();
            if (last != n) {
                std::vector<Edge> moved;
                for (auto it = c.edges.begin(); it != c.edges.end();) {
                    if (it->src == n) {
                        moved.push_back(Edge{last, it->dst, it->label});
                        it = c.edges.erase(it);
                    } else {
                        ++it;
                    }
                }
                c.edges.insert(moved.begin(), moved.end());
            }
            for (size_t j = 0; j + 1 < k; ++j)
                c.edges.insert(Edge{chain[j], chain[j + 1], EdgeLabel::Seq});
            for (size_t j = 0; j < k; ++j) c.labels[chain[j]] = instrs[j];
            return out;
        }
    };
    return std::visit(V{sub, g}, action);
}

// Left-to-right composition; any failure aborts the whole list.
inline TCfg apply_action_list(const std::vector<Action>& actions, const Substitution& sub,
                              const TCfg& g) {
    TCfg cur = g;
    for (const Action& a : actions) cur = apply_action(a, sub, cur);
    return cur;
}

inline void collect_vars(const Instruction& ins, std::map<std::string, Sort>& out);

inline void collect_vars(const Action& action, std::map<std::string, Sort>& out) {
    auto node = [&](const NodeArg& a) {
        if (a.is_var) note_sort(out, a.var, Sort::Node);
    };
    auto label = [&](const LabelArg& a) {
        if (a.is_var) note_sort(out, a.var, Sort::Label);
    };
    struct V {
        decltype(node)& nf;
        decltype(label)& lf;
        std::map<std::string, Sort>& out;
        void operator()(const AddEdgeAction& a) const { nf(a.n), nf(a.m), lf(a.label); }
        void operator()(const RemoveEdgeAction& a) const { nf(a.n), nf(a.m), lf(a.label); }
        void operator()(const SplitEdgeAction& a) const {
            nf(a.n), nf(a.m), lf(a.label);
            collect_vars(a.instr, out);
        }
        void operator()(const ReplaceAction& a) const {
            nf(a.n);
            for (const auto& i : a.instrs) collect_vars(i, out);
        }
    };
    std::visit(V{node, label, out}, action);
}

inline void collect_vars(const Instruction& ins, std::map<std::string, Sort>& out) {
    for_each_expr(ins, [&](const Expr& e) {
        if (e.is_var()) note_sort(out, e.name, Sort::Expr);
    });
    for_each_type(ins, [&](const Type& t) {
        if (t.is_var) note_sort(out, t.var, Sort::Type);
    });
}

} // namespace ptrans
