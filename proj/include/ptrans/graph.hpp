#pragma once

#include <algorithm>
#include <compare>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ptrans/ast.hpp"
#include "ptrans/errors.hpp"
#include "ptrans/object.hpp"

namespace ptrans {

struct Edge {
    int src = 0;
    int dst = 0;
    EdgeLabel label = EdgeLabel::Seq;
    auto operator<=>(const Edge&) const = default;
};

// A single thread's control flow graph. Values are immutable by
// convention: all operations build new graphs.
struct Cfg {
    std::set<int> nodes;
    std::set<Edge> edges;
    int start = 0;
    int exit = 0;
    std::map<int, Instruction> labels;

    auto operator<=>(const Cfg&) const = default;
};

struct TCfg {
    std::map<int, Cfg> threads;

    auto operator<=>(const TCfg&) const = default;

    std::optional<int> thread_of(int node) const {
        for (const auto& [tid, cfg] : threads)
            if (cfg.nodes.count(node)) return tid;
        return std::nullopt;
    }

    const Instruction& label_of(int node) const {
        for (const auto& [tid, cfg] : threads) {
            auto it = cfg.labels.find(node);
            if (it != cfg.labels.end()) return it->second;
        }
        throw MissingNode("no node " + std::to_string(node) + " in any thread");
    }
};

// State of the cross product: one current node per thread.
using ProductState = std::map<int, int>;

inline std::vector<Edge> out_edges(const Cfg& g, int node) {
    std::vector<Edge> out;
    auto it = g.edges.lower_bound(Edge{node, std::numeric_limits<int>::min(), EdgeLabel::Seq});
    for (; it != g.edges.end() && it->src == node; ++it) out.push_back(*it);
    return out;
}

// Structural invariants of a single CFG.
inline void validate_cfg(const Cfg& g, int tid = -1) {
    auto ctx = tid >= 0 ? " in thread " + std::to_string(tid) : std::string{};
    if (g.nodes.empty()) throw WellFormednessError("empty CFG" + ctx);
    if (!g.nodes.count(g.start))
        throw WellFormednessError("start node " + std::to_string(g.start) + " missing" + ctx);
    if (!g.nodes.count(g.exit))
        throw WellFormednessError("exit node " + std::to_string(g.exit) + " missing" + ctx);
    for (const Edge& e : g.edges) {
        if (!g.nodes.count(e.src) || !g.nodes.count(e.dst))
            throw WellFormednessError("edge " + std::to_string(e.src) + " -> " +
                                      std::to_string(e.dst) + " touches unknown node" + ctx);
        if (e.src == g.exit)
            throw WellFormednessError("exit node " + std::to_string(g.exit) +
                                      " has an outgoing edge" + ctx);
    }
    for (int n : g.nodes)
        if (!g.labels.count(n))
            throw WellFormednessError("node " + std::to_string(n) + " has no instruction" + ctx);
    for (const auto& [n, ins] : g.labels) {
        if (!g.nodes.count(n))
            throw WellFormednessError("label on unknown node " + std::to_string(n) + ctx);
        if (!is_ground(ins))
            throw WellFormednessError("instruction at node " + std::to_string(n) +
                                      " contains metavariables" + ctx);
    }
}

inline void validate_tcfg(const TCfg& g) {
    if (g.threads.empty()) throw WellFormednessError("tCFG has no threads");
    std::set<int> seen;
    for (const auto& [tid, cfg] : g.threads) {
        validate_cfg(cfg, tid);
        for (int n : cfg.nodes) {
            if (!seen.insert(n).second)
                throw WellFormednessError("node " + std::to_string(n) +
                                          " appears in more than one thread");
        }
    }
}

// Edge-shape discipline: a conditional branch has exactly one true and one
// false successor, every other non-exit node has exactly one seq successor,
// and the exit is a sink.
inline std::optional<std::string> well_formedness_violation(const TCfg& g) {
    for (const auto& [tid, cfg] : g.threads) {
        for (int n : cfg.nodes) {
            auto out = out_edges(cfg, n);
            if (n == cfg.exit) {
                if (!out.empty())
                    return "exit node " + std::to_string(n) + " has outgoing edges";
                continue;
            }
            int seq = 0, bt = 0, bf = 0;
            for (const Edge& e : out) {
                if (e.label == EdgeLabel::Seq) ++seq;
                if (e.label == EdgeLabel::BranchTrue) ++bt;
                if (e.label == EdgeLabel::BranchFalse) ++bf;
            }
            bool branch = std::holds_alternative<BrCond>(cfg.labels.at(n));
            if (branch) {
                if (seq != 0 || bt != 1 || bf != 1)
                    return "branch node " + std::to_string(n) +
                           " must have exactly one branch_true and one branch_false edge";
            } else {
                if (seq != 1 || bt != 0 || bf != 0)
                    return "node " + std::to_string(n) + " must have exactly one seq edge";
            }
        }
    }
    return std::nullopt;
}

inline void ensure_well_formed(const TCfg& g) {
    validate_tcfg(g);
    if (auto v = well_formedness_violation(g)) throw WellFormednessError(*v);
}

inline std::set<int> reachable_from(const Cfg& g, int root) {
    std::set<int> seen{root};
    std::deque<int> work{root};
    while (!work.empty()) {
        int n = work.front();
        work.pop_front();
        for (const Edge& e : out_edges(g, n))
            if (seen.insert(e.dst).second) work.push_back(e.dst);
    }
    return seen;
}

// Restricts every thread to the nodes reachable from its start. Rejects
// graphs whose exit would be discarded.
inline TCfg prune_unreachable(const TCfg& g) {
    TCfg out;
    for (const auto& [tid, cfg] : g.threads) {
        std::set<int> keep = reachable_from(cfg, cfg.start);
        if (!keep.count(cfg.exit))
            throw ExitUnreachable("exit node " + std::to_string(cfg.exit) +
                                  " of thread " + std::to_string(tid) +
                                  " is unreachable from its start");
        Cfg pruned;
        pruned.start = cfg.start;
        pruned.exit = cfg.exit;
        pruned.nodes = keep;
        for (const Edge& e : cfg.edges)
            if (keep.count(e.src) && keep.count(e.dst)) pruned.edges.insert(e);
        for (int n : keep) pruned.labels.emplace(n, cfg.labels.at(n));
        out.threads.emplace(tid, std::move(pruned));
    }
    return out;
}

// Asynchronous interleaving: exactly one thread advances along one of its
// out-edges per step, and a thread sitting at its exit is frozen.
inline std::set<ProductState> product_successors(const TCfg& g, const ProductState& q) {
    std::set<ProductState> next;
    for (const auto& [tid, cfg] : g.threads) {
        auto it = q.find(tid);
        if (it == q.end())
            throw WellFormednessError("product state missing thread " + std::to_string(tid));
        int at = it->second;
        if (!cfg.nodes.count(at))
            throw WellFormednessError("product state points at unknown node " +
                                      std::to_string(at));
        if (at == cfg.exit) continue;
        for (const Edge& e : out_edges(cfg, at)) {
            ProductState q2 = q;
            q2[tid] = e.dst;
            next.insert(std::move(q2));
        }
    }
    return next;
}

inline ProductState initial_state(const TCfg& g) {
    ProductState q;
    for (const auto& [tid, cfg] : g.threads) q[tid] = cfg.start;
    return q;
}

inline ProductState exit_state(const TCfg& g) {
    ProductState q;
    for (const auto& [tid, cfg] : g.threads) q[tid] = cfg.exit;
    return q;
}

} // namespace ptrans
