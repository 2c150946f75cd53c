#pragma once

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "ptrans/graph.hpp"

namespace ptrans {

// Reachable cross-product state graph of a tCFG, built breadth-first from
// the all-start state. States are kept as compact indices; positions are
// aligned with thread_ids.
struct ProductGraph {
    const TCfg* graph = nullptr;
    std::vector<int> thread_ids;
    std::vector<std::vector<int>> positions;
    std::vector<std::vector<int>> succs;
    std::vector<std::vector<int>> preds;
    std::map<std::vector<int>, int> index;
    int q0 = 0;
    int exit = -1; // all-exit state, -1 if unreachable

    int size() const { return static_cast<int>(positions.size()); }

    ProductState state_of(int idx) const {
        ProductState q;
        for (size_t k = 0; k < thread_ids.size(); ++k) q[thread_ids[k]] = positions[idx][k];
        return q;
    }

    int node_of(int idx, int tid) const {
        for (size_t k = 0; k < thread_ids.size(); ++k)
            if (thread_ids[k] == tid) return positions[idx][k];
        throw WellFormednessError("unknown thread " + std::to_string(tid));
    }

    int index_of(const ProductState& q) const {
        std::vector<int> key;
        key.reserve(thread_ids.size());
        for (int tid : thread_ids) {
            auto it = q.find(tid);
            if (it == q.end())
                throw WellFormednessError("product state missing thread " + std::to_string(tid));
            key.push_back(it->second);
        }
        auto it = index.find(key);
        if (it == index.end()) throw WellFormednessError("state not in the reachable product");
        return it->second;
    }

    bool is_all_start(int idx) const { return idx == q0; }
    bool is_all_exit(int idx) const { return idx == exit; }
};

inline ProductGraph build_product(const TCfg& g, size_t budget = 1'000'000) {
    ProductGraph p;
    p.graph = &g;
    for (const auto& [tid, cfg] : g.threads) p.thread_ids.push_back(tid);

    std::vector<int> start, exit_key;
    for (int tid : p.thread_ids) {
        start.push_back(g.threads.at(tid).start);
        exit_key.push_back(g.threads.at(tid).exit);
    }

    auto intern = [&](const std::vector<int>& key) {
        auto it = p.index.find(key);
        if (it != p.index.end()) return it->second;
        if (p.positions.size() >= budget)
            throw ProductTooLarge("reachable product exceeds the state budget of " +
                                  std::to_string(budget));
        int idx = static_cast<int>(p.positions.size());
        p.index.emplace(key, idx);
        p.positions.push_back(key);
        p.succs.emplace_back();
        p.preds.emplace_back();
        return idx;
    };

    p.q0 = intern(start);
    std::deque<int> work{p.q0};
    while (!work.empty()) {
        int idx = work.front();
        work.pop_front();
        const std::vector<int>& pos = p.positions[idx];
        for (size_t k = 0; k < p.thread_ids.size(); ++k) {
            const Cfg& cfg = g.threads.at(p.thread_ids[k]);
            if (pos[k] == cfg.exit) continue;
            for (const Edge& e : out_edges(cfg, pos[k])) {
                std::vector<int> next = pos;
                next[k] = e.dst;
                bool fresh = !p.index.count(next);
                int nidx = intern(next);
                p.succs[idx].push_back(nidx);
                if (fresh) work.push_back(nidx);
            }
        }
        // Deterministic, duplicate-free adjacency.
        auto& ss = p.succs[idx];
        std::sort(ss.begin(), ss.end());
        ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    }
    for (int v = 0; v < p.size(); ++v)
        for (int w : p.succs[v]) p.preds[w].push_back(v);
    for (auto& ps : p.preds) {
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    }
    auto it = p.index.find(exit_key);
    p.exit = it == p.index.end() ? -1 : it->second;
    return p;
}

} // namespace ptrans
