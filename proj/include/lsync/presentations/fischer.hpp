#pragma once

#include <map>

#include "sofic.hpp"

namespace lsync {

inline bool strongly_connected(int n, const std::vector<std::pair<int, int>>& arcs) {
    if (n == 0) return false;
    for (bool forward : {true, false}) {
        std::vector<bool> seen(static_cast<size_t>(n), false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [a, b] : arcs) {
                if (!forward) std::swap(a, b);
                if (a == u && !seen[static_cast<size_t>(b)]) {
                    seen[static_cast<size_t>(b)] = true;
                    stack.push_back(b);
                }
            }
        }
        if (!std::all_of(seen.begin(), seen.end(), [](bool x) { return x; })) return false;
    }
    return true;
}

/// Minimal left-resolving presentation of an irreducible sofic shift.
///
/// States of the predecessor-set automaton (subsets of the original states,
/// moved by label predecessors) are generated from the full state set; the
/// unique terminal strongly connected part is minimized by predecessor
/// language and read back as a labeled graph.
inline LabeledGraph fischer_cover(const LabeledGraph& input) {
    LabeledGraph g = essential_part(input);
    if (g.states > 64) throw InvalidPresentation("sofic presentation exceeds 64 states");
    std::vector<std::pair<int, int>> arcs;
    for (const auto& e : g.edges) arcs.emplace_back(e.source, e.target);
    if (!strongly_connected(g.states, arcs)) throw NotIrreducible("presentation is not irreducible");

    const auto k = static_cast<Symbol>(g.alphabet.size());
    auto pred = [&](uint64_t set, Symbol a) {
        uint64_t r = 0;
        for (const auto& e : g.edges) {
            if (e.label == a && (set >> e.target & 1)) r |= uint64_t{1} << e.source;
        }
        return r;
    };

    std::map<uint64_t, int> index;
    std::vector<uint64_t> sets;
    std::vector<std::vector<int>> trans;  // trans[i][a]: predecessor subset, -1 if empty
    uint64_t full = g.states == 64 ? ~uint64_t{0} : (uint64_t{1} << g.states) - 1;
    index[full] = 0;
    sets.push_back(full);
    for (size_t i = 0; i < sets.size(); ++i) {
        std::vector<int> row(static_cast<size_t>(k), -1);
        for (Symbol a = 0; a < k; ++a) {
            uint64_t p = pred(sets[i], a);
            if (!p) continue;
            auto [it, fresh] = index.emplace(p, static_cast<int>(sets.size()));
            if (fresh) sets.push_back(p);
            row[static_cast<size_t>(a)] = it->second;
        }
        trans.push_back(std::move(row));
    }
    const int n = static_cast<int>(sets.size());

    // Terminal strongly connected components via reachability closure.
    std::vector<std::vector<bool>> reach(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
    for (int i = 0; i < n; ++i) {
        std::vector<int> stack{i};
        reach[static_cast<size_t>(i)][static_cast<size_t>(i)] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : trans[static_cast<size_t>(u)]) {
                if (v >= 0 && !reach[static_cast<size_t>(i)][static_cast<size_t>(v)]) {
                    reach[static_cast<size_t>(i)][static_cast<size_t>(v)] = true;
                    stack.push_back(v);
                }
            }
        }
    }
    int root = -1;
    size_t best = 65;
    for (int i = 0; i < n; ++i) {
        bool terminal = true;
        for (int j = 0; j < n && terminal; ++j) {
            if (reach[static_cast<size_t>(i)][static_cast<size_t>(j)] &&
                !reach[static_cast<size_t>(j)][static_cast<size_t>(i)]) {
                terminal = false;
            }
        }
        auto card = static_cast<size_t>(__builtin_popcountll(sets[static_cast<size_t>(i)]));
        if (terminal && card < best) {
            best = card;
            root = i;
        }
    }
    std::vector<int> comp;
    for (int j = 0; j < n; ++j) {
        if (reach[static_cast<size_t>(root)][static_cast<size_t>(j)]) comp.push_back(j);
    }

    // Moore refinement by predecessor language inside the component.
    std::map<int, int> cls;
    for (int s : comp) cls[s] = 0;
    size_t count = 1;
    while (true) {
        std::map<std::vector<int>, int> sig;
        std::map<int, int> next;
        for (int s : comp) {
            std::vector<int> key{cls[s]};
            for (int t : trans[static_cast<size_t>(s)]) key.push_back(t < 0 ? -1 : cls[t]);
            auto [it, fresh] = sig.emplace(key, static_cast<int>(sig.size()));
            next[s] = it->second;
        }
        cls = std::move(next);
        if (sig.size() == count) break;
        count = sig.size();
    }

    // Renumber classes by first appearance in subset order.
    std::map<int, int> renum;
    for (int s : comp) renum.emplace(cls[s], static_cast<int>(renum.size()));
    LabeledGraph out;
    out.alphabet = g.alphabet;
    out.states = static_cast<int>(renum.size());
    std::set<std::tuple<int, Symbol, int>> edges;
    for (int s : comp) {
        for (Symbol a = 0; a < k; ++a) {
            int t = trans[static_cast<size_t>(s)][static_cast<size_t>(a)];
            if (t < 0) continue;
            edges.emplace(renum[cls[t]], a, renum[cls[s]]);
        }
    }
    for (auto [s, a, t] : edges) out.edges.push_back({s, a, t});
    return out;
}

}  // namespace lsync
