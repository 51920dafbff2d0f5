#pragma once

#include "../oracle.hpp"

namespace lsync {

struct LabeledEdge {
    int source = 0;
    Symbol label = 0;
    int target = 0;
};

/// Finite labeled graph; its label language is a sofic shift.
struct LabeledGraph {
    Alphabet alphabet;
    int states = 0;
    std::vector<LabeledEdge> edges;

    bool right_resolving() const {
        std::set<std::pair<int, Symbol>> seen;
        for (const auto& e : edges) {
            if (!seen.emplace(e.source, e.label).second) return false;
        }
        return true;
    }
    bool left_resolving() const {
        std::set<std::pair<int, Symbol>> seen;
        for (const auto& e : edges) {
            if (!seen.emplace(e.target, e.label).second) return false;
        }
        return true;
    }
};

/// Restricts a graph to states lying on bi-infinite paths.
inline LabeledGraph essential_part(const LabeledGraph& g) {
    std::vector<bool> alive(static_cast<size_t>(g.states), true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> in(static_cast<size_t>(g.states), 0), out(static_cast<size_t>(g.states), 0);
        for (const auto& e : g.edges) {
            if (alive[static_cast<size_t>(e.source)] && alive[static_cast<size_t>(e.target)]) {
                ++out[static_cast<size_t>(e.source)];
                ++in[static_cast<size_t>(e.target)];
            }
        }
        for (int q = 0; q < g.states; ++q) {
            auto i = static_cast<size_t>(q);
            if (alive[i] && (in[i] == 0 || out[i] == 0)) {
                alive[i] = false;
                changed = true;
            }
        }
    }
    std::vector<int> remap(static_cast<size_t>(g.states), -1);
    LabeledGraph r;
    r.alphabet = g.alphabet;
    for (int q = 0; q < g.states; ++q) {
        if (alive[static_cast<size_t>(q)]) remap[static_cast<size_t>(q)] = r.states++;
    }
    for (const auto& e : g.edges) {
        int s = remap[static_cast<size_t>(e.source)], t = remap[static_cast<size_t>(e.target)];
        if (s >= 0 && t >= 0) r.edges.push_back({s, e.label, t});
    }
    return r;
}

/// Oracle for the label language of a labeled graph with at most 64 states.
///
/// The element of a word is its path relation: for every start state the set
/// of states reachable along a path carrying the word.
class SoficOracle final : public Oracle {
public:
    explicit SoficOracle(const LabeledGraph& graph) : graph_(essential_part(graph)) {
        if (graph_.states > 64) throw InvalidPresentation("sofic presentation exceeds 64 states");
        if (graph_.states == 0) throw InvalidPresentation("sofic presentation has empty language");
        const size_t k = graph_.alphabet.size();
        succ_.assign(k, std::vector<uint64_t>(static_cast<size_t>(graph_.states), 0));
        for (const auto& e : graph_.edges) {
            if (e.label < 0 || static_cast<size_t>(e.label) >= k) {
                throw InvalidPresentation("edge label outside alphabet");
            }
            succ_[static_cast<size_t>(e.label)][static_cast<size_t>(e.source)] |= bit(e.target);
        }
    }

    const Alphabet& alphabet() const override { return graph_.alphabet; }
    std::string kind() const override { return "sofic"; }
    const LabeledGraph& graph() const { return graph_; }

    Element identity() const override { return {0}; }

    std::optional<Element> extend_right(const Element& e, Symbol s) const override {
        const auto& sc = succ_[static_cast<size_t>(s)];
        std::vector<uint64_t> rows(static_cast<size_t>(graph_.states), 0);
        for (int i = 0; i < graph_.states; ++i) {
            uint64_t from = e[0] == 0 ? bit(i) : row(e, i);
            uint64_t to = 0;
            for (uint64_t m = from; m; m &= m - 1) to |= sc[static_cast<size_t>(__builtin_ctzll(m))];
            rows[static_cast<size_t>(i)] = to;
        }
        return pack(rows);
    }

    std::optional<Element> extend_left(Symbol s, const Element& e) const override {
        const auto& sc = succ_[static_cast<size_t>(s)];
        std::vector<uint64_t> rows(static_cast<size_t>(graph_.states), 0);
        for (int i = 0; i < graph_.states; ++i) {
            uint64_t to = 0;
            for (uint64_t m = sc[static_cast<size_t>(i)]; m; m &= m - 1) {
                int j = __builtin_ctzll(m);
                to |= e[0] == 0 ? bit(j) : row(e, j);
            }
            rows[static_cast<size_t>(i)] = to;
        }
        return pack(rows);
    }

    Element right_key(const Element& e, int) const override {
        if (e[0] == 0) return {0};
        uint64_t ends = 0;
        for (int i = 0; i < graph_.states; ++i) ends |= row(e, i);
        return split(1, ends);
    }

    Element left_key(const Element& e, int) const override {
        if (e[0] == 0) return {0};
        uint64_t starts = 0;
        for (int i = 0; i < graph_.states; ++i) {
            if (row(e, i)) starts |= bit(i);
        }
        return split(1, starts);
    }

    bool finite_monoid() const override { return true; }

private:
    static uint64_t bit(int i) { return uint64_t{1} << i; }

    static uint64_t row(const Element& e, int i) {
        auto lo = static_cast<uint32_t>(e[static_cast<size_t>(1 + 2 * i)]);
        auto hi = static_cast<uint32_t>(e[static_cast<size_t>(2 + 2 * i)]);
        return (uint64_t{hi} << 32) | lo;
    }

    static Element split(int32_t tag, uint64_t v) {
        return {tag, static_cast<int32_t>(static_cast<uint32_t>(v)),
                static_cast<int32_t>(static_cast<uint32_t>(v >> 32))};
    }

    std::optional<Element> pack(const std::vector<uint64_t>& rows) const {
        bool any = false;
        Element r{1};
        r.reserve(1 + 2 * rows.size());
        for (uint64_t v : rows) {
            any = any || v != 0;
            r.push_back(static_cast<int32_t>(static_cast<uint32_t>(v)));
            r.push_back(static_cast<int32_t>(static_cast<uint32_t>(v >> 32)));
        }
        if (!any) return std::nullopt;
        return r;
    }

    LabeledGraph graph_;
    std::vector<std::vector<uint64_t>> succ_;
};

}  // namespace lsync
