#pragma once

#include "../oracle.hpp"

namespace lsync {

struct GraphEdge {
    std::string name;
    int source = 0;
    int target = 0;
};

/// Directed graph (V, E) underlying a graph inverse semigroup.
struct InnerGraph {
    std::vector<std::string> vertices;
    std::vector<GraphEdge> edges;

    int vertex(const std::string& name) const {
        for (size_t i = 0; i < vertices.size(); ++i) {
            if (vertices[i] == name) return static_cast<int>(i);
        }
        throw InvalidPresentation("unknown vertex '" + name + "'");
    }
    int edge(const std::string& name) const {
        for (size_t i = 0; i < edges.size(); ++i) {
            if (edges[i].name == name) return static_cast<int>(i);
        }
        throw InvalidPresentation("unknown edge '" + name + "'");
    }
};

/// A generator of the graph inverse semigroup: e-, P_v or e+.
struct Generator {
    enum class Kind { Minus, Idempotent, Plus } kind = Kind::Minus;
    int index = 0;  ///< edge index, or vertex index for idempotents
};

/// Normal form of a nonzero element: plus-block, idempotent, minus-block.
///
/// e- runs from s(e) to r(e) and e+ from r(e) to s(e); since f-g+ always
/// reduces (to P_{s(f)} or 0), every nonzero product can be brought to the
/// shape p1+ ... pa+ P_m n1- ... nb-. The empty element is the adjoined unit.
struct NormalForm {
    bool unit = true;
    int mid = 0;
    std::vector<int> plus;
    std::vector<int> minus;

    bool operator==(const NormalForm&) const = default;
};

/// Graph inverse semigroup with adjoined unit, elements encoded for oracles as
/// {0} (unit) or {1, mid, |plus|, plus..., minus...}.
class GraphInverseSemigroup {
public:
    explicit GraphInverseSemigroup(InnerGraph g) : g_(std::move(g)) {
        if (g_.vertices.empty()) throw InvalidPresentation("graph has no vertices");
        for (const auto& e : g_.edges) {
            if (e.source < 0 || e.target < 0 || e.source >= nv() || e.target >= nv()) {
                throw InvalidPresentation("edge '" + e.name + "' has an invalid endpoint");
            }
        }
    }

    const InnerGraph& graph() const { return g_; }
    int nv() const { return static_cast<int>(g_.vertices.size()); }

    static Element unit() { return {0}; }

    Element generator(const Generator& gen) const {
        switch (gen.kind) {
            case Generator::Kind::Minus:
                return {1, src(gen.index), 0, gen.index};
            case Generator::Kind::Plus:
                return {1, src(gen.index), 1, gen.index};
            case Generator::Kind::Idempotent:
                break;
        }
        return {1, gen.index, 0};
    }

    int start(const Element& x) const {
        int a = x[2];
        return a > 0 ? rng(x[3]) : x[1];
    }

    int end(const Element& x) const {
        size_t n = x.size() - 3 - static_cast<size_t>(x[2]);
        return n > 0 ? rng(x.back()) : x[1];
    }

    std::optional<Element> times_generator(const Element& x, const Generator& g) const {
        if (x[0] == 0) return generator(g);
        switch (g.kind) {
            case Generator::Kind::Idempotent:
                if (end(x) != g.index) return std::nullopt;
                return x;
            case Generator::Kind::Minus: {
                if (end(x) != src(g.index)) return std::nullopt;
                Element r = x;
                r.push_back(g.index);
                return r;
            }
            case Generator::Kind::Plus: {
                if (end(x) != rng(g.index)) return std::nullopt;
                size_t nminus = x.size() - 3 - static_cast<size_t>(x[2]);
                Element r = x;
                if (nminus > 0) {
                    if (r.back() != g.index) return std::nullopt;
                    r.pop_back();
                    return r;
                }
                r.push_back(g.index);
                r[2] += 1;
                r[1] = src(g.index);
                return r;
            }
        }
        return std::nullopt;
    }

    std::optional<Element> generator_times(const Generator& g, const Element& x) const {
        if (x[0] == 0) return generator(g);
        switch (g.kind) {
            case Generator::Kind::Idempotent:
                if (start(x) != g.index) return std::nullopt;
                return x;
            case Generator::Kind::Plus: {
                if (start(x) != src(g.index)) return std::nullopt;
                Element r(x.begin(), x.begin() + 3);
                r[2] += 1;
                r.push_back(g.index);
                r.insert(r.end(), x.begin() + 3, x.end());
                return r;
            }
            case Generator::Kind::Minus: {
                if (start(x) != rng(g.index)) return std::nullopt;
                if (x[2] > 0) {
                    if (x[3] != g.index) return std::nullopt;
                    Element r(x.begin(), x.begin() + 3);
                    r[2] -= 1;
                    r.insert(r.end(), x.begin() + 4, x.end());
                    return r;
                }
                Element r{1, src(g.index), 0, g.index};
                r.insert(r.end(), x.begin() + 3, x.end());
                return r;
            }
        }
        return std::nullopt;
    }

    /// Generators whose product is the given element, in order.
    std::vector<Generator> factor(const Element& x) const {
        std::vector<Generator> out;
        if (x[0] == 0) return out;
        auto a = static_cast<size_t>(x[2]);
        for (size_t i = 0; i < a; ++i) out.push_back({Generator::Kind::Plus, x[3 + i]});
        out.push_back({Generator::Kind::Idempotent, x[1]});
        for (size_t i = 3 + a; i < x.size(); ++i) out.push_back({Generator::Kind::Minus, x[i]});
        return out;
    }

    std::optional<Element> multiply(const Element& x, const Element& y) const {
        std::optional<Element> r = x;
        for (const auto& g : factor(y)) {
            r = times_generator(*r, g);
            if (!r) return std::nullopt;
        }
        return r;
    }

    /// Right key: end vertex behaviour for the next `budget` generators.
    Element right_key(const Element& x, int budget) const {
        if (x[0] == 0) return {2};
        size_t nminus = x.size() - 3 - static_cast<size_t>(x[2]);
        if (budget < 0 || nminus <= static_cast<size_t>(budget)) {
            Element k{0, x[1]};
            k.insert(k.end(), x.end() - static_cast<std::ptrdiff_t>(nminus), x.end());
            return k;
        }
        Element k{1};
        k.insert(k.end(), x.end() - budget, x.end());
        return k;
    }

    Element left_key(const Element& x, int budget) const {
        if (x[0] == 0) return {2};
        auto a = static_cast<size_t>(x[2]);
        if (budget < 0 || a <= static_cast<size_t>(budget)) {
            Element k{0, x[1]};
            k.insert(k.end(), x.begin() + 3, x.begin() + 3 + static_cast<std::ptrdiff_t>(a));
            return k;
        }
        Element k{1};
        k.insert(k.end(), x.begin() + 3, x.begin() + 3 + budget);
        return k;
    }

    static NormalForm normal_form(const Element& x) {
        NormalForm nf;
        if (x[0] == 0) return nf;
        nf.unit = false;
        nf.mid = x[1];
        auto a = static_cast<size_t>(x[2]);
        nf.plus.assign(x.begin() + 3, x.begin() + 3 + static_cast<std::ptrdiff_t>(a));
        nf.minus.assign(x.begin() + 3 + static_cast<std::ptrdiff_t>(a), x.end());
        return nf;
    }

private:
    int src(int e) const { return g_.edges[static_cast<size_t>(e)].source; }
    int rng(int e) const { return g_.edges[static_cast<size_t>(e)].target; }

    InnerGraph g_;
};

/// Markov-Dyck (and Motzkin, when idempotents are letters) shift of a graph:
/// a word is admissible iff the product of its letters is nonzero.
class GraphInverseOracle final : public Oracle {
public:
    GraphInverseOracle(InnerGraph g, bool idempotent_letters, std::string kind)
        : sg_(std::move(g)), kind_(std::move(kind)) {
        std::vector<std::string> names;
        const auto& gr = sg_.graph();
        for (size_t i = 0; i < gr.edges.size(); ++i) {
            names.push_back(gr.edges[i].name + "-");
            gens_.push_back({Generator::Kind::Minus, static_cast<int>(i)});
        }
        if (idempotent_letters) {
            for (size_t v = 0; v < gr.vertices.size(); ++v) {
                names.push_back(gr.vertices.size() == 1 ? "1" : "P" + gr.vertices[v]);
                gens_.push_back({Generator::Kind::Idempotent, static_cast<int>(v)});
            }
        }
        for (size_t i = 0; i < gr.edges.size(); ++i) {
            names.push_back(gr.edges[i].name + "+");
            gens_.push_back({Generator::Kind::Plus, static_cast<int>(i)});
        }
        alphabet_ = Alphabet(std::move(names));
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return kind_; }
    const GraphInverseSemigroup& semigroup() const { return sg_; }
    const Generator& generator(Symbol s) const { return gens_[static_cast<size_t>(s)]; }

    Element identity() const override { return GraphInverseSemigroup::unit(); }
    std::optional<Element> extend_right(const Element& e, Symbol s) const override {
        return sg_.times_generator(e, generator(s));
    }
    std::optional<Element> extend_left(Symbol s, const Element& e) const override {
        return sg_.generator_times(generator(s), e);
    }
    Element right_key(const Element& e, int budget) const override {
        return sg_.right_key(e, budget);
    }
    Element left_key(const Element& e, int budget) const override {
        return sg_.left_key(e, budget);
    }
    // Contexts on the two sides can only interact through an exhausted block.
    Element two_sided_key(const Element& e, int left, int right) const override {
        if (e[0] == 0) return e;
        size_t a = static_cast<size_t>(e[2]), b = e.size() - 3 - a;
        bool short_plus = left < 0 || a <= static_cast<size_t>(left);
        bool short_minus = right < 0 || b <= static_cast<size_t>(right);
        if (short_plus && short_minus) return e;
        Element k{3};
        auto lk = sg_.left_key(e, left), rk = sg_.right_key(e, right);
        k.push_back(static_cast<int32_t>(lk.size()));
        k.insert(k.end(), lk.begin(), lk.end());
        k.insert(k.end(), rk.begin(), rk.end());
        return k;
    }
    bool finite_monoid() const override { return false; }

    /// Normal form of a word's product, or nullopt for zero.
    std::optional<NormalForm> evaluate(const Word& w) const {
        auto e = element(w);
        if (!e) return std::nullopt;
        return GraphInverseSemigroup::normal_form(*e);
    }

private:
    GraphInverseSemigroup sg_;
    std::vector<Generator> gens_;
    Alphabet alphabet_;
    std::string kind_;
};

inline InnerGraph bouquet(int n) {
    InnerGraph g;
    g.vertices = {"v"};
    for (int i = 1; i <= n; ++i) g.edges.push_back({"e" + std::to_string(i), 0, 0});
    return g;
}

inline OraclePtr dyck_oracle(int n) {
    if (n < 1) throw InvalidPresentation("Dyck shift needs at least one bracket pair");
    return std::make_shared<GraphInverseOracle>(bouquet(n), false, "dyck");
}

inline OraclePtr motzkin_oracle(int n) {
    if (n < 1) throw InvalidPresentation("Motzkin shift needs at least one bracket pair");
    return std::make_shared<GraphInverseOracle>(bouquet(n), true, "motzkin");
}

inline OraclePtr markov_dyck_oracle(InnerGraph g, bool idempotent_letters = false) {
    return std::make_shared<GraphInverseOracle>(std::move(g), idempotent_letters, "markov_dyck");
}

/// Label of an outer edge: a nonempty minus path, a vertex idempotent, or a plus path.
struct SemigroupLabel {
    Generator::Kind kind = Generator::Kind::Minus;
    int vertex = 0;          ///< for idempotents
    std::vector<int> path;   ///< edge indices, in product order
};

struct OuterEdge {
    std::string name;
    int source = 0;
    int target = 0;
    SemigroupLabel label;
};

/// Outer graph (Omega, Sigma) labeled in the graph inverse semigroup of an
/// inner graph, with Omega partitioned by inner vertices.
struct SemigroupLabeledPresentation {
    InnerGraph inner;
    std::vector<std::string> nodes;
    std::vector<int> part;  ///< inner vertex owning each outer node
    std::vector<OuterEdge> edges;
};

/// Shift whose words are outer paths with nonzero label product.
class SemigroupLabeledOracle final : public Oracle {
public:
    explicit SemigroupLabeledOracle(SemigroupLabeledPresentation p)
        : p_(std::move(p)), sg_(p_.inner) {
        validate();
        std::vector<std::string> names;
        for (const auto& e : p_.edges) {
            names.push_back(e.name);
            labels_.push_back(label_element(e.label));
            max_label_ = std::max(max_label_, static_cast<int>(sg_.factor(labels_.back()).size()));
        }
        alphabet_ = Alphabet(std::move(names));
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "semigroup_labeled"; }
    const SemigroupLabeledPresentation& presentation() const { return p_; }

    Element identity() const override { return {0}; }

    std::optional<Element> extend_right(const Element& x, Symbol s) const override {
        const auto& e = p_.edges[static_cast<size_t>(s)];
        if (x[0] == 0) return pack(e.source, e.target, labels_[static_cast<size_t>(s)]);
        if (x[2] != e.source) return std::nullopt;
        auto m = sg_.multiply(inner(x), labels_[static_cast<size_t>(s)]);
        if (!m) return std::nullopt;
        return pack(x[1], e.target, *m);
    }

    std::optional<Element> extend_left(Symbol s, const Element& x) const override {
        const auto& e = p_.edges[static_cast<size_t>(s)];
        if (x[0] == 0) return pack(e.source, e.target, labels_[static_cast<size_t>(s)]);
        if (x[1] != e.target) return std::nullopt;
        auto m = sg_.multiply(labels_[static_cast<size_t>(s)], inner(x));
        if (!m) return std::nullopt;
        return pack(e.source, x[2], *m);
    }

    Element right_key(const Element& x, int budget) const override {
        if (x[0] == 0) return {0};
        Element k{1, x[2]};
        auto ik = sg_.right_key(inner(x), budget < 0 ? -1 : budget * max_label_);
        k.insert(k.end(), ik.begin(), ik.end());
        return k;
    }

    Element left_key(const Element& x, int budget) const override {
        if (x[0] == 0) return {0};
        Element k{1, x[1]};
        auto ik = sg_.left_key(inner(x), budget < 0 ? -1 : budget * max_label_);
        k.insert(k.end(), ik.begin(), ik.end());
        return k;
    }

    bool finite_monoid() const override { return false; }

private:
    static Element inner(const Element& x) { return Element(x.begin() + 3, x.end()); }

    static Element pack(int from, int to, const Element& m) {
        Element r{1, from, to};
        r.insert(r.end(), m.begin(), m.end());
        return r;
    }

    Element label_element(const SemigroupLabel& l) const {
        if (l.kind == Generator::Kind::Idempotent) {
            return sg_.generator({Generator::Kind::Idempotent, l.vertex});
        }
        if (l.path.empty()) throw InvalidPresentation("empty path label");
        std::optional<Element> r = GraphInverseSemigroup::unit();
        for (int e : l.path) {
            if (e < 0 || e >= static_cast<int>(p_.inner.edges.size())) {
                throw InvalidPresentation("label refers to an unknown edge");
            }
            r = sg_.times_generator(*r, {l.kind, e});
            if (!r) throw InvalidPresentation("label is zero in the semigroup");
        }
        return *r;
    }

    void validate() const {
        const int nn = static_cast<int>(p_.nodes.size());
        const int nv = static_cast<int>(p_.inner.vertices.size());
        if (nn == 0) throw InvalidPresentation("outer graph has no nodes");
        if (static_cast<int>(p_.part.size()) != nn) {
            throw InvalidPresentation("partition does not cover every outer node");
        }
        std::vector<bool> used(static_cast<size_t>(nv), false);
        for (int v : p_.part) {
            if (v < 0 || v >= nv) throw InvalidPresentation("partition refers to an unknown vertex");
            used[static_cast<size_t>(v)] = true;
        }
        for (int v = 0; v < nv; ++v) {
            if (!used[static_cast<size_t>(v)]) {
                throw InvalidPresentation("partition block of vertex '" +
                                          p_.inner.vertices[static_cast<size_t>(v)] + "' is empty");
            }
        }
        for (const auto& e : p_.edges) {
            if (e.source < 0 || e.target < 0 || e.source >= nn || e.target >= nn) {
                throw InvalidPresentation("outer edge '" + e.name + "' has an invalid endpoint");
            }
            Element lab = label_element(e.label);
            int into = p_.part[static_cast<size_t>(e.target)];
            int from = p_.part[static_cast<size_t>(e.source)];
            if (!sg_.times_generator(lab, {Generator::Kind::Idempotent, into})) {
                throw InvalidPresentation("label of edge '" + e.name +
                                          "' is killed by the idempotent of its target block");
            }
            if (!sg_.generator_times({Generator::Kind::Idempotent, from}, lab)) {
                throw InvalidPresentation("label of edge '" + e.name +
                                          "' is killed by the idempotent of its source block");
            }
        }
        // Outer graph must be irreducible.
        auto reach = [&](bool forward) {
            std::vector<bool> seen(static_cast<size_t>(nn), false);
            std::vector<int> stack{0};
            seen[0] = true;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (const auto& e : p_.edges) {
                    int a = forward ? e.source : e.target, b = forward ? e.target : e.source;
                    if (a == u && !seen[static_cast<size_t>(b)]) {
                        seen[static_cast<size_t>(b)] = true;
                        stack.push_back(b);
                    }
                }
            }
            return std::all_of(seen.begin(), seen.end(), [](bool x) { return x; });
        };
        if (!reach(true) || !reach(false)) throw InvalidPresentation("outer graph is not irreducible");
    }

    SemigroupLabeledPresentation p_;
    GraphInverseSemigroup sg_;
    std::vector<Element> labels_;
    int max_label_ = 1;
    Alphabet alphabet_;
};

}  // namespace lsync
