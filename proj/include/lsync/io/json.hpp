#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../invariants.hpp"
#include "builtins.hpp"

namespace lsync {

using Json = nlohmann::json;

// ---------------------------------------------------------------- loading

namespace detail {

inline const Json& field(const Json& j, const char* name) {
    if (!j.contains(name)) throw InvalidPresentation(std::string("missing field '") + name + "'");
    return j.at(name);
}

inline Alphabet alphabet_field(const Json& j) {
    return Alphabet(field(j, "alphabet").get<std::vector<std::string>>());
}

inline int index_of(const std::vector<std::string>& names, const std::string& n, const char* what) {
    for (size_t i = 0; i < names.size(); ++i) {
        if (names[i] == n) return static_cast<int>(i);
    }
    throw InvalidPresentation(std::string("unknown ") + what + " '" + n + "'");
}

inline InnerGraph inner_graph(const Json& j) {
    InnerGraph g;
    g.vertices = field(j, "vertices").get<std::vector<std::string>>();
    for (const auto& e : field(j, "edges")) {
        g.edges.push_back({field(e, "name").get<std::string>(), g.vertex(field(e, "source").get<std::string>()),
                           g.vertex(field(e, "target").get<std::string>())});
    }
    return g;
}

inline SemigroupLabel semigroup_label(const InnerGraph& g, const Json& j) {
    SemigroupLabel l;
    auto path = [&](const Json& p) {
        std::vector<int> r;
        for (const auto& e : p) r.push_back(g.edge(e.get<std::string>()));
        return r;
    };
    if (j.contains("minus")) {
        l.kind = Generator::Kind::Minus;
        l.path = path(j.at("minus"));
    } else if (j.contains("plus")) {
        l.kind = Generator::Kind::Plus;
        l.path = path(j.at("plus"));
    } else if (j.contains("idempotent")) {
        l.kind = Generator::Kind::Idempotent;
        l.vertex = g.vertex(j.at("idempotent").get<std::string>());
    } else {
        throw InvalidPresentation("label needs one of 'minus', 'plus', 'idempotent'");
    }
    return l;
}

inline Presentation presentation_kind(const Json& j) {
    const auto kind = field(j, "kind").get<std::string>();
    Presentation p;
    p.name = j.value("name", kind);
    if (kind == "sft") {
        auto a = alphabet_field(j);
        std::vector<Word> forbidden;
        for (const auto& w : field(j, "forbidden")) forbidden.push_back(a.parse(w.get<std::string>()));
        p.oracle = std::make_shared<SftOracle>(a, forbidden);
    } else if (kind == "sofic") {
        LabeledGraph g;
        g.alphabet = alphabet_field(j);
        auto states = field(j, "states").get<std::vector<std::string>>();
        g.states = static_cast<int>(states.size());
        for (const auto& e : field(j, "edges")) {
            g.edges.push_back({index_of(states, field(e, "source").get<std::string>(), "state"),
                               g.alphabet.symbol(field(e, "label").get<std::string>()),
                               index_of(states, field(e, "target").get<std::string>(), "state")});
        }
        p.oracle = std::make_shared<SoficOracle>(g);
        p.sofic = g;
    } else if (kind == "dyck" || kind == "motzkin") {
        int n = field(j, "n").get<int>();
        p.oracle = kind == "dyck" ? dyck_oracle(n) : motzkin_oracle(n);
        p.recommended = semigroup_horizons();
    } else if (kind == "markov_dyck") {
        p.oracle = markov_dyck_oracle(inner_graph(j), j.value("idempotent_letters", false));
        p.recommended = semigroup_horizons();
    } else if (kind == "semigroup_labeled") {
        SemigroupLabeledPresentation sp;
        sp.inner = inner_graph(field(j, "inner"));
        sp.nodes = field(j, "nodes").get<std::vector<std::string>>();
        const auto& part = field(j, "part");
        for (const auto& n : sp.nodes) {
            if (!part.contains(n)) throw InvalidPresentation("node '" + n + "' is not in the partition");
            sp.part.push_back(sp.inner.vertex(part.at(n).get<std::string>()));
        }
        for (const auto& e : field(j, "edges")) {
            sp.edges.push_back({field(e, "name").get<std::string>(),
                                index_of(sp.nodes, field(e, "source").get<std::string>(), "node"),
                                index_of(sp.nodes, field(e, "target").get<std::string>(), "node"),
                                semigroup_label(sp.inner, field(e, "label"))});
        }
        p.oracle = std::make_shared<SemigroupLabeledOracle>(sp);
        p.recommended = semigroup_horizons();
    } else if (kind == "substitution") {
        auto a = alphabet_field(j);
        const auto& images = field(j, "images");
        std::vector<Word> img;
        for (const auto& name : a.names()) {
            if (!images.contains(name)) throw InvalidPresentation("no image for symbol '" + name + "'");
            img.push_back(a.parse(images.at(name).get<std::string>()));
        }
        p.oracle = std::make_shared<SubstitutionOracle>(a, img, j.value("max_len", substitution_max_len));
        p.recommended = substitution_horizons();
        p.growth_per_level = substitution_growth;
    } else if (kind == "beta") {
        auto o = std::make_shared<BetaOracle>(j.value("preperiod", std::vector<int>{}),
                                              field(j, "period").get<std::vector<int>>());
        p.sofic = o->automaton();
        p.oracle = o;
    } else if (kind == "coded_example") {
        p.oracle = std::make_shared<CodedExampleOracle>();
    } else {
        throw InvalidPresentation("unknown presentation kind '" + kind + "'");
    }
    return p;
}

}  // namespace detail

/// Reads a presentation document. Optional fields: "name", "reversed" (bool),
/// "block" (recoding length), "horizons" (recommended horizons) and
/// "growth_per_level" (horizon growth per extra level).
inline Presentation presentation_from_json(const Json& j) {
    try {
        Presentation p = detail::presentation_kind(j);
        if (j.value("reversed", false)) {
            p.oracle = reverse_oracle(p.oracle);
            if (p.sofic) p.sofic = detail::reversed_graph(*p.sofic);
        }
        if (int n = j.value("block", 1); n != 1) recode_blocks(p, n);
        if (j.contains("horizons")) {
            Horizons h = p.recommended.value_or(Horizons{});
            const auto& hj = j.at("horizons");
            h.max_level = hj.value("max_level", h.max_level);
            h.max_word_len = hj.value("max_word_len", h.max_word_len);
            h.follower_horizon = hj.value("follower_horizon", h.follower_horizon);
            h.tail_len = hj.value("tail_len", h.tail_len);
            p.recommended = h;
        }
        if (j.contains("growth_per_level")) {
            p.growth_per_level = j.at("growth_per_level").get<int>();
            if (p.growth_per_level < 0) throw InvalidPresentation("growth_per_level must be nonnegative");
        }
        return p;
    } catch (const Json::exception& e) {
        throw InvalidPresentation(std::string("malformed presentation: ") + e.what());
    }
}

inline Presentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidPresentation("cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw InvalidPresentation("'" + path + "' is not valid JSON: " + e.what());
    }
    return presentation_from_json(j);
}

// ---------------------------------------------------------------- writing

inline Json to_json(const Horizons& h) {
    return {{"max_level", h.max_level},
            {"max_word_len", h.max_word_len},
            {"follower_horizon", h.follower_horizon},
            {"tail_len", h.tail_len}};
}

inline Json words_json(const Alphabet& a, const std::vector<Word>& ws) {
    Json r = Json::array();
    for (const auto& w : ws) r.push_back(a.format(w));
    return r;
}

inline Json to_json(const LambdaGraphSystem& g) {
    Json levels = Json::array();
    for (int l = 0; l <= g.L; ++l) {
        Json vs = Json::array();
        for (size_t i = 0; i < g.size(l); ++i) {
            const auto& v = g.vertices[static_cast<size_t>(l)][i];
            Json jv{{"id", i}, {"rep", g.alphabet.format(v.rep)}};
            if (v.signature) jv["signature"] = format_words(g.alphabet, *v.signature);
            vs.push_back(std::move(jv));
        }
        levels.push_back({{"level", l}, {"vertices", std::move(vs)}});
    }
    Json edges = Json::array(), iota = Json::array();
    for (int l = 0; l < g.L; ++l) {
        Json es = Json::array();
        for (const auto& e : g.edges[static_cast<size_t>(l)]) {
            es.push_back({{"source", e.source}, {"label", g.alphabet.name(e.label)}, {"target", e.target}});
        }
        edges.push_back(std::move(es));
        iota.push_back(g.iota[static_cast<size_t>(l)]);
    }
    const auto& p = g.provenance;
    return {{"alphabet", g.alphabet.names()},
            {"max_level", g.L},
            {"sizes", g.sizes()},
            {"levels", std::move(levels)},
            {"edges", std::move(edges)},
            {"iota", std::move(iota)},
            {"provenance",
             {{"construction", p.construction},
              {"oracle_kind", p.oracle_kind},
              {"exactness", p.exactness},
              {"closure_searches", p.closure_searches},
              {"horizons", to_json(p.horizons)},
              {"pruned", p.pruned}}}};
}

/// DOT rendering: one cluster per level, labeled edges, iota as dashed arcs.
inline std::string to_dot(const LambdaGraphSystem& g) {
    auto quote = [](const std::string& s) {
        std::string r = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') r += '\\';
            r += c;
        }
        return r + "\"";
    };
    auto node = [](int l, size_t i) { return "v" + std::to_string(l) + "_" + std::to_string(i); };
    std::ostringstream out;
    out << "digraph lambda_graph {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
    for (int l = 0; l <= g.L; ++l) {
        out << "  subgraph cluster_level" << l << " {\n    label=" << quote("level " + std::to_string(l)) << ";\n";
        for (size_t i = 0; i < g.size(l); ++i) {
            const auto& rep = g.vertices[static_cast<size_t>(l)][i].rep;
            out << "    " << node(l, i) << " [label=" << quote(rep.empty() ? "ε" : g.alphabet.format(rep)) << "];\n";
        }
        out << "  }\n";
    }
    for (int l = 0; l < g.L; ++l) {
        for (const auto& e : g.edges[static_cast<size_t>(l)]) {
            out << "  " << node(l, static_cast<size_t>(e.source)) << " -> " << node(l + 1, static_cast<size_t>(e.target))
                << " [label=" << quote(g.alphabet.name(e.label)) << "];\n";
        }
        for (size_t j = 0; j < g.iota[static_cast<size_t>(l)].size(); ++j) {
            out << "  " << node(l + 1, j) << " -> " << node(l, static_cast<size_t>(g.iota[static_cast<size_t>(l)][j]))
                << " [style=dashed, arrowhead=empty, constraint=false];\n";
        }
    }
    out << "}\n";
    return out.str();
}

inline Json to_json(const Alphabet& a, const SyncCertificate& c) {
    Json failures = Json::array();
    for (const auto& f : c.failures) {
        Json ev = Json::array();
        for (const auto& [x, y] : f.evidence) ev.push_back({{"a", a.format(x)}, {"separator", a.format(y)}});
        Json jf{{"b", a.format(f.b)}, {"evidence", std::move(ev)}};
        if (f.sigma >= 0) jf["sigma"] = a.name(f.sigma);
        failures.push_back(std::move(jf));
    }
    return {{"verdict", to_string(c.verdict)},
            {"exact", c.exact},
            {"checked", c.checked},
            {"failures", std::move(failures)}};
}

inline Json to_json(const ConditionReport& r) {
    return {{"name", r.name},
            {"verdict", to_string(r.verdict)},
            {"checked_levels", r.checked_levels},
            {"max_depth", r.max_depth},
            {"witnessed", r.witnessed},
            {"unwitnessed", r.unwitnessed}};
}

inline Json to_json(const std::vector<Check>& checks) {
    Json r = Json::array();
    for (const auto& c : checks) r.push_back({{"name", c.name}, {"ok", c.ok()}, {"violations", c.violations}});
    return r;
}

inline Json to_json(const Alphabet& a, const std::vector<PresentsReport>& reports) {
    Json r = Json::array();
    for (const auto& p : reports) {
        r.push_back({{"n", p.n},
                     {"holds", p.holds},
                     {"missing", words_json(a, p.missing)},
                     {"spurious", words_json(a, p.spurious)}});
    }
    return r;
}

inline Json to_json(const AbelianGroup& g) {
    Json t = Json::array();
    for (const auto& d : g.torsion) t.push_back(d.str());
    return {{"free_rank", g.free_rank}, {"torsion", std::move(t)}, {"group", g.str()}};
}

inline Json to_json(const GroupSequence& s) {
    Json stages = Json::array();
    for (const auto& g : s.stages) stages.push_back(to_json(g));
    Json r{{"name", s.name},
           {"stages", std::move(stages)},
           {"connecting_iso", s.connecting_iso},
           {"stabilized", s.stabilized}};
    r["limit"] = s.stabilized ? Json(s.limit().str()) : Json(nullptr);
    return r;
}

inline Json to_json(const EntropyEstimate& e) {
    Json rows = Json::array();
    for (const auto& r : e.rows) {
        rows.push_back({{"l", r.l}, {"count", r.count.str()}, {"log_over_l", r.log_over_l}, {"ratio_log", r.ratio_log}});
    }
    return {{"kind", to_string(e.kind)}, {"rows", std::move(rows)}, {"float_error", e.float_error}};
}

inline Json to_json(const InvariantReport& r) {
    Json conds = Json::array();
    for (const auto& c : r.conditions) conds.push_back(to_json(c));
    return {{"label", r.label},
            {"sizes", r.sizes},
            {"K0", to_json(r.k.zero)},
            {"K1", to_json(r.k.one)},
            {"BF0", to_json(r.bf.zero)},
            {"BF1", to_json(r.bf.one)},
            {"Ext1", r.bf.zero.str()},
            {"Ext0", r.bf.one.str()},
            {"h_lambda", to_json(r.h_lambda)},
            {"h_volume", to_json(r.h_volume)},
            {"conditions", std::move(conds)},
            {"hypotheses",
             {{"lambda_condition_I", to_string(r.hypotheses.condition_I)},
              {"lambda_irreducible", to_string(r.hypotheses.irreducible)},
              {"overall", to_string(r.hypotheses.overall)},
              {"statement", r.hypotheses.statement}}}};
}

}  // namespace lsync
