#include <gtest/gtest.h>

#include "brute.hpp"
#include "lsync/io/json.hpp"
#include "lsync/pipeline.hpp"
#include "lsync/presentations/fischer.hpp"

using namespace lsync;

namespace {

BuildRun build(const std::string& name, int L = 4) {
    auto p = make_builtin(name);
    auto h = p.horizons_for(L);
    return run_build(std::move(p), h);
}

/// Labeled graphs equal up to a state permutation (small graphs only).
bool isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.states != b.states || a.edges.size() != b.edges.size()) return false;
    std::vector<int> perm(static_cast<size_t>(a.states));
    std::iota(perm.begin(), perm.end(), 0);
    auto edge_set = [](const LabeledGraph& g, const std::vector<int>& p) {
        std::multiset<std::tuple<int, Symbol, int>> s;
        for (const auto& e : g.edges) s.emplace(p[static_cast<size_t>(e.source)], e.label, p[static_cast<size_t>(e.target)]);
        return s;
    };
    std::vector<int> id = perm;
    auto target = edge_set(b, id);
    do {
        if (edge_set(a, perm) == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// The transition structure between levels l and l+1, with level l+1 folded
/// onto level l by iota (which must be a bijection there).
std::optional<LabeledGraph> folded_level(const LambdaGraphSystem& g, int l) {
    const auto& io = g.iota[static_cast<size_t>(l)];
    if (g.size(l) != g.size(l + 1)) return std::nullopt;
    LabeledGraph out{g.alphabet, static_cast<int>(g.size(l)), {}};
    for (const auto& e : g.edges[static_cast<size_t>(l)]) out.edges.push_back({e.source, e.label, io[static_cast<size_t>(e.target)]});
    return out;
}

Presentation disjoint_union() {
    Alphabet a({"a", "b", "c", "d"});
    std::vector<Word> forbidden;
    for (Symbol x : {0, 1}) {
        for (Symbol y : {2, 3}) {
            forbidden.push_back({x, y});
            forbidden.push_back({y, x});
        }
    }
    return {"disjoint-union", std::make_shared<SftOracle>(a, forbidden), std::nullopt, std::nullopt};
}

}  // namespace

TEST(LambdaGraph, FullShiftIsASingleChain) {
    auto r = build("full-2");
    for (int l = 0; l <= 4; ++l) EXPECT_EQ(r.graph.size(l), 1u);
    for (int l = 0; l < 4; ++l) EXPECT_EQ(r.graph.edges[static_cast<size_t>(l)].size(), 2u);
    EXPECT_TRUE(axioms_hold(verify_axioms(r.graph)));
}

TEST(LambdaGraph, GoldenMeanHasTwoVerticesPerLevel) {
    auto r = build("golden-mean");
    EXPECT_EQ(r.graph.size(0), 1u);
    for (int l = 1; l <= 4; ++l) EXPECT_EQ(r.graph.size(l), 2u);
    auto checks = verify_axioms(r.graph);
    EXPECT_TRUE(axioms_hold(checks));
    EXPECT_EQ(checks.size(), 5u);
}

TEST(LambdaGraph, AxiomsAndPresentationHoldAcrossTheCorpus) {
    for (const auto& name : builtin_names()) {
        auto r = build(name);
        for (const auto& c : verify_axioms(r.graph)) EXPECT_TRUE(c.ok()) << name << ": " << c.name;
        for (const auto& rep : verify_presents(r.graph, *r.presentation.oracle, 4)) {
            EXPECT_TRUE(rep.holds) << name << " n=" << rep.n;
        }
    }
}

TEST(LambdaGraph, MutatedSystemFailsWithLocatedWitness) {
    auto r = build("golden-mean");
    auto g = r.graph;
    g.edges[2].erase(g.edges[2].begin());
    auto checks = verify_axioms(g);
    EXPECT_FALSE(axioms_hold(checks));
    bool located = false;
    for (const auto& c : checks) {
        for (const auto& v : c.violations) located = located || v.find("v") != std::string::npos;
    }
    EXPECT_TRUE(located);

    auto h = r.graph;
    h.iota[1][0] = h.iota[1][1];  // no longer surjective
    EXPECT_FALSE(verify_axioms(h)[0].ok());

    // Duplicating a vertex (same incoming structure) breaks predecessor separation.
    auto d = r.graph;
    auto& lvl = d.vertices[4];
    lvl.push_back(lvl[0]);
    d.iota[3].push_back(d.iota[3][0]);
    std::vector<LambdaEdge> extra;
    for (const auto& e : d.edges[3]) {
        if (e.target == 0) extra.push_back({e.source, e.label, static_cast<int>(lvl.size() - 1)});
    }
    d.edges[3].insert(d.edges[3].end(), extra.begin(), extra.end());
    auto dc = verify_axioms(d);
    EXPECT_FALSE(dc[4].ok());
}

TEST(LambdaGraph, DyckLevelsGrowAndMatchBruteForceSignatures) {
    auto r = build("dyck-2", 3);
    const auto& g = r.graph;
    for (int l = 0; l < 3; ++l) EXPECT_LT(g.size(l), g.size(l + 1));
    auto ok = *brute::reference("dyck-2");
    for (int l = 1; l <= 3; ++l) {
        std::set<WordSet> sigs;
        for (const auto& v : g.vertices[static_cast<size_t>(l)]) {
            WordSet sig;
            for (const auto& b : brute::all_words(4, l)) {
                if (ok(concat(b, v.rep))) sig.insert(b);
            }
            EXPECT_TRUE(sigs.insert(sig).second) << "duplicate signature at level " << l;
            if (v.signature) { EXPECT_EQ(*v.signature, sig); }
        }
    }
}

TEST(LambdaGraph, CanonicalMatchesLambdaSystemForGoldenMean) {
    auto r = build("golden-mean");
    Horizons h = r.horizons;
    auto canon = build_canonical(*r.engine, h);
    EXPECT_TRUE(isomorphic_systems(*r.engine, r.graph, canon));
    EXPECT_EQ(canon.provenance.construction, "canonical");
    auto full = build("full-3");
    auto fc = build_canonical(*full.engine, full.horizons);
    for (int l = 0; l <= 4; ++l) EXPECT_EQ(fc.size(l), 1u);
}

TEST(LambdaGraph, FischerAgreementForSoficShifts) {
    for (const char* name : {"golden-mean", "even-shift"}) {
        auto r = build(name, 6);
        auto cover = fischer_cover(*r.presentation.sofic);
        EXPECT_EQ(cover.states, 2) << name;
        for (int l = 2; l <= 6; ++l) EXPECT_EQ(r.graph.size(l), static_cast<size_t>(cover.states)) << name;
        for (int l = 2; l < 6; ++l) {
            auto folded = folded_level(r.graph, l);
            ASSERT_TRUE(folded) << name;
            EXPECT_TRUE(isomorphic(*folded, cover)) << name << " l=" << l;
        }
    }
}

TEST(LambdaGraph, StabilityRecheck) {
    auto p = make_builtin("golden-mean");
    auto r = run_build(p, Horizons{}, true);
    ASSERT_TRUE(r.stable);
    EXPECT_TRUE(*r.stable);
    auto big = recheck_horizons(Horizons{});
    EXPECT_GT(big.max_word_len, 8);
    EXPECT_GT(big.follower_horizon, 8);
}

TEST(LambdaGraph, ConditionsOnFullAndGoldenShifts) {
    for (const char* name : {"full-2", "golden-mean"}) {
        auto r = build(name);
        for (const auto& c : condition_reports(r)) EXPECT_EQ(c.verdict, Verdict::Verified) << name << ": " << c.name;
    }
}

TEST(LambdaGraph, SingleSymbolShiftLacksConditionI) {
    auto r = build("full-1");
    EXPECT_NE(check_lambda_condition_I(r.graph).verdict, Verdict::Verified);
    EXPECT_NE(check_sync_condition_I(*r.engine, r.table, r.graph).verdict, Verdict::Verified);
    EXPECT_EQ(check_lambda_irreducible(r.graph).verdict, Verdict::Verified);
}

TEST(LambdaGraph, DisjointUnionIsNotIrreducible) {
    auto r = run_build(disjoint_union(), Horizons{});
    EXPECT_NE(check_lambda_irreducible(r.graph).verdict, Verdict::Verified);
    EXPECT_NE(check_synchronized_irreducible(*r.engine, r.table, r.graph).verdict, Verdict::Verified);
    EXPECT_FALSE(check_lambda_irreducible(r.graph).unwitnessed.empty());
    // Each half is a full 2-shift, so condition (I) still holds.
    EXPECT_EQ(check_lambda_condition_I(r.graph).verdict, Verdict::Verified);
}

TEST(LambdaGraph, ConditionIAgreesBetweenWordAndGraphLevels) {
    for (const auto& name : builtin_names()) {
        auto r = build(name);
        auto graph_level = check_lambda_condition_I(r.graph);
        auto word_level = check_sync_condition_I(*r.engine, r.table, r.graph);
        if (graph_level.verdict == Verdict::Inconclusive || word_level.verdict == Verdict::Inconclusive) continue;
        EXPECT_EQ(graph_level.verdict, word_level.verdict) << name;
    }
}

TEST(LambdaGraph, ExportsAreDeterministic) {
    auto a = build("even-shift");
    auto b = build("even-shift");
    EXPECT_EQ(to_json(a.graph).dump(), to_json(b.graph).dump());
    EXPECT_EQ(to_dot(a.graph), to_dot(b.graph));
    auto dot = to_dot(a.graph);
    EXPECT_NE(dot.find("subgraph cluster_"), std::string::npos);
    EXPECT_NE(dot.find("dashed"), std::string::npos);
    auto j = to_json(a.graph);
    EXPECT_TRUE(j.contains("levels"));
    EXPECT_TRUE(j.contains("provenance"));
}
