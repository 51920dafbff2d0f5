#include <gtest/gtest.h>

#include <cmath>

#include "brute.hpp"

using namespace lsync;

namespace {

std::vector<std::string> fmt(const Alphabet& a, const WordSet& ws) { return format_words(a, ws); }

}  // namespace

TEST(Language, GoldenMeanCountsFollowFibonacci) {
    auto p = make_builtin("golden-mean");
    auto ref = *brute::reference("golden-mean");
    const size_t expected[] = {1, 2, 3, 5, 8, 13, 21, 34, 55};
    for (int n = 0; n <= 8; ++n) {
        auto ws = enumerate_language(*p.oracle, n);
        EXPECT_EQ(ws.size(), expected[n]) << "n=" << n;
        EXPECT_EQ(ws, brute::language(2, n, ref)) << "n=" << n;
    }
}

TEST(Language, EveryBuiltinMatchesItsReferenceUpToLength8) {
    for (const auto& name : builtin_names()) {
        auto ref = brute::reference(name);
        if (!ref) continue;
        auto p = make_builtin(name);
        const int k = static_cast<int>(p.oracle->alphabet().size());
        const int top = k >= 4 ? 6 : 8;
        for (int n = 0; n <= top; ++n) {
            ASSERT_EQ(enumerate_language(*p.oracle, n), brute::language(k, n, *ref)) << name << " n=" << n;
        }
    }
}

TEST(Language, MarkovDyckAgreesWithAnIndependentGraphWalk) {
    // Golden mean inner graph: e1: u->u, e2: u->v, e3: v->u. e- runs s(e) -> r(e)
    // and e+ runs r(e) -> s(e); a word is nonzero iff consecutive letters
    // compose and no e_i- is matched against a different e_j+.
    auto g = markov_dyck_sample_graph();
    auto o = markov_dyck_oracle(g);
    const int ne = static_cast<int>(g.edges.size());
    auto ends = [&](Symbol s) {
        const auto& e = g.edges[static_cast<size_t>(s % ne)];
        return s < ne ? std::make_pair(e.source, e.target) : std::make_pair(e.target, e.source);
    };
    auto admissible = [&](const Word& w) {
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            if (ends(w[i]).second != ends(w[i + 1]).first) return false;
        }
        return brute::dyck(ne, false)(w);
    };
    for (int n = 0; n <= 7; ++n) {
        EXPECT_EQ(enumerate_language(*o, n), brute::language(2 * ne, n, admissible)) << "n=" << n;
    }
}

TEST(Language, GammaMinusExamples) {
    auto golden = make_builtin("golden-mean");
    const auto& a = golden.oracle->alphabet();
    EXPECT_EQ(fmt(a, gamma_minus(*golden.oracle, a.parse("1"), 1)), std::vector<std::string>{"0"});
    EXPECT_EQ(fmt(a, gamma_plus(*golden.oracle, a.parse("1"), 1)), std::vector<std::string>{"0"});

    auto full = make_builtin("full-3");
    EXPECT_EQ(gamma_minus(*full.oracle, full.oracle->alphabet().parse("20"), 2).size(), 9u);
    EXPECT_EQ(gamma_plus(*full.oracle, full.oracle->alphabet().parse("1"), 3).size(), 27u);

    auto dyck = make_builtin("dyck-2");
    const auto& d = dyck.oracle->alphabet();
    auto g = fmt(d, gamma_minus(*dyck.oracle, d.parse("e1+"), 1));
    std::sort(g.begin(), g.end());
    EXPECT_EQ(g, (std::vector<std::string>{"e1+", "e1-", "e2+"}));

    auto coded = make_builtin("coded-example");
    const auto& c = coded.oracle->alphabet();
    EXPECT_EQ(fmt(c, gamma_plus(*coded.oracle, c.parse("β"), 1)), std::vector<std::string>{"α"});
}

TEST(Language, GammaOfInadmissibleWordIsEmpty) {
    auto p = make_builtin("golden-mean");
    EXPECT_TRUE(gamma_minus(*p.oracle, {1, 1}, 2).empty());
}

TEST(Language, CodedExampleAdmissibility) {
    auto p = make_builtin("coded-example");
    const auto& a = p.oracle->alphabet();
    EXPECT_TRUE(p.oracle->admissible(a.parse("βα0γ")));
    EXPECT_FALSE(p.oracle->admissible(a.parse("βα0γ0γ")));
    for (const char* bad : {"ββ", "βγ", "β0", "β1"}) EXPECT_FALSE(p.oracle->admissible(a.parse(bad))) << bad;
    EXPECT_FALSE(p.oracle->admissible(a.parse("βα01γ00γ")));
    EXPECT_TRUE(p.oracle->admissible(a.parse("βα0γ00γ")));
}

TEST(Language, SubstitutionHorizonIsEnforced) {
    auto p = make_builtin("fibonacci");
    EXPECT_THROW(enumerate_language(*p.oracle, substitution_max_len + 1), HorizonExceeded);
    EXPECT_THROW(gamma_minus(*p.oracle, {0}, substitution_max_len), HorizonExceeded);
}

TEST(Language, OmegaExamples) {
    auto golden = make_builtin("golden-mean");
    Engine ge(golden.oracle);
    auto om = omega_minus(ge, {0}, 1, 6);
    EXPECT_TRUE(om.exact);
    EXPECT_EQ(om.words, (WordSet{{0}, {1}}));
    auto op = omega_plus(ge, {1}, 1, 6);
    EXPECT_TRUE(op.exact);
    EXPECT_EQ(op.words, (WordSet{{0}}));

    auto full = make_builtin("full-2");
    Engine fe(full.oracle);
    EXPECT_EQ(omega_minus(fe, {0, 1}, 2, 4).words.size(), 4u);
    EXPECT_EQ(omega_plus(fe, {1}, 3, 4).words.size(), 8u);

    // For the coded example, gamma precedes beta-alpha-w but is not in omega^-:
    // the follower gamma 0^K gamma of alpha-w is blocked once beta precedes.
    auto coded = make_builtin("coded-example");
    Engine ce(coded.oracle);
    const auto& a = coded.oracle->alphabet();
    for (const char* w : {"βα", "βα0", "βα1γ"}) {
        Word v = a.parse(w);
        Word tail(v.begin() + 1, v.end());  // alpha-w
        auto gm = gamma_minus(*coded.oracle, tail, 1);
        auto omg = omega_minus(ce, tail, 1, 12);
        EXPECT_TRUE(gm.count({CodedExampleOracle::Beta})) << w;
        EXPECT_FALSE(omg.words.count({CodedExampleOracle::Beta})) << w;
        EXPECT_LT(omg.words.size(), gm.size()) << w;
    }
    // 1^K w: every sigma other than gamma lies in omega^+.
    Word w = a.parse("0α");
    Word ones = a.parse("11");
    Word x = concat(ones, w);
    auto opl = omega_plus(ce, x, 1, 10);
    for (const auto& s : gamma_plus(*coded.oracle, w, 1)) {
        if (s[0] != CodedExampleOracle::Gamma) { EXPECT_TRUE(opl.words.count(s)) << a.format(s); }
    }
}

TEST(Language, OmegaShrinksAsHorizonGrows) {
    for (const char* name : {"dyck-2", "fibonacci", "coded-example", "even-shift"}) {
        auto p = make_builtin(name);
        Engine eng(p.oracle);
        for (const auto& a : enumerate_language(*p.oracle, 3)) {
            size_t prev = SIZE_MAX;
            for (int h = 1; h <= 6; ++h) {
                size_t n = omega_minus(eng, a, 1, h).words.size();
                EXPECT_LE(n, prev) << name;
                prev = n;
            }
        }
    }
}

TEST(Language, OmegaMinusMatchesBruteForceOnGoldenMean) {
    // For a 1-step SFT, b a c is admissible iff b a and a c are.
    auto p = make_builtin("golden-mean");
    Engine eng(p.oracle);
    auto ok = *brute::reference("golden-mean");
    for (int n = 1; n <= 3; ++n) {
        for (const auto& a : enumerate_language(*p.oracle, n)) {
            WordSet expect;
            for (const auto& b : brute::all_words(2, 1)) {
                if (!ok(concat(b, a))) continue;
                bool all = true;
                for (int m = 0; m <= 4 && all; ++m) {
                    for (const auto& c : brute::all_words(2, m)) {
                        if (ok(concat(a, c)) && !ok(concat(concat(b, a), c))) all = false;
                    }
                }
                if (all) expect.insert(b);
            }
            EXPECT_EQ(omega_minus(eng, a, 1, 8).words, expect);
        }
    }
}

TEST(Language, ReversalIsInvolutiveAndDual) {
    for (const auto& name : builtin_names()) {
        auto p = make_builtin(name);
        auto r = reverse_oracle(p.oracle);
        auto rr = reverse_oracle(r);
        const int top = p.oracle->alphabet().size() >= 4 ? 4 : 6;
        for (int n = 0; n <= top; ++n) {
            auto base = enumerate_language(*p.oracle, n);
            auto rev = enumerate_language(*r, n);
            WordSet flipped;
            for (const auto& w : rev) flipped.insert(reversed(w));
            EXPECT_EQ(flipped, base) << name;
            EXPECT_EQ(enumerate_language(*rr, n), base) << name;
        }
        for (const auto& w : enumerate_language(*p.oracle, 2)) {
            WordSet mirrored;
            for (const auto& u : gamma_plus(*r, reversed(w), 2)) mirrored.insert(reversed(u));
            EXPECT_EQ(gamma_minus(*p.oracle, w, 2), mirrored) << name;
        }
    }
    auto golden = make_builtin("golden-mean");
    EXPECT_EQ(enumerate_language(*reverse_oracle(golden.oracle), 6), enumerate_language(*golden.oracle, 6));
    auto dyck = make_builtin("dyck-2-rev");
    const auto& d = dyck.oracle->alphabet();
    EXPECT_TRUE(dyck.oracle->admissible(d.parse("e1+ e1-")));
}

TEST(Language, FactorialityAndSubadditivity) {
    for (const auto& name : builtin_names()) {
        auto p = make_builtin(name);
        const int top = p.oracle->alphabet().size() >= 4 ? 6 : 8;
        std::vector<double> counts;
        for (int n = 0; n <= top; ++n) {
            auto ws = enumerate_language(*p.oracle, n);
            counts.push_back(static_cast<double>(ws.size()));
            for (const auto& w : ws) {
                if (w.size() < 2) continue;
                ASSERT_TRUE(p.oracle->admissible(Word(w.begin() + 1, w.end()))) << name;
                ASSERT_TRUE(p.oracle->admissible(Word(w.begin(), w.end() - 1))) << name;
            }
        }
        for (int m = 1; m <= top; ++m) {
            for (int n = 1; m + n <= top; ++n) {
                EXPECT_LE(std::log(counts[static_cast<size_t>(m + n)]),
                          std::log(counts[static_cast<size_t>(m)]) + std::log(counts[static_cast<size_t>(n)]) + 1e-12)
                    << name;
            }
        }
    }
}

TEST(Language, AlphabetFormatsAndParses) {
    Alphabet compact({"0", "1", "α"});
    EXPECT_EQ(compact.format(compact.parse("0α1")), "0α1");
    Alphabet wide({"e1-", "e1+"});
    EXPECT_EQ(wide.format({0, 1}), "e1- e1+");
    EXPECT_EQ(wide.parse("e1- e1+"), (Word{0, 1}));
    EXPECT_EQ(wide.parse("e1-e1+"), (Word{0, 1}));
    EXPECT_THROW(wide.parse("x"), InvalidPresentation);
    EXPECT_THROW(Alphabet({"a", "a"}), InvalidPresentation);
}
