#pragma once

#include <functional>

#include "analysis.hpp"

namespace lsync {

/// Search bounds shared by every analysis.
struct Horizons {
    int max_level = 4;         ///< L, number of lambda-graph levels
    int max_word_len = 8;      ///< longest word enumerated
    int follower_horizon = 8;  ///< longest follower/predecessor examined
    int tail_len = 8;          ///< tail length for the canonical construction
};

/// Longest extension word a searched by the condition checks. A candidate a
/// is only meaningful while followers four symbols longer than a itself remain
/// inside the horizon to refute it.
inline int search_len(const Horizons& hz) { return std::max(1, hz.follower_horizon - 4); }

enum class Verdict { Verified, Refuted, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "VERIFIED";
        case Verdict::Refuted: return "REFUTED";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

/// Outcome of an l-synchronization test. When `yes` is false, `b` is a left
/// extension of v and `c` a follower of v that is not a follower of bv.
struct SyncAnswer {
    bool yes = true;
    bool exact = false;
    Word b, c;
};

/// Is v l-synchronizing: does every b in Gamma^-_l(v) satisfy F(bv) ⊇ F(v)?
inline SyncAnswer is_l_synchronizing(Engine& eng, const Word& v, int l, int horizon) {
    SyncAnswer ans;
    ans.exact = eng.oracle().finite_monoid();
    auto ev = eng.element(v);
    if (!ev) {
        ans.yes = false;
        return ans;
    }
    for (const auto& b : gamma_minus(eng.oracle(), v, l)) {
        auto ebv = eng.element(concat(b, v));
        auto inc = eng.includes(Side::Right, *ebv, *ev, horizon);
        if (!inc.holds) {
            ans.yes = false;
            ans.b = b;
            ans.c = inc.witness;
            return ans;
        }
    }
    return ans;
}

/// l-synchronizing words of length <= max_word_len for every level 0..L.
struct SyncTable {
    Horizons horizons;
    bool exact = false;                 ///< membership decided by closure
    std::vector<Word> words;            ///< all admissible words up to max_word_len
    std::vector<Element> elements;      ///< their elements
    std::vector<int> depth;             ///< largest level each word is synchronizing at
    std::vector<std::vector<size_t>> levels;  ///< indices into `words`, per level

    const Word& word(size_t i) const { return words[i]; }
    size_t level_size(int l) const { return levels[static_cast<size_t>(l)].size(); }
};

/// Computes the table. Left extensions of each word are walked once, level by
/// level, with equal elements merged.
inline SyncTable sync_word_table(Engine& eng, const Horizons& hz) {
    const Oracle& o = eng.oracle();
    const int L = hz.max_level;
    SyncTable t;
    t.horizons = hz;
    t.exact = o.finite_monoid();
    o.check_length(static_cast<size_t>(hz.max_word_len + L));
    for (auto& layer : language_layers(o, hz.max_word_len)) {
        for (size_t i = 0; i < layer.words.size(); ++i) {
            t.words.push_back(std::move(layer.words[i]));
            t.elements.push_back(std::move(layer.elements[i]));
        }
    }
    const auto k = static_cast<Symbol>(o.alphabet().size());
    t.depth.assign(t.words.size(), 0);
    for (size_t i = 0; i < t.words.size(); ++i) {
        const Element& ev = t.elements[i];
        std::vector<Element> cur{ev};
        int reached = 0;
        for (int l = 1; l <= L; ++l) {
            std::unordered_set<Element, ElementHash> seen;
            std::vector<Element> next;
            bool ok = true;
            for (const auto& e : cur) {
                for (Symbol s = 0; s < k && ok; ++s) {
                    auto x = o.extend_left(s, e);
                    if (!x || !seen.insert(o.two_sided_key(*x, L - l, eng.effective(hz.follower_horizon))).second) continue;
                    ok = eng.includes(Side::Right, *x, ev, hz.follower_horizon).holds;
                    next.push_back(std::move(*x));
                }
                if (!ok) break;
            }
            if (!ok) break;
            reached = l;
            cur = std::move(next);
        }
        t.depth[i] = reached;
    }
    t.levels.assign(static_cast<size_t>(L + 1), {});
    for (size_t i = 0; i < t.words.size(); ++i) {
        for (int l = 0; l <= t.depth[i]; ++l) t.levels[static_cast<size_t>(l)].push_back(i);
    }
    for (int l = 0; l <= L; ++l) {
        if (t.levels[static_cast<size_t>(l)].empty()) {
            throw EmptySyncLevel("no synchronizing word of length <= " +
                                 std::to_string(hz.max_word_len) + " at level " + std::to_string(l));
        }
    }
    return t;
}

/// A search over pairs (b, a) that failed for some b.
struct SearchFailure {
    Symbol sigma = -1;                          ///< for property (D)
    Word b;
    std::vector<std::pair<Word, Word>> evidence;  ///< (a, separating extension)
};

struct SyncCertificate {
    Verdict verdict = Verdict::Verified;
    bool exact = false;
    size_t checked = 0;
    std::vector<SearchFailure> failures;
};

namespace detail {

/// Elements reachable from the unit, each with a shortest word, in canonical order.
struct ElementClosure {
    std::vector<Word> words;
    std::vector<Element> elements;
};

inline ElementClosure element_closure(const Oracle& o) {
    ElementClosure c;
    std::unordered_set<Element, ElementHash> seen;
    c.words.push_back({});
    c.elements.push_back(o.identity());
    seen.insert(o.identity());
    const auto k = static_cast<Symbol>(o.alphabet().size());
    for (size_t i = 0; i < c.elements.size(); ++i) {
        for (Symbol s = 0; s < k; ++s) {
            auto x = o.extend_right(c.elements[i], s);
            if (!x || !seen.insert(*x).second) continue;
            Word w = c.words[i];
            w.push_back(s);
            c.words.push_back(std::move(w));
            c.elements.push_back(std::move(*x));
        }
    }
    return c;
}

/// Visits left extensions a of the word with element `e` (a·word admissible),
/// shortest first; stops when `visit` returns true. Exact classes merge equal
/// elements and run to closure; otherwise |a| <= bound, and extensions whose
/// two-sided keys agree (left budget: horizon plus remaining depth, right
/// budget: right_context) are visited once, which is sound when `visit`
/// only looks that far around the extended word.
inline bool for_left_extensions(const Oracle& o, const Element& e, int bound, int horizon, int right_context,
                                const std::function<bool(const Word&, const Element&)>& visit) {
    const bool closure = o.finite_monoid();
    const auto k = static_cast<Symbol>(o.alphabet().size());
    std::unordered_set<Element, ElementHash> seen{closure ? e : o.two_sided_key(e, horizon + bound, right_context)};
    std::vector<std::pair<Word, Element>> cur{{Word{}, e}};
    for (int d = 0; !cur.empty(); ++d) {
        for (auto& [a, x] : cur) {
            if (visit(a, x)) return true;
        }
        if (!closure && d >= bound) break;
        std::vector<std::pair<Word, Element>> next;
        for (auto& [a, x] : cur) {
            for (Symbol s = 0; s < k; ++s) {
                auto y = o.extend_left(s, x);
                if (!y) continue;
                const Element key = closure ? *y : o.two_sided_key(*y, horizon + bound - d - 1, right_context);
                if (!seen.insert(key).second) continue;
                Word w{s};
                w.insert(w.end(), a.begin(), a.end());
                next.emplace_back(std::move(w), std::move(*y));
            }
        }
        cur = std::move(next);
    }
    return false;
}

/// The words b examined by the global searches: all element classes for exact
/// oracles, all words up to the length bound otherwise.
inline ElementClosure searched_words(const Oracle& o, int bound) {
    if (o.finite_monoid()) return element_closure(o);
    ElementClosure c;
    for (auto& layer : language_layers(o, bound)) {
        for (size_t i = 0; i < layer.words.size(); ++i) {
            c.words.push_back(std::move(layer.words[i]));
            c.elements.push_back(std::move(layer.elements[i]));
        }
    }
    return c;
}

inline void finish(SyncCertificate& cert) {
    if (cert.failures.empty()) {
        cert.verdict = Verdict::Verified;
    } else {
        cert.verdict = cert.exact ? Verdict::Refuted : Verdict::Inconclusive;
    }
}

}  // namespace detail

/// Search options for the global checks.
struct SearchOptions {
    size_t max_failures = 16;   ///< stop after this many failing b
    size_t max_evidence = 64;   ///< evidence pairs kept per failure
};

/// Condition (iii) for a single b: some a with b ∈ omega^-(a), i.e. ba
/// admissible and F(ba) ⊇ F(a). Returns nullopt on success, else the failure.
/// Candidates a have length up to search_len(hz); pairs (a, ba) with equal
/// follower keys for the remaining budget are examined once.
inline std::optional<SearchFailure> condition_iii_for(Engine& eng, const Word& b, const Element& eb,
                                                      const Horizons& hz, size_t max_evidence = 64) {
    const Oracle& o = eng.oracle();
    const bool closure = o.finite_monoid();
    const auto k = static_cast<Symbol>(o.alphabet().size());
    SearchFailure f;
    f.b = b;
    struct Node {
        Word a;
        Element ea, eba;
    };
    std::unordered_set<Element, ElementHash> seen;
    auto pair_key = [](const Element& x, const Element& y) {
        Element r{static_cast<int32_t>(x.size())};
        r.insert(r.end(), x.begin(), x.end());
        r.insert(r.end(), y.begin(), y.end());
        return r;
    };
    const int bound = search_len(hz);
    auto node_key = [&](const Element& x, const Element& y, int depth) {
        if (closure) return pair_key(x, y);
        const int budget = hz.follower_horizon + bound - depth;
        return pair_key(o.right_key(x, budget), o.right_key(y, budget));
    };
    std::vector<Node> cur{{Word{}, o.identity(), eb}};
    seen.insert(node_key(cur[0].ea, eb, 0));
    for (int d = 0; !cur.empty(); ++d) {
        for (const auto& n : cur) {
            auto inc = eng.includes(Side::Right, n.eba, n.ea, hz.follower_horizon);
            if (inc.holds) return std::nullopt;
            if (f.evidence.size() < max_evidence) f.evidence.emplace_back(n.a, inc.witness);
        }
        if (!closure && d >= bound) break;
        std::vector<Node> next;
        for (const auto& n : cur) {
            for (Symbol s = 0; s < k; ++s) {
                auto y = o.extend_right(n.eba, s);
                if (!y) continue;
                auto x = o.extend_right(n.ea, s);
                if (!seen.insert(node_key(*x, *y, d + 1)).second) continue;
                Word a = n.a;
                a.push_back(s);
                next.push_back({std::move(a), std::move(*x), std::move(*y)});
            }
        }
        cur = std::move(next);
    }
    return f;
}

/// lambda-synchronization via condition (iii): every b has some a with b ∈ omega^-(a).
inline SyncCertificate check_lambda_synchronizing(Engine& eng, const Horizons& hz,
                                                  const SearchOptions& opt = {}) {
    const Oracle& o = eng.oracle();
    SyncCertificate cert;
    cert.exact = o.finite_monoid();
    auto bs = detail::searched_words(o, hz.max_word_len);
    // The outcome for b depends only on its followers within reach of the search.
    std::unordered_map<Element, std::optional<SearchFailure>, ElementHash> by_key;
    const int reach = search_len(hz) + hz.follower_horizon;
    for (size_t i = 0; i < bs.words.size(); ++i) {
        ++cert.checked;
        Element key = cert.exact ? bs.elements[i] : o.right_key(bs.elements[i], reach);
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            it = by_key.emplace(std::move(key), condition_iii_for(eng, bs.words[i], bs.elements[i], hz, opt.max_evidence)).first;
        }
        if (it->second) {
            SearchFailure f = *it->second;
            f.b = bs.words[i];
            cert.failures.push_back(std::move(f));
            if (cert.failures.size() >= opt.max_failures) break;
        }
    }
    detail::finish(cert);
    return cert;
}

/// Property (D) for a single (σ, b): some a ∈ Gamma^-(b) with P(abσ) ⊇ P(ab).
inline std::optional<SearchFailure> property_d_for(Engine& eng, Symbol sigma, const Word& b,
                                                   const Element& eb, const Horizons& hz,
                                                   size_t max_evidence = 64) {
    const Oracle& o = eng.oracle();
    SearchFailure f;
    f.sigma = sigma;
    f.b = b;
    bool found = detail::for_left_extensions(o, eb, search_len(hz), hz.follower_horizon, 1, [&](const Word& a, const Element& eab) {
        auto eabs = o.extend_right(eab, sigma);
        if (!eabs) return false;
        auto inc = eng.includes(Side::Left, *eabs, eab, hz.follower_horizon);
        if (inc.holds) return true;
        if (f.evidence.size() < max_evidence) f.evidence.emplace_back(a, inc.witness);
        return false;
    });
    if (found) return std::nullopt;
    return f;
}

inline SyncCertificate check_property_D(Engine& eng, const Horizons& hz, const SearchOptions& opt = {}) {
    const Oracle& o = eng.oracle();
    SyncCertificate cert;
    cert.exact = o.finite_monoid();
    auto bs = detail::searched_words(o, hz.max_word_len);
    const auto k = static_cast<Symbol>(o.alphabet().size());
    // The outcome for (σ, b) depends only on b's two-sided context within reach.
    std::unordered_map<Element, std::optional<SearchFailure>, ElementHash> by_key;
    const int reach = search_len(hz) + hz.follower_horizon;
    for (size_t i = 0; i < bs.words.size() && cert.failures.size() < opt.max_failures; ++i) {
        for (Symbol s = 0; s < k; ++s) {
            if (!o.extend_right(bs.elements[i], s)) continue;
            ++cert.checked;
            Element key = cert.exact ? bs.elements[i] : o.two_sided_key(bs.elements[i], reach, 1);
            key.push_back(s);
            auto it = by_key.find(key);
            if (it == by_key.end()) {
                it = by_key.emplace(std::move(key), property_d_for(eng, s, bs.words[i], bs.elements[i], hz, opt.max_evidence)).first;
            }
            if (it->second) {
                SearchFailure f = *it->second;
                f.b = bs.words[i];
                cert.failures.push_back(std::move(f));
                if (cert.failures.size() >= opt.max_failures) break;
            }
        }
    }
    detail::finish(cert);
    return cert;
}

/// Witnesses for the two structural facts used by the lambda-graph construction.
struct PastWitnessEntry {
    size_t mu = 0;                 ///< index of mu in the table
    std::optional<size_t> same_past;        ///< mu' in S_{l+1} with equal l-past
    std::optional<std::pair<Symbol, size_t>> extension;  ///< (β, ν) with βν ∼_l mu
};

struct PastWitnessReport {
    int level = 0;
    std::vector<PastWitnessEntry> entries;
    size_t failures() const {
        size_t n = 0;
        for (const auto& e : entries) n += (!e.same_past || !e.extension) ? 1 : 0;
        return n;
    }
};

inline PastWitnessReport past_witnesses(Engine& eng, const SyncTable& t, int l) {
    if (l + 1 > t.horizons.max_level) throw InsufficientLevels("level l+1 is not in the table");
    const Oracle& o = eng.oracle();
    PastClassifier cls(eng, l);
    std::unordered_map<int, size_t> by_class_next;
    std::unordered_map<int, std::pair<Symbol, size_t>> by_class_ext;
    const auto k = static_cast<Symbol>(o.alphabet().size());
    for (size_t idx : t.levels[static_cast<size_t>(l + 1)]) {
        by_class_next.emplace(cls.classify(t.elements[idx]), idx);
        for (Symbol s = 0; s < k; ++s) {
            auto x = o.extend_left(s, t.elements[idx]);
            if (x) by_class_ext.emplace(cls.classify(*x), std::make_pair(s, idx));
        }
    }
    PastWitnessReport rep;
    rep.level = l;
    for (size_t idx : t.levels[static_cast<size_t>(l)]) {
        PastWitnessEntry e;
        e.mu = idx;
        int c = cls.classify(t.elements[idx]);
        if (auto it = by_class_next.find(c); it != by_class_next.end()) e.same_past = it->second;
        if (auto it = by_class_ext.find(c); it != by_class_ext.end()) e.extension = it->second;
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace lsync
