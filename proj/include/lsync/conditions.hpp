#pragma once

#include "lambda_graph.hpp"

namespace lsync {

/// Outcome of a condition checked on the lower levels of a truncated system.
struct ConditionReport {
    std::string name;
    Verdict verdict = Verdict::Verified;
    int checked_levels = 0;   ///< levels 0..checked_levels-1 were examined
    int max_depth = 0;        ///< longest path length searched
    std::vector<std::string> witnessed;    ///< "vertex: depth d"
    std::vector<std::string> unwitnessed;  ///< vertices or pairs without witness
};

/// Default search depth: a vertex of level l is examined when at least
/// ceil(L/2)+1 further levels exist above it.
inline int default_condition_depth(int L) { return std::min(L, (L + 1) / 2 + 1); }

namespace detail {

inline std::string vname(int l, int v) { return "v" + std::to_string(l) + "_" + std::to_string(v); }

inline void finish(ConditionReport& r) {
    r.verdict = r.unwitnessed.empty() ? Verdict::Verified : Verdict::Inconclusive;
}

}  // namespace detail

/// lambda-condition (I): from every vertex two distinct paths end at a common vertex.
inline ConditionReport check_lambda_condition_I(const LambdaGraphSystem& g, int depth = -1) {
    if (depth < 0) depth = default_condition_depth(g.L);
    ConditionReport r;
    r.name = "lambda-condition (I)";
    r.max_depth = depth;
    r.checked_levels = g.L - depth + 1;
    for (int l = 0; l < r.checked_levels; ++l) {
        for (size_t v = 0; v < g.size(l); ++v) {
            std::vector<int> count(g.size(l), 0);
            count[v] = 1;
            int found = -1;
            for (int d = 1; d <= g.L - l && found < 0; ++d) {
                std::vector<int> next(g.size(l + d), 0);
                for (const auto& e : g.edges[static_cast<size_t>(l + d - 1)]) {
                    int& c = next[static_cast<size_t>(e.target)];
                    c = std::min(2, c + count[static_cast<size_t>(e.source)]);
                }
                if (std::any_of(next.begin(), next.end(), [](int c) { return c >= 2; })) found = d;
                count = std::move(next);
            }
            if (found > 0) {
                r.witnessed.push_back(detail::vname(l, static_cast<int>(v)) + ": depth " + std::to_string(found));
            } else {
                r.unwitnessed.push_back(detail::vname(l, static_cast<int>(v)));
            }
        }
    }
    detail::finish(r);
    return r;
}

/// lambda-irreducibility: for vertices v_i, v_j of level l some d has every
/// vertex above v_i at level l+d (under iota^d) reachable from v_j in d steps.
inline ConditionReport check_lambda_irreducible(const LambdaGraphSystem& g, int depth = -1) {
    if (depth < 0) depth = default_condition_depth(g.L);
    ConditionReport r;
    r.name = "lambda-irreducible";
    r.max_depth = depth;
    r.checked_levels = g.L - depth + 1;
    for (int l = 0; l < r.checked_levels; ++l) {
        const size_t n = g.size(l);
        // above[d][h]: iota^d image of vertex h of level l+d.
        std::vector<std::vector<int>> above(static_cast<size_t>(g.L - l + 1));
        above[0].resize(n);
        for (size_t h = 0; h < n; ++h) above[0][h] = static_cast<int>(h);
        for (int d = 1; d <= g.L - l; ++d) {
            const auto& io = g.iota[static_cast<size_t>(l + d - 1)];
            for (size_t h = 0; h < g.size(l + d); ++h) {
                above[static_cast<size_t>(d)].push_back(above[static_cast<size_t>(d - 1)][static_cast<size_t>(io[h])]);
            }
        }
        for (size_t j = 0; j < n; ++j) {
            std::vector<std::vector<bool>> reach{std::vector<bool>(n, false)};
            reach[0][j] = true;
            for (int d = 1; d <= g.L - l; ++d) {
                std::vector<bool> next(g.size(l + d), false);
                for (const auto& e : g.edges[static_cast<size_t>(l + d - 1)]) {
                    if (reach.back()[static_cast<size_t>(e.source)]) next[static_cast<size_t>(e.target)] = true;
                }
                reach.push_back(std::move(next));
            }
            for (size_t i = 0; i < n; ++i) {
                int found = -1;
                for (int d = 1; d <= g.L - l && found < 0; ++d) {
                    bool all = true;
                    for (size_t h = 0; h < g.size(l + d) && all; ++h) {
                        if (above[static_cast<size_t>(d)][h] == static_cast<int>(i) && !reach[static_cast<size_t>(d)][h]) {
                            all = false;
                        }
                    }
                    if (all) found = d;
                }
                std::string pair = "(" + detail::vname(l, static_cast<int>(i)) + ", " + detail::vname(l, static_cast<int>(j)) + ")";
                if (found > 0) {
                    r.witnessed.push_back(pair + ": depth " + std::to_string(found));
                } else {
                    r.unwitnessed.push_back(pair);
                }
            }
        }
    }
    detail::finish(r);
    return r;
}

namespace detail {

/// Classes of one level as used by the word-level checks: the vertices of the
/// built system come first (ids 0..m-1), so table words falling outside them
/// (truncation artifacts removed by the builder) are recognised by id >= m.
struct LevelClasses {
    PastClassifier cls;
    size_t count = 0;
    std::vector<std::pair<Word, Element>> reps;  ///< one table word per class, where one exists
};

inline LevelClasses level_classes(Engine& eng, const SyncTable& t, const LambdaGraphSystem& g, int level) {
    LevelClasses lc{PastClassifier(eng, level), g.size(level), {}};
    for (const auto& v : g.vertices[static_cast<size_t>(level)]) lc.cls.classify(v.element);
    std::vector<bool> have(lc.count, false);
    for (size_t idx : t.levels[static_cast<size_t>(level)]) {
        auto c = static_cast<size_t>(lc.cls.classify(t.elements[idx]));
        if (c < lc.count && !have[c]) {
            have[c] = true;
            lc.reps.emplace_back(t.words[idx], t.elements[idx]);
        }
    }
    return lc;
}

/// All left extensions of exact length k of an element, with their words.
inline std::vector<std::pair<Word, Element>> left_extensions(const Oracle& o, const Word& w, const Element& e, int k) {
    std::vector<std::pair<Word, Element>> cur{{w, e}};
    const auto n = static_cast<Symbol>(o.alphabet().size());
    for (int d = 0; d < k; ++d) {
        std::vector<std::pair<Word, Element>> next;
        for (auto& [x, ex] : cur) {
            for (Symbol s = 0; s < n; ++s) {
                auto y = o.extend_left(s, ex);
                if (!y) continue;
                Word z{s};
                z.insert(z.end(), x.begin(), x.end());
                next.emplace_back(std::move(z), std::move(*y));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace detail

/// Word-level form of lambda-condition (I) on the synchronizing-word table:
/// a class [mu]_l is witnessed at depth k when some table word nu of level l+k
/// has two distinct gamma in Gamma^-_k(nu) with gamma nu in [mu]_l.
inline ConditionReport check_sync_condition_I(Engine& eng, const SyncTable& t, const LambdaGraphSystem& g,
                                              int depth = -1) {
    const int L = t.horizons.max_level;
    if (depth < 0) depth = default_condition_depth(L);
    ConditionReport r;
    r.name = "sync condition (I)";
    r.max_depth = depth;
    r.checked_levels = L - depth + 1;
    for (int l = 0; l < r.checked_levels; ++l) {
        auto here = detail::level_classes(eng, t, g, l);
        std::vector<int> found(here.count, -1);
        for (int k = 1; k <= L - l; ++k) {
            for (const auto& [nu, enu] : detail::level_classes(eng, t, g, l + k).reps) {
                std::map<int, int> per_class;
                for (const auto& [w, e] : detail::left_extensions(eng.oracle(), nu, enu, k)) {
                    auto c = static_cast<size_t>(here.cls.classify(e));
                    if (++per_class[static_cast<int>(c)] == 2 && c < here.count && found[c] < 0) found[c] = k;
                }
            }
        }
        for (size_t c = 0; c < here.count; ++c) {
            std::string name = "class " + std::to_string(l) + "_" + std::to_string(c);
            if (found[c] > 0) {
                r.witnessed.push_back(name + ": depth " + std::to_string(found[c]));
            } else {
                r.unwitnessed.push_back(name);
            }
        }
    }
    detail::finish(r);
    return r;
}

/// Word-level form of lambda-irreducibility: for classes [mu], [nu] of level l
/// some k has every table word eta of level l+k with eta ~_l nu extended on the
/// left by some xi of length k into the class of mu.
inline ConditionReport check_synchronized_irreducible(Engine& eng, const SyncTable& t, const LambdaGraphSystem& g,
                                                      int depth = -1) {
    const int L = t.horizons.max_level;
    if (depth < 0) depth = default_condition_depth(L);
    ConditionReport r;
    r.name = "synchronized irreducible";
    r.max_depth = depth;
    r.checked_levels = L - depth + 1;
    for (int l = 0; l < r.checked_levels; ++l) {
        auto here = detail::level_classes(eng, t, g, l);
        const size_t n = here.count;
        std::vector<std::vector<std::vector<bool>>> ok;  // ok[k-1][nu][mu]
        for (int k = 1; k <= L - l; ++k) {
            std::vector<std::vector<bool>> m(n, std::vector<bool>(n, true));
            std::vector<bool> seen(n, false);
            for (const auto& [eta, eeta] : detail::level_classes(eng, t, g, l + k).reps) {
                auto nu = static_cast<size_t>(here.cls.classify(eeta));
                if (nu >= n) continue;
                seen[nu] = true;
                std::vector<bool> hit(n, false);
                for (const auto& [w, e] : detail::left_extensions(eng.oracle(), eta, eeta, k)) {
                    auto c = static_cast<size_t>(here.cls.classify(e));
                    if (c < n) hit[c] = true;
                }
                for (size_t mu = 0; mu < n; ++mu) m[nu][mu] = m[nu][mu] && hit[mu];
            }
            for (size_t nu = 0; nu < n; ++nu) {
                if (!seen[nu]) m[nu].assign(n, false);
            }
            ok.push_back(std::move(m));
        }
        for (size_t mu = 0; mu < n; ++mu) {
            for (size_t nu = 0; nu < n; ++nu) {
                int found = -1;
                for (size_t k = 0; k < ok.size() && found < 0; ++k) {
                    if (ok[k][nu][mu]) found = static_cast<int>(k) + 1;
                }
                std::string pair = "(class " + std::to_string(l) + "_" + std::to_string(mu) + ", class " +
                                   std::to_string(l) + "_" + std::to_string(nu) + ")";
                if (found > 0) {
                    r.witnessed.push_back(pair + ": depth " + std::to_string(found));
                } else {
                    r.unwitnessed.push_back(pair);
                }
            }
        }
    }
    detail::finish(r);
    return r;
}

}  // namespace lsync
