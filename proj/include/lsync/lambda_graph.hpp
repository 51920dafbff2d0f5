#pragma once

#include <tuple>

#include "sync.hpp"

namespace lsync {

struct LambdaVertex {
    Word rep;                          ///< canonically least representative found
    Element element;
    std::optional<WordSet> signature;  ///< Gamma^-_l(rep) when small enough to list
};

struct LambdaEdge {
    int source = 0;  ///< vertex of level l
    Symbol label = 0;
    int target = 0;  ///< vertex of level l+1
};

/// How a system was obtained.
struct Provenance {
    std::string construction;  ///< "lambda-synchronizing" or "canonical"
    std::string oracle_kind;
    std::string exactness;
    bool closure_searches = false;
    Horizons horizons;
    std::vector<size_t> pruned;  ///< vertices removed per level as unsupported truncation artifacts
};

/// Levels 0..L of vertices, labeled edges from level l to l+1 and the maps
/// iota from level l+1 to level l.
struct LambdaGraphSystem {
    Alphabet alphabet;
    int L = 0;
    std::vector<std::vector<LambdaVertex>> vertices;
    std::vector<std::vector<LambdaEdge>> edges;  ///< edges[l]: level l -> l+1
    std::vector<std::vector<int>> iota;          ///< iota[l][j]: image of vertex j of level l+1
    Provenance provenance;

    size_t size(int l) const { return vertices[static_cast<size_t>(l)].size(); }
    std::vector<size_t> sizes() const {
        std::vector<size_t> r;
        for (const auto& v : vertices) r.push_back(v.size());
        return r;
    }
};

struct BuildOptions {
    size_t signature_limit = 256;  ///< list signatures only when |L_l| is at most this
};

namespace detail {

struct Candidate {
    Word word;
    Element element;
};

/// Builds the system whose level-l vertices are the classes of words with equal
/// length-l predecessor sets among the seeds of level l and everything needed
/// to close the system downward (iota images and edge sources).
inline LambdaGraphSystem build_from_seeds(Engine& eng, const std::vector<std::vector<Candidate>>& seeds,
                                          Provenance prov, const BuildOptions& opt) {
    const Oracle& o = eng.oracle();
    const int L = static_cast<int>(seeds.size()) - 1;
    const auto k = static_cast<Symbol>(o.alphabet().size());
    LambdaGraphSystem g;
    g.alphabet = o.alphabet();
    g.L = L;
    g.vertices.assign(static_cast<size_t>(L + 1), {});
    g.edges.assign(static_cast<size_t>(L), {});
    g.iota.assign(static_cast<size_t>(L), {});

    for (int l = L; l >= 0; --l) {
        PastClassifier cls(eng, l);
        std::vector<Candidate> reps;  // by class id
        auto add = [&](const Word& w, const Element& e) {
            int id = cls.classify(e);
            if (static_cast<size_t>(id) == reps.size()) {
                reps.push_back({w, e});
            } else if (CanonicalLess{}(w, reps[static_cast<size_t>(id)].word)) {
                reps[static_cast<size_t>(id)] = {w, e};
            }
            return id;
        };
        for (const auto& c : seeds[static_cast<size_t>(l)]) add(c.word, c.element);
        std::vector<int> up_class;
        std::vector<LambdaEdge> raw_edges;
        if (l < L) {
            const auto& upper = g.vertices[static_cast<size_t>(l + 1)];
            for (size_t j = 0; j < upper.size(); ++j) {
                up_class.push_back(add(upper[j].rep, upper[j].element));
                for (Symbol s = 0; s < k; ++s) {
                    auto x = o.extend_left(s, upper[j].element);
                    if (!x) continue;
                    Word w{s};
                    w.insert(w.end(), upper[j].rep.begin(), upper[j].rep.end());
                    raw_edges.push_back({add(w, *x), s, static_cast<int>(j)});
                }
            }
        }
        std::vector<int> order(reps.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return CanonicalLess{}(reps[static_cast<size_t>(a)].word, reps[static_cast<size_t>(b)].word);
        });
        std::vector<int> renum(reps.size());
        auto& level = g.vertices[static_cast<size_t>(l)];
        for (size_t i = 0; i < order.size(); ++i) {
            renum[static_cast<size_t>(order[i])] = static_cast<int>(i);
            const auto& c = reps[static_cast<size_t>(order[i])];
            level.push_back({c.word, c.element, std::nullopt});
        }
        if (l < L) {
            for (int c : up_class) g.iota[static_cast<size_t>(l)].push_back(renum[static_cast<size_t>(c)]);
            for (auto e : raw_edges) {
                e.source = renum[static_cast<size_t>(e.source)];
                g.edges[static_cast<size_t>(l)].push_back(e);
            }
        }
    }
    prov.pruned.assign(static_cast<size_t>(L + 1), 0);
    g.provenance = std::move(prov);

    // Greatest subsystem in which iota is onto, iota images are kept, and every
    // edge into a kept vertex starts at a kept vertex.
    std::vector<std::vector<bool>> kept(static_cast<size_t>(L + 1));
    for (int l = 0; l <= L; ++l) kept[static_cast<size_t>(l)].assign(g.size(l), true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int l = 0; l < L; ++l) {
            std::vector<bool> hit(g.size(l), false);
            for (size_t j = 0; j < g.size(l + 1); ++j) {
                if (kept[static_cast<size_t>(l + 1)][j]) {
                    hit[static_cast<size_t>(g.iota[static_cast<size_t>(l)][j])] = true;
                }
            }
            for (size_t u = 0; u < g.size(l); ++u) {
                if (kept[static_cast<size_t>(l)][u] && !hit[u]) {
                    kept[static_cast<size_t>(l)][u] = false;
                    changed = true;
                }
            }
        }
        for (int l = 0; l < L; ++l) {
            auto& up = kept[static_cast<size_t>(l + 1)];
            const auto& lo = kept[static_cast<size_t>(l)];
            for (size_t j = 0; j < up.size(); ++j) {
                if (up[j] && !lo[static_cast<size_t>(g.iota[static_cast<size_t>(l)][j])]) {
                    up[j] = false;
                    changed = true;
                }
            }
            for (const auto& e : g.edges[static_cast<size_t>(l)]) {
                if (up[static_cast<size_t>(e.target)] && !lo[static_cast<size_t>(e.source)]) {
                    up[static_cast<size_t>(e.target)] = false;
                    changed = true;
                }
            }
        }
    }
    std::vector<std::vector<int>> index(static_cast<size_t>(L + 1));
    for (int l = 0; l <= L; ++l) {
        auto& idx = index[static_cast<size_t>(l)];
        std::vector<LambdaVertex> vs;
        for (size_t u = 0; u < g.size(l); ++u) {
            if (kept[static_cast<size_t>(l)][u]) {
                idx.push_back(static_cast<int>(vs.size()));
                vs.push_back(std::move(g.vertices[static_cast<size_t>(l)][u]));
            } else {
                idx.push_back(-1);
                ++g.provenance.pruned[static_cast<size_t>(l)];
            }
        }
        if (vs.empty()) {
            throw EmptySyncLevel("level " + std::to_string(l) + " has no vertex supported by higher levels");
        }
        g.vertices[static_cast<size_t>(l)] = std::move(vs);
    }
    for (int l = 0; l < L; ++l) {
        std::vector<LambdaEdge> es;
        for (const auto& e : g.edges[static_cast<size_t>(l)]) {
            int s = index[static_cast<size_t>(l)][static_cast<size_t>(e.source)];
            int t = index[static_cast<size_t>(l + 1)][static_cast<size_t>(e.target)];
            if (s >= 0 && t >= 0) es.push_back({s, e.label, t});
        }
        std::sort(es.begin(), es.end(), [](const LambdaEdge& a, const LambdaEdge& b) {
            return std::tie(a.target, a.label, a.source) < std::tie(b.target, b.label, b.source);
        });
        g.edges[static_cast<size_t>(l)] = std::move(es);
        std::vector<int> io;
        const auto& old = g.iota[static_cast<size_t>(l)];
        for (size_t j = 0; j < old.size(); ++j) {
            if (index[static_cast<size_t>(l + 1)][j] >= 0) {
                io.push_back(index[static_cast<size_t>(l)][static_cast<size_t>(old[j])]);
            }
        }
        g.iota[static_cast<size_t>(l)] = std::move(io);
    }

    for (int l = 0; l <= L; ++l) {
        auto layers = language_layers(o, l);
        if (layers.back().words.size() > opt.signature_limit) continue;
        for (auto& v : g.vertices[static_cast<size_t>(l)]) v.signature = gamma_minus(o, v.rep, l);
    }
    return g;
}

inline Provenance make_provenance(const Engine& eng, const Horizons& hz, std::string construction) {
    Provenance p;
    p.construction = std::move(construction);
    p.oracle_kind = eng.oracle().kind();
    p.exactness = eng.oracle().exactness();
    p.closure_searches = eng.oracle().finite_monoid();
    p.horizons = hz;
    return p;
}

}  // namespace detail

/// The lambda-graph system built from synchronizing words.
inline LambdaGraphSystem build_lambda_synchronizing(Engine& eng, const SyncTable& t,
                                                    const BuildOptions& opt = {}) {
    const int L = t.horizons.max_level;
    std::vector<std::vector<detail::Candidate>> seeds(static_cast<size_t>(L + 1));
    for (int l = 0; l <= L; ++l) {
        for (size_t i : t.levels[static_cast<size_t>(l)]) seeds[static_cast<size_t>(l)].push_back({t.words[i], t.elements[i]});
    }
    return detail::build_from_seeds(eng, seeds, detail::make_provenance(eng, t.horizons, "lambda-synchronizing"), opt);
}

/// The canonical system: every level is seeded with all words of the tail length.
inline LambdaGraphSystem build_canonical(Engine& eng, const Horizons& hz, const BuildOptions& opt = {}) {
    const Oracle& o = eng.oracle();
    o.check_length(static_cast<size_t>(hz.tail_len + hz.max_level));
    auto layer = language_layers(o, hz.tail_len).back();
    std::vector<detail::Candidate> tail;
    for (size_t i = 0; i < layer.words.size(); ++i) tail.push_back({layer.words[i], layer.elements[i]});
    std::vector<std::vector<detail::Candidate>> seeds(static_cast<size_t>(hz.max_level + 1), tail);
    return detail::build_from_seeds(eng, seeds, detail::make_provenance(eng, hz, "canonical"), opt);
}

/// Result of a structural verification; empty `violations` means it holds.
struct Check {
    std::string name;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks iota surjectivity, label/iota compatibility, the local property,
/// left-resolvingness and predecessor separation.
inline std::vector<Check> verify_axioms(const LambdaGraphSystem& g) {
    const int L = g.L;
    Check onto{"iota surjective", {}}, compat{"label-iota compatible", {}}, local{"local property", {}},
        left{"left-resolving", {}}, sep{"predecessor-separated", {}};
    auto vname = [](int l, int v) { return "v" + std::to_string(l) + "_" + std::to_string(v); };

    std::vector<std::vector<std::set<Symbol>>> in_labels(static_cast<size_t>(L + 1));
    for (int l = 0; l <= L; ++l) in_labels[static_cast<size_t>(l)].assign(g.size(l), {});
    for (int l = 0; l < L; ++l) {
        std::set<std::pair<int, Symbol>> seen;
        for (const auto& e : g.edges[static_cast<size_t>(l)]) {
            in_labels[static_cast<size_t>(l + 1)][static_cast<size_t>(e.target)].insert(e.label);
            if (!seen.emplace(e.target, e.label).second) {
                left.violations.push_back(vname(l + 1, e.target) + " has two incoming edges labeled " +
                                          g.alphabet.name(e.label));
            }
        }
        std::vector<bool> hit(g.size(l), false);
        for (int u : g.iota[static_cast<size_t>(l)]) hit[static_cast<size_t>(u)] = true;
        for (size_t u = 0; u < hit.size(); ++u) {
            if (!hit[u]) onto.violations.push_back(vname(l, static_cast<int>(u)) + " has no iota preimage");
        }
    }
    for (int l = 1; l < L; ++l) {
        for (size_t v = 0; v < g.size(l + 1); ++v) {
            int iv = g.iota[static_cast<size_t>(l)][v];
            if (in_labels[static_cast<size_t>(l + 1)][v] != in_labels[static_cast<size_t>(l)][static_cast<size_t>(iv)]) {
                compat.violations.push_back(vname(l + 1, static_cast<int>(v)) + " and its iota image differ in incoming labels");
            }
        }
        // E^iota(u, v): edges level l -> l+1 into v whose source maps to u.
        // E_iota(u, v): edges level l-1 -> l from u into iota(v).
        std::map<std::pair<int, int>, std::multiset<Symbol>> upper, lower;
        for (const auto& e : g.edges[static_cast<size_t>(l)]) {
            int u = g.iota[static_cast<size_t>(l - 1)][static_cast<size_t>(e.source)];
            upper[{u, e.target}].insert(e.label);
        }
        std::map<int, std::vector<int>> preimages;
        for (size_t v = 0; v < g.size(l + 1); ++v) preimages[g.iota[static_cast<size_t>(l)][v]].push_back(static_cast<int>(v));
        for (const auto& e : g.edges[static_cast<size_t>(l - 1)]) {
            for (int v : preimages[e.target]) lower[{e.source, v}].insert(e.label);
        }
        if (upper != lower) {
            for (const auto& [key, labels] : upper) {
                auto it = lower.find(key);
                if (it == lower.end() || it->second != labels) {
                    local.violations.push_back("pair (" + vname(l - 1, key.first) + ", " + vname(l + 1, key.second) + ")");
                }
            }
            for (const auto& [key, labels] : lower) {
                if (!upper.count(key)) {
                    local.violations.push_back("pair (" + vname(l - 1, key.first) + ", " + vname(l + 1, key.second) + ")");
                }
            }
        }
    }
    // Predecessor separation: label sets of paths from level 0 differ. With
    // unique sources per (target, label), a path set is determined by the
    // path sets of its sources, so interned signatures decide equality.
    std::vector<int> id(g.size(0), 0);
    for (int l = 0; l < L && left.ok(); ++l) {
        const size_t k = g.alphabet.size();
        std::vector<std::vector<int>> sig(g.size(l + 1), std::vector<int>(k, -1));
        for (const auto& e : g.edges[static_cast<size_t>(l)]) {
            sig[static_cast<size_t>(e.target)][static_cast<size_t>(e.label)] = id[static_cast<size_t>(e.source)];
        }
        std::map<std::vector<int>, int> interned;
        std::vector<int> next(g.size(l + 1));
        for (size_t v = 0; v < g.size(l + 1); ++v) {
            auto [it, fresh] = interned.emplace(sig[v], static_cast<int>(interned.size()));
            next[v] = it->second;
            if (!fresh) {
                for (size_t u = 0; u < v; ++u) {
                    if (next[u] == it->second) {
                        sep.violations.push_back(vname(l + 1, static_cast<int>(u)) + " and " +
                                                 vname(l + 1, static_cast<int>(v)) + " have the same incoming paths");
                        break;
                    }
                }
            }
        }
        id = std::move(next);
    }
    return {onto, compat, local, left, sep};
}

inline bool axioms_hold(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok(); });
}

/// Does the set of label words of length n on paths ending at level L equal L_n(X)?
struct PresentsReport {
    int n = 0;
    bool holds = true;
    std::vector<Word> missing;   ///< admissible words not realized
    std::vector<Word> spurious;  ///< realized words that are not admissible
};

inline std::vector<PresentsReport> verify_presents(const LambdaGraphSystem& g, const Oracle& o, int max_n) {
    std::vector<PresentsReport> out;
    const int L = g.L;
    for (int n = 1; n <= std::min(max_n, L); ++n) {
        std::vector<WordSet> cur(g.size(L - n), WordSet{Word{}});
        for (int l = L - n; l < L; ++l) {
            std::vector<WordSet> next(g.size(l + 1));
            for (const auto& e : g.edges[static_cast<size_t>(l)]) {
                for (const auto& w : cur[static_cast<size_t>(e.source)]) {
                    Word x = w;
                    x.push_back(e.label);
                    next[static_cast<size_t>(e.target)].insert(std::move(x));
                }
            }
            cur = std::move(next);
        }
        WordSet realized;
        for (auto& s : cur) realized.insert(s.begin(), s.end());
        WordSet lang = enumerate_language(o, n);
        PresentsReport r;
        r.n = n;
        std::set_difference(lang.begin(), lang.end(), realized.begin(), realized.end(),
                            std::back_inserter(r.missing), CanonicalLess{});
        std::set_difference(realized.begin(), realized.end(), lang.begin(), lang.end(),
                            std::back_inserter(r.spurious), CanonicalLess{});
        r.holds = r.missing.empty() && r.spurious.empty();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace lsync

namespace lsync {

/// True when two systems over the same oracle are isomorphic as leveled
/// labeled graphs, matching vertices by their past classes.
inline bool isomorphic_systems(Engine& eng, const LambdaGraphSystem& a, const LambdaGraphSystem& b) {
    if (a.L != b.L || a.sizes() != b.sizes()) return false;
    std::vector<std::vector<int>> map(static_cast<size_t>(a.L + 1));
    for (int l = 0; l <= a.L; ++l) {
        PastClassifier cls(eng, l);
        for (const auto& v : b.vertices[static_cast<size_t>(l)]) cls.classify(v.element);
        std::vector<bool> used(b.size(l), false);
        for (const auto& v : a.vertices[static_cast<size_t>(l)]) {
            auto id = static_cast<size_t>(cls.classify(v.element));
            if (id >= b.size(l) || used[id]) return false;
            used[id] = true;
            map[static_cast<size_t>(l)].push_back(static_cast<int>(id));
        }
    }
    for (int l = 0; l < a.L; ++l) {
        const auto lu = static_cast<size_t>(l);
        std::set<std::tuple<int, Symbol, int>> ea, eb;
        for (const auto& e : a.edges[lu]) {
            ea.emplace(map[lu][static_cast<size_t>(e.source)], e.label, map[lu + 1][static_cast<size_t>(e.target)]);
        }
        for (const auto& e : b.edges[lu]) eb.emplace(e.source, e.label, e.target);
        if (ea != eb) return false;
        for (size_t j = 0; j < a.size(l + 1); ++j) {
            if (b.iota[lu][static_cast<size_t>(map[lu + 1][j])] != map[lu][static_cast<size_t>(a.iota[lu][j])]) return false;
        }
    }
    return true;
}

/// Larger horizons used to confirm a build: words and followers grow by half.
inline Horizons recheck_horizons(const Horizons& hz) {
    Horizons r = hz;
    r.max_word_len = hz.max_word_len + std::max(2, hz.max_word_len / 2);
    r.follower_horizon = hz.follower_horizon + std::max(2, hz.follower_horizon / 2);
    r.tail_len = hz.tail_len + std::max(2, hz.tail_len / 2);
    return r;
}

}  // namespace lsync
