#pragma once

#include <functional>

#include "lsync/io/builtins.hpp"

/// Independent brute-force reference implementations used as test oracles.
namespace brute {

using lsync::Symbol;
using lsync::Word;
using lsync::WordSet;
using Predicate = std::function<bool(const Word&)>;

/// Every word of length n over k symbols, in canonical order.
inline std::vector<Word> all_words(int k, int n) {
    std::vector<Word> out{Word{}};
    for (int i = 0; i < n; ++i) {
        std::vector<Word> next;
        for (const auto& w : out) {
            for (Symbol s = 0; s < k; ++s) {
                Word x = w;
                x.push_back(s);
                next.push_back(std::move(x));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline WordSet language(int k, int n, const Predicate& ok) {
    WordSet out;
    for (auto& w : all_words(k, n)) {
        if (ok(w)) out.insert(std::move(w));
    }
    return out;
}

inline bool contains_factor(const Word& w, const Word& f) {
    return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

inline Predicate sft(std::vector<Word> forbidden) {
    return [forbidden](const Word& w) {
        return std::none_of(forbidden.begin(), forbidden.end(), [&](const Word& f) { return contains_factor(w, f); });
    };
}

/// Label of some path in the graph; depth-first over all paths. The graph is
/// assumed essential, so every path label is a word of the shift.
inline Predicate sofic(lsync::LabeledGraph g) {
    return [g](const Word& w) {
        std::function<bool(int, size_t)> walk = [&](int q, size_t i) {
            if (i == w.size()) return true;
            for (const auto& e : g.edges) {
                if (e.source == q && e.label == w[i] && walk(e.target, i + 1)) return true;
            }
            return false;
        };
        for (int q = 0; q < g.states; ++q) {
            if (walk(q, 0)) return true;
        }
        return false;
    };
}

/// Dyck / Motzkin words over symbols e1-..en-, [1], e1+..en+: cancel matched
/// brackets with a stack and reject a mismatched closing bracket.
inline Predicate dyck(int n, bool neutral) {
    return [n, neutral](const Word& w) {
        std::vector<int> open;
        for (Symbol s : w) {
            if (s < n) {
                open.push_back(s);
            } else if (neutral && s == n) {
                continue;
            } else {
                int j = s - n - (neutral ? 1 : 0);
                if (!open.empty()) {
                    if (open.back() != j) return false;
                    open.pop_back();
                }
            }
        }
        return true;
    };
}

/// Factors of the fixed-point prefix sigma^k(0), for k large enough.
inline Predicate substitution(std::vector<Word> images, size_t min_prefix) {
    Word x{0};
    while (x.size() < min_prefix) {
        Word y;
        for (Symbol s : x) y.insert(y.end(), images[static_cast<size_t>(s)].begin(), images[static_cast<size_t>(s)].end());
        x = std::move(y);
    }
    return [x](const Word& w) { return contains_factor(x, w); };
}

/// Beta shift: every suffix is lexicographically at most the expansion prefix.
inline Predicate beta(std::vector<int> pre, std::vector<int> per) {
    auto d = [pre, per](size_t i) { return i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()]; };
    return [d](const Word& w) {
        for (size_t s = 0; s < w.size(); ++s) {
            for (size_t i = s; i < w.size(); ++i) {
                if (w[i] < d(i - s)) break;
                if (w[i] > d(i - s)) return false;
            }
        }
        return true;
    };
}

/// The coded example over 0, 1, α, β, γ (symbols 0..4).
inline bool coded(const Word& w) {
    const Symbol Z = 0, A = 2, B = 3, G = 4;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == B && w[i + 1] != A) return false;
    }
    for (size_t p = 0; p + 1 < w.size(); ++p) {
        if (w[p] != B || w[p + 1] != A) continue;
        for (size_t k = 1; p + 2 + k + k + 2 <= w.size(); ++k) {
            size_t g = p + 2 + k;
            bool hit = w[g] == G && w[g + k + 1] == G;
            for (size_t z = 1; hit && z <= k; ++z) hit = w[g + z] == Z;
            if (hit) return false;
        }
    }
    return true;
}

/// Reference predicate for a base builtin, where one is independently known.
inline std::optional<Predicate> reference(const std::string& name) {
    using lsync::Word;
    if (name.rfind("full-", 0) == 0) return Predicate([](const Word&) { return true; });
    if (name == "golden-mean") return sft({{1, 1}});
    if (name == "even-shift") return sofic(lsync::even_shift_graph());
    if (name == "dyck-2") return dyck(2, false);
    if (name == "motzkin-2") return dyck(2, true);
    if (name == "fibonacci") return substitution({{0, 1}, {0}}, 4000);
    if (name == "thue-morse") return substitution({{0, 1}, {1, 0}}, 4000);
    if (name == "beta-golden") return beta({}, {1, 0});
    if (name == "beta-21") return beta({}, {2, 1});
    if (name == "beta-110") return beta({}, {1, 1, 0});
    if (name == "beta-2-1") return beta({2}, {1});
    if (name == "coded-example") return Predicate(coded);
    return std::nullopt;
}

}  // namespace brute
