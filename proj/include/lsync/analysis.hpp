#pragma once

#include <deque>
#include <unordered_set>

#include "oracle.hpp"

namespace lsync {

/// Result of a follower/predecessor inclusion test.
struct Inclusion {
    bool holds = true;
    bool exact = false;  ///< decided by closure rather than at a horizon
    Word witness;        ///< shortest extension separating the two, when !holds
};

/// Caching search engine over an oracle.
///
/// All inclusion questions reduce to a breadth-first walk over pairs of
/// elements; pairs whose keys coincide can never separate and are pruned.
class Engine {
public:
    explicit Engine(OraclePtr o) : o_(std::move(o)) {}

    const Oracle& oracle() const { return *o_; }
    const OraclePtr& oracle_ptr() const { return o_; }
    const Alphabet& alphabet() const { return o_->alphabet(); }

    /// Horizon actually used for a requested one: exact classes search to closure.
    int effective(int horizon) const { return o_->finite_monoid() ? -1 : horizon; }

    /// Does every `side`-extension of `ref` (length <= horizon) also extend `cand`?
    /// Exact classes ignore the horizon and search to closure unless `bounded` is set.
    Inclusion includes(Side side, const Element& cand, const Element& ref, int horizon,
                       bool bounded = false) {
        int h = bounded ? horizon : effective(horizon);
        Element k1 = key(*o_, side, cand, h);
        Element k2 = key(*o_, side, ref, h);
        Inclusion r;
        r.exact = h < 0;
        if (k1 == k2) return r;
        std::string mk = memo_key(side, h, k1, k2);
        if (auto it = memo_.find(mk); it != memo_.end()) return it->second;
        r = search(side, cand, ref, h);
        memo_.emplace(std::move(mk), r);
        return r;
    }

    /// Same `side`-extensions up to length `depth`?
    bool same_extensions(Side side, const Element& a, const Element& b, int depth) {
        if (a == b) return true;
        if (key(*o_, side, a, depth) == key(*o_, side, b, depth)) return true;
        return includes(side, a, b, depth, true).holds && includes(side, b, a, depth, true).holds;
    }

    std::optional<Element> element(const Word& w) const { return o_->element(w); }

    size_t memo_size() const { return memo_.size(); }

private:
    struct State {
        Element cand, ref;
        Word path;
    };

    static std::string memo_key(Side side, int h, const Element& a, const Element& b) {
        std::string s;
        s.reserve(8 + 4 * (a.size() + b.size()));
        auto put = [&s](int32_t v) { s.append(reinterpret_cast<const char*>(&v), sizeof v); };
        put(side == Side::Left ? 0 : 1);
        put(h);
        put(static_cast<int32_t>(a.size()));
        for (auto v : a) put(v);
        for (auto v : b) put(v);
        return s;
    }

    Inclusion search(Side side, const Element& cand, const Element& ref, int h) {
        Inclusion r;
        r.exact = h < 0;
        const auto k = static_cast<Symbol>(o_->alphabet().size());
        std::unordered_set<std::string> seen;
        std::vector<State> cur{{cand, ref, {}}};
        for (int d = 0; h < 0 || d < h; ++d) {
            if (cur.empty()) break;
            int rem = h < 0 ? -1 : h - d - 1;
            std::vector<State> next;
            for (auto& st : cur) {
                for (Symbol s = 0; s < k; ++s) {
                    auto rr = extend(*o_, side, st.ref, s);
                    if (!rr) continue;
                    Word p;
                    if (side == Side::Right) {
                        p = st.path;
                        p.push_back(s);
                    } else {
                        p.push_back(s);
                        p.insert(p.end(), st.path.begin(), st.path.end());
                    }
                    auto cc = extend(*o_, side, st.cand, s);
                    if (!cc) {
                        r.holds = false;
                        r.witness = std::move(p);
                        return r;
                    }
                    if (rem == 0) continue;
                    Element k1 = key(*o_, side, *cc, rem);
                    Element k2 = key(*o_, side, *rr, rem);
                    if (k1 == k2) continue;
                    if (!seen.insert(memo_key(side, h < 0 ? -1 : d, k1, k2)).second) continue;
                    next.push_back({std::move(*cc), std::move(*rr), std::move(p)});
                }
            }
            cur = std::move(next);
        }
        return r;
    }

    OraclePtr o_;
    std::unordered_map<std::string, Inclusion> memo_;
};

/// A word set together with whether it is exact or only bounded by a horizon.
struct BoundedWordSet {
    WordSet words;
    bool exact = false;
};

/// omega^-_l(a): left extensions b of length l whose followers include those of a.
inline BoundedWordSet omega_minus(Engine& eng, const Word& a, int l, int horizon) {
    BoundedWordSet out;
    out.exact = eng.oracle().finite_monoid();
    auto ea = eng.element(a);
    if (!ea) return out;
    for (const auto& b : gamma_minus(eng.oracle(), a, l)) {
        auto eb = eng.element(concat(b, a));
        if (eng.includes(Side::Right, *eb, *ea, horizon).holds) out.words.insert(b);
    }
    return out;
}

/// omega^+_l(a): right extensions b of length l whose predecessors include those of a.
inline BoundedWordSet omega_plus(Engine& eng, const Word& a, int l, int horizon) {
    BoundedWordSet out;
    out.exact = eng.oracle().finite_monoid();
    auto ea = eng.element(a);
    if (!ea) return out;
    for (const auto& b : gamma_plus(eng.oracle(), a, l)) {
        auto eb = eng.element(concat(a, b));
        if (eng.includes(Side::Left, *eb, *ea, horizon).holds) out.words.insert(b);
    }
    return out;
}

/// Assigns ids to the classes of words with equal length-l predecessor sets.
class PastClassifier {
public:
    PastClassifier(Engine& eng, int level) : eng_(&eng), level_(level) {}

    int level() const { return level_; }
    size_t size() const { return reps_.size(); }
    const Element& representative(int id) const { return reps_.at(static_cast<size_t>(id)); }

    /// Class id of an admissible element; new classes are created on demand.
    int classify(const Element& e) {
        if (level_ == 0) {
            if (reps_.empty()) reps_.push_back(e);
            return 0;
        }
        Element k = eng_->oracle().left_key(e, level_);
        if (auto it = by_key_.find(k); it != by_key_.end()) return it->second;
        int id = -1;
        for (size_t i = 0; i < reps_.size(); ++i) {
            if (eng_->same_extensions(Side::Left, e, reps_[i], level_)) {
                id = static_cast<int>(i);
                break;
            }
        }
        if (id < 0) {
            id = static_cast<int>(reps_.size());
            reps_.push_back(e);
        }
        by_key_.emplace(std::move(k), id);
        return id;
    }

private:
    Engine* eng_;
    int level_;
    std::vector<Element> reps_;
    std::unordered_map<Element, int, ElementHash> by_key_;
};

}  // namespace lsync
