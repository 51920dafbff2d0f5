#pragma once

#include "../oracle.hpp"

namespace lsync {

/// The coded system over {0,1,α,β,γ}: β must be followed by α, and no factor
/// βα c γ 0^k γ with k >= 1 and |c| = k occurs.
///
/// Elements are the words themselves; the keys keep only the part of a word
/// that a bounded context can still complete into a forbidden pattern.
class CodedExampleOracle final : public Oracle {
public:
    static constexpr Symbol Zero = 0, One = 1, Alpha = 2, Beta = 3, Gamma = 4;

    CodedExampleOracle() : alphabet_({"0", "1", "α", "β", "γ"}) {}

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "coded_example"; }

    Element identity() const override { return {}; }

    std::optional<Element> extend_right(const Element& w, Symbol s) const override {
        if (!w.empty() && w.back() == Beta && s != Alpha) return std::nullopt;
        Element r = w;
        r.push_back(s);
        if (s == Gamma && pattern_ending_at_back(r)) return std::nullopt;
        return r;
    }

    std::optional<Element> extend_left(Symbol s, const Element& w) const override {
        if (s == Beta && !w.empty() && w.front() != Alpha) return std::nullopt;
        Element r{s};
        r.insert(r.end(), w.begin(), w.end());
        if (s == Beta && pattern_starting_at_front(r)) return std::nullopt;
        return r;
    }

    Element right_key(const Element& w, int budget) const override {
        const int n = static_cast<int>(w.size());
        int first = n;
        for (int p = 0; p + 1 < n; ++p) {
            if (w[static_cast<size_t>(p)] == Beta && w[static_cast<size_t>(p + 1)] == Alpha &&
                open_occurrence(w, p, budget)) {
                first = p;
                break;
            }
        }
        Element k{n > 0 && w.back() == Beta ? 1 : 0, n - first};
        k.insert(k.end(), w.begin() + first, w.end());
        return k;
    }

    Element left_key(const Element& w, int budget) const override {
        const int n = static_cast<int>(w.size());
        int last = -1;
        for (int j = n - 1; j >= 0; --j) {
            if (w[static_cast<size_t>(j)] == Gamma && open_ending(w, j, budget)) {
                last = j;
                break;
            }
        }
        int cls = n == 0 ? 0 : (w.front() == Alpha ? 1 : 2);
        Element k{cls, last + 1};
        k.insert(k.end(), w.begin(), w.begin() + (last + 1));
        return k;
    }

    /// Right key, left key, and the pattern placements that start before the
    /// word and end after it.
    Element two_sided_key(const Element& w, int left, int right) const override {
        Element k = right_key(w, right);
        auto lk = left_key(w, left);
        k.push_back(-1);
        k.insert(k.end(), lk.begin(), lk.end());
        k.push_back(-1);
        const int n = static_cast<int>(w.size());
        if (n == 0 || left == 0 || right == 0) return k;
        // Unbounded budgets: represent the word itself.
        if (left < 0 || right < 0) {
            k.insert(k.end(), w.begin(), w.end());
            return k;
        }
        for (int s = -1; s >= -left; --s) {
            int kmin = std::max(1, (n - s - 3 + 1) / 2);
            for (int kk = kmin;; ++kk) {
                int e = s + 2 * kk + 3;
                if (e < n) continue;
                if (e > n - 1 + right) break;
                bool ok = true;
                for (int q = 0; q < n && ok; ++q) ok = matches(q - s, kk, w[static_cast<size_t>(q)]);
                if (ok) {
                    k.push_back(s);
                    k.push_back(e - n);
                }
            }
        }
        return k;
    }

    bool finite_monoid() const override { return false; }

    /// Symbol expected at offset `off` of the pattern with parameter k (-1: any).
    static Symbol pattern_symbol(int off, int k) {
        if (off == 0) return Beta;
        if (off == 1) return Alpha;
        if (off <= k + 1) return -1;
        if (off == k + 2 || off == 2 * k + 3) return Gamma;
        return Zero;
    }

    static bool matches(int off, int k, Symbol s) {
        Symbol p = pattern_symbol(off, k);
        return p < 0 || p == s;
    }

private:
    // The final γ fixes k as the length of the zero run in front of it.
    static bool pattern_ending_at_back(const Element& w) {
        const int j = static_cast<int>(w.size()) - 1;
        int z = 0;
        while (j - 1 - z >= 0 && w[static_cast<size_t>(j - 1 - z)] == Zero) ++z;
        if (z < 1) return false;
        int g = j - z - 1;
        int s = j - 2 * z - 3;
        return s >= 0 && w[static_cast<size_t>(g)] == Gamma && w[static_cast<size_t>(s)] == Beta &&
               w[static_cast<size_t>(s + 1)] == Alpha;
    }

    static bool pattern_starting_at_front(const Element& w) {
        const int n = static_cast<int>(w.size());
        if (n < 2 || w[1] != Alpha) return false;
        for (int k = 1; 2 * k + 3 < n; ++k) {
            bool ok = true;
            for (int off = k + 2; off <= 2 * k + 3 && ok; ++off) {
                ok = matches(off, k, w[static_cast<size_t>(off)]);
            }
            if (ok) return true;
        }
        return false;
    }

    // Can the βα at p be completed by a follower of length <= budget?
    static bool open_occurrence(const Element& w, int p, int budget) {
        const int n = static_cast<int>(w.size());
        int kmin = std::max(1, (n - p - 3 + 1) / 2);
        if (budget < 0) return true;
        int kmax = (n - 1 + budget - p - 3) / 2;
        if (n - 1 + budget - p - 3 < 0) return false;
        for (int k = kmin; k <= kmax; ++k) {
            if (2 * k + 3 + p < n) continue;
            bool ok = true;
            for (int q = p + 2; q < n && ok; ++q) ok = matches(q - p, k, w[static_cast<size_t>(q)]);
            if (ok) return true;
        }
        return false;
    }

    // Can the γ at j close a pattern begun by a predecessor of length <= budget?
    static bool open_ending(const Element& w, int j, int budget) {
        int kmin = std::max(1, (j - 2 + 1) / 2);
        int kmax = budget < 0 ? std::max(j, 1) : (j + budget - 3) / 2;
        if (budget >= 0 && j + budget - 3 < 0) return false;
        for (int k = kmin; k <= kmax; ++k) {
            int s = j - 2 * k - 3;
            if (s > -1) continue;
            if (budget >= 0 && s < -budget) continue;
            bool ok = true;
            for (int q = 0; q <= j && ok; ++q) ok = matches(q - s, k, w[static_cast<size_t>(q)]);
            if (ok) return true;
        }
        return false;
    }

    Alphabet alphabet_;
};

}  // namespace lsync
