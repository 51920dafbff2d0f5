#pragma once

#include "sofic.hpp"

namespace lsync {

/// Beta shift given by the quasi-greedy expansion d of 1, an eventually
/// periodic digit sequence (preperiod, period).
class BetaOracle final : public Oracle {
public:
    BetaOracle(std::vector<int> preperiod, std::vector<int> period)
        : pre_(std::move(preperiod)), per_(std::move(period)), sofic_(build()) {}

    const Alphabet& alphabet() const override { return sofic_.alphabet(); }
    std::string kind() const override { return "beta"; }
    const std::vector<int>& preperiod() const { return pre_; }
    const std::vector<int>& period() const { return per_; }

    /// i-th digit of d (0-based).
    int digit(size_t i) const {
        if (i < pre_.size()) return pre_[i];
        return per_[(i - pre_.size()) % per_.size()];
    }

    /// Every suffix of w is lexicographically <= the prefix of d of equal length.
    bool lexicographic_admissible(const Word& w) const {
        for (size_t start = 0; start < w.size(); ++start) {
            for (size_t i = start; i < w.size(); ++i) {
                int a = w[i], b = digit(i - start);
                if (a < b) break;
                if (a > b) return false;
            }
        }
        return true;
    }

    const LabeledGraph& automaton() const { return sofic_.graph(); }

    Element identity() const override { return sofic_.identity(); }
    std::optional<Element> extend_right(const Element& e, Symbol s) const override {
        return sofic_.extend_right(e, s);
    }
    std::optional<Element> extend_left(Symbol s, const Element& e) const override {
        return sofic_.extend_left(s, e);
    }
    Element right_key(const Element& e, int b) const override { return sofic_.right_key(e, b); }
    Element left_key(const Element& e, int b) const override { return sofic_.left_key(e, b); }
    bool finite_monoid() const override { return true; }

private:
    LabeledGraph build() const {
        if (per_.empty()) throw InvalidExpansion("period is empty");
        if (std::all_of(per_.begin(), per_.end(), [](int x) { return x == 0; })) {
            throw InvalidExpansion("expansion ends in zeros; the quasi-greedy expansion is required");
        }
        for (int x : pre_) {
            if (x < 0 || x > 9) throw InvalidExpansion("digits must lie in 0..9");
        }
        for (int x : per_) {
            if (x < 0 || x > 9) throw InvalidExpansion("digits must lie in 0..9");
        }
        if (digit(0) == 0) throw InvalidExpansion("first digit must be positive");
        const size_t n = pre_.size() + per_.size();
        for (size_t shift = 1; shift < n; ++shift) {
            for (size_t i = 0; i < n; ++i) {
                int a = digit(shift + i), b = digit(i);
                if (a < b) break;
                if (a > b) throw InvalidExpansion("expansion is not self-admissible");
            }
        }
        int top = 0;
        for (size_t i = 0; i < n; ++i) top = std::max(top, digit(i));
        std::vector<std::string> names;
        for (int a = 0; a <= top; ++a) names.push_back(std::to_string(a));
        LabeledGraph g;
        g.alphabet = Alphabet(names);
        g.states = static_cast<int>(n);
        if (g.states > 64) throw InvalidExpansion("expansion longer than 64 digits");
        for (size_t i = 0; i < n; ++i) {
            int d = digit(i);
            for (int a = 0; a < d; ++a) g.edges.push_back({static_cast<int>(i), a, 0});
            size_t next = i + 1 == n ? pre_.size() : i + 1;
            g.edges.push_back({static_cast<int>(i), d, static_cast<int>(next)});
        }
        return g;
    }

    std::vector<int> pre_, per_;
    SoficOracle sofic_;
};

}  // namespace lsync
