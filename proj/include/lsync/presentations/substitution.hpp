#pragma once

#include <unordered_set>

#include "../oracle.hpp"

namespace lsync {

/// Language of a primitive substitution, decided up to a fixed word length.
class SubstitutionOracle final : public Oracle {
public:
    SubstitutionOracle(Alphabet alphabet, std::vector<Word> images, int max_len = 64)
        : alphabet_(std::move(alphabet)), images_(std::move(images)), max_len_(max_len) {
        const size_t k = alphabet_.size();
        if (k == 0) throw InvalidPresentation("empty alphabet");
        if (images_.size() != k) throw InvalidPresentation("substitution must map every symbol");
        if (max_len_ < 1) throw InvalidPresentation("substitution horizon must be positive");
        for (const auto& img : images_) {
            if (img.empty()) throw InvalidPresentation("substitution image is empty");
            for (Symbol s : img) {
                if (s < 0 || static_cast<size_t>(s) >= k) {
                    throw InvalidPresentation("substitution image uses unknown symbol");
                }
            }
        }
        primitivity_power_ = find_primitivity_power();
        if (primitivity_power_ < 0) throw NotPrimitive("incidence matrix has no positive power");
        saturate();
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "substitution"; }
    const std::vector<Word>& images() const { return images_; }
    int primitivity_power() const { return primitivity_power_; }
    int saturation_rounds() const { return rounds_; }

    Word apply(const Word& w) const {
        Word r;
        for (Symbol s : w) {
            const auto& img = images_[static_cast<size_t>(s)];
            r.insert(r.end(), img.begin(), img.end());
        }
        return r;
    }

    /// Factors of length <= max_len of the images of known factors.
    std::unordered_set<Word, WordHash> one_round(const std::unordered_set<Word, WordHash>& f) const {
        std::unordered_set<Word, WordHash> out = f;
        for (const auto& v : f) add_factors(apply(v), out);
        return out;
    }

    const std::unordered_set<Word, WordHash>& factors() const { return factors_; }

    Element identity() const override { return {}; }

    std::optional<Element> extend_right(const Element& e, Symbol s) const override {
        check_length(e.size() + 1);
        Element r = e;
        r.push_back(s);
        if (!factors_.count(r)) return std::nullopt;
        return r;
    }

    std::optional<Element> extend_left(Symbol s, const Element& e) const override {
        check_length(e.size() + 1);
        Element r{s};
        r.insert(r.end(), e.begin(), e.end());
        if (!factors_.count(r)) return std::nullopt;
        return r;
    }

    Element right_key(const Element& e, int) const override { return e; }
    Element left_key(const Element& e, int) const override { return e; }
    bool finite_monoid() const override { return false; }
    int max_len() const override { return max_len_; }

    bool admissible(const Word& w) const override {
        check_length(w.size());
        return w.empty() || factors_.count(w) != 0;
    }

private:
    int find_primitivity_power() const {
        const size_t k = alphabet_.size();
        std::vector<std::vector<bool>> m(k, std::vector<bool>(k, false));
        for (size_t a = 0; a < k; ++a) {
            for (Symbol b : images_[a]) m[a][static_cast<size_t>(b)] = true;
        }
        auto p = m;
        for (size_t power = 1; power <= k * k; ++power) {
            bool positive = true;
            for (const auto& row : p) {
                for (bool x : row) positive = positive && x;
            }
            if (positive) return static_cast<int>(power);
            std::vector<std::vector<bool>> q(k, std::vector<bool>(k, false));
            for (size_t i = 0; i < k; ++i) {
                for (size_t j = 0; j < k; ++j) {
                    if (!p[i][j]) continue;
                    for (size_t l = 0; l < k; ++l) q[i][l] = q[i][l] || m[j][l];
                }
            }
            p = std::move(q);
        }
        return -1;
    }

    void add_factors(const Word& w, std::unordered_set<Word, WordHash>& out) const {
        const size_t n = w.size();
        for (size_t i = 0; i < n; ++i) {
            for (size_t len = 1; len <= static_cast<size_t>(max_len_) && i + len <= n; ++len) {
                out.insert(Word(w.begin() + static_cast<std::ptrdiff_t>(i),
                                w.begin() + static_cast<std::ptrdiff_t>(i + len)));
            }
        }
    }

    /// Saturates the set of length-max_len factors (every shorter factor is a
    /// prefix of one of them), then closes it under prefixes and suffixes.
    void saturate() {
        const auto n = static_cast<size_t>(max_len_);
        Word seed{0};
        while (seed.size() < n) seed = apply(seed);
        std::unordered_set<Word, WordHash> top;
        auto add_top = [&](const Word& w) {
            for (size_t i = 0; i + n <= w.size(); ++i) {
                top.insert(Word(w.begin() + static_cast<std::ptrdiff_t>(i),
                                w.begin() + static_cast<std::ptrdiff_t>(i + n)));
            }
        };
        add_top(seed);
        while (true) {
            ++rounds_;
            const size_t before = top.size();
            std::vector<Word> cur(top.begin(), top.end());
            for (const auto& v : cur) add_top(apply(v));
            if (top.size() == before) break;
        }
        std::vector<Word> layer(top.begin(), top.end());
        factors_.insert(layer.begin(), layer.end());
        while (!layer.empty() && layer.front().size() > 1) {
            std::unordered_set<Word, WordHash> shorter;
            for (const auto& v : layer) {
                shorter.emplace(v.begin(), v.end() - 1);
                shorter.emplace(v.begin() + 1, v.end());
            }
            layer.assign(shorter.begin(), shorter.end());
            factors_.insert(layer.begin(), layer.end());
        }
    }

    Alphabet alphabet_;
    std::vector<Word> images_;
    int max_len_;
    int primitivity_power_ = -1;
    int rounds_ = 0;
    std::unordered_set<Word, WordHash> factors_;
};

}  // namespace lsync
