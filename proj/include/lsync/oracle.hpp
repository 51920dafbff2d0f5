#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "core.hpp"

namespace lsync {

/// Opaque syntactic value of a word. Two words with equal elements are
/// interchangeable in every two-sided context.
using Element = std::vector<int32_t>;
using ElementHash = WordHash;

/// Membership oracle for the language of a two-sided subshift.
///
/// Words are folded into elements one symbol at a time; keys summarize how an
/// element interacts with bounded one-sided contexts, which is what makes the
/// follower and predecessor searches finite.
class Oracle {
public:
    virtual ~Oracle() = default;

    virtual const Alphabet& alphabet() const = 0;
    virtual std::string kind() const = 0;

    virtual Element identity() const = 0;
    virtual std::optional<Element> extend_right(const Element& e, Symbol s) const = 0;
    virtual std::optional<Element> extend_left(Symbol s, const Element& e) const = 0;

    /// Equal right keys imply equal sets of followers of length <= budget
    /// (budget < 0 means unbounded).
    virtual Element right_key(const Element& e, int budget) const = 0;
    /// Mirror of right_key for predecessors.
    virtual Element left_key(const Element& e, int budget) const = 0;

    /// Equal two-sided keys imply u x c admissible iff u y c admissible for all
    /// |u| <= left and |c| <= right (negative: unbounded).
    virtual Element two_sided_key(const Element& e, int left, int right) const {
        (void)left;
        (void)right;
        return e;
    }

    /// True when the set of elements is finite, which makes searches exact.
    virtual bool finite_monoid() const = 0;

    /// Longest word the oracle can decide, or -1 when unbounded.
    virtual int max_len() const { return -1; }

    std::optional<Element> element(const Word& w) const {
        check_length(w.size());
        std::optional<Element> e = identity();
        for (Symbol s : w) {
            e = extend_right(*e, s);
            if (!e) return std::nullopt;
        }
        return e;
    }

    virtual bool admissible(const Word& w) const { return element(w).has_value(); }

    void check_length(size_t n) const {
        int m = max_len();
        if (m >= 0 && n > static_cast<size_t>(m)) {
            throw HorizonExceeded("word length " + std::to_string(n) +
                                  " exceeds oracle horizon " + std::to_string(m));
        }
    }

    /// "EXACT" when membership is decided for every length.
    std::string exactness() const {
        return max_len() < 0 ? "EXACT" : "HORIZON_BOUNDED(" + std::to_string(max_len()) + ")";
    }
};

using OraclePtr = std::shared_ptr<const Oracle>;

enum class Side { Left, Right };

inline std::optional<Element> extend(const Oracle& o, Side side, const Element& e, Symbol s) {
    return side == Side::Right ? o.extend_right(e, s) : o.extend_left(s, e);
}

inline Element key(const Oracle& o, Side side, const Element& e, int budget) {
    return side == Side::Right ? o.right_key(e, budget) : o.left_key(e, budget);
}

/// The oracle of the reversed subshift.
class ReverseOracle final : public Oracle {
public:
    explicit ReverseOracle(OraclePtr base) : base_(std::move(base)) {}

    const Alphabet& alphabet() const override { return base_->alphabet(); }
    std::string kind() const override { return "reverse(" + base_->kind() + ")"; }
    Element identity() const override { return base_->identity(); }
    std::optional<Element> extend_right(const Element& e, Symbol s) const override {
        return base_->extend_left(s, e);
    }
    std::optional<Element> extend_left(Symbol s, const Element& e) const override {
        return base_->extend_right(e, s);
    }
    Element right_key(const Element& e, int budget) const override {
        return base_->left_key(e, budget);
    }
    Element left_key(const Element& e, int budget) const override {
        return base_->right_key(e, budget);
    }
    Element two_sided_key(const Element& e, int left, int right) const override {
        return base_->two_sided_key(e, right, left);
    }
    bool finite_monoid() const override { return base_->finite_monoid(); }
    int max_len() const override { return base_->max_len(); }
    bool admissible(const Word& w) const override { return base_->admissible(reversed(w)); }

    const OraclePtr& base() const { return base_; }

private:
    OraclePtr base_;
};

inline OraclePtr reverse_oracle(OraclePtr o) {
    if (auto r = std::dynamic_pointer_cast<const ReverseOracle>(o)) return r->base();
    return std::make_shared<ReverseOracle>(std::move(o));
}

/// Admissible words of one length together with their elements, in canonical order.
struct Layer {
    std::vector<Word> words;
    std::vector<Element> elements;
};

/// Layers 0..n of the language.
inline std::vector<Layer> language_layers(const Oracle& o, int n) {
    o.check_length(static_cast<size_t>(std::max(n, 0)));
    std::vector<Layer> layers(1);
    layers[0].words.push_back({});
    layers[0].elements.push_back(o.identity());
    const auto k = static_cast<Symbol>(o.alphabet().size());
    for (int len = 1; len <= n; ++len) {
        Layer next;
        const Layer& prev = layers.back();
        for (size_t i = 0; i < prev.words.size(); ++i) {
            for (Symbol s = 0; s < k; ++s) {
                auto e = o.extend_right(prev.elements[i], s);
                if (!e) continue;
                Word w = prev.words[i];
                w.push_back(s);
                next.words.push_back(std::move(w));
                next.elements.push_back(std::move(*e));
            }
        }
        layers.push_back(std::move(next));
    }
    return layers;
}

/// All admissible words of length n.
inline WordSet enumerate_language(const Oracle& o, int n) {
    auto layers = language_layers(o, n);
    return WordSet(layers.back().words.begin(), layers.back().words.end());
}

/// Words u of length l with u w admissible (side Left) or w u admissible (side Right).
inline WordSet gamma(const Oracle& o, Side side, const Word& w, int l) {
    o.check_length(w.size() + static_cast<size_t>(std::max(l, 0)));
    WordSet out;
    auto e = o.element(w);
    if (!e) return out;
    std::vector<std::pair<Word, Element>> cur{{Word{}, *e}};
    const auto k = static_cast<Symbol>(o.alphabet().size());
    for (int d = 0; d < l; ++d) {
        std::vector<std::pair<Word, Element>> next;
        for (auto& [u, el] : cur) {
            for (Symbol s = 0; s < k; ++s) {
                auto x = extend(o, side, el, s);
                if (!x) continue;
                Word v;
                if (side == Side::Left) {
                    v.push_back(s);
                    v.insert(v.end(), u.begin(), u.end());
                } else {
                    v = u;
                    v.push_back(s);
                }
                next.emplace_back(std::move(v), std::move(*x));
            }
        }
        cur = std::move(next);
    }
    for (auto& p : cur) out.insert(std::move(p.first));
    return out;
}

inline WordSet gamma_minus(const Oracle& o, const Word& w, int l) {
    return gamma(o, Side::Left, w, l);
}
inline WordSet gamma_plus(const Oracle& o, const Word& w, int l) {
    return gamma(o, Side::Right, w, l);
}

}  // namespace lsync
