#pragma once

#include "../oracle.hpp"

namespace lsync {

/// The n-th higher block shift: letters are admissible words of length n,
/// consecutive letters overlap in n-1 symbols.
class HigherBlockOracle final : public Oracle {
public:
    HigherBlockOracle(OraclePtr base, int n) : base_(std::move(base)), n_(n) {
        if (n_ < 1) throw InvalidPresentation("block length must be at least 1");
        auto layer = language_layers(*base_, n_).back();
        blocks_ = layer.words;
        std::vector<std::string> names;
        const Alphabet& a = base_->alphabet();
        for (const auto& b : blocks_) {
            names.push_back(n_ == 1 || a.compact() ? a.format(b) : "[" + a.format(b) + "]");
        }
        alphabet_ = Alphabet(std::move(names));
        const size_t k = blocks_.size();
        overlap_.assign(k * k, false);
        for (size_t i = 0; i < k; ++i) {
            for (size_t j = 0; j < k; ++j) {
                overlap_[i * k + j] =
                    std::equal(blocks_[i].begin() + 1, blocks_[i].end(), blocks_[j].begin());
            }
        }
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "block" + std::to_string(n_) + "(" + base_->kind() + ")"; }
    const OraclePtr& base() const { return base_; }
    int block_length() const { return n_; }
    const std::vector<Word>& blocks() const { return blocks_; }

    /// Base word spelled by a word of blocks.
    Word unroll(const Word& w) const {
        Word r;
        if (w.empty()) return r;
        r = blocks_[static_cast<size_t>(w[0])];
        for (size_t i = 1; i < w.size(); ++i) r.push_back(blocks_[static_cast<size_t>(w[i])].back());
        return r;
    }

    /// Block word of a base word of length >= n (empty otherwise).
    Word to_blocks(const Word& w) const {
        Word r;
        if (w.size() < static_cast<size_t>(n_)) return r;
        for (size_t i = 0; i + static_cast<size_t>(n_) <= w.size(); ++i) {
            Word b(w.begin() + static_cast<std::ptrdiff_t>(i),
                   w.begin() + static_cast<std::ptrdiff_t>(i) + n_);
            auto it = std::lower_bound(blocks_.begin(), blocks_.end(), b, CanonicalLess{});
            if (it == blocks_.end() || *it != b) throw InvalidPresentation("word is not admissible");
            r.push_back(static_cast<Symbol>(it - blocks_.begin()));
        }
        return r;
    }

    Element identity() const override { return {0}; }

    std::optional<Element> extend_right(const Element& x, Symbol s) const override {
        const Word& b = blocks_[static_cast<size_t>(s)];
        if (x[0] == 0) return pack(s, s, *base_->element(b));
        if (!overlap_[static_cast<size_t>(x[2]) * blocks_.size() + static_cast<size_t>(s)]) {
            return std::nullopt;
        }
        auto e = base_->extend_right(inner(x), b.back());
        if (!e) return std::nullopt;
        return pack(x[1], s, *e);
    }

    std::optional<Element> extend_left(Symbol s, const Element& x) const override {
        const Word& b = blocks_[static_cast<size_t>(s)];
        if (x[0] == 0) return pack(s, s, *base_->element(b));
        if (!overlap_[static_cast<size_t>(s) * blocks_.size() + static_cast<size_t>(x[1])]) {
            return std::nullopt;
        }
        auto e = base_->extend_left(b.front(), inner(x));
        if (!e) return std::nullopt;
        return pack(s, x[2], *e);
    }

    Element right_key(const Element& x, int budget) const override {
        if (x[0] == 0) return {0};
        Element k{1, x[2]};
        auto bk = base_->right_key(inner(x), budget);
        k.insert(k.end(), bk.begin(), bk.end());
        return k;
    }

    Element left_key(const Element& x, int budget) const override {
        if (x[0] == 0) return {0};
        Element k{1, x[1]};
        auto bk = base_->left_key(inner(x), budget);
        k.insert(k.end(), bk.begin(), bk.end());
        return k;
    }

    Element two_sided_key(const Element& x, int left, int right) const override {
        if (x[0] == 0) return {0};
        Element k{1, x[1], x[2]};
        auto bk = base_->two_sided_key(inner(x), left, right);
        k.insert(k.end(), bk.begin(), bk.end());
        return k;
    }

    bool finite_monoid() const override { return base_->finite_monoid(); }
    int max_len() const override {
        int m = base_->max_len();
        return m < 0 ? -1 : std::max(0, m - (n_ - 1));
    }

private:
    static Element inner(const Element& x) { return Element(x.begin() + 3, x.end()); }
    static Element pack(int first, int last, const Element& e) {
        Element r{1, first, last};
        r.insert(r.end(), e.begin(), e.end());
        return r;
    }

    OraclePtr base_;
    int n_;
    std::vector<Word> blocks_;
    std::vector<bool> overlap_;
    Alphabet alphabet_;
};

inline std::shared_ptr<const HigherBlockOracle> higher_block_recode(OraclePtr base, int n) {
    return std::make_shared<HigherBlockOracle>(std::move(base), n);
}

}  // namespace lsync
