#pragma once

#include <unordered_set>

#include "../oracle.hpp"

namespace lsync {

/// Shift of finite type given by a finite list of forbidden words.
///
/// With memory k (longest forbidden word minus one) a long word behaves like
/// the pair (first k symbols, last k symbols); elements store exactly that.
class SftOracle final : public Oracle {
public:
    SftOracle(Alphabet alphabet, std::vector<Word> forbidden)
        : alphabet_(std::move(alphabet)), forbidden_list_(std::move(forbidden)) {
        for (const auto& f : forbidden_list_) {
            if (f.empty()) throw InvalidPresentation("empty forbidden word");
            for (Symbol s : f) {
                if (s < 0 || static_cast<size_t>(s) >= alphabet_.size()) {
                    throw InvalidPresentation("forbidden word uses unknown symbol");
                }
            }
            k_ = std::max(k_, static_cast<int>(f.size()) - 1);
            forbidden_.insert(f);
        }
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string kind() const override { return "sft"; }
    const std::vector<Word>& forbidden() const { return forbidden_list_; }
    int memory() const { return k_; }

    Element identity() const override { return {0}; }

    std::optional<Element> extend_right(const Element& e, Symbol s) const override {
        if (e[0] == 0) {
            Word w(e.begin() + 1, e.end());
            w.push_back(s);
            if (bad_suffix(w)) return std::nullopt;
            return pack(w);
        }
        Word tail(e.begin() + 1 + k_, e.end());
        tail.push_back(s);
        if (bad_suffix(tail)) return std::nullopt;
        Element r(e.begin(), e.begin() + 1 + k_);
        r.insert(r.end(), tail.begin() + 1, tail.end());
        return r;
    }

    std::optional<Element> extend_left(Symbol s, const Element& e) const override {
        if (e[0] == 0) {
            Word w{s};
            w.insert(w.end(), e.begin() + 1, e.end());
            if (bad_prefix(w)) return std::nullopt;
            return pack(w);
        }
        Word head{s};
        head.insert(head.end(), e.begin() + 1, e.begin() + 1 + k_);
        if (bad_prefix(head)) return std::nullopt;
        Element r{1};
        r.insert(r.end(), head.begin(), head.end() - 1);
        r.insert(r.end(), e.begin() + 1 + k_, e.end());
        return r;
    }

    Element right_key(const Element& e, int) const override {
        if (e[0] == 0 && static_cast<int>(e.size()) - 1 < k_) return e;
        Element r{1};
        r.insert(r.end(), e.end() - k_, e.end());
        return r;
    }

    Element left_key(const Element& e, int) const override {
        if (e[0] == 0 && static_cast<int>(e.size()) - 1 < k_) return e;
        Element r{1};
        r.insert(r.end(), e.begin() + 1, e.begin() + 1 + k_);
        return r;
    }

    bool finite_monoid() const override { return true; }

private:
    Element pack(const Word& w) const {
        Element r;
        if (static_cast<int>(w.size()) <= 2 * k_) {
            r.push_back(0);
            r.insert(r.end(), w.begin(), w.end());
        } else {
            r.push_back(1);
            r.insert(r.end(), w.begin(), w.begin() + k_);
            r.insert(r.end(), w.end() - k_, w.end());
        }
        return r;
    }

    bool bad_suffix(const Word& w) const {
        int n = static_cast<int>(w.size());
        for (int len = 1; len <= std::min(n, k_ + 1); ++len) {
            if (forbidden_.count(Word(w.end() - len, w.end()))) return true;
        }
        return false;
    }

    bool bad_prefix(const Word& w) const {
        int n = static_cast<int>(w.size());
        for (int len = 1; len <= std::min(n, k_ + 1); ++len) {
            if (forbidden_.count(Word(w.begin(), w.begin() + len))) return true;
        }
        return false;
    }

    Alphabet alphabet_;
    std::vector<Word> forbidden_list_;
    std::unordered_set<Word, WordHash> forbidden_;
    int k_ = 0;
};

}  // namespace lsync
