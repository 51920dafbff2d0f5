#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lsync {

using Symbol = int32_t;
using Word = std::vector<Symbol>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define LSYNC_DEFINE_ERROR(Name)                   \
    class Name : public Error {                    \
    public:                                        \
        using Error::Error;                        \
    };

LSYNC_DEFINE_ERROR(HorizonExceeded)
LSYNC_DEFINE_ERROR(InvalidPresentation)
LSYNC_DEFINE_ERROR(NotPrimitive)
LSYNC_DEFINE_ERROR(InvalidExpansion)
LSYNC_DEFINE_ERROR(NotIrreducible)
LSYNC_DEFINE_ERROR(EmptySyncLevel)
LSYNC_DEFINE_ERROR(CommutationFailure)
LSYNC_DEFINE_ERROR(InsufficientLevels)

#undef LSYNC_DEFINE_ERROR

/// Canonical word order: shorter words first, then lexicographic by symbol index.
struct CanonicalLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

using WordSet = std::set<Word, CanonicalLess>;

struct WordHash {
    size_t operator()(const Word& w) const noexcept {
        uint64_t h = 0xcbf29ce484222325ull ^ w.size();
        for (Symbol s : w) {
            h ^= static_cast<uint32_t>(s) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }
};

inline Word concat(const Word& a, const Word& b) {
    Word r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline Word reversed(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
}

inline Word subword(const Word& w, size_t pos, size_t len) {
    pos = std::min(pos, w.size());
    len = std::min(len, w.size() - pos);
    return Word(w.begin() + static_cast<std::ptrdiff_t>(pos),
                w.begin() + static_cast<std::ptrdiff_t>(pos + len));
}

inline size_t utf8_length(std::string_view s) {
    size_t n = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

/// Finite ordered alphabet; symbols are indices into the name table.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
        for (size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw InvalidPresentation("empty symbol name");
            if (!index_.emplace(names_[i], static_cast<Symbol>(i)).second) {
                throw InvalidPresentation("duplicate symbol name '" + names_[i] + "'");
            }
        }
    }

    size_t size() const { return names_.size(); }
    const std::string& name(Symbol s) const { return names_.at(static_cast<size_t>(s)); }
    const std::vector<std::string>& names() const { return names_; }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    Symbol symbol(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw InvalidPresentation("unknown symbol '" + name + "'");
        return it->second;
    }

    bool compact() const {
        return std::all_of(names_.begin(), names_.end(),
                           [](const std::string& n) { return utf8_length(n) == 1; });
    }

    /// Words print concatenated when all names are one code point, space separated otherwise.
    std::string format(const Word& w) const {
        std::string out;
        bool sep = !compact();
        for (size_t i = 0; i < w.size(); ++i) {
            if (sep && i) out += ' ';
            out += name(w[i]);
        }
        return out;
    }

    /// Inverse of format(). Space separated input is always accepted; otherwise the
    /// string is split greedily into the longest matching symbol names.
    Word parse(std::string_view text) const {
        Word w;
        if (text.find(' ') != std::string_view::npos) {
            size_t i = 0;
            while (i < text.size()) {
                while (i < text.size() && text[i] == ' ') ++i;
                size_t j = i;
                while (j < text.size() && text[j] != ' ') ++j;
                if (j > i) w.push_back(symbol(std::string(text.substr(i, j - i))));
                i = j;
            }
            return w;
        }
        size_t i = 0;
        while (i < text.size()) {
            size_t best = 0;
            Symbol best_sym = -1;
            for (size_t s = 0; s < names_.size(); ++s) {
                const auto& n = names_[s];
                if (n.size() > best && text.substr(i, n.size()) == n) {
                    best = n.size();
                    best_sym = static_cast<Symbol>(s);
                }
            }
            if (best == 0) {
                throw InvalidPresentation("cannot parse word '" + std::string(text) + "'");
            }
            w.push_back(best_sym);
            i += best;
        }
        return w;
    }

    bool operator==(const Alphabet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, Symbol> index_;
};

inline std::vector<std::string> format_words(const Alphabet& a, const WordSet& ws) {
    std::vector<std::string> out;
    out.reserve(ws.size());
    for (const auto& w : ws) out.push_back(a.format(w));
    return out;
}

}  // namespace lsync
