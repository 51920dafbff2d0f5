#pragma once

#include <optional>
#include <regex>

#include "../presentations/beta.hpp"
#include "../presentations/coded.hpp"
#include "../presentations/higher_block.hpp"
#include "../presentations/semigroup.hpp"
#include "../presentations/sft.hpp"
#include "../presentations/sofic.hpp"
#include "../presentations/substitution.hpp"
#include "../sync.hpp"

namespace lsync {

/// A loaded presentation: the oracle plus what the tools need around it.
struct Presentation {
    std::string name;
    OraclePtr oracle;
    std::optional<LabeledGraph> sofic;  ///< a finite presentation, when the shift is sofic
    std::optional<Horizons> recommended;  ///< horizons the shift needs for stable builds at the default L
    int growth_per_level = 0;  ///< added to max_word_len and follower_horizon per level above the default L

    /// Recommended horizons for L levels.
    Horizons horizons_for(int L) const {
        Horizons h = recommended.value_or(Horizons{});
        const int extra = std::max(0, L - h.max_level) * growth_per_level;
        h.max_level = L;
        h.max_word_len += extra;
        h.follower_horizon += extra;
        return h;
    }
};

/// Per-level growth of the substitution horizons: level l needs synchronizing
/// words about four symbols longer than level l-1.
inline constexpr int substitution_growth = 4;

/// Horizons for substitution shifts: recognisability needs followers about
/// twice as long as the words being classified.
inline Horizons substitution_horizons() {
    Horizons h;
    h.max_word_len = 12;
    h.follower_horizon = 24;
    h.tail_len = 12;
    return h;
}

/// Horizons for shifts given by graph inverse semigroups (Dyck, Motzkin,
/// Markov-Dyck): a word b of unmatched brackets needs |b| closing symbols
/// before it synchronizes, so candidates must reach max_word_len.
inline Horizons semigroup_horizons() {
    Horizons h;
    h.follower_horizon = h.max_word_len + 4;
    return h;
}

/// Longest word a substitution oracle is asked to decide under the horizons above.
inline constexpr int substitution_max_len = 96;

inline LabeledGraph golden_mean_graph() {
    return {Alphabet({"0", "1"}), 2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}}};
}

inline LabeledGraph even_shift_graph() {
    return {Alphabet({"0", "1"}), 2, {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}}};
}

/// Inner graph of the sample Markov-Dyck shift: the golden mean graph.
inline InnerGraph markov_dyck_sample_graph() {
    InnerGraph g;
    g.vertices = {"u", "v"};
    g.edges = {{"e1", 0, 0}, {"e2", 0, 1}, {"e3", 1, 0}};
    return g;
}

inline Alphabet numbered_alphabet(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return Alphabet(std::move(names));
}

namespace detail {

inline Presentation base_builtin(const std::string& name) {
    std::smatch m;
    auto sofic_of = [](const std::shared_ptr<const BetaOracle>& b) { return std::optional<LabeledGraph>(b->automaton()); };
    if (std::regex_match(name, m, std::regex("full-([0-9]+)"))) {
        int n = std::stoi(m[1]);
        if (n < 1 || n > 10) throw InvalidPresentation("full shift size must be 1..10");
        LabeledGraph g{numbered_alphabet(n), 1, {}};
        for (int s = 0; s < n; ++s) g.edges.push_back({0, s, 0});
        return {name, std::make_shared<SftOracle>(numbered_alphabet(n), std::vector<Word>{}), g, std::nullopt};
    }
    if (name == "golden-mean") {
        return {name, std::make_shared<SftOracle>(Alphabet({"0", "1"}), std::vector<Word>{{1, 1}}), golden_mean_graph(),
                std::nullopt};
    }
    if (name == "even-shift") {
        return {name, std::make_shared<SoficOracle>(even_shift_graph()), even_shift_graph(), std::nullopt};
    }
    if (std::regex_match(name, m, std::regex("dyck-([0-9]+)"))) return {name, dyck_oracle(std::stoi(m[1])), {}, semigroup_horizons()};
    if (std::regex_match(name, m, std::regex("motzkin-([0-9]+)"))) return {name, motzkin_oracle(std::stoi(m[1])), {}, semigroup_horizons()};
    if (name == "markov-dyck") return {name, markov_dyck_oracle(markov_dyck_sample_graph()), {}, semigroup_horizons()};
    if (name == "fibonacci") {
        return {name,
                std::make_shared<SubstitutionOracle>(Alphabet({"a", "b"}), std::vector<Word>{{0, 1}, {0}},
                                                     substitution_max_len),
                {}, substitution_horizons(), substitution_growth};
    }
    if (name == "thue-morse") {
        return {name,
                std::make_shared<SubstitutionOracle>(Alphabet({"a", "b"}), std::vector<Word>{{0, 1}, {1, 0}},
                                                     substitution_max_len),
                {}, substitution_horizons(), substitution_growth};
    }
    struct BetaSample {
        const char* name;
        std::vector<int> pre, per;
    };
    static const std::vector<BetaSample> betas = {
        {"beta-golden", {}, {1, 0}}, {"beta-21", {}, {2, 1}}, {"beta-110", {}, {1, 1, 0}}, {"beta-2-1", {2}, {1}}};
    for (const auto& b : betas) {
        if (name == b.name) {
            auto o = std::make_shared<BetaOracle>(b.pre, b.per);
            return {name, o, sofic_of(o), {}};
        }
    }
    if (name == "coded-example") return {name, std::make_shared<CodedExampleOracle>(), {}, {}};
    throw InvalidPresentation("unknown builtin '" + name + "'");
}

inline LabeledGraph reversed_graph(const LabeledGraph& g) {
    LabeledGraph r = g;
    for (auto& e : r.edges) std::swap(e.source, e.target);
    return r;
}

}  // namespace detail

/// Replaces p by its n-block recoding. A recoded word of length W spans
/// W + n - 1 original symbols, so the recommended word length shrinks to match.
inline void recode_blocks(Presentation& p, int n) {
    if (n < 1) throw InvalidPresentation("block length must be positive");
    p.oracle = higher_block_recode(p.oracle, n);
    p.sofic.reset();
    Horizons h = p.recommended.value_or(Horizons{});
    h.max_word_len = std::max(1, h.max_word_len - (n - 1));
    p.recommended = h;
}

/// The shipped corpus, without variants.
inline std::vector<std::string> builtin_names() {
    return {"full-2",      "full-3",      "full-4",     "golden-mean",      "even-shift",
            "dyck-2",      "motzkin-2",   "markov-dyck", "fibonacci",       "thue-morse",
            "beta-golden", "beta-21",     "beta-110",   "beta-2-1",         "coded-example"};
}

/// Looks up a builtin. Accepted forms: a corpus name (full-N, dyck-N and
/// motzkin-N take any N), optionally followed by "-rev" (time reversal)
/// and/or "-blockN" (higher block recoding), applied left to right.
inline Presentation make_builtin(const std::string& id) {
    std::string base = id;
    std::vector<std::string> mods;
    std::smatch m;
    static const std::regex suffix("^(.*)-(rev|block[0-9]+)$");
    while (std::regex_match(base, m, suffix)) {
        mods.insert(mods.begin(), m[2]);
        base = m[1];
    }
    Presentation p = detail::base_builtin(base);
    p.name = id;
    for (const auto& mod : mods) {
        if (mod == "rev") {
            p.oracle = reverse_oracle(p.oracle);
            if (p.sofic) p.sofic = detail::reversed_graph(*p.sofic);
        } else {
            recode_blocks(p, std::stoi(mod.substr(5)));
        }
    }
    return p;
}

}  // namespace lsync
