#pragma once

#include <memory>

#include "invariants.hpp"
#include "io/builtins.hpp"

namespace lsync {

/// Explicit horizon overrides; unset fields fall back to the presentation's
/// recommended horizons, then to the library defaults.
struct HorizonOverrides {
    std::optional<int> max_level, max_word_len, follower_horizon, tail_len;

    Horizons resolve(const Presentation& p) const {
        Horizons h = p.horizons_for(max_level.value_or(p.recommended.value_or(Horizons{}).max_level));
        if (max_word_len) h.max_word_len = *max_word_len;
        if (follower_horizon) h.follower_horizon = *follower_horizon;
        if (tail_len) h.tail_len = *tail_len;
        if (h.max_level < 1 || h.max_word_len < 1 || h.follower_horizon < 1 || h.tail_len < 1) {
            throw InvalidPresentation("horizons must be positive");
        }
        return h;
    }
};

/// A presentation carried through table and lambda-graph construction.
struct BuildRun {
    Presentation presentation;
    Horizons horizons;
    std::shared_ptr<Engine> engine;
    SyncTable table;
    LambdaGraphSystem graph;
    std::optional<bool> stable;  ///< set when a recheck at larger horizons was run
};

inline BuildRun run_build(Presentation p, const Horizons& hz, bool stability_recheck = false) {
    BuildRun r{std::move(p), hz, nullptr, {}, {}, std::nullopt};
    r.engine = std::make_shared<Engine>(r.presentation.oracle);
    r.table = sync_word_table(*r.engine, hz);
    r.graph = build_lambda_synchronizing(*r.engine, r.table);
    if (stability_recheck) {
        auto big = recheck_horizons(hz);
        auto g2 = build_lambda_synchronizing(*r.engine, sync_word_table(*r.engine, big));
        r.stable = isomorphic_systems(*r.engine, r.graph, g2);
    }
    return r;
}

/// The four condition checks on a built system, at the default depth.
inline std::vector<ConditionReport> condition_reports(BuildRun& r) {
    return {check_lambda_condition_I(r.graph), check_lambda_irreducible(r.graph),
            check_sync_condition_I(*r.engine, r.table, r.graph),
            check_synchronized_irreducible(*r.engine, r.table, r.graph)};
}

inline InvariantReport run_invariants(BuildRun& r) {
    auto ms = extract_matrix_systems(r.graph);
    return invariant_report(r.presentation.name, r.graph, ms.nonnegative, condition_reports(r));
}

}  // namespace lsync
