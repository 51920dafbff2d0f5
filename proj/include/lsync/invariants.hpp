#pragma once

#include <cmath>
#include <map>

#include "conditions.hpp"
#include "snf.hpp"

namespace lsync {

/// Sorted label multiset: one entry of a symbolic matrix.
using LabelMultiset = std::vector<Symbol>;

/// Symbolic matrices M[l] (m(l) x m(l+1), label multisets) and 0-1 matrices I[l].
struct SymbolicMatrixSystem {
    Alphabet alphabet;
    std::vector<size_t> m;
    std::vector<std::vector<std::vector<LabelMultiset>>> M;  ///< M[l][i][j]
    std::vector<IntMatrix> I;
    bool commutation_verified = false;
};

/// Nonnegative matrices M[l] and 0-1 matrices I[l], both m(l) x m(l+1).
struct NonnegativeMatrixSystem {
    std::vector<size_t> m;
    std::vector<IntMatrix> M;
    std::vector<IntMatrix> I;
    bool commutation_verified = false;

    int levels() const { return static_cast<int>(M.size()); }  ///< number of (M, I) pairs
};

struct MatrixSystems {
    SymbolicMatrixSystem symbolic;
    NonnegativeMatrixSystem nonnegative;
};

namespace detail {

[[noreturn]] inline void commutation_failure(const std::string& what, size_t l, size_t i, size_t j) {
    throw CommutationFailure(what + " fails at l=" + std::to_string(l) + ", i=" + std::to_string(i) +
                             ", j=" + std::to_string(j));
}

/// Every column of I has exactly one 1 and every row at least one.
inline void check_iota_matrix(const IntMatrix& I, size_t l) {
    std::vector<bool> row_hit(I.rows, false);
    for (size_t j = 0; j < I.cols; ++j) {
        int ones = 0;
        for (size_t i = 0; i < I.rows; ++i) {
            if (I(i, j) == 1) {
                ++ones;
                row_hit[i] = true;
            } else if (I(i, j) != 0) {
                commutation_failure("0-1 condition on I", l, i, j);
            }
        }
        if (ones != 1) commutation_failure("column condition on I", l, 0, j);
    }
    for (size_t i = 0; i < I.rows; ++i) {
        if (!row_hit[i]) commutation_failure("row condition on I", l, i, 0);
    }
}

}  // namespace detail

/// Checks the I conditions and I[l] M[l+1] = M[l] I[l+1]; throws CommutationFailure.
inline void verify_commutation(NonnegativeMatrixSystem& ms) {
    const size_t n = ms.M.size();
    if (ms.I.size() != n || ms.m.size() != n + 1) throw InvalidPresentation("matrix system: inconsistent level counts");
    for (size_t l = 0; l < n; ++l) {
        const auto &M = ms.M[l], &I = ms.I[l];
        if (M.rows != ms.m[l] || M.cols != ms.m[l + 1] || I.rows != ms.m[l] || I.cols != ms.m[l + 1]) {
            throw InvalidPresentation("matrix system: dimension mismatch at level " + std::to_string(l));
        }
        for (const auto& x : M.a) {
            if (x < 0) throw InvalidPresentation("matrix system: negative entry at level " + std::to_string(l));
        }
        detail::check_iota_matrix(I, l);
    }
    for (size_t l = 0; l + 1 < n; ++l) {
        auto lhs = ms.I[l] * ms.M[l + 1];
        auto rhs = ms.M[l] * ms.I[l + 1];
        for (size_t i = 0; i < lhs.rows; ++i) {
            for (size_t j = 0; j < lhs.cols; ++j) {
                if (lhs(i, j) != rhs(i, j)) detail::commutation_failure("I M = M I", l, i, j);
            }
        }
    }
    ms.commutation_verified = true;
}

/// Builds and certifies a nonnegative system from explicit matrices.
inline NonnegativeMatrixSystem make_matrix_system(std::vector<IntMatrix> M, std::vector<IntMatrix> I) {
    NonnegativeMatrixSystem ms;
    if (M.empty()) throw InvalidPresentation("matrix system: no levels");
    ms.m.push_back(M[0].rows);
    for (const auto& x : M) ms.m.push_back(x.cols);
    ms.M = std::move(M);
    ms.I = std::move(I);
    verify_commutation(ms);
    return ms;
}

/// The constant system M[l] = A, I[l] = identity for levels 0..L-1.
inline NonnegativeMatrixSystem constant_matrix_system(const IntMatrix& A, int L) {
    return make_matrix_system(std::vector<IntMatrix>(static_cast<size_t>(L), A),
                              std::vector<IntMatrix>(static_cast<size_t>(L), IntMatrix::identity(A.rows)));
}

/// Reads off the symbolic and nonnegative matrix systems of a built system
/// and certifies both commutation relations.
inline MatrixSystems extract_matrix_systems(const LambdaGraphSystem& g) {
    MatrixSystems r;
    auto& sy = r.symbolic;
    auto& nn = r.nonnegative;
    sy.alphabet = g.alphabet;
    for (int l = 0; l <= g.L; ++l) sy.m.push_back(g.size(l));
    nn.m = sy.m;
    for (int l = 0; l < g.L; ++l) {
        const auto lu = static_cast<size_t>(l);
        std::vector<std::vector<LabelMultiset>> M(sy.m[lu], std::vector<LabelMultiset>(sy.m[lu + 1]));
        IntMatrix Mi(sy.m[lu], sy.m[lu + 1]);
        for (const auto& e : g.edges[lu]) {
            M[static_cast<size_t>(e.source)][static_cast<size_t>(e.target)].push_back(e.label);
            Mi(static_cast<size_t>(e.source), static_cast<size_t>(e.target)) += 1;
        }
        for (auto& row : M) {
            for (auto& x : row) std::sort(x.begin(), x.end());
        }
        IntMatrix I(sy.m[lu], sy.m[lu + 1]);
        for (size_t j = 0; j < sy.m[lu + 1]; ++j) I(static_cast<size_t>(g.iota[lu][j]), j) = 1;
        sy.M.push_back(std::move(M));
        sy.I.push_back(I);
        nn.M.push_back(std::move(Mi));
        nn.I.push_back(std::move(I));
    }
    verify_commutation(nn);
    // Symbolic form: (I M)(i,k) gathers M[l+1](j,k) over iota(j) = i; (M I)(i,k) is M[l](i, iota(k)).
    for (size_t l = 0; l + 1 < sy.M.size(); ++l) {
        for (size_t i = 0; i < sy.m[l]; ++i) {
            for (size_t k = 0; k < sy.m[l + 2]; ++k) {
                LabelMultiset lhs;
                for (size_t j = 0; j < sy.m[l + 1]; ++j) {
                    if (sy.I[l](i, j) == 1) lhs.insert(lhs.end(), sy.M[l + 1][j][k].begin(), sy.M[l + 1][j][k].end());
                }
                std::sort(lhs.begin(), lhs.end());
                const auto& rhs = sy.M[l][i][static_cast<size_t>(g.iota[l + 1][k])];
                if (lhs != rhs) detail::commutation_failure("symbolic I M = M I", l, i, k);
            }
        }
    }
    sy.commutation_verified = true;
    return r;
}

/// Level sequence of group stages with the connecting-map isomorphism data.
struct GroupSequence {
    std::string name;
    std::vector<AbelianGroup> stages;   ///< stage l uses the matrices of levels l, l+1
    std::vector<bool> connecting_iso;   ///< [l]: the map between stages l and l+1 is an isomorphism
    bool stabilized = false;            ///< the top connecting map is an isomorphism

    /// The stabilized group; only meaningful when stabilized.
    const AbelianGroup& limit() const { return stages.back(); }
    std::string str() const {
        return stabilized ? limit().str() : "not stabilized (top stage " + stages.back().str() + ")";
    }
};

namespace detail {

inline void require_levels(const NonnegativeMatrixSystem& ms) {
    if (ms.levels() < 2) {
        throw InsufficientLevels("group invariants need at least 3 levels, have " + std::to_string(ms.levels() + 1));
    }
}

/// Cokernel sequence of maps A[l] : Z^src -> Z^dst with connecting maps T[l]
/// from the target space of A[l] to that of A[l+1].
inline GroupSequence cokernel_sequence(std::string name, const std::vector<IntMatrix>& A,
                                       const std::vector<IntMatrix>& T) {
    GroupSequence s{std::move(name), {}, {}, false};
    for (const auto& a : A) s.stages.push_back(cokernel(a));
    for (size_t l = 0; l + 1 < A.size(); ++l) {
        bool iso = s.stages[l] == s.stages[l + 1] && spans_lattice(hconcat(T[l], A[l + 1]));
        s.connecting_iso.push_back(iso);
    }
    s.stabilized = !s.connecting_iso.empty() && s.connecting_iso.back();
    return s;
}

/// Kernel sequence: stage l is ker A[l]; T[l] maps the source space of A[l]
/// to that of A[l+1].
inline GroupSequence kernel_sequence(std::string name, const std::vector<IntMatrix>& A,
                                     const std::vector<IntMatrix>& T) {
    GroupSequence s{std::move(name), {}, {}, false};
    std::vector<IntMatrix> bases;
    for (const auto& a : A) {
        bases.push_back(kernel_basis(a));
        s.stages.push_back(AbelianGroup{bases.back().cols, {}});
    }
    for (size_t l = 0; l + 1 < A.size(); ++l) {
        bool iso = s.stages[l] == s.stages[l + 1] && primitive_columns(T[l] * bases[l]);
        s.connecting_iso.push_back(iso);
    }
    s.stabilized = !s.connecting_iso.empty() && s.connecting_iso.back();
    return s;
}

}  // namespace detail

struct GroupPair {
    GroupSequence zero;  ///< K0 or BF0
    GroupSequence one;   ///< K1 or BF1
};

/// K-groups through the inductive system: stage l is the cokernel / kernel of
/// I^t - M^t from Z^m(l) to Z^m(l+1); connecting maps are induced by I^t.
inline GroupPair k_groups(const NonnegativeMatrixSystem& ms) {
    detail::require_levels(ms);
    std::vector<IntMatrix> A, It;
    for (int l = 0; l < ms.levels(); ++l) {
        const auto lu = static_cast<size_t>(l);
        A.push_back(ms.I[lu].transpose() - ms.M[lu].transpose());
        It.push_back(ms.I[lu].transpose());
    }
    // Cokernel of A[l] lives in Z^m(l+1), moved on by I^t of the next level;
    // kernel of A[l] lives in Z^m(l), moved on by I^t of the same level.
    std::vector<IntMatrix> up_next(It.begin() + 1, It.end());
    return {detail::cokernel_sequence("K0", A, up_next), detail::kernel_sequence("K1", A, It)};
}

/// Bowen-Franks groups through the projective system: stage l is the
/// cokernel / kernel of I - M from Z^m(l+1) to Z^m(l); restriction maps are I.
/// connecting_iso[l] concerns the restriction from stage l+1 to stage l.
inline GroupPair bowen_franks(const NonnegativeMatrixSystem& ms) {
    detail::require_levels(ms);
    const auto n = static_cast<size_t>(ms.levels());
    std::vector<IntMatrix> B, Tco, Tker;
    for (size_t k = 0; k < n; ++k) B.push_back(ms.I[n - 1 - k] - ms.M[n - 1 - k]);
    // Cokernel of B at level l lives in Z^m(l) and maps down by I[l-1];
    // kernel lives in Z^m(l+1) and maps down by I[l].
    for (size_t k = 0; k + 1 < n; ++k) {
        Tco.push_back(ms.I[n - 2 - k]);
        Tker.push_back(ms.I[n - 1 - k]);
    }
    auto bottom_up = [](GroupSequence s) {
        std::reverse(s.stages.begin(), s.stages.end());
        std::reverse(s.connecting_iso.begin(), s.connecting_iso.end());
        s.stabilized = !s.connecting_iso.empty() && s.connecting_iso.back();
        return s;
    };
    return {bottom_up(detail::cokernel_sequence("BF0", B, Tco)), bottom_up(detail::kernel_sequence("BF1", B, Tker))};
}

/// One stage of the dimension group: Z^m(k) at level k, mapped to the top
/// level by the accumulated lambda = M^t maps.
struct DimensionStage {
    int k = 0;
    size_t rank = 0;                          ///< m(k)
    std::vector<Integer> accumulated_factors; ///< Smith factors of the accumulated map to the top stage
    IntMatrix positive_images;                ///< columns: images of the cone generators e_i in the top stage
    bool delta_is_lambda = false;             ///< I = M at this level, so delta acts as lambda
};

struct DimensionLevelData {
    std::vector<DimensionStage> stages;
    std::vector<IntMatrix> connecting;  ///< lambda at stage k: M^t, Z^m(k) -> Z^m(k+1)
    std::vector<IntMatrix> delta;       ///< delta on recorded generators: I^t, Z^m(k) -> Z^m(k+1)
    bool compatible = false;            ///< lambda and delta commute with the I^t identifications
};

inline DimensionLevelData dimension_data(const NonnegativeMatrixSystem& ms, int k_max) {
    if (k_max < 1 || k_max > ms.levels()) {
        throw InsufficientLevels("dimension data up to stage " + std::to_string(k_max) + " needs that many levels");
    }
    DimensionLevelData d;
    const auto top = static_cast<size_t>(k_max);
    for (size_t k = 0; k < top; ++k) {
        d.connecting.push_back(ms.M[k].transpose());
        d.delta.push_back(ms.I[k].transpose());
    }
    for (size_t k = 0; k <= top; ++k) {
        DimensionStage st;
        st.k = static_cast<int>(k);
        st.rank = ms.m[k];
        IntMatrix acc = IntMatrix::identity(ms.m[k]);
        for (size_t j = k; j < top; ++j) acc = d.connecting[j] * acc;
        st.accumulated_factors = smith_normal_form(acc).diagonal;
        st.positive_images = acc;
        st.delta_is_lambda = k < top && ms.M[k] == ms.I[k];
        d.stages.push_back(std::move(st));
    }
    d.compatible = true;
    for (size_t k = 0; k + 1 < top; ++k) {
        if (!(d.delta[k + 1] * d.connecting[k] == d.connecting[k + 1] * d.delta[k])) d.compatible = false;
    }
    return d;
}

enum class EntropyKind { Lambda, Volume };

inline std::string to_string(EntropyKind k) { return k == EntropyKind::Lambda ? "LAMBDA" : "VOLUME"; }

struct EntropyRow {
    int l = 0;
    Integer count;
    double log_over_l = 0;  ///< (1/l) log count; 0 at l = 0
    double ratio_log = 0;   ///< log(count_l / count_{l-1}); 0 at l = 0
};

struct EntropyEstimate {
    EntropyKind kind = EntropyKind::Lambda;
    std::vector<EntropyRow> rows;
    double float_error = 0;  ///< bound on floating-point error of the logs

    double last_log_over_l() const { return rows.back().log_over_l; }
    double last_ratio() const { return rows.back().ratio_log; }
};

namespace detail {

inline double log_of(const Integer& x) {
    // Scale into double range without losing the leading digits.
    const size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 1000) return std::log(x.convert_to<double>());
    const size_t shift = bits - 64;
    Integer top = x >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline EntropyEstimate estimate(EntropyKind kind, const std::vector<Integer>& counts) {
    EntropyEstimate e;
    e.kind = kind;
    for (size_t l = 0; l < counts.size(); ++l) {
        EntropyRow r;
        r.l = static_cast<int>(l);
        r.count = counts[l];
        if (l > 0) {
            r.log_over_l = log_of(counts[l]) / static_cast<double>(l);
            r.ratio_log = log_of(counts[l]) - log_of(counts[l - 1]);
        }
        e.rows.push_back(std::move(r));
    }
    e.float_error = 1e-12 * static_cast<double>(counts.size());
    return e;
}

}  // namespace detail

/// |P_l|: labeled paths from V_0 to V_l, via products of edge-count matrices.
inline std::vector<Integer> path_counts(const NonnegativeMatrixSystem& ms) {
    IntMatrix row(1, ms.m[0]);
    for (auto& x : row.a) x = 1;
    std::vector<Integer> out;
    for (size_t l = 0;; ++l) {
        Integer s = 0;
        for (const auto& x : row.a) s += x;
        out.push_back(s);
        if (l == ms.M.size()) break;
        row = row * ms.M[l];
    }
    return out;
}

/// (lambda estimate from |V_l|, volume estimate from |P_l|).
inline std::pair<EntropyEstimate, EntropyEstimate> entropy_estimates(const LambdaGraphSystem& g,
                                                                     const NonnegativeMatrixSystem& ms) {
    std::vector<Integer> v;
    for (auto s : g.sizes()) v.emplace_back(s);
    return {detail::estimate(EntropyKind::Lambda, v), detail::estimate(EntropyKind::Volume, path_counts(ms))};
}

/// Hypotheses under which the associated C*-algebra is simple and purely
/// infinite, as checked on the truncated system; conclusions are implications only.
struct HypothesisSummary {
    Verdict condition_I = Verdict::Inconclusive;
    Verdict irreducible = Verdict::Inconclusive;
    Verdict overall = Verdict::Inconclusive;
    std::string statement;
};

inline HypothesisSummary hypothesis_summary(const ConditionReport& cond_I, const ConditionReport& irreducible) {
    HypothesisSummary h;
    h.condition_I = cond_I.verdict;
    h.irreducible = irreducible.verdict;
    h.overall = (h.condition_I == Verdict::Verified && h.irreducible == Verdict::Verified) ? Verdict::Verified
                                                                                           : Verdict::Inconclusive;
    h.statement = h.overall == Verdict::Verified
                      ? "lambda-condition (I) and lambda-irreducibility hold on the checked levels; if they hold at "
                        "every level, the associated C*-algebra is simple and purely infinite with K-groups as listed"
                      : "hypotheses not established at this horizon; no conclusion about the associated C*-algebra";
    return h;
}

/// Everything computed for one presentation.
struct InvariantReport {
    std::string label;
    std::vector<size_t> sizes;
    GroupPair k;
    GroupPair bf;
    EntropyEstimate h_lambda;
    EntropyEstimate h_volume;
    std::vector<ConditionReport> conditions;  ///< lambda (I), lambda-irreducible, sync (I), synchronized irreducible
    HypothesisSummary hypotheses;
};

inline InvariantReport invariant_report(std::string label, const LambdaGraphSystem& g,
                                        const NonnegativeMatrixSystem& ms, std::vector<ConditionReport> conditions) {
    InvariantReport r;
    r.label = std::move(label);
    r.sizes = g.sizes();
    r.k = k_groups(ms);
    r.bf = bowen_franks(ms);
    std::tie(r.h_lambda, r.h_volume) = entropy_estimates(g, ms);
    r.conditions = std::move(conditions);
    const ConditionReport* c1 = nullptr;
    const ConditionReport* ir = nullptr;
    for (const auto& c : r.conditions) {
        if (c.name == "lambda-condition (I)") c1 = &c;
        if (c.name == "lambda-irreducible") ir = &c;
    }
    if (c1 && ir) r.hypotheses = hypothesis_summary(*c1, *ir);
    return r;
}

}  // namespace lsync
