#ifndef KFILT_SPECIALIZE_HPP
#define KFILT_SPECIALIZE_HPP

#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "kfilt/bigraded.hpp"
#include "kfilt/filtration.hpp"

namespace kfilt {

/// Limit of the Grassmannian orbit of V under the diagonal one-parameter
/// subgroup as tau -> 0. Columns are ordered by ascending lambda-weight;
/// in reduced echelon form over that order the lowest-weight components of
/// the rows are independent, and they span the limit. Initial form = lowest
/// weight component, so in(x + y) = x when x has the smaller weight.
inline Subspace initial_subspace(const Subspace& v, const OneParamSubgroup& lambda) {
    if (v.ring().get() != lambda.ring.get()) throw ambient_mismatch();
    if (v.dim() == 0 || lambda.is_trivial()) return v;
    const auto& basis = v.ring()->degree_basis(v.degree());
    const std::size_t m = basis.size();
    std::vector<long long> col_weight(m);
    for (std::size_t c = 0; c < m; ++c) col_weight[c] = weight_of(basis[c], lambda.weights);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return col_weight[a] < col_weight[b]; });

    detail::Matrix permuted;
    for (const auto& row : v.rows()) {
        detail::Row w(m);
        for (std::size_t c = 0; c < m; ++c) w[c] = row[order[c]];
        detail::rref_insert(permuted, std::move(w));
    }
    Subspace out(v.ring(), v.degree());
    for (const auto& row : permuted) {
        const int p = detail::pivot_of(row);
        const long long w0 = col_weight[order[static_cast<std::size_t>(p)]];
        detail::Row init(m, Rational(0));
        for (std::size_t c = static_cast<std::size_t>(p); c < m; ++c)
            if (col_weight[order[c]] == w0) init[order[c]] = row[c];
        out.insert_vector(std::move(init));
    }
    if (out.dim() != v.dim())
        throw cross_check_failure("initial subspace changed dimension");
    return out;
}

/// Degreewise Grassmannian limit of a filtration along lambda. Preserves
/// all flag dimensions, hence the weight functions.
inline TabulatedFiltration specialize(const TabulatedFiltration& tab, const OneParamSubgroup& lambda) {
    std::vector<FlagChain> chains;
    for (int k = 0; k <= tab.kmax(); ++k) {
        const FlagChain& src = tab.chain(k);
        FlagChain dst;
        dst.exhausted = src.exhausted;
        for (std::size_t i = 0; i < src.levels.size(); ++i) {
            Subspace lim = initial_subspace(src.levels[i], lambda);
            if (lim.dim() != src.levels[i].dim())
                throw cross_check_failure("specialisation changed a flag dimension");
            if (i > 0 && !lim.contains(dst.levels[i - 1]))
                throw cross_check_failure("specialised flags are not nested");
            dst.levels.push_back(std::move(lim));
        }
        chains.push_back(std::move(dst));
    }
    return TabulatedFiltration(tab.ring(), tab.kmax(), std::move(chains),
                               tab.label() + " | lim");
}

inline TabulatedFiltration specialize(const ReesPresentation& pres, const OneParamSubgroup& lambda,
                                      int kmax) {
    return specialize(tabulate(pres, kmax), lambda);
}

/// Alternative specialisation route through the initial algebra of the Rees
/// algebra: build the bigraded table of the subalgebra, take initial forms
/// of each bidegree piece, and read the flags off. Must agree with
/// `specialize` on every tabulated bidegree.
inline TabulatedFiltration rees_initial(const ReesPresentation& pres, const OneParamSubgroup& lambda,
                                        int kmax) {
    validate_rees(pres, kmax);
    int jmax = 0;
    for (int k = 0; k <= kmax; ++k)
        jmax = std::max(jmax, static_cast<int>(pres.chain(k).top_level()));
    BigradedAlgebraTable table(pres.ring(), pres.generators(), kmax, jmax);
    std::vector<FlagChain> chains;
    for (int k = 0; k <= kmax; ++k) {
        FlagChain src = table.chain(k);
        FlagChain dst;
        dst.exhausted = src.exhausted;
        for (const Subspace& piece : src.levels)
            dst.levels.push_back(initial_subspace(piece, lambda));
        chains.push_back(std::move(dst));
    }
    return TabulatedFiltration(pres.ring(), kmax, std::move(chains),
                               pres.label() + " | rees-initial");
}

/// Exact equality of two tabulations on all tabulated bidegrees.
inline bool same_flags(const TabulatedFiltration& a, const TabulatedFiltration& b, int kmax) {
    for (int k = 0; k <= kmax; ++k) {
        const FlagChain& ca = a.chain(k);
        const FlagChain& cb = b.chain(k);
        const long top = std::max(ca.top_level(), cb.top_level());
        for (long i = 0; i <= top; ++i)
            if (!(ca.at(i) == cb.at(i))) return false;
        if (ca.exhausted != cb.exhausted) return false;
    }
    return true;
}

struct GenericOpsResult {
    OneParamSubgroup lambda;
    int escalation = 0;    // ladder step D that certified
    bool randomized = false;
};

/// A certified-generic one-parameter subgroup of T: an integer combination
/// of the cocharacters separating, in every degree k <= kmax, the lambda-
/// weights of standard monomials with distinct T-weights. Certification is
/// by direct enumeration. Seed 0 walks the deterministic coefficient ladder
/// c_m = (2 kmax D + 1)^(m-1); other seeds draw random coefficients in the
/// same range first, still certified.
inline GenericOpsResult generic_ops(const Torus& torus, int kmax, unsigned long seed = 0) {
    const int rank = torus.rank();
    const int nvars = torus.ring->nvars();
    if (rank == 0)
        return {OneParamSubgroup(torus.ring, WeightVector(static_cast<std::size_t>(nvars), 0)), 0,
                false};

    // Cocharacters must be linearly independent.
    {
        detail::Matrix rows;
        for (const auto& c : torus.cocharacters) {
            detail::Row r;
            for (long long x : c) r.emplace_back(static_cast<long>(x));
            detail::rref_insert(rows, std::move(r));
        }
        if (static_cast<int>(rows.size()) != rank) throw degenerate_torus();
    }

    auto certify = [&](const WeightVector& lambda) {
        for (int k = 1; k <= kmax; ++k) {
            std::map<long long, std::vector<long long>> fibres;
            for (const Monomial& m : torus.ring->degree_basis(k)) {
                const long long lw = weight_of(m, lambda);
                auto tw = torus_weight(m, torus);
                auto [it, inserted] = fibres.emplace(lw, std::move(tw));
                if (!inserted && it->second != tw) return false;
            }
        }
        return true;
    };

    auto combine = [&](const std::vector<long long>& coeff) {
        WeightVector lambda(static_cast<std::size_t>(nvars), 0);
        for (int m = 0; m < rank; ++m)
            for (int v = 0; v < nvars; ++v)
                lambda[static_cast<std::size_t>(v)] +=
                    coeff[static_cast<std::size_t>(m)] *
                    torus.cocharacters[static_cast<std::size_t>(m)][static_cast<std::size_t>(v)];
        return lambda;
    };

    std::mt19937_64 rng(seed);
    for (int d = 1; d <= 64; ++d) {
        const long long base = 2LL * kmax * d + 1;
        std::vector<long long> coeff(static_cast<std::size_t>(rank));
        if (seed == 0) {
            long long c = 1;
            for (int m = 0; m < rank; ++m) {
                coeff[static_cast<std::size_t>(m)] = c;
                c *= base;
            }
        } else {
            std::uniform_int_distribution<long long> dist(1, base);
            for (int m = 0; m < rank; ++m) coeff[static_cast<std::size_t>(m)] = dist(rng);
        }
        const WeightVector lambda = combine(coeff);
        if (certify(lambda)) return {OneParamSubgroup(torus.ring, lambda), d, seed != 0};
    }
    throw error("generic one-parameter subgroup: escalation limit reached");
}

struct SpecializeTcResult {
    TabulatedFiltration specialized;       // the degreewise limit, tabulated
    std::shared_ptr<ReesPresentation> presentation;  // finitely generated approximation
    int r_used = 0;
    std::vector<std::pair<int, int>> escalation_trace;  // (r, agreement degree)
    bool equivariant = false;
    OneParamSubgroup lambda;
    WeightData before, after;
    bool stable = false;
    long disagreement_degree = -1;
};

/// Full specialisation pipeline: pick a certified-generic lambda in T, take
/// the degreewise limit, then search for a finitely generated approximation
/// whose weight functions reproduce the input on every tabulated degree.
/// The approximation exponent escalates from r_start; reaching r = kmax
/// only reproduces the tabulated window by construction, so agreement is
/// demanded for some r < kmax and otherwise the escalation is reported as
/// unstable (the symptom of a non-finitely-generated limit).
inline SpecializeTcResult specialize_tc_try(const ReesPresentation& pres, const Torus& torus,
                                            int kmax, int r_start, unsigned long seed = 0,
                                            int r_cap = -1) {
    if (r_start < 1 || r_start > kmax) throw bound_exceeded();
    const int cap = r_cap < 0 ? kmax : std::min(r_cap, kmax);
    GenericOpsResult gen = generic_ops(torus, kmax, seed);
    TabulatedFiltration tab = tabulate(pres, kmax);
    SpecializeTcResult res{specialize(tab, gen.lambda), nullptr, 0, {}, false,
                           gen.lambda,                  {},      {}, false, -1};
    res.before = weight_functions(tab);
    for (int r = r_start; r <= cap; ++r) {
        ApproximationResult app = approximate(res.specialized, r);
        res.escalation_trace.emplace_back(r, app.agreement_degree);
        if (app.full_agreement && r < kmax) {
            res.presentation = app.presentation;
            res.r_used = r;
            res.after = weight_functions(*app.presentation, kmax);
            res.equivariant = is_equivariant(*app.presentation, torus, kmax);
            res.stable = true;
            return res;
        }
    }
    long worst = 0;
    for (const auto& [r, agree] : res.escalation_trace) worst = std::max<long>(worst, agree);
    res.disagreement_degree = std::min<long>(worst + 1, kmax);
    return res;
}

inline SpecializeTcResult specialize_tc(const ReesPresentation& pres, const Torus& torus, int kmax,
                                        int r_start, unsigned long seed = 0) {
    SpecializeTcResult res = specialize_tc_try(pres, torus, kmax, r_start, seed);
    if (!res.stable) throw approximation_unstable(res.disagreement_degree);
    return res;
}

}  // namespace kfilt

#endif
