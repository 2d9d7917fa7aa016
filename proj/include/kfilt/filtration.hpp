#ifndef KFILT_FILTRATION_HPP
#define KFILT_FILTRATION_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "kfilt/action.hpp"
#include "kfilt/fit.hpp"
#include "kfilt/subspace.hpp"

namespace kfilt {

struct ReesGenerator {
    int t_power = 0;
    Poly element;
};

/// One flag F_0 R_k <= F_1 R_k <= ... in a fixed degree piece. The chain is
/// trimmed once it reaches R_k: levels above `levels.size()-1` repeat the
/// last entry when `exhausted` is set.
struct FlagChain {
    std::vector<Subspace> levels;
    bool exhausted = false;

    long top_level() const { return static_cast<long>(levels.size()) - 1; }

    const Subspace& at(long i) const {
        if (i >= top_level()) return levels.back();
        return levels[static_cast<std::size_t>(i)];
    }

    long dim_at(long i) const {
        if (i < 0) return 0;
        return at(i).dim();
    }

    /// Levels where the dimension jumps, with the jump sizes.
    std::vector<std::pair<long, long>> jumps() const {
        std::vector<std::pair<long, long>> out;
        long prev = 0;
        for (long i = 0; i <= top_level(); ++i) {
            const long d = levels[static_cast<std::size_t>(i)].dim();
            if (d > prev) out.emplace_back(i, d - prev);
            prev = d;
        }
        return out;
    }
};

namespace detail {

/// Basis rows of chain level `l` that are new relative to level `l-1`.
/// For nested reduced-echelon bases the pivot sets nest, so the rows of F_l
/// whose pivots are absent from F_{l-1} complete any basis of F_{l-1}.
inline std::vector<Row> delta_rows(const FlagChain& chain, long l) {
    if (l < 0 || l > chain.top_level()) return {};
    const Subspace& cur = chain.levels[static_cast<std::size_t>(l)];
    if (l == 0) {
        std::vector<Row> out(cur.rows().begin(), cur.rows().end());
        return out;
    }
    const Subspace& prev = chain.levels[static_cast<std::size_t>(l - 1)];
    std::set<int> prev_pivots;
    for (int p : prev.pivot_columns()) prev_pivots.insert(p);
    std::vector<Row> out;
    for (const auto& r : cur.rows())
        if (!prev_pivots.count(pivot_of(r))) out.push_back(r);
    return out;
}

}  // namespace detail

struct ValidationReport {
    bool cond_a_strict = false;       // no generators with t-power 0
    bool product_normalised = false;  // t-power-0 generators admitted by construction
    std::vector<long> exhaust_levels; // index k = 0..kmax
    int kmax = 0;
};

/// A filtration presented by Rees-algebra generators t^{i_a} s_a. Flags are
/// evaluated degree by degree with the bidegree dynamic programme
///   F_j R_k = F_{j-1} R_k + sum_a s_a . F_{j-i_a} R_{k-k_a},
/// base F_j R_0 = constants; the F_{j-1} term encodes the C[t]-algebra
/// structure of the Rees algebra.
class ReesPresentation {
public:
    ReesPresentation(RingPtr ring, std::vector<ReesGenerator> gens, std::string label,
                     bool allow_t0 = false)
        : ring_(std::move(ring)), label_(std::move(label)), allow_t0_(allow_t0) {
        for (auto& g : gens) {
            if (g.t_power < 0) throw error("negative t-power in generator");
            Poly nf = ring_->normal_form(g.element);
            if (nf.is_zero()) throw error("generator vanishes in the quotient ring");
            if (!nf.is_homogeneous()) throw error("generator is not homogeneous");
            if (nf.degree() < 1) throw error("generator of degree zero");
            gens_.push_back({g.t_power, std::move(nf)});
        }
        max_t_power_ = 0;
        for (const auto& g : gens_) max_t_power_ = std::max(max_t_power_, g.t_power);
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<ReesGenerator>& generators() const { return gens_; }
    const std::string& label() const { return label_; }
    bool allows_t0() const { return allow_t0_; }
    int max_t_power() const { return max_t_power_; }

    /// Per-degree level ceiling for the dynamic programme. Any product with
    /// total ring degree k has at most k factors, so level k * max(i_a) is
    /// an exhaustive bound whenever the presentation is exhaustive at all.
    long level_bound(int k) const { return static_cast<long>(k) * max_t_power_; }

    const FlagChain& chain(int k) const {
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
        FlagChain c = compute_chain(k);
        return cache_.emplace(k, std::move(c)).first->second;
    }

private:
    FlagChain compute_chain(int k) const {
        FlagChain c;
        if (k == 0) {
            c.levels.push_back(Subspace::full(ring_, 0));
            c.exhausted = true;
            return c;
        }
        const long bound = level_bound(k);
        const long full_dim = ring_->hilbert(k);
        for (long j = 0; j <= bound; ++j) {
            Subspace cur = (j == 0) ? Subspace::zero(ring_, k)
                                    : c.levels[static_cast<std::size_t>(j - 1)];
            for (const auto& g : gens_) {
                const int kk = k - g.element.degree();
                const long jj = j - g.t_power;
                if (kk < 0 || jj < 0) continue;
                const FlagChain& src = chain(kk);
                for (const auto& row : detail::delta_rows(src, jj)) {
                    Poly p(ring_->nvars());
                    const auto& basis = ring_->degree_basis(kk);
                    for (std::size_t ci = 0; ci < row.size(); ++ci)
                        if (sgn(row[ci]) != 0) p.add_term(basis[ci], row[ci]);
                    cur.insert(g.element * p);
                }
            }
            c.levels.push_back(std::move(cur));
            if (c.levels.back().dim() == full_dim) {
                c.exhausted = true;
                break;
            }
        }
        return c;
    }

    RingPtr ring_;
    std::vector<ReesGenerator> gens_;
    std::string label_;
    bool allow_t0_ = false;
    int max_t_power_ = 0;
    mutable std::map<int, FlagChain> cache_;
};

/// Reconstruction-condition checks up to the given bounds. Condition (a)
/// fails on t-power-0 generators unless the presentation was built with the
/// product normalisation (weight-zero directions); condition (c) holds by
/// construction since generators are homogeneous.
inline ValidationReport validate_rees(const ReesPresentation& pres, int kmax) {
    ValidationReport rep;
    rep.kmax = kmax;
    bool has_t0 = false;
    for (const auto& g : pres.generators())
        if (g.t_power == 0) has_t0 = true;
    if (has_t0 && !pres.allows_t0()) throw degree_zero_generator();
    rep.cond_a_strict = !has_t0;
    rep.product_normalised = has_t0;
    for (int k = 0; k <= kmax; ++k) {
        const FlagChain& c = pres.chain(k);
        if (!c.exhausted) throw not_exhaustive(k);
        rep.exhaust_levels.push_back(c.top_level());
    }
    return rep;
}

/// Increasing list F_0 R_k <= ... <= F_imax R_k.
inline std::vector<Subspace> flag(const ReesPresentation& pres, int k, long imax) {
    const FlagChain& c = pres.chain(k);
    if (!c.exhausted && imax > c.top_level()) throw not_exhaustive(k);
    std::vector<Subspace> out;
    for (long i = 0; i <= imax; ++i) out.push_back(c.at(i));
    return out;
}

/// Product filtration of a diagonal weight vector u: weights are shifted so
/// that max u' = 0, and the generators are t^{-u'_j} x_j. A monomial then
/// lies in F_i R_k exactly when its u'-weight is at least -i.
inline ReesPresentation product_filtration(const RingPtr& ring, const WeightVector& u,
                                           std::string label = "") {
    check_ideal_preserved(*ring, u);
    if (static_cast<int>(u.size()) != ring->nvars())
        throw error("weight vector length does not match the variable count");
    long long top = u.empty() ? 0 : *std::max_element(u.begin(), u.end());
    std::vector<ReesGenerator> gens;
    for (std::size_t j = 0; j < u.size(); ++j) {
        gens.push_back({static_cast<int>(top - u[j]),
                        Poly::variable(static_cast<int>(j), ring->nvars())});
    }
    if (label.empty()) {
        label = "product(";
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (j) label += ",";
            label += std::to_string(u[j]);
        }
        label += ")";
    }
    return ReesPresentation(ring, std::move(gens), std::move(label), /*allow_t0=*/true);
}

/// Tabulated family of flags, one chain per degree k <= kmax. This is the
/// common currency for weight functions, pairings and specialisation.
class TabulatedFiltration {
public:
    TabulatedFiltration() = default;
    TabulatedFiltration(RingPtr ring, int kmax, std::vector<FlagChain> chains, std::string label)
        : ring_(std::move(ring)), kmax_(kmax), chains_(std::move(chains)), label_(std::move(label)) {}

    const RingPtr& ring() const { return ring_; }
    int kmax() const { return kmax_; }
    const std::string& label() const { return label_; }
    const FlagChain& chain(int k) const { return chains_[static_cast<std::size_t>(k)]; }
    long exhaust_level(int k) const { return chain(k).top_level(); }

    void set_label(std::string l) { label_ = std::move(l); }

private:
    RingPtr ring_;
    int kmax_ = 0;
    std::vector<FlagChain> chains_;
    std::string label_;
};

inline TabulatedFiltration tabulate(const ReesPresentation& pres, int kmax) {
    validate_rees(pres, kmax);
    std::vector<FlagChain> chains;
    for (int k = 0; k <= kmax; ++k) chains.push_back(pres.chain(k));
    return TabulatedFiltration(pres.ring(), kmax, std::move(chains), pres.label());
}

/// Hilbert, weight and trace-squared sequences with their certified fits.
struct WeightData {
    int n = 0;
    int kmax = 0;
    std::string label;
    std::vector<Rational> h_seq, w_seq, d_seq;  // indexed by k = 0..kmax
    FitResult h_fit, w_fit, d_fit;
    bool fit_certified = false;
    int fit_threshold = 0;

    Rational a0() const { return h_fit.coefficients.at(0); }
    Rational a1() const { return h_fit.coefficients.size() > 1 ? h_fit.coefficients[1] : Rational(0); }
    Rational b0() const { return w_fit.coefficients.at(0); }
    Rational b1() const { return w_fit.coefficients.size() > 1 ? w_fit.coefficients[1] : Rational(0); }
    Rational c0() const { return d_fit.coefficients.at(0); }
    Rational c1() const { return d_fit.coefficients.size() > 1 ? d_fit.coefficients[1] : Rational(0); }
};

inline WeightData weight_functions(const TabulatedFiltration& tab, int window_start = -1) {
    WeightData wd;
    wd.n = tab.ring()->dimension();
    wd.kmax = tab.kmax();
    wd.label = tab.label();
    for (int k = 0; k <= tab.kmax(); ++k) {
        wd.h_seq.push_back(Rational(tab.ring()->hilbert(k)));
        Rational w(0), d(0);
        for (const auto& [i, jump] : tab.chain(k).jumps()) {
            w += Rational(-i) * Rational(jump);
            d += Rational(i) * Rational(i) * Rational(jump);
        }
        wd.w_seq.push_back(w);
        wd.d_seq.push_back(d);
    }
    int k0 = window_start >= 1 ? window_start : wd.n + 3;
    // The widest fit needs kmax - k0 >= n + 4; pull the window back if needed.
    k0 = std::min<int>(k0, tab.kmax() - (wd.n + 4));
    if (k0 < 1) {
        wd.fit_certified = false;
        return wd;
    }
    wd.h_fit = fit_auto(wd.h_seq, wd.n, k0, tab.kmax());
    wd.w_fit = fit_auto(wd.w_seq, wd.n + 1, k0, tab.kmax());
    wd.d_fit = fit_auto(wd.d_seq, wd.n + 2, k0, tab.kmax());
    wd.fit_certified = wd.h_fit.certified && wd.w_fit.certified && wd.d_fit.certified;
    wd.fit_threshold = std::max({wd.h_fit.window_start, wd.w_fit.window_start, wd.d_fit.window_start});
    return wd;
}

inline WeightData weight_functions(const ReesPresentation& pres, int kmax, int window_start = -1) {
    return weight_functions(tabulate(pres, kmax), window_start);
}

struct ApproximationResult {
    std::shared_ptr<ReesPresentation> presentation;
    int r = 0;
    int agreement_degree = 0;  // largest K <= kmax with matching w and d up to K
    bool full_agreement = false;
};

/// Finitely generated approximation generated by the tabulated flags in
/// degrees k <= r. Generators are taken from the echelon bases of the flag
/// jumps; lower levels are reachable through the C[t]-algebra structure.
inline ApproximationResult approximate(const TabulatedFiltration& tab, int r) {
    if (r < 1 || r > tab.kmax()) throw bound_exceeded();
    std::vector<ReesGenerator> gens;
    bool any_t0 = false;
    for (int k = 1; k <= r; ++k) {
        const FlagChain& c = tab.chain(k);
        for (const auto& [level, jump] : c.jumps()) {
            for (const auto& row : detail::delta_rows(c, level)) {
                Poly p(tab.ring()->nvars());
                const auto& basis = tab.ring()->degree_basis(k);
                for (std::size_t ci = 0; ci < row.size(); ++ci)
                    if (sgn(row[ci]) != 0) p.add_term(basis[ci], row[ci]);
                gens.push_back({static_cast<int>(level), std::move(p)});
                if (level == 0) any_t0 = true;
            }
        }
    }
    ApproximationResult res;
    res.r = r;
    res.presentation = std::make_shared<ReesPresentation>(
        tab.ring(), std::move(gens), tab.label() + "^(" + std::to_string(r) + ")", any_t0);
    // Compare weight functions with the input on all tabulated degrees.
    const TabulatedFiltration approx_tab = tabulate(*res.presentation, tab.kmax());
    const WeightData in = weight_functions(tab);
    const WeightData out = weight_functions(approx_tab);
    int agree = 0;
    for (int k = 0; k <= tab.kmax(); ++k) {
        if (in.w_seq[static_cast<std::size_t>(k)] != out.w_seq[static_cast<std::size_t>(k)] ||
            in.d_seq[static_cast<std::size_t>(k)] != out.d_seq[static_cast<std::size_t>(k)])
            break;
        agree = k;
    }
    res.agreement_degree = agree;
    res.full_agreement = agree == tab.kmax();
    return res;
}

/// True when every tabulated flag piece is spanned by T-weight vectors.
inline bool is_equivariant(const TabulatedFiltration& tab, const Torus& torus, int kmax) {
    if (tab.ring().get() != torus.ring.get()) throw ambient_mismatch();
    for (int k = 1; k <= kmax && k <= tab.kmax(); ++k) {
        const auto& basis = tab.ring()->degree_basis(k);
        // Group the standard-monomial columns by their T-weight.
        std::map<std::vector<long long>, std::vector<std::size_t>> classes;
        for (std::size_t c = 0; c < basis.size(); ++c)
            classes[torus_weight(basis[c], torus)].push_back(c);
        if (classes.size() <= 1) continue;  // a single weight class fixes everything
        const FlagChain& chainK = tab.chain(k);
        for (const Subspace& v : chainK.levels) {
            if (v.dim() == 0 || v.is_full()) continue;
            for (const auto& row : v.rows()) {
                for (const auto& [wt, cols] : classes) {
                    detail::Row comp(row.size(), Rational(0));
                    bool nonzero = false;
                    for (std::size_t c : cols) {
                        comp[c] = row[c];
                        if (sgn(row[c]) != 0) nonzero = true;
                    }
                    if (nonzero && !v.contains_vector(comp)) return false;
                }
            }
        }
    }
    return true;
}

inline bool is_equivariant(const ReesPresentation& pres, const Torus& torus, int kmax) {
    return is_equivariant(tabulate(pres, kmax), torus, kmax);
}

}  // namespace kfilt

#endif
