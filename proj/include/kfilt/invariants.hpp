#ifndef KFILT_INVARIANTS_HPP
#define KFILT_INVARIANTS_HPP

#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "kfilt/filtration.hpp"
#include "kfilt/specialize.hpp"

namespace kfilt {

/// Donaldson-Futaki invariant and L2 norm square from certified fits.
struct InvariantReport {
    Rational df;
    Rational norm_sq;
    WeightData weights;
    std::string label;
};

inline InvariantReport df_and_norm(const WeightData& wd) {
    if (!wd.fit_certified) throw uncertified_fit();
    InvariantReport rep;
    rep.weights = wd;
    rep.label = wd.label;
    rep.df = (wd.a1() * wd.b0() - wd.a0() * wd.b1()) / (wd.a0() * wd.a0());
    rep.norm_sq = wd.c0() - wd.b0() * wd.b0() / wd.a0();
    return rep;
}

namespace detail {

/// Basis of R_k adapted to a flag chain: original chain rows, recorded in
/// ascending level order whenever they enlarge the span, together with the
/// level at which each row enters.
struct AdaptedBasis {
    Matrix rows;
    std::vector<long> levels;
};

inline AdaptedBasis adapted_basis(const FlagChain& chain) {
    AdaptedBasis out;
    Matrix acc;
    for (long i = 0; i <= chain.top_level(); ++i) {
        for (const Row& r : chain.levels[static_cast<std::size_t>(i)].rows()) {
            if (rref_insert(acc, r)) {
                out.rows.push_back(r);
                out.levels.push_back(i);
            }
        }
    }
    return out;
}

}  // namespace detail

/// Product function P(k) = sum_{i,j} i j g_ij, where g_ij is the dimension
/// of the bigraded piece of the common refinement of the two flags, and the
/// normalised P-bar(k) = P(k) - w1(k) w2(k) / h(k).
struct PairK {
    Rational p;
    Rational p_bar;
};

inline PairK pair_k(const TabulatedFiltration& a, const TabulatedFiltration& b, int k) {
    if (a.ring().get() != b.ring().get()) throw ambient_mismatch();
    if (k > a.kmax() || k > b.kmax()) throw out_of_bounds();
    const FlagChain& ca = a.chain(k);
    const FlagChain& cb = b.chain(k);
    if (!ca.exhausted || !cb.exhausted) throw not_exhaustive(k);
    const std::size_t h = static_cast<std::size_t>(a.ring()->hilbert(k));

    detail::AdaptedBasis fa = detail::adapted_basis(ca);
    detail::AdaptedBasis fb = detail::adapted_basis(cb);
    if (fa.rows.size() != h || fb.rows.size() != h)
        throw error("adapted basis does not span the degree piece");

    // Express the F-adapted rows over the G-adapted rows: W . B_G = B_F,
    // via column-augmented elimination on [B_G^T | B_F^T] -> [I | W^T].
    detail::Matrix aug;
    for (std::size_t i = 0; i < h; ++i) {
        detail::Row r(2 * h, Rational(0));
        for (std::size_t j = 0; j < h; ++j) {
            r[j] = fb.rows[j][i];
            r[h + j] = fa.rows[j][i];
        }
        detail::rref_insert(aug, std::move(r));
    }
    detail::Matrix w(h, detail::Row(h, Rational(0)));
    for (std::size_t i = 0; i < h; ++i) {
        if (detail::pivot_of(aug[i]) != static_cast<int>(i))
            throw error("adapted basis matrix is singular");
        for (std::size_t r = 0; r < h; ++r) w[r][i] = aug[i][h + r];
    }

    // Eliminate top-to-bottom with rightmost pivots: earlier rows are never
    // modified, so the r-th prefix still spans F_{level(r)}, and the pivot
    // column of row r identifies the G-level of its graded class.
    Rational p(0);
    for (std::size_t r = 0; r < h; ++r) {
        int pivot = -1;
        for (std::size_t c = h; c-- > 0;) {
            if (sgn(w[r][c]) != 0) {
                pivot = static_cast<int>(c);
                break;
            }
        }
        if (pivot < 0) throw error("adapted basis matrix is singular");
        for (std::size_t r2 = r + 1; r2 < h; ++r2) {
            const Rational f = w[r2][static_cast<std::size_t>(pivot)] /
                               w[r][static_cast<std::size_t>(pivot)];
            if (sgn(f) == 0) continue;
            for (std::size_t c = 0; c < h; ++c)
                if (sgn(w[r][c]) != 0) w[r2][c] -= f * w[r][c];
        }
        p += Rational(fa.levels[r]) * Rational(fb.levels[static_cast<std::size_t>(pivot)]);
    }

    auto total_weight = [](const FlagChain& c) {
        Rational w0(0);
        for (const auto& [i, jump] : c.jumps()) w0 += Rational(-i) * Rational(jump);
        return w0;
    };
    PairK out;
    out.p = p;
    out.p_bar = p - total_weight(ca) * total_weight(cb) / Rational(static_cast<long>(h));
    return out;
}

/// Pairing of two filtrations: the sequences P(k), P-bar(k) and the leading
/// coefficient of a certified degree-(n+2) fit of P-bar. When the fit does
/// not certify the tail estimate max_k k^{-n-2} P-bar(k) is reported and
/// flagged; it is never used in verdicts.
struct PairingData {
    std::vector<Rational> p_seq, pbar_seq;  // indexed by k = 0..kmax
    Rational value;
    bool certified = false;
    FitResult fit;
    Rational estimate;
    int kmax = 0;
};

inline PairingData pair_filtrations(const TabulatedFiltration& a, const TabulatedFiltration& b,
                                    int kmax, int window_start = -1) {
    if (kmax > a.kmax() || kmax > b.kmax()) throw out_of_bounds();
    PairingData out;
    out.kmax = kmax;
    for (int k = 0; k <= kmax; ++k) {
        PairK pk = pair_k(a, b, k);
        out.p_seq.push_back(pk.p);
        out.pbar_seq.push_back(pk.p_bar);
    }
    const int n = a.ring()->dimension();
    int k0 = window_start >= 1 ? window_start : n + 3;
    k0 = std::min<int>(k0, kmax - (n + 4));
    if (k0 >= 1) {
        out.fit = fit_auto(out.pbar_seq, n + 2, k0, kmax);
        out.certified = out.fit.certified;
    }
    if (out.certified) {
        out.value = out.fit.coefficients.at(0);
    } else {
        Rational best(0);
        bool first = true;
        for (int k = std::max(1, kmax / 2); k <= kmax; ++k) {
            const Rational v = out.pbar_seq[static_cast<std::size_t>(k)] /
                               pow_rational(Rational(k), static_cast<unsigned long>(n + 2));
            if (first || v > best) best = v;
            first = false;
        }
        out.estimate = best;
        out.value = best;
    }
    return out;
}

/// One orthogonalised torus direction, kept as a primitive integer
/// cocharacter (all reported quantities are invariant under positive
/// rescaling of the representative).
struct OrthogonalDirection {
    WeightVector weights;
    Rational norm_sq;      // self-pairing of its product filtration
    Rational pairing;      // <chi, beta_i>
    Rational coefficient;  // c_i = pairing / norm_sq
    Rational df;           // df of the product filtration
};

struct ProjectionReport {
    std::vector<OrthogonalDirection> basis;
    std::vector<WeightVector> dropped;  // norm-zero directions
    Rational norm_t_sq;
    Rational norm_sq;
    bool certified = false;
    bool degenerate = false;
    std::vector<std::string> warnings;
};

namespace detail {

inline WeightVector primitive_integer(const std::vector<Rational>& v) {
    Integer l(1);
    for (const Rational& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> scaled;
    Integer g(0);
    for (const Rational& q : v) {
        Integer s = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());
        scaled.push_back(std::move(s));
    }
    if (sgn(g) == 0) g = 1;
    WeightVector out;
    for (const Integer& s : scaled) out.push_back(mpz_get_si(Integer(s / g).get_mpz_t()));
    return out;
}

}  // namespace detail

/// L2 projection of a filtration along a torus: Gram-Schmidt the cocharacter
/// basis under the pairing (exact, via product filtrations), compute the
/// coefficients c_i and ||chi_T||^2, and compare with ||chi||^2. Norm-zero
/// directions are dropped with a warning; they pair to zero with everything.
inline ProjectionReport project_torus(const TabulatedFiltration& chi, const Torus& torus, int kmax,
                                      int window_start = -1) {
    if (chi.ring().get() != torus.ring.get()) throw ambient_mismatch();
    ProjectionReport rep;

    const WeightData wd = weight_functions(chi, window_start);
    rep.certified = wd.fit_certified;
    if (wd.fit_certified) {
        rep.norm_sq = df_and_norm(wd).norm_sq;
    } else {
        rep.warnings.push_back("weight-function fits of the filtration did not certify");
    }

    // Orthogonalise, keeping primitive integer representatives.
    std::vector<TabulatedFiltration> kept_tabs;
    for (const WeightVector& beta : torus.cocharacters) {
        std::vector<Rational> combo;  // beta - sum c_l W_l in variable-weight space
        for (long long x : beta) combo.emplace_back(static_cast<long>(x));
        const TabulatedFiltration beta_tab =
            tabulate(product_filtration(torus.ring, beta), kmax);
        for (std::size_t l = 0; l < rep.basis.size(); ++l) {
            PairingData pd = pair_filtrations(beta_tab, kept_tabs[l], kmax, window_start);
            if (!pd.certified) throw uncertified_fit();
            const Rational c = pd.value / rep.basis[l].norm_sq;
            for (std::size_t v = 0; v < combo.size(); ++v)
                combo[v] -= c * Rational(static_cast<long>(rep.basis[l].weights[v]));
        }
        const WeightVector w = detail::primitive_integer(combo);
        bool zero_vec = true;
        for (long long x : w)
            if (x != 0) zero_vec = false;
        if (zero_vec) {
            rep.dropped.push_back(beta);
            rep.warnings.push_back("cocharacter dependent on earlier directions; dropped");
            continue;
        }
        const ReesPresentation prod = product_filtration(torus.ring, w);
        const WeightData wdir = weight_functions(prod, kmax, window_start);
        if (!wdir.fit_certified) throw uncertified_fit();
        const InvariantReport dir_inv = df_and_norm(wdir);
        if (sgn(dir_inv.norm_sq) == 0) {
            rep.dropped.push_back(w);
            rep.warnings.push_back("norm-zero direction dropped from the orthogonal basis");
            continue;
        }
        OrthogonalDirection dir;
        dir.weights = w;
        dir.norm_sq = dir_inv.norm_sq;
        dir.df = dir_inv.df;
        rep.basis.push_back(std::move(dir));
        kept_tabs.push_back(tabulate(prod, kmax));
    }

    // The kept directions must be pairwise orthogonal; this exercises the
    // bilinearity of the pairing on the fixed torus.
    for (std::size_t i = 0; i < kept_tabs.size(); ++i)
        for (std::size_t j = i + 1; j < kept_tabs.size(); ++j) {
            PairingData pd = pair_filtrations(kept_tabs[i], kept_tabs[j], kmax, window_start);
            if (!pd.certified || sgn(pd.value) != 0)
                throw cross_check_failure("orthogonalised directions are not orthogonal");
        }

    rep.norm_t_sq = Rational(0);
    for (std::size_t i = 0; i < rep.basis.size(); ++i) {
        PairingData pd = pair_filtrations(chi, kept_tabs[i], kmax, window_start);
        if (!pd.certified) {
            rep.certified = false;
            rep.warnings.push_back("pairing with an orthogonal direction did not certify");
            continue;
        }
        rep.basis[i].pairing = pd.value;
        rep.basis[i].coefficient = pd.value / rep.basis[i].norm_sq;
        rep.norm_t_sq += pd.value * pd.value / rep.basis[i].norm_sq;
    }
    if (rep.certified) rep.degenerate = rep.norm_t_sq == rep.norm_sq;
    return rep;
}

struct PerpInvariants {
    Rational df_perp;
    Rational norm_perp_sq;
    ProjectionReport projection;
};

/// Orthogonal-complement invariants of a T-equivariant filtration:
/// df(chi) - sum c_i df(beta_i) and ||chi||^2 - ||chi_T||^2.
inline PerpInvariants perp_invariants(const TabulatedFiltration& chi, const Torus& torus, int kmax,
                                      int window_start = -1) {
    if (!is_equivariant(chi, torus, kmax)) throw not_equivariant();
    ProjectionReport proj = project_torus(chi, torus, kmax, window_start);
    if (!proj.certified) throw uncertified_fit();
    const InvariantReport inv = df_and_norm(weight_functions(chi, window_start));
    PerpInvariants out;
    out.df_perp = inv.df;
    for (const auto& dir : proj.basis) out.df_perp -= dir.coefficient * dir.df;
    out.norm_perp_sq = inv.norm_sq - proj.norm_t_sq;
    out.projection = std::move(proj);
    return out;
}

/// Tits-metric distance report. The cosine is exact whenever the product of
/// the norm squares is a rational square; otherwise the exact signed square
/// is reported and the floating angle is advisory.
struct DistanceReport {
    Rational pairing;
    Rational norm_sq_1, norm_sq_2;
    bool cosine_exact = false;
    Rational cosine;     // meaningful when cosine_exact
    Rational cosine_sq;  // always exact
    int cosine_sign = 0;
    double angle = 0.0;
    // Per-degree angles arccos(Pbar(k)/sqrt(dbar1(k) dbar2(k))), with the
    // exact signed cosine squares; entries with a vanishing denominator are
    // skipped.
    std::vector<std::pair<int, double>> per_k_angle;
    std::vector<std::pair<int, Rational>> per_k_cos_sq_signed;
};

inline DistanceReport distance(const TabulatedFiltration& a, const TabulatedFiltration& b, int kmax,
                               int window_start = -1) {
    const WeightData wa = weight_functions(a, window_start);
    const WeightData wb = weight_functions(b, window_start);
    if (!wa.fit_certified || !wb.fit_certified) throw uncertified_fit();
    const Rational na = df_and_norm(wa).norm_sq;
    const Rational nb = df_and_norm(wb).norm_sq;
    if (sgn(na) == 0 || sgn(nb) == 0) throw zero_norm();
    PairingData pd = pair_filtrations(a, b, kmax, window_start);
    if (!pd.certified) throw uncertified_fit();

    DistanceReport rep;
    rep.pairing = pd.value;
    rep.norm_sq_1 = na;
    rep.norm_sq_2 = nb;
    rep.cosine_sq = pd.value * pd.value / (na * nb);
    rep.cosine_sign = sgn(pd.value);
    if (auto root = exact_sqrt(na * nb)) {
        rep.cosine_exact = true;
        rep.cosine = pd.value / *root;
        rep.angle = std::acos(std::clamp(rep.cosine.get_d(), -1.0, 1.0));
    } else {
        const double c = rep.cosine_sign * std::sqrt(rep.cosine_sq.get_d());
        rep.angle = std::acos(std::clamp(c, -1.0, 1.0));
    }

    for (int k = 1; k <= kmax; ++k) {
        const Rational h(a.ring()->hilbert(k));
        const Rational da = wa.d_seq[static_cast<std::size_t>(k)] -
                            wa.w_seq[static_cast<std::size_t>(k)] *
                                wa.w_seq[static_cast<std::size_t>(k)] / h;
        const Rational db = wb.d_seq[static_cast<std::size_t>(k)] -
                            wb.w_seq[static_cast<std::size_t>(k)] *
                                wb.w_seq[static_cast<std::size_t>(k)] / h;
        if (sgn(da) <= 0 || sgn(db) <= 0) continue;
        const Rational pbar = pd.pbar_seq[static_cast<std::size_t>(k)];
        const Rational cos_sq = pbar * pbar / (da * db);
        rep.per_k_cos_sq_signed.emplace_back(k, sgn(pbar) < 0 ? -cos_sq : cos_sq);
        const double c = (sgn(pbar) < 0 ? -1.0 : 1.0) * std::sqrt(cos_sq.get_d());
        rep.per_k_angle.emplace_back(k, std::acos(std::clamp(c, -1.0, 1.0)));
    }
    return rep;
}

}  // namespace kfilt

#endif
