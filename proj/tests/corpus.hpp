#ifndef KFILT_TESTS_CORPUS_HPP
#define KFILT_TESTS_CORPUS_HPP

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "kfilt/kfilt.hpp"

namespace corpus {

using namespace kfilt;

/// Canonical fraction (mpq_class two-argument construction does not reduce).
inline Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline RingPtr p1() {
    static RingPtr r = GradedRing::make({"x", "y"}, std::vector<Poly>{});
    return r;
}

inline RingPtr p2() {
    static RingPtr r = GradedRing::make({"x", "y", "z"}, std::vector<Poly>{});
    return r;
}

inline RingPtr quadric() {
    static RingPtr r =
        GradedRing::make({"x", "y", "z", "w"}, std::vector<std::string>{"x w - y z"});
    return r;
}

/// Diagonal torus used for specialisation/projection tests on each ring.
/// For the quadric only weight vectors with u_x + u_w = u_y + u_z preserve
/// the relation.
inline Torus diagonal_torus(const RingPtr& ring) {
    if (ring.get() == quadric().get())
        return Torus(ring, {{1, 0, 0, -1}, {0, 1, -1, 0}});
    std::vector<WeightVector> cochars;
    for (int i = 0; i < ring->nvars(); ++i) {
        WeightVector w(static_cast<std::size_t>(ring->nvars()), 0);
        w[static_cast<std::size_t>(i)] = 1;
        cochars.push_back(std::move(w));
    }
    return Torus(ring, std::move(cochars));
}

struct Entry {
    std::string name;
    std::shared_ptr<ReesPresentation> pres;
};

inline std::shared_ptr<ReesPresentation> rees(const RingPtr& ring,
                                              std::vector<std::pair<int, std::string>> gens,
                                              const std::string& label) {
    std::vector<ReesGenerator> gg;
    for (auto& [t, expr] : gens) gg.push_back({t, parse_poly(expr, ring->variables())});
    return std::make_shared<ReesPresentation>(ring, std::move(gg), label);
}

/// Corpus of Rees presentations on P^1 / P^2 / a quadric surface, each with
/// at most 4 generators. All are exhaustive (validated on first use).
inline const std::vector<Entry>& entries() {
    static std::vector<Entry> c = [] {
        std::vector<Entry> v;
        v.push_back({"appendix-example",
                     std::make_shared<ReesPresentation>(example_subalgebra_presentation(p1()))});
        v.push_back({"p1-product(0,-1)",
                     std::make_shared<ReesPresentation>(product_filtration(p1(), {0, -1}))});
        v.push_back({"p1-product(-1,0)",
                     std::make_shared<ReesPresentation>(product_filtration(p1(), {-1, 0}))});
        v.push_back({"p1-product(0,-2)",
                     std::make_shared<ReesPresentation>(product_filtration(p1(), {0, -2}))});
        v.push_back({"p1-trivial",
                     std::make_shared<ReesPresentation>(product_filtration(p1(), {0, 0}))});
        v.push_back({"p1-rees-a", rees(p1(), {{1, "x+y"}, {2, "y"}}, "p1-rees-a")});
        v.push_back({"p1-rees-b", rees(p1(), {{1, "x"}, {1, "y"}}, "p1-rees-b")});
        v.push_back({"p1-rees-c",
                     rees(p1(), {{1, "x^2+y^2"}, {1, "x y"}, {1, "x"}, {2, "y"}}, "p1-rees-c")});
        v.push_back({"p1-rees-d", rees(p1(), {{2, "x"}, {3, "y"}}, "p1-rees-d")});
        v.push_back({"p2-product(0,-1,-2)",
                     std::make_shared<ReesPresentation>(product_filtration(p2(), {0, -1, -2}))});
        v.push_back({"p2-rees-a",
                     rees(p2(), {{1, "x+y"}, {1, "y+z"}, {2, "z"}}, "p2-rees-a")});
        v.push_back({"p2-rees-b", rees(p2(), {{1, "x"}, {1, "y"}, {2, "z"}}, "p2-rees-b")});
        v.push_back({"quadric-monomial",
                     rees(quadric(), {{1, "x"}, {1, "y"}, {1, "z"}, {2, "w"}}, "quadric-monomial")});
        return v;
    }();
    return c;
}

/// Members for which the specialisation-invariance of torus pairings holds
/// computationally. The conjugated product p2-rees-a is a counterexample:
/// its certified pairings with the diagonal cocharacters change under the
/// Grassmannian limit (intersection dimensions jump), flipping the
/// degeneracy verdict. On P^1 the effective torus has rank one and verdicts
/// square the single pairing, so every P^1 member stays in scope.
inline bool in_projection_scope(const Entry& e) { return e.name != "p2-rees-a"; }

/// Process-wide tabulation cache shared across test cases.
inline const TabulatedFiltration& tabulated(const Entry& e, int kmax) {
    static std::map<std::string, TabulatedFiltration> cache;
    const std::string key = e.name + "@" + std::to_string(kmax);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, tabulate(*e.pres, kmax)).first->second;
}

// ---------------------------------------------------------------------------
// Independent oracles (no shared code with the implementation paths under
// test beyond the subspace container).

/// Direct definition of F_i R_k: the span of all products of generators with
/// total ring degree exactly k and total t-power at most i.
inline Subspace bruteforce_flag(const ReesPresentation& pres, int k, long i) {
    if (k == 0) return Subspace::full(pres.ring(), 0);
    Subspace acc = Subspace::zero(pres.ring(), k);
    const auto& gens = pres.generators();
    std::function<void(std::size_t, int, long, const Poly&)> rec =
        [&](std::size_t a, int deg_left, long t_left, const Poly& prod) {
            if (deg_left == 0) {
                acc.insert(prod);
                return;
            }
            for (std::size_t b = a; b < gens.size(); ++b) {
                const auto& g = gens[b];
                if (g.element.degree() <= deg_left && g.t_power <= t_left)
                    rec(b, deg_left - g.element.degree(), t_left - g.t_power,
                        prod * g.element);
            }
        };
    rec(0, k, i, Poly::constant(1, pres.ring()->nvars()));
    return acc;
}

/// Covariance oracle for the normalised pairing of two product filtrations:
/// Pbar(k) = sum_m wt_u(m) wt_v(m) - (sum_m wt_u(m))(sum_m wt_v(m)) / h(k)
/// over the standard monomials m of degree k (shift-invariant, so the raw
/// weight vectors can be used).
inline Rational product_pbar_oracle(const RingPtr& ring, const WeightVector& u,
                                    const WeightVector& v, int k) {
    Rational suu(0), su(0), sv(0);
    long h = 0;
    for (const Monomial& m : ring->degree_basis(k)) {
        const long long wu = weight_of(m, u);
        const long long wv = weight_of(m, v);
        suu += Rational(static_cast<long>(wu)) * Rational(static_cast<long>(wv));
        su += Rational(static_cast<long>(wu));
        sv += Rational(static_cast<long>(wv));
        ++h;
    }
    return suu - su * sv / Rational(h);
}

/// Naive inclusion-exclusion definition of P(k) via pairwise intersections.
inline Rational naive_pair_k(const TabulatedFiltration& a, const TabulatedFiltration& b, int k) {
    const FlagChain& ca = a.chain(k);
    const FlagChain& cb = b.chain(k);
    const long ta = ca.top_level(), tb = cb.top_level();
    auto dim_cap = [&](long i, long j) -> long {
        if (i < 0 || j < 0) return 0;
        return intersect(ca.at(i), cb.at(j)).dim();
    };
    Rational p(0);
    for (long i = 1; i <= ta; ++i)
        for (long j = 1; j <= tb; ++j) {
            const long g = dim_cap(i, j) - dim_cap(i - 1, j) - dim_cap(i, j - 1) +
                           dim_cap(i - 1, j - 1);
            if (g != 0) p += Rational(i) * Rational(j) * Rational(g);
        }
    return p;
}

/// Basis polynomials entering a flag chain at exactly the given level.
inline std::vector<Poly> delta_polys(const FlagChain& chain, long level) {
    std::vector<Poly> out;
    if (level < 0 || level > chain.top_level()) return out;
    const Subspace& cur = chain.levels[static_cast<std::size_t>(level)];
    const auto& basis = cur.ring()->degree_basis(cur.degree());
    for (const auto& row : kfilt::detail::delta_rows(chain, level)) {
        Poly p(cur.ring()->nvars());
        for (std::size_t c = 0; c < row.size(); ++c)
            if (sgn(row[c]) != 0) p.add_term(basis[c], row[c]);
        out.push_back(std::move(p));
    }
    return out;
}

/// Random subspace of R_k with small integer coordinates.
inline Subspace random_subspace(const RingPtr& ring, int k, std::mt19937_64& rng) {
    const long h = ring->hilbert(k);
    std::uniform_int_distribution<long> dim_dist(0, h);
    std::uniform_int_distribution<int> coef(-3, 3);
    const long target = dim_dist(rng);
    Subspace s = Subspace::zero(ring, k);
    for (long v = 0; v < target; ++v) {
        detail::Row row(static_cast<std::size_t>(h));
        for (auto& x : row) x = coef(rng);
        s.insert_vector(std::move(row));
    }
    return s;
}

/// Coordinate permutation (optionally with diagonal scalings) applied to a
/// polynomial: variable i is sent to scale[perm[i]] * x_{perm[i]}.
inline Poly apply_monomial_map(const Poly& p, const std::vector<int>& perm,
                               const std::vector<Rational>& scale) {
    Poly out(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        Monomial mm(m.size(), 0);
        Rational cc = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            mm[static_cast<std::size_t>(perm[i])] = m[i];
            if (m[i] > 0) cc *= pow_rational(scale[static_cast<std::size_t>(perm[i])],
                                             static_cast<unsigned long>(m[i]));
        }
        out.add_term(mm, cc);
    }
    return out;
}

inline std::shared_ptr<ReesPresentation> apply_monomial_map(const ReesPresentation& pres,
                                                            const std::vector<int>& perm,
                                                            const std::vector<Rational>& scale) {
    std::vector<ReesGenerator> gens;
    for (const auto& g : pres.generators())
        gens.push_back({g.t_power, apply_monomial_map(g.element, perm, scale)});
    return std::make_shared<ReesPresentation>(pres.ring(), std::move(gens),
                                              pres.label() + "|g", pres.allows_t0());
}

}  // namespace corpus

#endif
