// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exact rational arithmetic throughout;
// tolerances appear only where a floating angle is compared.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "corpus.hpp"
#include "kfilt/commands.hpp"

using namespace kfilt;

namespace {

struct Checker {
    long failures = 0;
    std::vector<std::string> messages;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            if (messages.size() < 8) messages.push_back(what);
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<void(Checker&)> run;
};

const int TAB_KMAX = 12;

json doc_p1_product(const std::vector<long long>& weights, int kmax = 12) {
    json d;
    d["ring"] = {{"variables", {"x", "y"}}, {"relations", json::array()}};
    d["filtration"] = {{"type", "product"}, {"weights", weights}};
    d["options"] = {{"kmax", kmax}};
    return d;
}

// Criterion 1: dynamic-programme flags equal direct product-span enumeration.
void criterion_flag_oracle(Checker& c) {
    long presentations = 0;
    for (const auto& e : corpus::entries()) {
        ++presentations;
        c.require(e.pres->generators().size() <= 4, e.name + ": more than 4 generators");
        for (int k = 1; k <= 6; ++k) {
            const FlagChain& chain = e.pres->chain(k);
            for (long i = 0; i <= chain.top_level(); ++i)
                c.require(chain.at(i) == corpus::bruteforce_flag(*e.pres, k, i),
                          e.name + ": flag mismatch at (" + std::to_string(k) + "," +
                              std::to_string(i) + ")");
            c.require(chain.at(chain.top_level() + 2) ==
                          corpus::bruteforce_flag(*e.pres, k, chain.top_level() + 2),
                      e.name + ": clamped level mismatch at k=" + std::to_string(k));
        }
    }
    c.require(presentations >= 10, "corpus smaller than 10 presentations");
}

// Criterion 2: closed forms on P^1 with the r-scaling law.
void criterion_closed_forms(Checker& c) {
    RingPtr r = corpus::p1();
    const InvariantReport a = df_and_norm(weight_functions(product_filtration(r, {0, -1}), 10));
    c.require(a.df == 0, "df(0,-1) != 0");
    c.require(a.norm_sq == Rational(1, 12), "norm_sq(0,-1) != 1/12");
    const InvariantReport b = df_and_norm(weight_functions(product_filtration(r, {0, -2}), 10));
    c.require(b.df == 0, "df(0,-2) != 0");
    c.require(b.norm_sq == Rational(1, 3), "norm_sq(0,-2) != 1/3");
    c.require(b.norm_sq == Rational(4) * a.norm_sq, "r-scaling of the norm square failed");
}

// Criterion 3: specialisation preserves all flag dimensions; the limits are
// multiplicative and equivariant for the acting subgroup.
void criterion_specialisation(Checker& c) {
    for (const auto& e : corpus::entries()) {
        const RingPtr ring = e.pres->ring();
        const Torus torus = corpus::diagonal_torus(ring);
        const GenericOpsResult gen = generic_ops(torus, 10, 0);
        const TabulatedFiltration& tab = corpus::tabulated(e, TAB_KMAX);
        const TabulatedFiltration bar = specialize(tab, gen.lambda);
        for (int k = 0; k <= 10; ++k) {
            const long bound = 2L * k * std::max(1, e.pres->max_t_power());
            for (long i = 0; i <= bound; ++i)
                c.require(bar.chain(k).dim_at(i) == tab.chain(k).dim_at(i),
                          e.name + ": dimension changed at (" + std::to_string(k) + "," +
                              std::to_string(i) + ")");
        }
        const Torus line(ring, {gen.lambda.weights});
        c.require(gen.lambda.is_trivial() || is_equivariant(bar, line, 10),
                  e.name + ": limit not equivariant for lambda");
        for (int l = 1; l <= 5; ++l)
            for (int m = l; l + m <= 10; ++m) {
                const FlagChain& cl = bar.chain(l);
                const FlagChain& cm = bar.chain(m);
                const FlagChain& cs = bar.chain(l + m);
                for (const auto& [i, ji] : cl.jumps())
                    for (const auto& [j, jj] : cm.jumps()) {
                        bool ok = true;
                        for (const Poly& pa : corpus::delta_polys(cl, i))
                            for (const Poly& pb : corpus::delta_polys(cm, j))
                                if (!cs.at(i + j).contains(pa * pb)) ok = false;
                        c.require(ok, e.name + ": multiplicativity failed at (" +
                                          std::to_string(l) + "," + std::to_string(m) + ")");
                    }
            }
    }
}

// Criterion 4: the Grassmannian-limit and initial-algebra routes agree.
void criterion_cross_oracle(Checker& c) {
    for (const auto& e : corpus::entries()) {
        const Torus torus = corpus::diagonal_torus(e.pres->ring());
        const GenericOpsResult gen = generic_ops(torus, 10, 0);
        const TabulatedFiltration bar = specialize(corpus::tabulated(e, 10), gen.lambda);
        const TabulatedFiltration other = rees_initial(*e.pres, gen.lambda, 10);
        c.require(same_flags(bar, other, 10), e.name + ": specialisation routes disagree");
    }
}

// Criterion 5: approximations reproduce the weight functions once the
// exponent covers the generator degrees.
void criterion_approximation(Checker& c) {
    for (const auto& e : corpus::entries()) {
        int max_deg = 1;
        for (const auto& g : e.pres->generators()) max_deg = std::max(max_deg, g.element.degree());
        const TabulatedFiltration& tab = corpus::tabulated(e, TAB_KMAX);
        const ApproximationResult app = approximate(tab, max_deg);
        c.require(app.full_agreement,
                  e.name + ": approximation at r = " + std::to_string(max_deg) + " disagrees");
    }
}

// Criterion 6: Cauchy-Schwarz per degree, self-pairing identity, and
// <chi, chi> = ||chi||^2 for certified members.
void criterion_pairing(Checker& c) {
    const auto& entries = corpus::entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const TabulatedFiltration& a = corpus::tabulated(entries[i], TAB_KMAX);
        const WeightData wa = weight_functions(a);
        const PairingData self = pair_filtrations(a, a, TAB_KMAX);
        for (int k = 0; k <= TAB_KMAX; ++k)
            c.require(self.p_seq[static_cast<std::size_t>(k)] ==
                          wa.d_seq[static_cast<std::size_t>(k)],
                      entries[i].name + ": self-pairing differs from d(k)");
        if (wa.fit_certified) {
            c.require(self.certified && self.value == df_and_norm(wa).norm_sq,
                      entries[i].name + ": <chi,chi> != norm_sq");
        }
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            if (entries[j].pres->ring().get() != entries[i].pres->ring().get()) continue;
            const TabulatedFiltration& b = corpus::tabulated(entries[j], TAB_KMAX);
            const WeightData wb = weight_functions(b);
            const PairingData pd = pair_filtrations(a, b, TAB_KMAX);
            for (int k = 0; k <= TAB_KMAX; ++k) {
                const Rational& p = pd.p_seq[static_cast<std::size_t>(k)];
                c.require(p * p <= wa.d_seq[static_cast<std::size_t>(k)] *
                                       wb.d_seq[static_cast<std::size_t>(k)],
                          entries[i].name + " vs " + entries[j].name +
                              ": Cauchy-Schwarz failed at k=" + std::to_string(k));
            }
        }
    }
}

// Criterion 7: distance values for the opposite products on P^1.
void criterion_distance(Checker& c) {
    RingPtr r = corpus::p1();
    const TabulatedFiltration a = tabulate(product_filtration(r, {0, -1}), TAB_KMAX);
    const TabulatedFiltration b = tabulate(product_filtration(r, {-1, 0}), TAB_KMAX);
    const DistanceReport ab = distance(a, b, TAB_KMAX);
    c.require(ab.cosine_exact && ab.cosine == -1, "cosine not exactly -1");
    c.require(std::abs(ab.angle - std::acos(-1.0)) < 1e-12, "angle differs from pi");
    c.require(ab.angle <= std::acos(-1.0) + 1e-12, "angle exceeds the diameter bound");
    for (const auto& [k, cs] : ab.per_k_cos_sq_signed)
        c.require(cs == -1, "per-k cosine not constant at k=" + std::to_string(k));
    c.require(!ab.per_k_cos_sq_signed.empty(), "per-k sequence is empty");
    const DistanceReport aa = distance(a, a, TAB_KMAX);
    c.require(aa.cosine_exact && aa.cosine == 1 && aa.angle == 0.0, "rho(chi,chi) != 0");
}

// Criterion 8: degeneracy verdicts agree before/after specialisation along
// two independent generic subgroups and under coordinate permutations.
// Members with quasi-polynomial weight data report "uncertified" on both
// sides; the status must still be stable. The conjugated product p2-rees-a
// is excluded: the pairing-invariance lemma has an exact computational
// counterexample there (the acceptance line notes the exclusion).
void criterion_degeneracy(Checker& c) {
    for (const auto& e : corpus::entries()) {
        if (!corpus::in_projection_scope(e)) {
            std::cout << "       note: " << e.name
                      << " excluded from the verdict sweep (specialisation changes its "
                         "torus pairings; see the counterexample unit test)\n";
            continue;
        }
        const RingPtr ring = e.pres->ring();
        const Torus torus = corpus::diagonal_torus(ring);
        const TabulatedFiltration& tab = corpus::tabulated(e, TAB_KMAX);
        const ProjectionReport before = project_torus(tab, torus, TAB_KMAX);
        GenericOpsResult g1 = generic_ops(torus, TAB_KMAX, 1);
        GenericOpsResult g2 = generic_ops(torus, TAB_KMAX, 2);
        unsigned long bump = 3;
        while (g2.lambda.weights == g1.lambda.weights && bump < 10)
            g2 = generic_ops(torus, TAB_KMAX, bump++);
        for (const auto& gen : {g1, g2}) {
            const TabulatedFiltration bar = specialize(tab, gen.lambda);
            const ProjectionReport after = project_torus(bar, torus, TAB_KMAX);
            c.require(after.certified == before.certified,
                      e.name + ": certification status changed under specialisation");
            if (!before.certified || !after.certified) continue;
            c.require(after.norm_t_sq == before.norm_t_sq,
                      e.name + ": ||chi_T||^2 changed under specialisation");
            c.require(after.degenerate == before.degenerate,
                      e.name + ": verdict changed under specialisation");
        }
        if (ring.get() == corpus::p2().get() && before.certified) {
            for (const std::vector<int>& perm : {std::vector<int>{1, 2, 0},
                                                 std::vector<int>{1, 0, 2}}) {
                const std::vector<Rational> ones(3, Rational(1));
                const auto moved = corpus::apply_monomial_map(*e.pres, perm, ones);
                const ProjectionReport conj =
                    project_torus(tabulate(*moved, TAB_KMAX), torus, TAB_KMAX);
                c.require(conj.certified && conj.degenerate == before.degenerate,
                          e.name + ": verdict not invariant under permutation");
            }
        }
    }
}

// Criterion 9: the bounded claims about the built-in subalgebra.
void criterion_claims(Checker& c) {
    const BigradedAlgebraTable table = example_subalgebra_table(12, 12);
    const Claim1Report c1 = verify_claim1(table, 8);
    c.require(c1.entries.size() == 6, "claim 1 does not cover 3 <= n <= 8");
    c.require(c1.all_pass, "claim 1 failed");
    const Claim2Report c2 = verify_claim2(table, 8);
    c.require(c2.all_pass, "claim 2 failed");
    long pairs = 0;
    for (const auto& e : c2.entries) pairs += (e.t_power <= e.y_power) ? 1 : 0;
    c.require(pairs == 35, "claim 2 does not cover all k <= j <= 8");
}

// Criterion 10: the generator census reaches (n+1, n-1) for 3 <= n <= 8 and
// is monotone when the bound is raised. Evidence, not proof.
void criterion_census(Checker& c) {
    const BigradedAlgebraTable table = example_subalgebra_table(12, 12);
    const OneParamSubgroup lambda(table.ring(), {-1, 1});
    const CensusReport at8 = initial_algebra_census(table, lambda, 8);
    for (int n = 3; n <= 8; ++n) {
        const bool found =
            std::any_of(at8.entries.begin(), at8.entries.end(), [&](const CensusEntry& e) {
                return e.k == n + 1 && e.j == n - 1 && e.new_generators > 0;
            });
        c.require(found, "no new generator reported at (" + std::to_string(n + 1) + "," +
                             std::to_string(n - 1) + ")");
    }
    const CensusReport at10 = initial_algebra_census(table, lambda, 10);
    c.require(at10.total >= at8.total, "census count decreased when raising the bound");
    c.require(at8.note.find("evidence") != std::string::npos,
              "census report does not label itself as evidence");
}

// Criterion 11: approximations of equivariant tabulations stay equivariant.
void criterion_equivariance(Checker& c) {
    for (const auto& e : corpus::entries()) {
        const RingPtr ring = e.pres->ring();
        const Torus torus = corpus::diagonal_torus(ring);
        const TabulatedFiltration& tab = corpus::tabulated(e, TAB_KMAX);
        if (is_equivariant(tab, torus, TAB_KMAX)) {
            for (int r : {2, 3}) {
                const ApproximationResult app = approximate(tab, r);
                c.require(is_equivariant(*app.presentation, torus, TAB_KMAX),
                          e.name + ": approximation lost equivariance at r=" + std::to_string(r));
            }
        }
    }
    // The specialised example is diagonal-torus equivariant, and so are its
    // approximations.
    RingPtr r1 = corpus::p1();
    const Torus diag = corpus::diagonal_torus(r1);
    const GenericOpsResult gen = generic_ops(diag, 10, 0);
    const TabulatedFiltration bar =
        specialize(example_subalgebra_presentation(r1), gen.lambda, 10);
    c.require(is_equivariant(bar, diag, 10), "specialised example not torus-equivariant");
    for (int r : {3, 5}) {
        const ApproximationResult app = approximate(bar, r);
        c.require(is_equivariant(*app.presentation, diag, 10),
                  "approximation of the specialised example lost equivariance");
    }
}

// Criterion 12: byte-identical report bodies across two runs with the same
// seed, on the criterion 2 / 7 / 9 inputs.
void criterion_determinism(Checker& c) {
    auto df_body = [] { return cmd_df(parse_job(doc_p1_product({0, -1}))).body.dump(2); };
    auto pair_body = [] {
        json d = doc_p1_product({0, -1});
        d["filtration2"] = {{"type", "product"}, {"weights", {-1, 0}}};
        return cmd_pair(parse_job(d), nullptr, false).body.dump(2);
    };
    auto appendix_body = [] {
        AppendixOptions opt;  // defaults: N = 8, kmax = jmax = 12
        return cmd_appendix(opt).body.dump(2);
    };
    c.require(df_body() == df_body(), "df report body not deterministic");
    c.require(pair_body() == pair_body(), "pair report body not deterministic");
    c.require(appendix_body() == appendix_body(), "appendix report body not deterministic");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "brute-force flag oracle on the corpus (k <= 6)", 30.0, criterion_flag_oracle},
        {2, "P^1 closed forms: df and norm with r-scaling", 5.0, criterion_closed_forms},
        {3, "specialisation preserves dimensions; limits multiplicative + equivariant", 60.0,
         criterion_specialisation},
        {4, "cross-oracle: Grassmannian limit vs initial algebra", 60.0, criterion_cross_oracle},
        {5, "approximation reproduces weight functions", 60.0, criterion_approximation},
        {6, "pairing identities: Cauchy-Schwarz, self-pairing, <chi,chi> = norm^2", 60.0,
         criterion_pairing},
        {7, "distance: exact cosine -1, angle pi, constant per-k sequence", 30.0,
         criterion_distance},
        {8, "degeneracy verdicts invariant under specialisation and conjugation", 300.0,
         criterion_degeneracy},
        {9, "bounded claims 1 and 2 for the built-in subalgebra", 120.0, criterion_claims},
        {10, "initial-algebra generator census (evidence for non-f.g.)", 300.0, criterion_census},
        {11, "approximations of equivariant tabulations stay equivariant", 120.0,
         criterion_equivariance},
        {12, "byte-identical report bodies across runs", 60.0, criterion_determinism},
    };

    int failed = 0;
    for (const auto& cr : criteria) {
        Checker ck;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.run(ck);
        } catch (const std::exception& e) {
            ck.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        ck.require(secs < cr.budget_s, "exceeded the time budget");
        const bool pass = ck.failures == 0;
        failed += pass ? 0 : 1;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (pass ? "[PASS] " : "[FAIL] ") << cr.id << ". " << cr.name << " (" << secs
             << " s, budget " << cr.budget_s << " s)";
        std::cout << line.str() << "\n";
        for (const auto& m : ck.messages) std::cout << "       - " << m << "\n";
    }
    std::cout << (failed == 0 ? "acceptance: all criteria passed"
                              : "acceptance: " + std::to_string(failed) + " criteria FAILED")
              << "\n";
    return failed == 0 ? 0 : 1;
}
