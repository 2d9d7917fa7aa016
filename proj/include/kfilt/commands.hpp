#ifndef KFILT_COMMANDS_HPP
#define KFILT_COMMANDS_HPP

#include <memory>
#include <string>

#include "kfilt/appendix.hpp"
#include "kfilt/invariants.hpp"
#include "kfilt/job.hpp"
#include "kfilt/report.hpp"

namespace kfilt {

namespace detail {

inline json ring_json(const GradedRing& ring) {
    json out;
    out["variables"] = ring.variables();
    json rels = json::array();
    for (const Poly& r : ring.relations()) rels.push_back(r.to_string(ring.variables()));
    out["relations"] = rels;
    out["dimension"] = ring.dimension();
    return out;
}

inline json filtration_json(const ReesPresentation& pres) {
    json out;
    out["label"] = pres.label();
    json gens = json::array();
    for (const auto& g : pres.generators()) {
        json e;
        e["t"] = g.t_power;
        e["poly"] = g.element.to_string(pres.ring()->variables());
        gens.push_back(e);
    }
    out["generators"] = gens;
    return out;
}

inline json projection_json(const ProjectionReport& proj) {
    json out;
    json basis = json::array();
    for (const auto& dir : proj.basis) {
        json d;
        d["weights"] = weights_json(dir.weights);
        d["norm_sq"] = to_string(dir.norm_sq);
        d["pairing"] = to_string(dir.pairing);
        d["coefficient"] = to_string(dir.coefficient);
        d["df"] = to_string(dir.df);
        basis.push_back(d);
    }
    out["orthogonal_basis"] = basis;
    json dropped = json::array();
    for (const auto& w : proj.dropped) dropped.push_back(weights_json(w));
    out["dropped_directions"] = dropped;
    out["norm_t_sq"] = to_string(proj.norm_t_sq);
    out["norm_sq"] = to_string(proj.norm_sq);
    out["certified"] = proj.certified;
    out["verdict"] =
        proj.certified ? (proj.degenerate ? "degenerate" : "non-degenerate") : "uncertified";
    out["warnings"] = proj.warnings;
    return out;
}

}  // namespace detail

inline Report cmd_df(const JobDocument& job) {
    if (job.filtrations.size() != 1)
        throw error("df expects exactly one filtration block");
    const ReesPresentation& pres = *job.filtrations[0];
    const TabulatedFiltration tab = tabulate(pres, job.options.kmax);
    const WeightData wd = weight_functions(tab, job.options.window);

    Report rep;
    rep.body["command"] = "df";
    rep.body["inputs"] = job.echo;
    rep.body["ring"] = detail::ring_json(*job.ring);
    rep.body["filtration"] = detail::filtration_json(pres);
    rep.body["weight_data"] = weight_data_json(wd);
    if (wd.fit_certified) {
        const InvariantReport inv = df_and_norm(wd);
        rep.body["invariants"] = {{"df", to_string(inv.df)}, {"norm_sq", to_string(inv.norm_sq)}};
        rep.body["status"] = "ok";
    } else {
        rep.body["status"] = "uncertified";
        rep.body["warnings"] = {"weight-function fits did not certify within kmax; "
                                "no invariants are reported"};
        rep.exit_code = 3;
    }
    return rep;
}

inline Report cmd_pair(const JobDocument& a, const JobDocument* b, bool require_positive_norms) {
    std::shared_ptr<ReesPresentation> chi1, chi2;
    if (b != nullptr) {
        if (!a.ring->same_presentation(*b->ring)) throw ring_mismatch();
        if (a.filtrations.size() != 1 || b->filtrations.size() != 1)
            throw error("pair with two documents expects one filtration in each");
        chi1 = a.filtrations[0];
        // Rebuild the second filtration over the first document's ring so the
        // tabulations share ambient spaces.
        chi2 = std::make_shared<ReesPresentation>(a.ring, b->filtrations[0]->generators(),
                                                  b->filtrations[0]->label(),
                                                  b->filtrations[0]->allows_t0());
    } else {
        if (a.filtrations.size() != 2)
            throw error("pair expects two filtration blocks (or two documents)");
        chi1 = a.filtrations[0];
        chi2 = a.filtrations[1];
    }
    const int kmax = a.options.kmax;
    const TabulatedFiltration tab1 = tabulate(*chi1, kmax);
    const TabulatedFiltration tab2 = tabulate(*chi2, kmax);
    const WeightData wd1 = weight_functions(tab1, a.options.window);
    const WeightData wd2 = weight_functions(tab2, a.options.window);
    const PairingData pd = pair_filtrations(tab1, tab2, kmax, a.options.window);

    Report rep;
    rep.body["command"] = require_positive_norms ? "distance" : "pair";
    rep.body["inputs"] = a.echo;
    if (b != nullptr) rep.body["inputs2"] = b->echo;
    rep.body["ring"] = detail::ring_json(*a.ring);
    rep.body["weight_data_1"] = weight_data_json(wd1);
    rep.body["weight_data_2"] = weight_data_json(wd2);
    rep.body["pairing"] = {{"p", seq_json(pd.p_seq)},
                           {"p_bar", seq_json(pd.pbar_seq)},
                           {"fit", fit_json(pd.fit)},
                           {"certified", pd.certified},
                           {"value", to_string(pd.value)}};
    if (!pd.certified) rep.body["pairing"]["tail_estimate"] = to_string(pd.estimate);

    json warnings = json::array();
    bool uncertified = !pd.certified || !wd1.fit_certified || !wd2.fit_certified;
    if (!uncertified) {
        const Rational n1 = df_and_norm(wd1).norm_sq;
        const Rational n2 = df_and_norm(wd2).norm_sq;
        if (sgn(n1) == 0 || sgn(n2) == 0) {
            if (require_positive_norms) throw zero_norm();
            warnings.push_back("zero norm: the angular distance is inapplicable "
                               "(only the pairing is reported)");
        } else {
            const DistanceReport dist = distance(tab1, tab2, kmax, a.options.window);
            json d;
            d["pairing"] = to_string(dist.pairing);
            d["norm_sq_1"] = to_string(dist.norm_sq_1);
            d["norm_sq_2"] = to_string(dist.norm_sq_2);
            d["cosine_sq"] = to_string(dist.cosine_sq);
            d["cosine_sign"] = dist.cosine_sign;
            if (dist.cosine_exact) d["cosine"] = to_string(dist.cosine);
            d["angle"] = dist.angle;
            json per_k = json::array();
            for (const auto& [k, ang] : dist.per_k_angle) per_k.push_back({{"k", k}, {"angle", ang}});
            d["per_k_angle"] = per_k;
            json per_k_cos = json::array();
            for (const auto& [k, c] : dist.per_k_cos_sq_signed)
                per_k_cos.push_back({{"k", k}, {"cos_sq_signed", to_string(c)}});
            d["per_k_cos_sq_signed"] = per_k_cos;
            rep.body["distance"] = d;
        }
    } else {
        warnings.push_back("uncertified fits: pairing reported as a flagged tail estimate");
        rep.exit_code = 3;
    }
    rep.body["warnings"] = warnings;
    rep.body["status"] = uncertified ? "uncertified" : "ok";
    return rep;
}

inline Report cmd_specialize(const JobDocument& job) {
    if (job.filtrations.size() != 1)
        throw error("specialize expects exactly one filtration block");
    if (!job.torus) throw error("specialize needs a torus block");
    const ReesPresentation& pres = *job.filtrations[0];
    const int kmax = job.options.kmax;

    Report rep;
    rep.body["command"] = "specialize";
    rep.body["inputs"] = job.echo;
    rep.body["ring"] = detail::ring_json(*job.ring);
    rep.body["filtration"] = detail::filtration_json(pres);
    rep.body["torus_maximality"] = "asserted by the user, not verified";

    SpecializeTcResult res = specialize_tc_try(pres, *job.torus, kmax, job.options.rstart,
                                               job.options.seed, job.options.rmax);
    rep.body["lambda"] = weights_json(res.lambda.weights);
    json trace = json::array();
    for (const auto& [r, agree] : res.escalation_trace)
        trace.push_back({{"r", r}, {"agreement_degree", agree}});
    rep.body["escalation_trace"] = trace;
    rep.body["weight_data_before"] = weight_data_json(res.before);

    // Cross-check the two specialisation routes on a deterministic sample.
    const int check_k = std::min(kmax, 8);
    const TabulatedFiltration other = rees_initial(pres, res.lambda, check_k);
    if (!same_flags(res.specialized, other, check_k)) {
        rep.body["status"] = "cross-check-failure";
        rep.body["error"] = "the Grassmannian-limit and initial-algebra routes disagree";
        rep.exit_code = 4;
        return rep;
    }

    if (res.stable) {
        rep.body["r_used"] = res.r_used;
        rep.body["approximation"] = detail::filtration_json(*res.presentation);
        rep.body["weight_data_after"] = weight_data_json(res.after);
        rep.body["equivariant"] = res.equivariant;
        bool agree = res.before.w_seq == res.after.w_seq && res.before.d_seq == res.after.d_seq;
        rep.body["weight_functions_preserved"] = agree;
        rep.body["status"] = "ok";
    } else {
        rep.body["status"] = "approximation-unstable";
        rep.body["disagreement_degree"] = res.disagreement_degree;
        rep.body["guidance"] =
            "no approximation exponent below kmax reproduced the weight functions; "
            "the specialised filtration may not be finitely generated. Raising kmax "
            "extends the tabulated window but the escalation may never settle.";
        rep.exit_code = 2;
    }
    return rep;
}

inline Report cmd_project(const JobDocument& job) {
    if (job.filtrations.size() != 1)
        throw error("project expects exactly one filtration block");
    if (!job.torus) throw error("project needs a torus block");
    const ReesPresentation& pres = *job.filtrations[0];
    const int kmax = job.options.kmax;
    const TabulatedFiltration tab = tabulate(pres, kmax);
    const ProjectionReport proj = project_torus(tab, *job.torus, kmax, job.options.window);

    Report rep;
    rep.body["command"] = "project";
    rep.body["inputs"] = job.echo;
    rep.body["ring"] = detail::ring_json(*job.ring);
    rep.body["filtration"] = detail::filtration_json(pres);
    rep.body["projection"] = detail::projection_json(proj);
    if (is_equivariant(tab, *job.torus, kmax) && proj.certified) {
        const PerpInvariants perp = perp_invariants(tab, *job.torus, kmax, job.options.window);
        rep.body["perp"] = {{"df_perp", to_string(perp.df_perp)},
                            {"norm_perp_sq", to_string(perp.norm_perp_sq)}};
    }
    rep.body["status"] = proj.certified ? "ok" : "uncertified";
    if (!proj.certified) rep.exit_code = 3;
    return rep;
}

struct AppendixOptions {
    int max_degree = 8;
    int kmax = 12;
    int jmax = 12;
};

inline Report cmd_appendix(const AppendixOptions& opt) {
    const BigradedAlgebraTable table = example_subalgebra_table(opt.kmax, opt.jmax);
    const OneParamSubgroup lambda(table.ring(), {-1, 1});
    const Claim1Report c1 = verify_claim1(table, opt.max_degree);
    const Claim2Report c2 = verify_claim2(table, opt.max_degree);
    const CensusReport census = initial_algebra_census(table, lambda, opt.max_degree);

    Report rep;
    rep.body["command"] = "appendix";
    rep.body["options"] = {{"max_degree", opt.max_degree}, {"kmax", opt.kmax}, {"jmax", opt.jmax}};
    json gens = json::array();
    for (const auto& g : table.generators()) {
        json e;
        e["t"] = g.t_power;
        e["poly"] = g.element.to_string(table.ring()->variables());
        gens.push_back(e);
    }
    rep.body["generators"] = gens;
    rep.body["lambda"] = weights_json(lambda.weights);

    json claim1 = json::array();
    for (const auto& e : c1.entries)
        claim1.push_back({{"n", e.n},
                          {"monomial_present", e.monomial_present},
                          {"no_lower_t_power", e.no_lower_t_power},
                          {"pass", e.monomial_present && e.no_lower_t_power}});
    rep.body["claim1"] = {{"entries", claim1}, {"all_pass", c1.all_pass}};

    json claim2 = json::array();
    for (const auto& e : c2.entries)
        claim2.push_back({{"t", e.t_power}, {"y_power", e.y_power}, {"pass", e.absent}});
    rep.body["claim2"] = {{"entries", claim2}, {"all_pass", c2.all_pass}};

    json entries = json::array();
    json bidegrees = json::array();
    for (const auto& e : census.entries) {
        entries.push_back({{"k", e.k}, {"j", e.j}, {"new_generators", e.new_generators}});
        bidegrees.push_back({e.k, e.j});
    }
    rep.body["census"] = {{"entries", entries},
                          {"generator_bidegrees", bidegrees},
                          {"total", census.total},
                          {"note", census.note}};
    rep.body["status"] = (c1.all_pass && c2.all_pass) ? "ok" : "claim-check-failure";
    if (!(c1.all_pass && c2.all_pass)) rep.exit_code = 4;
    return rep;
}

}  // namespace kfilt

#endif
