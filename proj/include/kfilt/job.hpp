#ifndef KFILT_JOB_HPP
#define KFILT_JOB_HPP

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kfilt/filtration.hpp"
#include "kfilt/specialize.hpp"

namespace kfilt {

using json = nlohmann::json;

struct JobOptions {
    int kmax = 24;
    int window = -1;  // fit window start; -1 means n+3
    unsigned long seed = 0;
    int rstart = 2;   // first approximation exponent tried by specialisation
    int rmax = -1;    // escalation cap; -1 means kmax
};

struct JobDocument {
    RingPtr ring;
    std::vector<std::shared_ptr<ReesPresentation>> filtrations;
    std::optional<Torus> torus;
    std::optional<OneParamSubgroup> ops;
    JobOptions options;
    json echo;  // the parsed document, for the report's input echo
};

namespace detail {

inline std::shared_ptr<ReesPresentation> parse_filtration_block(const RingPtr& ring,
                                                                const json& block,
                                                                const std::string& default_label) {
    if (!block.is_object()) throw error("filtration block must be an object");
    const std::string type = block.value("type", "");
    std::string label = block.value("label", default_label);
    if (type == "rees") {
        if (!block.contains("generators") || !block["generators"].is_array())
            throw error("rees filtration block needs a \"generators\" array");
        std::vector<ReesGenerator> gens;
        for (const auto& g : block["generators"]) {
            if (!g.contains("t") || !g.contains("poly"))
                throw error("each generator needs \"t\" and \"poly\" fields");
            gens.push_back({g["t"].get<int>(),
                            parse_poly(g["poly"].get<std::string>(), ring->variables())});
        }
        return std::make_shared<ReesPresentation>(ring, std::move(gens), std::move(label));
    }
    if (type == "product") {
        if (!block.contains("weights") || !block["weights"].is_array())
            throw error("product filtration block needs a \"weights\" array");
        WeightVector u;
        for (const auto& w : block["weights"]) u.push_back(w.get<long long>());
        ReesPresentation pres = product_filtration(ring, u);
        if (block.contains("label"))
            return std::make_shared<ReesPresentation>(ring, pres.generators(), label, true);
        return std::make_shared<ReesPresentation>(std::move(pres));
    }
    throw error("unknown filtration type \"" + type + "\" (expected \"rees\" or \"product\")");
}

}  // namespace detail

inline JobDocument parse_job(const json& doc) {
    if (!doc.is_object()) throw error("job document must be a JSON object");
    if (!doc.contains("ring")) throw error("job document needs a \"ring\" block");
    const json& ring_block = doc["ring"];
    if (!ring_block.contains("variables")) throw error("ring block needs \"variables\"");
    std::vector<std::string> vars;
    for (const auto& v : ring_block["variables"]) vars.push_back(v.get<std::string>());
    std::vector<std::string> rels;
    if (ring_block.contains("relations"))
        for (const auto& r : ring_block["relations"]) rels.push_back(r.get<std::string>());
    std::optional<int> dim;
    if (ring_block.contains("dimension")) dim = ring_block["dimension"].get<int>();

    JobDocument job;
    job.ring = GradedRing::make(vars, rels, dim);
    job.echo = doc;

    if (doc.contains("filtration"))
        job.filtrations.push_back(detail::parse_filtration_block(job.ring, doc["filtration"], "chi"));
    if (doc.contains("filtration2"))
        job.filtrations.push_back(detail::parse_filtration_block(job.ring, doc["filtration2"], "chi2"));
    if (doc.contains("filtrations"))
        for (std::size_t i = 0; i < doc["filtrations"].size(); ++i)
            job.filtrations.push_back(detail::parse_filtration_block(
                job.ring, doc["filtrations"][i], "chi" + std::to_string(i + 1)));

    if (doc.contains("torus")) {
        const json& t = doc["torus"];
        if (!t.contains("cocharacters")) throw error("torus block needs \"cocharacters\"");
        std::vector<WeightVector> cochars;
        for (const auto& c : t["cocharacters"]) {
            WeightVector w;
            for (const auto& x : c) w.push_back(x.get<long long>());
            cochars.push_back(std::move(w));
        }
        job.torus.emplace(job.ring, std::move(cochars));
    }
    if (doc.contains("ops")) {
        const json& o = doc["ops"];
        if (!o.contains("weights")) throw error("ops block needs \"weights\"");
        WeightVector w;
        for (const auto& x : o["weights"]) w.push_back(x.get<long long>());
        job.ops.emplace(job.ring, std::move(w));
    }
    if (doc.contains("options")) {
        const json& o = doc["options"];
        job.options.kmax = o.value("kmax", job.options.kmax);
        job.options.window = o.value("window", job.options.window);
        job.options.seed = o.value("seed", job.options.seed);
        job.options.rstart = o.value("rstart", job.options.rstart);
        job.options.rmax = o.value("rmax", job.options.rmax);
    }
    return job;
}

}  // namespace kfilt

#endif
