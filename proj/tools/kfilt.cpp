// kfilt: exact invariants of filtrations of graded rings.
//
// Subcommands: df, pair, distance, specialize, project, appendix.
// Job documents are UTF-8 JSON; see README.md for the schema and the
// polynomial expression grammar.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "kfilt/kfilt.hpp"

namespace {

kfilt::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kfilt::error("cannot open input file: " + path);
    kfilt::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw kfilt::error("invalid JSON in " + path + ": " + e.what());
    }
    return doc;
}

void apply_overrides(kfilt::JobDocument& job, int kmax, int window, long seed) {
    if (kmax > 0) job.options.kmax = kmax;
    if (window > 0) job.options.window = window;
    if (seed >= 0) job.options.seed = static_cast<unsigned long>(seed);
}

int emit(const kfilt::Report& report, const std::string& out_path, const std::string& format) {
    const std::string payload = format == "text" ? report.text() : report.json_str();
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 2;
        }
        out << payload;
    }
    return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Donaldson-Futaki invariants, norms, pairings and torus "
                 "specialisations of filtrations"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "json";
    int kmax = -1, window = -1;
    long seed = -1;
    app.add_option("--out", out_path, "output file (default stdout)")->capture_default_str();
    app.add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--kmax", kmax, "tabulation degree bound (overrides the document)");
    app.add_option("--window", window, "fit window start (default n+3)");
    app.add_option("--seed", seed, "seed for the generic one-parameter subgroup");

    std::string file_a, file_b;
    auto* c_df = app.add_subcommand("df", "Donaldson-Futaki invariant and L2 norm");
    c_df->add_option("job", file_a, "job document")->required();
    auto* c_pair = app.add_subcommand("pair", "pairing of two filtrations (plus distance)");
    c_pair->add_option("job", file_a, "job document (two filtrations, or first of two)")->required();
    c_pair->add_option("job2", file_b, "optional second job document");
    auto* c_dist = app.add_subcommand("distance", "angular distance (requires positive norms)");
    c_dist->add_option("job", file_a, "job document")->required();
    c_dist->add_option("job2", file_b, "optional second job document");
    auto* c_spec = app.add_subcommand("specialize", "torus specialisation pipeline");
    c_spec->add_option("job", file_a, "job document (filtration + torus)")->required();
    auto* c_proj = app.add_subcommand("project", "L2 projection along a torus");
    c_proj->add_option("job", file_a, "job document (filtration + torus)")->required();

    kfilt::AppendixOptions ap;
    auto* c_app = app.add_subcommand("appendix", "built-in non-finitely-generated example");
    c_app->add_option("--max-degree", ap.max_degree, "claim/census degree bound")
        ->capture_default_str();
    c_app->add_option("--kmax", ap.kmax, "table bound in the ring degree")->capture_default_str();
    c_app->add_option("--jmax", ap.jmax, "table bound in the t-degree")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    const auto started = std::chrono::steady_clock::now();
    try {
        kfilt::Report report;
        if (c_app->parsed()) {
            if (kmax > 0) ap.kmax = kmax;
            report = kfilt::cmd_appendix(ap);
        } else {
            kfilt::JobDocument job = kfilt::parse_job(load_json(file_a));
            apply_overrides(job, kmax, window, seed);
            if (c_df->parsed()) {
                report = kfilt::cmd_df(job);
            } else if (c_pair->parsed() || c_dist->parsed()) {
                std::optional<kfilt::JobDocument> job2;
                if (!file_b.empty()) {
                    job2 = kfilt::parse_job(load_json(file_b));
                    apply_overrides(*job2, kmax, window, seed);
                }
                report = kfilt::cmd_pair(job, job2 ? &*job2 : nullptr, c_dist->parsed());
            } else if (c_spec->parsed()) {
                report = kfilt::cmd_specialize(job);
            } else if (c_proj->parsed()) {
                report = kfilt::cmd_project(job);
            }
        }
        report.timing_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - started)
                               .count();
        return emit(report, out_path, format);
    } catch (const kfilt::cross_check_failure& e) {
        std::cerr << "internal cross-check failure: " << e.what() << "\n";
        return 4;
    } catch (const kfilt::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
