// projcorrect: command-line front end.
//
// Exit codes: 0 success, 2 bad arguments or failed preconditions, 3 I/O
// failures.  PROJCORRECT_THREADS caps the worker count everywhere.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "projcorrect/harness.hpp"
#include "projcorrect/io.hpp"

using namespace projcorrect;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitIo = 3;

CorrectionMode parse_mode(const std::string& s) {
    require(s == "exact" || s == "sampled", "mode must be 'exact' or 'sampled'");
    return s == "exact" ? CorrectionMode::exact : CorrectionMode::sampled;
}

std::optional<Frobenius> parse_sigma(const std::string& s) {
    if (s == "random") {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        const int j = std::stoi(s, &used);
        require(used == s.size(), "");
        return Frobenius{j};
    } catch (const std::exception&) {
        throw PreconditionError("sigma must be an integer exponent or 'random'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-correction of nearly line-preserving maps between finite projective spaces"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "planted semilinear map on P^n(F_q)");
    int gen_q = 2;
    int gen_n = 4;
    std::string gen_sigma = "random";
    std::uint64_t gen_seed = 0;
    std::string gen_out = "-";
    std::string gen_semilinear_out;
    gen->add_option("--q", gen_q, "field order")->required();
    gen->add_option("--n", gen_n, "projective dimension")->required();
    gen->add_option("--sigma", gen_sigma, "Frobenius exponent or 'random'");
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", gen_out, "point map file");
    gen->add_option("--semilinear-out", gen_semilinear_out, "also write the planted sigma and matrix");

    // corrupt
    auto* corrupt = app.add_subcommand("corrupt", "swap the images of disjoint point pairs");
    std::string corrupt_map;
    std::uint32_t corrupt_count = 0;
    std::uint64_t corrupt_seed = 0;
    std::string corrupt_out = "-";
    corrupt->add_option("--map", corrupt_map)->required();
    corrupt->add_option("--count", corrupt_count, "number of swapped pairs")->required();
    corrupt->add_option("--seed", corrupt_seed);
    corrupt->add_option("--out", corrupt_out);

    // estimate-eps
    auto* estimate = app.add_subcommand("estimate-eps", "fraction of lines not sent to lines");
    std::string estimate_map;
    std::string estimate_mode = "exact";
    std::uint64_t estimate_samples = 10000;
    std::uint64_t estimate_seed = 0;
    estimate->add_option("--map", estimate_map)->required();
    estimate->add_option("--mode", estimate_mode, "exact|sampled");
    estimate->add_option("--samples", estimate_samples);
    estimate->add_option("--seed", estimate_seed);

    // correct
    auto* correct = app.add_subcommand("correct", "majority-vote correction");
    std::string correct_map_path;
    std::string correct_mode = "exact";
    CorrectionParams params;
    std::string correct_out;
    std::string correct_report;
    bool correct_timing = false;
    correct->add_option("--map", correct_map_path)->required();
    correct->add_option("--mode", correct_mode, "exact|sampled");
    correct->add_option("--samples", params.samples, "pairs of pointed lines per point (sampled)");
    correct->add_option("--threshold", params.threshold, "acceptance fraction (sampled)");
    correct->add_option("--eps-samples", params.eps_samples, "line samples for the defect estimate (sampled)");
    correct->add_option("--seed", params.seed);
    correct->add_option("--threads", params.threads, "0 = all cores");
    correct->add_option("--out", correct_out, "corrected point map");
    correct->add_option("--report", correct_report, "report JSON");
    correct->add_flag("--timing", correct_timing, "include wall time in the report");

    // reconstruct
    auto* reconstruct = app.add_subcommand("reconstruct", "recover sigma and matrix of a collineation");
    std::string reconstruct_map;
    std::string reconstruct_out = "-";
    reconstruct->add_option("--map", reconstruct_map)->required();
    reconstruct->add_option("--out", reconstruct_out);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "exact evaluation of the error budgets");
    int bounds_q = 2;
    int bounds_n = 4;
    std::string bounds_eps = "0";
    bool bounds_max = false;
    bounds->add_option("--q", bounds_q)->required();
    bounds->add_option("--n", bounds_n)->required();
    bounds->add_option("--eps", bounds_eps, "NUM/DEN");
    bounds->add_flag("--max-eps", bounds_max, "also report the largest admissible eps");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "seeded plant-corrupt-correct trials");
    ExperimentSpec spec;
    int exp_q = 3;
    std::string exp_sigma = "random";
    std::string exp_mode = "exact";
    unsigned exp_threads = 1;
    std::string exp_format = "json";
    std::string exp_out = "-";
    bool exp_timing = false;
    bool exp_no_reconstruct = false;
    experiment->add_option("--q", exp_q)->required();
    experiment->add_option("--n", spec.n)->required();
    experiment->add_option("--sigma", exp_sigma, "Frobenius exponent or 'random'");
    experiment->add_option("--swaps", spec.swap_count, "swapped pairs per trial");
    experiment->add_option("--mode", exp_mode, "exact|sampled");
    experiment->add_option("--samples", spec.samples);
    experiment->add_option("--threshold", spec.threshold);
    experiment->add_option("--trials", spec.trials);
    experiment->add_option("--seed", spec.master_seed);
    experiment->add_option("--threads", exp_threads, "0 = all cores");
    experiment->add_option("--format", exp_format, "json|csv");
    experiment->add_option("--out", exp_out);
    experiment->add_flag("--timing", exp_timing, "include per-trial wall time");
    experiment->add_flag("--no-reconstruct", exp_no_reconstruct);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitPrecondition;
    }

    try {
        if (gen->parsed()) {
            const ProjSpace space(Field(FieldSpec::for_order(gen_q)), gen_n);
            const SemilinearMap m = gen_semilinear(space, gen_seed, parse_sigma(gen_sigma));
            io::write_json(gen_out, io::to_json(tabulate(space, m)));
            if (!gen_semilinear_out.empty()) {
                io::write_json(gen_semilinear_out, io::to_json(m));
            }
        } else if (corrupt->parsed()) {
            const PointMap f = io::point_map_from_json(io::read_json(corrupt_map));
            io::write_json(corrupt_out, io::to_json(corrupt_swap(f, corrupt_count, corrupt_seed)));
        } else if (estimate->parsed()) {
            const PointMap f = io::point_map_from_json(io::read_json(estimate_map));
            io::Json out;
            if (parse_mode(estimate_mode) == CorrectionMode::exact) {
                out["eps"] = io::to_json(1 - preserved_line_fraction_exact(f));
            } else {
                const Estimate e = preserved_line_fraction_sampled(f, estimate_samples, estimate_seed);
                out["eps_estimate"] = {{"estimate", 1.0 - e.estimate}, {"standard_error", e.standard_error}};
                out["samples"] = estimate_samples;
            }
            io::write_json("-", out);
        } else if (correct->parsed()) {
            params.mode = parse_mode(correct_mode);
            const PointMap f = io::point_map_from_json(io::read_json(correct_map_path));
            const auto [corrected, report] = correct_map(f, params);
            if (!correct_out.empty()) {
                io::write_json(correct_out, io::to_json(corrected));
            }
            if (!correct_report.empty()) {
                io::write_json(correct_report, io::to_json(report, correct_timing));
            }
            if (correct_out.empty() && correct_report.empty()) {
                io::write_json("-", io::to_json(corrected));
            }
        } else if (reconstruct->parsed()) {
            const PointMap f = io::point_map_from_json(io::read_json(reconstruct_map));
            io::write_json(reconstruct_out, io::to_json(reconstruct_semilinear(f)));
        } else if (bounds->parsed()) {
            io::Json out = io::to_json(hypotheses(bounds_q, bounds_n, parse_rational(bounds_eps)));
            if (bounds_max) {
                out["max_eps"] = io::to_json(max_eps(bounds_q, bounds_n));
            }
            io::write_json("-", out);
        } else if (experiment->parsed()) {
            spec.field = FieldSpec::for_order(exp_q);
            spec.planted_sigma = parse_sigma(exp_sigma);
            spec.mode = parse_mode(exp_mode);
            spec.reconstruct = !exp_no_reconstruct;
            require(exp_format == "json" || exp_format == "csv", "format must be 'json' or 'csv'");
            const auto results = run_experiment(spec, exp_threads);
            emit_report(results, exp_format == "json" ? ReportFormat::json : ReportFormat::csv, exp_out, exp_timing);
        }
    } catch (const NotSemilinearError& e) {
        std::cerr << "error: " << e.what();
        if (e.witness()) {
            std::cerr << " (witness point " << *e.witness() << ")";
        }
        std::cerr << "\n";
        return kExitPrecondition;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
