#include "projcorrect/harness.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "parallel.hpp"
#include "projcorrect/io.hpp"
#include "projcorrect/seeding.hpp"

namespace projcorrect {

SemilinearMap gen_semilinear(const ProjSpace& space, std::uint64_t seed, std::optional<Frobenius> sigma) {
    const Field& field = space.field();
    std::mt19937_64 rng(mix64(seed));
    if (!sigma) {
        std::uniform_int_distribution<int> pick(0, field.k() - 1);
        sigma = Frobenius{pick(rng)};
    }
    require(sigma->exponent >= 0 && sigma->exponent < field.k(), "Frobenius exponent out of range");
    const int size = space.dim() + 1;
    std::uniform_int_distribution<std::uint32_t> entry(0, static_cast<std::uint32_t>(field.q() - 1));
    for (;;) {
        std::vector<Elem> matrix(static_cast<std::size_t>(size) * size);
        std::vector<Vec> rows(size, Vec(size));
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                rows[r][c] = matrix[static_cast<std::size_t>(r) * size + c] = Elem{entry(rng)};
            }
        }
        if (vector_rank(field, std::move(rows)) == size) {
            return make_semilinear(field, *sigma, size, std::move(matrix));
        }
    }
}

PointMap corrupt_swap(const PointMap& f, std::uint32_t count, std::uint64_t seed) {
    require(static_cast<std::uint64_t>(count) * 2 <= f.size(), "swap count exceeds half the number of points");
    std::vector<std::uint32_t> order(f.size());
    std::iota(order.begin(), order.end(), 0u);
    std::mt19937_64 rng(mix64(seed));
    // Partial Fisher-Yates: only the first 2 * count positions are needed.
    for (std::uint32_t i = 0; i < 2 * count; ++i) {
        std::uniform_int_distribution<std::uint32_t> pick(i, f.size() - 1);
        std::swap(order[i], order[pick(rng)]);
    }
    std::vector<std::uint32_t> table(f.table().begin(), f.table().end());
    for (std::uint32_t i = 0; i < count; ++i) {
        std::swap(table[order[2 * i]], table[order[2 * i + 1]]);
    }
    return PointMap(f.domain(), f.codomain(), std::move(table));
}

CorrectionOutcome naive_correct_point(const PointMap& f, const ProjPoint& x) {
    const ProjSpace& dom = f.domain();
    const ProjSpace& cod = f.codomain();
    require(dom.num_points() <= kNaiveMaxPoints && cod.num_points() <= kNaiveMaxPoints,
            "naive corrector is limited to spaces of at most 200 points");

    const auto image = [&](const ProjPoint& p) { return cod.point_at(f(static_cast<std::uint32_t>(dom.index_of(p)))); };
    const auto preserved = [&](const ProjPoint& a, const ProjPoint& b) {
        std::vector<ProjPoint> images;
        for (const auto& p : dom.points_on_line(dom.line_through(a, b))) {
            images.push_back(image(p));
        }
        return cod.span_dimension(images) == 1;
    };

    std::vector<std::pair<ProjPoint, ProjPoint>> pointed;
    for (const auto& line : dom.lines_through_point(x)) {
        const auto pts = dom.points_on_line(line);
        for (const auto& a : pts) {
            for (const auto& b : pts) {
                if (a != x && b != x && a != b) {
                    pointed.emplace_back(a, b);
                }
            }
        }
    }

    std::map<std::uint64_t, std::uint64_t> votes;
    for (const auto& [y1, y2] : pointed) {
        for (const auto& [y3, y4] : pointed) {
            if (y1 == y3 || y2 == y4 || !preserved(y1, y3) || !preserved(y2, y4)) {
                continue;
            }
            const auto hit = cod.intersect_lines(cod.line_through(image(y1), image(y2)),
                                                 cod.line_through(image(y3), image(y4)));
            if (hit.kind == LineIntersection::Kind::point) {
                ++votes[cod.index_of(*hit.point)];
            }
        }
    }

    CorrectionOutcome out;
    out.x = static_cast<std::uint32_t>(dom.index_of(x));
    out.quadruples_examined = static_cast<std::uint64_t>(pointed.size()) * pointed.size();
    for (const auto& [z, count] : votes) {  // ascending z, so ties keep the smallest index
        if (count > out.support) {
            out.support = count;
            out.candidate = static_cast<std::uint32_t>(z);
        }
        if (2 * count >= out.quadruples_examined) {
            ++out.candidates_at_half;
        }
    }
    if (out.candidate && 2 * out.support > out.quadruples_examined) {
        out.z = out.candidate;
    }
    return out;
}

TrialResult run_trial(const ExperimentSpec& spec, std::uint32_t trial) {
    const auto started = std::chrono::steady_clock::now();
    const ProjSpace space(Field(spec.field), spec.n);

    TrialResult result;
    result.trial = trial;
    result.trial_seed = derive_seed(spec.master_seed, trial);
    const SemilinearMap planted = gen_semilinear(space, derive_seed(result.trial_seed, 0), spec.planted_sigma);
    result.planted_sigma = planted.sigma.exponent;
    const PointMap truth = tabulate(space, planted);
    const PointMap corrupted = corrupt_swap(truth, spec.swap_count, derive_seed(result.trial_seed, 1));

    CorrectionParams params;
    params.mode = spec.mode;
    params.samples = spec.samples;
    params.threshold = spec.threshold;
    params.seed = derive_seed(result.trial_seed, 2);
    params.threads = 1;
    auto [corrected, report] = correct_map(corrupted, params);

    result.eps_actual = report.eps ? *report.eps : 1 - preserved_line_fraction_exact(corrupted);
    result.hypotheses = hypotheses(space.q(), space.dim(), result.eps_actual);
    result.guarantee_applicable = result.hypotheses.guarantee_applicable();
    result.uncorrectable = report.uncorrectable_count;
    result.collision_reverts = report.collision_reverts;

    std::uint64_t agree = 0;
    for (std::uint32_t i = 0; i < truth.size(); ++i) {
        agree += corrected(i) == truth(i) ? 1 : 0;
    }
    result.agreement = Rational(BigInt(agree), BigInt(truth.size()));
    result.recovered = agree == truth.size();
    if (spec.reconstruct) {
        try {
            result.reconstruction_ok = reconstruct_semilinear(corrected) == planted;
        } catch (const NotSemilinearError&) {
            result.reconstruction_ok = false;
        }
    }
    result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

std::vector<TrialResult> run_experiment(const ExperimentSpec& spec, unsigned threads) {
    require(spec.trials >= 1, "an experiment needs at least one trial");
    spec.field.validate();
    require(spec.n >= 2, "experiments need n >= 2");
    std::vector<TrialResult> results(spec.trials);
    detail::parallel_for(spec.trials, thread_budget(threads),
                         [&](std::size_t t) { results[t] = run_trial(spec, static_cast<std::uint32_t>(t)); });
    return results;
}

const char* const kCsvHeader =
    "trial,trial_seed,planted_sigma,eps_num,eps_den,hyp1_strict,hyp1_theorem,hyp2,guarantee_applicable,"
    "recovered,agreement_num,agreement_den,reconstruction_ok,uncorrectable,collision_reverts";

std::string format_report(const std::vector<TrialResult>& results, ReportFormat format, bool include_timing) {
    if (format == ReportFormat::json) {
        io::Json trials = io::Json::array();
        for (const auto& r : results) {
            io::Json j{{"trial", r.trial},
                       {"trial_seed", r.trial_seed},
                       {"planted_sigma", r.planted_sigma},
                       {"eps_actual", io::to_json(r.eps_actual)},
                       {"hypotheses", io::to_json(r.hypotheses)},
                       {"guarantee_applicable", r.guarantee_applicable},
                       {"recovered", r.recovered},
                       {"agreement", io::to_json(r.agreement)},
                       {"reconstruction_ok", r.reconstruction_ok ? io::Json(*r.reconstruction_ok) : io::Json(nullptr)},
                       {"uncorrectable", r.uncorrectable},
                       {"collision_reverts", r.collision_reverts}};
            if (include_timing) {
                j["elapsed_seconds"] = r.elapsed_seconds;
            }
            trials.push_back(std::move(j));
        }
        return io::Json{{"trials", std::move(trials)}}.dump(2) + "\n";
    }

    std::ostringstream out;
    const auto flag = [](bool b) { return b ? "true" : "false"; };
    out << kCsvHeader << (include_timing ? ",elapsed_seconds" : "") << "\n";
    for (const auto& r : results) {
        out << r.trial << ',' << r.trial_seed << ',' << r.planted_sigma << ',' << numerator(r.eps_actual) << ','
            << denominator(r.eps_actual) << ',' << flag(r.hypotheses.hyp1_strict) << ','
            << flag(r.hypotheses.hyp1_theorem) << ',' << flag(r.hypotheses.hyp2) << ','
            << flag(r.guarantee_applicable) << ',' << flag(r.recovered) << ',' << numerator(r.agreement) << ','
            << denominator(r.agreement) << ',' << (r.reconstruction_ok ? flag(*r.reconstruction_ok) : "") << ','
            << r.uncorrectable << ',' << r.collision_reverts;
        if (include_timing) {
            out << ',' << r.elapsed_seconds;
        }
        out << "\n";
    }
    return out.str();
}

void emit_report(const std::vector<TrialResult>& results, ReportFormat format, const std::string& path,
                 bool include_timing) {
    io::write_text(path, format_report(results, format, include_timing));
}

}  // namespace projcorrect
