#pragma once

// Ground-truth generators, swap corruption, a brute-force reference corrector
// and the seeded experiment runner.
//
// Seeds: trial t of an experiment with master seed s uses
// derive_seed(s, t); within a trial, generation, corruption and correction
// use derive_seed(trial_seed, 0), 1 and 2.  Results therefore do not depend
// on how trials are scheduled.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projcorrect/bounds.hpp"
#include "projcorrect/corrector.hpp"

namespace projcorrect {

/// Uniform invertible matrix (rejection on rank) and a uniform Frobenius
/// exponent unless `sigma` is given.
SemilinearMap gen_semilinear(const ProjSpace& space, std::uint64_t seed, std::optional<Frobenius> sigma = std::nullopt);

/// Swaps the images of `count` disjoint random pairs of domain points.
PointMap corrupt_swap(const PointMap& f, std::uint32_t count, std::uint64_t seed);

/// Reference corrector for spaces of at most kNaiveMaxPoints points.  Every
/// span and intersection is recomputed from coordinates for each quadruple.
inline constexpr std::uint64_t kNaiveMaxPoints = 200;
CorrectionOutcome naive_correct_point(const PointMap& f, const ProjPoint& x);

struct ExperimentSpec {
    FieldSpec field;
    int n = 4;
    std::optional<Frobenius> planted_sigma;  // empty: random per trial
    std::uint32_t swap_count = 0;
    CorrectionMode mode = CorrectionMode::exact;
    std::uint64_t samples = 200;
    double threshold = 0.6;
    std::uint32_t trials = 1;
    std::uint64_t master_seed = 0;
    bool reconstruct = true;
};

struct TrialResult {
    std::uint32_t trial = 0;
    std::uint64_t trial_seed = 0;
    int planted_sigma = 0;
    Rational eps_actual;  // exact line defect of the corrupted map
    BoundReport hypotheses;
    bool guarantee_applicable = false;
    bool recovered = false;              // f' equals the planted map at every point
    Rational agreement;                  // fraction of points where f' equals the planted map
    std::optional<bool> reconstruction_ok;  // sigma and matrix of f' match the planted ones
    std::uint32_t uncorrectable = 0;
    std::uint32_t collision_reverts = 0;
    double elapsed_seconds = 0.0;
};

TrialResult run_trial(const ExperimentSpec& spec, std::uint32_t trial);

/// Trials run on up to `threads` workers and are returned in trial order.
std::vector<TrialResult> run_experiment(const ExperimentSpec& spec, unsigned threads = 1);

enum class ReportFormat { json, csv };

/// Fixed CSV header, in column order.
extern const char* const kCsvHeader;

std::string format_report(const std::vector<TrialResult>& results, ReportFormat format, bool include_timing = false);

/// Writes format_report(...) to `path`; throws IoError on failure.
void emit_report(const std::vector<TrialResult>& results, ReportFormat format, const std::string& path,
                 bool include_timing = false);

}  // namespace projcorrect
