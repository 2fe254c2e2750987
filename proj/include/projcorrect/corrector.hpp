#pragma once

// Majority-vote self-correction of nearly line-preserving maps, line
// preservation statistics, and recovery of the semilinear map behind a
// collineation.
//
// For a point x the corrector looks at pairs of pointed lines
// ((L1, y1, y2), (L2, y3, y4)) through x.  Such a pair votes for z when f
// sends Sp(y1, y3) and Sp(y2, y4) to lines and Sp(f(y1), f(y2)) meets
// Sp(f(y3), f(y4)) in the single point z.  The corrected value of x is the
// candidate holding a strict majority of all pairs.

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "projcorrect/bounds.hpp"
#include "projcorrect/pointmap.hpp"
#include "projcorrect/projspace.hpp"

namespace projcorrect {

/// v -> matrix * sigma(v), acting on points.  The matrix is stored row-major
/// and scaled so its first nonzero entry is 1.
struct SemilinearMap {
    Frobenius sigma;
    int size = 0;  // n + 1
    std::vector<Elem> matrix;

    Elem at(int row, int col) const { return matrix[static_cast<std::size_t>(row) * size + col]; }

    friend bool operator==(const SemilinearMap&, const SemilinearMap&) = default;
};

/// Normalizes and checks invertibility; throws PreconditionError for a
/// singular or wrongly sized matrix.
SemilinearMap make_semilinear(const Field& field, Frobenius sigma, int size, std::vector<Elem> matrix);

ProjPoint apply_semilinear(const ProjSpace& space, const SemilinearMap& m, const ProjPoint& x);

/// The point map induced by m on `space`.
PointMap tabulate(const ProjSpace& space, const SemilinearMap& m);

/// Thrown when a map is not induced by any semilinear map.
class NotSemilinearError : public PreconditionError {
public:
    NotSemilinearError(const std::string& what, std::optional<std::uint64_t> witness)
        : PreconditionError(what), witness_(witness) {}
    std::optional<std::uint64_t> witness() const { return witness_; }

private:
    std::optional<std::uint64_t> witness_;
};

struct CorrectionOutcome {
    std::uint32_t x = 0;
    std::optional<std::uint32_t> z;          // corrected value; empty when uncorrectable
    std::optional<std::uint32_t> candidate;  // modal candidate, if any pair voted
    std::uint64_t support = 0;               // votes for the modal candidate
    std::uint64_t quadruples_examined = 0;   // pairs considered (all pairs in exact mode)
    std::uint32_t candidates_at_half = 0;    // candidates holding >= 1/2 of the pairs

    Rational majority_fraction() const {
        return quadruples_examined == 0 ? Rational(0) : Rational(support, quadruples_examined);
    }
};

struct Estimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// Fraction of domain lines whose image is a line.  Throws PreconditionError
/// if the domain has more than kMaxEnumeratedLines lines.
Rational preserved_line_fraction_exact(const PointMap& f);

/// Monte Carlo estimate over `samples` uniform lines.
Estimate preserved_line_fraction_sampled(const PointMap& f, std::uint64_t samples, std::uint64_t seed);

struct LinePreservation {
    bool preserving = true;
    std::optional<ProjLine> witness;  // a domain line whose image is not a line
};

LinePreservation is_line_preserving(const PointMap& f);

/// Exact corrector with incidence tables and the preserved-line flags of f
/// computed once; correct() is safe to call concurrently.
class ExactCorrector {
public:
    explicit ExactCorrector(const PointMap& f);
    ExactCorrector(const PointMap& f, std::shared_ptr<const Incidence> domain,
                   std::shared_ptr<const Incidence> codomain);

    CorrectionOutcome correct(std::uint32_t x) const;

    const Incidence& domain_incidence() const { return *dom_; }
    const std::vector<bool>& preserved_lines() const { return preserved_; }
    std::uint64_t preserved_count() const { return preserved_count_; }

private:
    std::vector<std::uint32_t> table_;
    std::shared_ptr<const Incidence> dom_;
    std::shared_ptr<const Incidence> cod_;
    std::vector<bool> preserved_;
    std::uint64_t preserved_count_ = 0;
};

CorrectionOutcome correct_point_exact(const PointMap& f, const ProjPoint& x);

/// Sampled surrogate: `samples` uniform pairs of pointed lines at x; the modal
/// candidate is accepted if its empirical fraction reaches `threshold`.
CorrectionOutcome correct_point_sampled(const PointMap& f, const ProjPoint& x, std::uint64_t samples,
                                        double threshold, std::uint64_t seed);

enum class CorrectionMode { exact, sampled };

struct CorrectionParams {
    CorrectionMode mode = CorrectionMode::exact;
    std::uint64_t samples = 200;
    double threshold = 0.6;
    std::uint64_t eps_samples = 10000;  // line samples for the defect estimate in sampled mode
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct CorrectionReport {
    CorrectionMode mode = CorrectionMode::exact;
    std::optional<Rational> eps;           // exact line defect, when computable
    std::optional<Estimate> eps_estimate;  // sampled line defect (sampled mode)
    std::vector<CorrectionOutcome> outcomes;
    Rational agreement_with_input;
    std::uint32_t uncorrectable_count = 0;
    std::uint32_t collision_reverts = 0;  // corrected points reset to f(x) to keep f' injective
    BoundReport bound_report;
    bool guarantee_applicable = false;
    double elapsed_seconds = 0.0;
};

/// f' with f'(x) the corrected value where one exists and f(x) otherwise.
std::pair<PointMap, CorrectionReport> correct_map(const PointMap& f, const CorrectionParams& params);

/// Recovers (sigma, matrix) from a line-preserving map between spaces of equal
/// dimension, verifying the result at every point.
SemilinearMap reconstruct_semilinear(const PointMap& f);

/// `requested` threads (hardware concurrency when 0), capped by the
/// PROJCORRECT_THREADS environment variable; at least 1.
unsigned thread_budget(unsigned requested);

}  // namespace projcorrect
