#include "projcorrect/corrector.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <unordered_map>

#include "parallel.hpp"
#include "projcorrect/seeding.hpp"

namespace projcorrect {

namespace {

std::shared_ptr<const Incidence> maybe_incidence(const ProjSpace& space) {
    if (!Incidence::fits(space)) {
        return nullptr;
    }
    return std::make_shared<const Incidence>(space);
}

// Whether f sends the given domain points (all of one line) onto a line.
bool maps_to_line(const PointMap& f, const Incidence* cod, std::span<const std::uint32_t> line_points) {
    if (cod != nullptr) {
        const std::uint32_t image = cod->line_of(f(line_points[0]), f(line_points[1]));
        return std::all_of(line_points.begin() + 2, line_points.end(),
                           [&](std::uint32_t p) { return cod->on_line(f(p), image); });
    }
    std::vector<ProjPoint> images;
    images.reserve(line_points.size());
    for (const auto p : line_points) {
        images.push_back(f.codomain().point_at(f(p)));
    }
    return f.codomain().span_dimension(images) == 1;
}

std::vector<std::uint32_t> indices_on(const ProjSpace& space, const ProjLine& line) {
    std::vector<std::uint32_t> out;
    for (const auto& p : space.points_on_line(line)) {
        out.push_back(static_cast<std::uint32_t>(space.index_of(p)));
    }
    return out;
}

// Visits every domain line as (line, point indices).  Stops early when the
// visitor returns false.
template <class Visit>
void for_each_domain_line(const PointMap& f, const Incidence* dom, Visit&& visit) {
    if (dom != nullptr) {
        for (std::uint32_t l = 0; l < dom->num_lines(); ++l) {
            if (!visit(dom->line(l), dom->points_on(l))) {
                return;
            }
        }
        return;
    }
    for (const auto& line : f.domain().enumerate_lines()) {
        const auto pts = indices_on(f.domain(), line);
        if (!visit(line, std::span<const std::uint32_t>(pts))) {
            return;
        }
    }
}

Vec apply_frobenius(const Field& field, Frobenius sigma, const Vec& v) {
    Vec out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [&](Elem e) { return field.frobenius(sigma, e); });
    return out;
}

// Uniform element of L_x^(2): y1 uniform off x, y2 = [y1 + c x] with c != 0.
std::pair<ProjPoint, ProjPoint> sample_pointed_line(const ProjSpace& space, const ProjPoint& x,
                                                    std::uint64_t x_index, std::mt19937_64& rng) {
    const Field& field = space.field();
    std::uniform_int_distribution<std::uint64_t> pick_point(0, space.num_points() - 2);
    std::uint64_t y1_index = pick_point(rng);
    if (y1_index >= x_index) {
        ++y1_index;
    }
    ProjPoint y1 = space.point_at(y1_index);
    std::uniform_int_distribution<std::uint32_t> pick_scalar(1, static_cast<std::uint32_t>(space.q() - 1));
    const Elem c{pick_scalar(rng)};
    Vec v(y1.coords.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = field.add(y1.coords[i], field.mul(c, x.coords[i]));
    }
    return {std::move(y1), space.normalize(std::move(v))};
}

}  // namespace

unsigned thread_budget(unsigned requested) {
    unsigned threads = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    if (const char* env = std::getenv("PROJCORRECT_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) {
            threads = std::min(threads, static_cast<unsigned>(cap));
        }
    }
    return std::max(1u, threads);
}

SemilinearMap make_semilinear(const Field& field, Frobenius sigma, int size, std::vector<Elem> matrix) {
    require(size >= 2, "semilinear map needs size >= 2");
    require(matrix.size() == static_cast<std::size_t>(size) * size, "matrix has wrong number of entries");
    require(sigma.exponent >= 0 && sigma.exponent < field.k(), "Frobenius exponent out of range");
    std::vector<Vec> rows(size);
    for (int r = 0; r < size; ++r) {
        rows[r].assign(matrix.begin() + static_cast<std::ptrdiff_t>(r) * size,
                       matrix.begin() + static_cast<std::ptrdiff_t>(r + 1) * size);
    }
    require(vector_rank(field, std::move(rows)) == size, "matrix is singular");
    const auto lead = std::find_if(matrix.begin(), matrix.end(), [](Elem e) { return e.code != 0; });
    const Elem scale = field.inv(*lead);
    for (auto& e : matrix) {
        e = field.mul(e, scale);
    }
    return SemilinearMap{sigma, size, std::move(matrix)};
}

ProjPoint apply_semilinear(const ProjSpace& space, const SemilinearMap& m, const ProjPoint& x) {
    require(m.size == space.dim() + 1, "semilinear map and space have different dimensions");
    const Field& field = space.field();
    const Vec v = apply_frobenius(field, m.sigma, x.coords);
    Vec out(m.size, Elem{0});
    for (int r = 0; r < m.size; ++r) {
        Elem acc{0};
        for (int c = 0; c < m.size; ++c) {
            acc = field.add(acc, field.mul(m.at(r, c), v[c]));
        }
        out[r] = acc;
    }
    return space.normalize(std::move(out));
}

PointMap tabulate(const ProjSpace& space, const SemilinearMap& m) {
    std::vector<std::uint32_t> table(space.num_points());
    for (std::uint64_t i = 0; i < table.size(); ++i) {
        table[i] = static_cast<std::uint32_t>(space.index_of(apply_semilinear(space, m, space.point_at(i))));
    }
    return PointMap(space, space, std::move(table));
}

Rational preserved_line_fraction_exact(const PointMap& f) {
    const ProjSpace& dom = f.domain();
    require(dom.num_lines() <= kMaxEnumeratedLines,
            "domain has " + std::to_string(dom.num_lines()) + " lines; use the sampled estimate instead");
    const auto dom_inc = maybe_incidence(dom);
    const auto cod_inc = maybe_incidence(f.codomain());
    std::uint64_t preserved = 0;
    for_each_domain_line(f, dom_inc.get(), [&](const ProjLine&, std::span<const std::uint32_t> pts) {
        preserved += maps_to_line(f, cod_inc.get(), pts) ? 1 : 0;
        return true;
    });
    return Rational(BigInt(preserved), BigInt(dom.num_lines()));
}

Estimate preserved_line_fraction_sampled(const PointMap& f, std::uint64_t samples, std::uint64_t seed) {
    require(samples >= 1, "at least one sample is required");
    std::uint64_t preserved = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const ProjLine line = f.domain().sample_line(derive_seed(seed, i));
        const auto pts = indices_on(f.domain(), line);
        preserved += maps_to_line(f, nullptr, pts) ? 1 : 0;
    }
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(preserved) / n;
    return Estimate{p, std::sqrt(p * (1.0 - p) / n)};
}

LinePreservation is_line_preserving(const PointMap& f) {
    const auto dom_inc = maybe_incidence(f.domain());
    const auto cod_inc = maybe_incidence(f.codomain());
    LinePreservation result;
    for_each_domain_line(f, dom_inc.get(), [&](const ProjLine& line, std::span<const std::uint32_t> pts) {
        if (maps_to_line(f, cod_inc.get(), pts)) {
            return true;
        }
        result.preserving = false;
        result.witness = line;
        return false;
    });
    return result;
}

ExactCorrector::ExactCorrector(const PointMap& f)
    : ExactCorrector(f, maybe_incidence(f.domain()),
                     f.codomain() == f.domain() ? nullptr : maybe_incidence(f.codomain())) {}

ExactCorrector::ExactCorrector(const PointMap& f, std::shared_ptr<const Incidence> domain,
                               std::shared_ptr<const Incidence> codomain)
    : table_(f.table().begin(), f.table().end()), dom_(std::move(domain)), cod_(std::move(codomain)) {
    require(dom_ != nullptr, "domain too large for exact correction; use sampled mode");
    if (cod_ == nullptr && f.codomain() == f.domain()) {
        cod_ = dom_;
    }
    require(cod_ != nullptr, "codomain too large for exact correction; use sampled mode");
    require(dom_->space() == f.domain() && cod_->space() == f.codomain(), "incidence tables do not match the map");
    preserved_.resize(dom_->num_lines());
    for (std::uint32_t l = 0; l < dom_->num_lines(); ++l) {
        preserved_[l] = maps_to_line(f, cod_.get(), dom_->points_on(l));
        preserved_count_ += preserved_[l] ? 1 : 0;
    }
}

CorrectionOutcome ExactCorrector::correct(std::uint32_t x) const {
    require(x < dom_->num_points(), "point index out of range");
    struct Pointed {
        std::uint32_t y1;
        std::uint32_t y2;
        std::uint32_t image_line;  // Sp(f(y1), f(y2))
    };
    std::vector<Pointed> pencil;
    for (const auto l : dom_->lines_through(x)) {
        const auto pts = dom_->points_on(l);
        for (const auto a : pts) {
            for (const auto b : pts) {
                if (a != x && b != x && a != b) {
                    pencil.push_back({a, b, cod_->line_of(table_[a], table_[b])});
                }
            }
        }
    }

    std::unordered_map<std::uint32_t, std::uint64_t> votes;
    for (const auto& first : pencil) {
        for (const auto& second : pencil) {
            const std::uint32_t l13 = dom_->line_of(first.y1, second.y1);
            if (l13 == Incidence::kNone || !preserved_[l13]) {
                continue;
            }
            const std::uint32_t l24 = dom_->line_of(first.y2, second.y2);
            if (l24 == Incidence::kNone || !preserved_[l24]) {
                continue;
            }
            const std::uint32_t z = cod_->meet(first.image_line, second.image_line);
            if (z != Incidence::kNone) {
                ++votes[z];
            }
        }
    }

    CorrectionOutcome out;
    out.x = x;
    out.quadruples_examined = static_cast<std::uint64_t>(pencil.size()) * pencil.size();
    for (const auto& [z, count] : votes) {
        if (count > out.support || (count == out.support && out.candidate && z < *out.candidate)) {
            out.support = count;
            out.candidate = z;
        }
        if (2 * count >= out.quadruples_examined) {
            ++out.candidates_at_half;
        }
    }
    // The vote sets of distinct candidates are disjoint, so a strict majority
    // is unique.
    if (out.candidate && 2 * out.support > out.quadruples_examined) {
        out.z = out.candidate;
    }
    return out;
}

CorrectionOutcome correct_point_exact(const PointMap& f, const ProjPoint& x) {
    const ExactCorrector corrector(f);
    return corrector.correct(static_cast<std::uint32_t>(f.domain().index_of(x)));
}

CorrectionOutcome correct_point_sampled(const PointMap& f, const ProjPoint& x, std::uint64_t samples,
                                        double threshold, std::uint64_t seed) {
    require(samples >= 1, "at least one sample is required");
    require(threshold > 0.5, "threshold must exceed 1/2");
    const ProjSpace& dom = f.domain();
    const ProjSpace& cod = f.codomain();
    require(dom.num_points() >= 3, "space too small");
    const std::uint64_t x_index = dom.index_of(x);

    std::mt19937_64 rng(mix64(seed));
    std::unordered_map<std::uint64_t, std::uint64_t> votes;
    const auto preserved = [&](const ProjPoint& a, const ProjPoint& b) {
        if (a == b) {
            return false;
        }
        const auto pts = indices_on(dom, dom.line_through(a, b));
        return maps_to_line(f, nullptr, pts);
    };
    for (std::uint64_t s = 0; s < samples; ++s) {
        const auto [y1, y2] = sample_pointed_line(dom, x, x_index, rng);
        const auto [y3, y4] = sample_pointed_line(dom, x, x_index, rng);
        if (!preserved(y1, y3) || !preserved(y2, y4)) {
            continue;
        }
        const ProjLine m1 = cod.line_through(f.apply(y1), f.apply(y2));
        const ProjLine m2 = cod.line_through(f.apply(y3), f.apply(y4));
        const auto hit = cod.intersect_lines(m1, m2);
        if (hit.kind == LineIntersection::Kind::point) {
            ++votes[cod.index_of(*hit.point)];
        }
    }

    CorrectionOutcome out;
    out.x = static_cast<std::uint32_t>(x_index);
    out.quadruples_examined = samples;
    for (const auto& [z, count] : votes) {
        const auto zz = static_cast<std::uint32_t>(z);
        if (count > out.support || (count == out.support && out.candidate && zz < *out.candidate)) {
            out.support = count;
            out.candidate = zz;
        }
        if (2 * count >= samples) {
            ++out.candidates_at_half;
        }
    }
    if (out.candidate && static_cast<double>(out.support) >= threshold * static_cast<double>(samples)) {
        out.z = out.candidate;
    }
    return out;
}

std::pair<PointMap, CorrectionReport> correct_map(const PointMap& f, const CorrectionParams& params) {
    const auto started = std::chrono::steady_clock::now();
    const std::uint32_t count = f.size();
    const unsigned threads = thread_budget(params.threads);

    CorrectionReport report;
    report.mode = params.mode;
    report.outcomes.resize(count);
    if (params.mode == CorrectionMode::exact) {
        const ExactCorrector corrector(f);
        report.eps = 1 - Rational(BigInt(corrector.preserved_count()), BigInt(corrector.domain_incidence().num_lines()));
        detail::parallel_for(count, threads, [&](std::size_t i) {
            report.outcomes[i] = corrector.correct(static_cast<std::uint32_t>(i));
        });
        report.bound_report = hypotheses(f.domain().q(), f.domain().dim(), *report.eps);
        report.guarantee_applicable = report.bound_report.guarantee_applicable();
    } else {
        require(params.eps_samples >= 1, "eps_samples must be >= 1");
        const Estimate preserved = preserved_line_fraction_sampled(f, params.eps_samples, derive_seed(params.seed, count));
        report.eps_estimate = Estimate{1.0 - preserved.estimate, preserved.standard_error};
        detail::parallel_for(count, threads, [&](std::size_t i) {
            report.outcomes[i] = correct_point_sampled(f, f.domain().point_at(i), params.samples, params.threshold,
                                                       derive_seed(params.seed, i));
        });
        // Evaluated at a rounded-up upper confidence bound; never guarantee-bearing.
        const double upper = std::clamp(report.eps_estimate->estimate + 3.0 * report.eps_estimate->standard_error, 0.0, 1.0);
        const auto micro = static_cast<std::int64_t>(std::ceil(upper * 1e6));
        report.bound_report = hypotheses(f.domain().q(), f.domain().dim(), Rational(std::min<std::int64_t>(micro, 1'000'000), 1'000'000));
        report.guarantee_applicable = false;
    }

    std::vector<std::uint32_t> table(f.table().begin(), f.table().end());
    for (const auto& o : report.outcomes) {
        if (o.z) {
            table[o.x] = *o.z;
        } else {
            ++report.uncorrectable_count;
        }
    }
    // Corrected values that collide with another image fall back to f(x).
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::vector<std::uint32_t>> preimages(f.codomain().num_points());
        for (std::uint32_t i = 0; i < count; ++i) {
            preimages[table[i]].push_back(i);
        }
        for (const auto& pre : preimages) {
            if (pre.size() < 2) {
                continue;
            }
            for (const auto i : pre) {
                if (table[i] != f(i)) {
                    table[i] = f(i);
                    ++report.collision_reverts;
                    changed = true;
                }
            }
        }
    }

    std::uint64_t agree = 0;
    for (std::uint32_t i = 0; i < count; ++i) {
        agree += table[i] == f(i) ? 1 : 0;
    }
    report.agreement_with_input = Rational(BigInt(agree), BigInt(count));
    PointMap corrected(f.domain(), f.codomain(), std::move(table));
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return {std::move(corrected), std::move(report)};
}

SemilinearMap reconstruct_semilinear(const PointMap& f) {
    const ProjSpace& dom = f.domain();
    const ProjSpace& cod = f.codomain();
    const Field& field = dom.field();
    require(dom.dim() == cod.dim(), "reconstruction needs domain and codomain of equal dimension");
    require(dom.dim() >= 2, "reconstruction needs dimension >= 2");
    // No separate line check: the result is verified at every point below.
    const int size = dom.dim() + 1;
    const auto basis = [&](int i) {
        Vec v(size, Elem{0});
        v[i] = Elem{1};
        return v;
    };
    const auto image_of = [&](const Vec& v) { return f.apply(dom.normalize(v)).coords; };

    // Representatives e_i' with [e_0' + e_i'] = f([e_0 + e_i]).
    std::vector<Vec> columns(size);
    columns[0] = image_of(basis(0));
    for (int i = 1; i < size; ++i) {
        Vec sum = basis(0);
        sum[i] = Elem{1};
        const Vec u = image_of(basis(i));
        const auto coords = coordinates_in_plane(field, image_of(sum), columns[0], u);
        if (!coords || coords->first.code == 0 || coords->second.code == 0) {
            throw NotSemilinearError("not semilinear: basis images are inconsistent", dom.index_of(dom.normalize(sum)));
        }
        const Elem lambda = field.div(coords->second, coords->first);
        columns[i].resize(size);
        for (int r = 0; r < size; ++r) {
            columns[i][r] = field.mul(lambda, u[r]);
        }
    }

    // Chart conjugation along <e_0, e_1>, matched against every Frobenius power.
    const std::vector<Elem> elements = field.elements();
    std::vector<Elem> sigma_table(field.q());
    for (const Elem a : elements) {
        Vec point = basis(0);
        point[1] = a;
        const auto coords = coordinates_in_plane(field, image_of(point), columns[0], columns[1]);
        if (!coords || coords->first.code == 0) {
            throw NotSemilinearError("not semilinear: chart image leaves the line", dom.index_of(dom.normalize(point)));
        }
        sigma_table[a.code] = field.div(coords->second, coords->first);
    }
    std::optional<Frobenius> sigma;
    for (int j = 0; j < field.k() && !sigma; ++j) {
        const Frobenius candidate{j};
        const bool matches = std::all_of(elements.begin(), elements.end(), [&](Elem a) {
            return sigma_table[a.code] == field.frobenius(candidate, a);
        });
        if (matches) {
            sigma = candidate;
        }
    }
    if (!sigma) {
        throw NotSemilinearError("not semilinear: the induced field map is not a Frobenius power", std::nullopt);
    }

    std::vector<Elem> matrix(static_cast<std::size_t>(size) * size);
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            matrix[static_cast<std::size_t>(r) * size + c] = columns[c][r];
        }
    }
    SemilinearMap result = make_semilinear(field, *sigma, size, std::move(matrix));
    for (std::uint64_t i = 0; i < dom.num_points(); ++i) {
        const ProjPoint image = apply_semilinear(cod, result, dom.point_at(i));
        if (cod.index_of(image) != f(static_cast<std::uint32_t>(i))) {
            throw NotSemilinearError("not semilinear: reconstructed map disagrees at point " + std::to_string(i), i);
        }
    }
    return result;
}

}  // namespace projcorrect
