#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include <json.hpp>

#include "projcorrect/harness.hpp"
#include "projcorrect/seeding.hpp"

using namespace projcorrect;

namespace {

ProjSpace space_of(int q, int n) { return ProjSpace(Field(FieldSpec::for_order(q)), n); }

// Reference splitmix64 finalizer, written out from its published constants.
std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("seed mixing") {
    CHECK(mix64(0) == splitmix(0));
    CHECK(mix64(12345) == splitmix(12345));
    CHECK(derive_seed(5, 0) == splitmix(5 ^ splitmix(0)));
    CHECK(derive_seed(5, 0) == 4517933670823692284ULL);
    CHECK(derive_seed(5, 1) != derive_seed(5, 0));
    CHECK(derive_seed(5, 1) != derive_seed(6, 1));
}

TEST_CASE("planted map generation") {
    const auto s = space_of(9, 3);
    CHECK(gen_semilinear(s, 11) == gen_semilinear(s, 11));
    std::set<int> sigmas;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto m = gen_semilinear(space_of(3, 2), seed);
        std::vector<Vec> rows;
        for (int r = 0; r < 3; ++r) {
            rows.emplace_back(m.matrix.begin() + 3 * r, m.matrix.begin() + 3 * r + 3);
        }
        REQUIRE(vector_rank(Field(FieldSpec::for_order(3)), rows) == 3);
        CHECK(m.sigma.exponent == 0);
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        sigmas.insert(gen_semilinear(s, seed).sigma.exponent);
    }
    CHECK(sigmas == std::set<int>{0, 1});
    CHECK(gen_semilinear(s, 3, Frobenius{1}).sigma == Frobenius{1});
    CHECK_THROWS_AS(gen_semilinear(s, 3, Frobenius{2}), PreconditionError);
}

TEST_CASE("swap corruption") {
    const auto s = space_of(2, 4);
    const auto truth = tabulate(s, gen_semilinear(s, 1));
    CHECK(corrupt_swap(truth, 0, 9) == truth);
    CHECK(corrupt_swap(truth, 4, 9) == corrupt_swap(truth, 4, 9));
    for (std::uint32_t c = 1; c <= 15; ++c) {
        const auto f = corrupt_swap(truth, c, c);
        std::uint32_t differ = 0;
        for (std::uint32_t x = 0; x < truth.size(); ++x) {
            differ += f(x) != truth(x) ? 1 : 0;
        }
        CHECK(differ == 2 * c);
        const Rational eps = 1 - preserved_line_fraction_exact(f);
        CHECK(eps <= Rational(2 * c * s.lines_per_point(), s.num_lines()));
    }
    CHECK_THROWS_AS(corrupt_swap(truth, 16, 0), PreconditionError);
}

TEST_CASE("naive corrector matches the table-driven one") {
    std::mt19937_64 rng(21);
    for (const auto& s : {space_of(2, 3), space_of(3, 2), space_of(2, 4)}) {
        const auto truth = tabulate(s, gen_semilinear(s, 4));
        for (std::uint32_t c : {0u, 1u, 2u}) {
            const auto f = corrupt_swap(truth, c, rng());
            const ExactCorrector fast(f);
            for (std::uint32_t x = 0; x < s.num_points(); ++x) {
                const auto a = fast.correct(x);
                const auto b = naive_correct_point(f, s.point_at(x));
                CHECK(a.z == b.z);
                CHECK(a.candidate == b.candidate);
                CHECK(a.support == b.support);
                CHECK(a.quadruples_examined == b.quadruples_examined);
            }
        }
    }
    const auto big = space_of(2, 7);
    CHECK_THROWS_AS(naive_correct_point(PointMap::identity(big), big.point_at(0)), PreconditionError);
}

TEST_CASE("experiments") {
    ExperimentSpec spec;
    spec.field = FieldSpec::for_order(3);
    spec.n = 3;
    spec.trials = 4;
    spec.master_seed = 8;
    for (const auto& r : run_experiment(spec)) {
        CHECK(r.recovered);
        CHECK(r.agreement == 1);
        CHECK(r.eps_actual == 0);
        CHECK(r.reconstruction_ok == std::optional<bool>(true));
    }

    spec.swap_count = 2;
    spec.trials = 3;
    const auto results = run_experiment(spec);
    REQUIRE(results.size() == 3);
    for (const auto& r : results) {
        CHECK(r.trial_seed == derive_seed(8, r.trial));
        const auto s = space_of(3, 3);
        const auto planted = gen_semilinear(s, derive_seed(r.trial_seed, 0));
        const auto f = corrupt_swap(tabulate(s, planted), 2, derive_seed(r.trial_seed, 1));
        CHECK(r.eps_actual == 1 - preserved_line_fraction_exact(f));
        CHECK(r.hypotheses.eps == r.eps_actual);
        CHECK(r.planted_sigma == planted.sigma.exponent);
    }

    spec.reconstruct = false;
    CHECK_FALSE(run_trial(spec, 0).reconstruction_ok.has_value());
}

TEST_CASE("reports do not depend on the thread count") {
    ExperimentSpec spec;
    spec.field = FieldSpec::for_order(4);
    spec.n = 3;
    spec.swap_count = 2;
    spec.trials = 6;
    spec.master_seed = 99;
    const auto one = run_experiment(spec, 1);
    const auto three = run_experiment(spec, 3);
    CHECK(format_report(one, ReportFormat::json) == format_report(three, ReportFormat::json));
    CHECK(format_report(one, ReportFormat::csv) == format_report(three, ReportFormat::csv));

    spec.mode = CorrectionMode::sampled;
    spec.trials = 3;
    CHECK(format_report(run_experiment(spec, 1), ReportFormat::csv) ==
          format_report(run_experiment(spec, 2), ReportFormat::csv));
}

TEST_CASE("report formats") {
    ExperimentSpec spec;
    spec.field = FieldSpec::for_order(2);
    spec.n = 3;
    spec.swap_count = 1;
    spec.trials = 3;
    spec.master_seed = 5;
    const auto results = run_experiment(spec);

    const std::string csv = format_report(results, ReportFormat::csv);
    CHECK(csv ==
          "trial,trial_seed,planted_sigma,eps_num,eps_den,hyp1_strict,hyp1_theorem,hyp2,guarantee_applicable,"
          "recovered,agreement_num,agreement_den,reconstruction_ok,uncorrectable,collision_reverts\n"
          "0,4517933670823692284,0,12,35,false,false,false,false,true,1,1,true,13,0\n"
          "1,12773366489153039575,0,12,35,false,false,false,false,true,1,1,true,13,0\n"
          "2,10754009927501035530,0,12,35,false,false,false,false,true,1,1,true,13,0\n");

    const std::string timed = format_report(results, ReportFormat::csv, true);
    CHECK(count_lines(timed) == 4);
    CHECK(timed.find(",elapsed_seconds\n") != std::string::npos);

    const auto j = nlohmann::json::parse(format_report(results, ReportFormat::json));
    REQUIRE(j.at("trials").size() == 3);
    CHECK(j["trials"][1]["trial_seed"].get<std::uint64_t>() == 12773366489153039575ULL);
    CHECK(j["trials"][0]["eps_actual"]["num"] == 12);
    CHECK(j["trials"][0]["eps_actual"]["den"] == 35);
    CHECK(j["trials"][2]["recovered"] == true);
    CHECK_FALSE(j["trials"][0].contains("elapsed_seconds"));

    CHECK_THROWS_AS(emit_report(results, ReportFormat::csv, "/nonexistent-dir/report.csv"), IoError);
}
