#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "projcorrect/corrector.hpp"
#include "projcorrect/gadgets.hpp"
#include "projcorrect/harness.hpp"

using namespace projcorrect;

namespace {

ProjSpace space_of(int q, int n) { return ProjSpace(Field(FieldSpec::for_order(q)), n); }

ProjPoint pt(std::initializer_list<std::uint32_t> codes) {
    ProjPoint p;
    for (auto c : codes) {
        p.coords.push_back(Elem{c});
    }
    return p;
}

std::vector<ProjPoint> others_on(const ProjSpace& s, const ProjLine& l, std::initializer_list<ProjPoint> skip) {
    std::vector<ProjPoint> out;
    for (const auto& p : s.points_on_line(l)) {
        if (std::find(skip.begin(), skip.end(), p) == skip.end()) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("chart evaluation") {
    const auto s = space_of(3, 2);
    const auto m = make_marked_line(s, pt({1, 0, 0}), pt({1, 1, 0}), pt({0, 1, 0}));
    CHECK(chart_eval(s, m, Elem{2}) == pt({1, 2, 0}));
    CHECK(chart_eval(s, m, Elem{0}) == m.P);
    CHECK(chart_eval(s, m, Elem{1}) == m.Q);
    CHECK(chart_inv(s, m, m.P) == Elem{0});
    CHECK(chart_inv(s, m, m.Q) == Elem{1});
    CHECK_THROWS_AS(chart_inv(s, m, m.R), PreconditionError);
    CHECK_THROWS_AS(chart_inv(s, m, pt({0, 0, 1})), PreconditionError);
    CHECK_THROWS_AS(make_marked_line(s, pt({1, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0})), PreconditionError);
    CHECK_THROWS_AS(make_marked_line(s, pt({1, 0, 0}), pt({0, 0, 1}), pt({0, 1, 0})), PreconditionError);
}

TEST_CASE("chart round trip over every marked line of small planes") {
    for (int q : {2, 3, 4, 5}) {
        const auto s = space_of(q, 2);
        for (const auto& line : s.enumerate_lines()) {
            const auto pts = s.points_on_line(line);
            for (const auto& P : pts) {
                for (const auto& Q : pts) {
                    for (const auto& R : pts) {
                        if (P == Q || Q == R || P == R) {
                            continue;
                        }
                        const auto m = make_marked_line(s, P, Q, R);
                        for (const Elem a : s.field().elements()) {
                            const auto x = chart_eval(s, m, a);
                            REQUIRE(chart_inv(s, m, x) == a);
                            REQUIRE(oracle::chart_value(s, P, Q, R, x) == a);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("multiplicative gadget on P^2(F_3), all configurations") {
    const auto s = space_of(3, 2);
    const Field& f = s.field();
    long checked = 0;
    for (const auto& P : s.enumerate_points()) {
        const auto pencil = s.lines_through_point(P);
        for (const auto& L1 : pencil) {
            for (const auto& L2 : pencil) {
                if (L1 == L2) {
                    continue;
                }
                const auto on1 = others_on(s, L1, {P});
                const auto on2 = others_on(s, L2, {P});
                for (const auto& Q : on1) {
                    for (const auto& R : on1) {
                        for (const auto& S : on2) {
                            for (const auto& T : on2) {
                                if (Q == R || S == T) {
                                    continue;
                                }
                                const MultGadget gadget(s, make_marked_line(s, P, Q, R), make_marked_line(s, P, S, T));
                                const Vec vr = *oracle::scaled_towards(s, P.coords, R.coords, Q);
                                const Vec vt = *oracle::scaled_towards(s, P.coords, T.coords, S);
                                Vec sum(vr.size());
                                for (std::size_t i = 0; i < sum.size(); ++i) {
                                    sum[i] = f.add(vt[i], vr[i]);
                                }
                                const ProjPoint unit = s.normalize(sum);
                                for (const Elem a : f.elements()) {
                                    for (const Elem b : f.elements()) {
                                        if (b.code == 0) {
                                            continue;
                                        }
                                        const auto out = gadget(a, b);
                                        REQUIRE(oracle::chart_value(s, T, unit, R, out.point) ==
                                                f.neg(f.div(a, b)));
                                        ++checked;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    CHECK(checked == 13L * 4 * 3 * 36 * 6);
}

TEST_CASE("multiplicative gadget special cases") {
    const auto s = space_of(5, 2);
    const auto m1 = make_marked_line(s, pt({1, 0, 0}), pt({1, 1, 0}), pt({0, 1, 0}));
    const auto m2 = make_marked_line(s, pt({1, 0, 0}), pt({1, 0, 3}), pt({0, 0, 1}));
    const auto ones = mult_gadget(s, m1, m2, Elem{1}, Elem{1});
    for (std::uint32_t a = 1; a < 5; ++a) {
        CHECK(mult_gadget(s, m1, m2, Elem{a}, Elem{a}).point == ones.point);
        CHECK(chart_inv(s, ones.chart, mult_gadget(s, m1, m2, Elem{0}, Elem{a}).point) == Elem{0});
    }
    CHECK_THROWS_AS(mult_gadget(s, m1, m2, Elem{1}, Elem{0}), PreconditionError);
    CHECK_THROWS_AS(mult_gadget(s, m1, m1, Elem{1}, Elem{1}), PreconditionError);
    const auto m3 = make_marked_line(s, pt({0, 1, 0}), pt({1, 1, 0}), pt({1, 0, 0}));
    CHECK_THROWS_AS(mult_gadget(s, m1, m3, Elem{1}, Elem{1}), PreconditionError);
}

TEST_CASE("additive gadget on random configurations of P^2(F_5)") {
    const auto s = space_of(5, 2);
    const Field& f = s.field();
    const auto lines = s.enumerate_lines();
    std::mt19937_64 rng(20240601);
    int configs = 0;
    while (configs < 100) {
        const auto& L = lines[std::uniform_int_distribution<std::size_t>(0, lines.size() - 1)(rng)];
        auto on = s.points_on_line(L);
        std::shuffle(on.begin(), on.end(), rng);
        const auto m = make_marked_line(s, on[0], on[1], on[2]);
        const ProjPoint S = s.point_at(std::uniform_int_distribution<std::uint64_t>(0, s.num_points() - 1)(rng));
        if (s.contains(L, S)) {
            continue;
        }
        auto choices = others_on(s, s.line_through(S, m.R), {S, m.R});
        const ProjPoint T = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
        ++configs;

        const auto V = *s.intersect_lines(s.line_through(m.P, T), s.line_through(m.Q, S)).point;
        const auto W = *s.intersect_lines(s.line_through(m.P, S), s.line_through(m.R, V)).point;
        const AddGadget gadget(s, m, S, T);
        CHECK(gadget.chart().P == W);
        CHECK(gadget.chart().Q == V);
        for (const Elem a : f.elements()) {
            for (const Elem b : f.elements()) {
                const auto out = add_gadget(s, m, S, T, a, b);
                REQUIRE(oracle::chart_value(s, W, V, m.R, out.point) == f.add(a, b));
                REQUIRE(out.point == gadget(b, a).point);
            }
        }
        CHECK(chart_inv(s, gadget.chart(), gadget(Elem{0}, Elem{0}).point) == Elem{0});
    }
    const auto m = make_marked_line(s, pt({1, 0, 0}), pt({1, 1, 0}), pt({0, 1, 0}));
    CHECK_THROWS_AS(add_gadget(s, m, pt({1, 2, 0}), pt({0, 0, 1}), Elem{1}, Elem{1}), PreconditionError);
    CHECK_THROWS_AS(add_gadget(s, m, pt({0, 0, 1}), pt({1, 0, 1}), Elem{1}, Elem{1}), PreconditionError);
}

TEST_CASE("field map read off a line") {
    const auto s4 = space_of(4, 4);
    const auto id = PointMap::identity(s4);
    const auto m = make_marked_line(s4, pt({1, 0, 0, 0, 0}), pt({1, 1, 0, 0, 0}), pt({0, 1, 0, 0, 0}));
    const auto sigma_id = sigma_from_line(id, m);
    for (std::uint32_t a = 0; a < 4; ++a) {
        CHECK(sigma_id[a] == Elem{a});
    }

    // Coordinatewise squaring on P^4(GF(4)) reads as x -> x^2 = Frobenius.
    std::vector<Elem> identity_matrix(25, Elem{0});
    for (int i = 0; i < 5; ++i) {
        identity_matrix[i * 6] = Elem{1};
    }
    const auto square = tabulate(s4, make_semilinear(s4.field(), Frobenius{1}, 5, identity_matrix));
    const auto sigma_sq = sigma_from_line(square, m);
    for (const Elem a : s4.field().elements()) {
        CHECK(sigma_sq[a.code] == s4.field().mul(a, a));
    }

    // Independent of the marked line for a planted semilinear map.
    const auto s9 = space_of(9, 2);
    const auto planted = tabulate(s9, gen_semilinear(s9, 11, Frobenius{1}));
    const auto reference = sigma_from_line(planted, make_marked_line(s9, pt({1, 0, 0}), pt({1, 1, 0}), pt({0, 1, 0})));
    int lines_checked = 0;
    for (const auto& line : s9.enumerate_lines()) {
        const auto pts = s9.points_on_line(line);
        const auto sigma = sigma_from_line(planted, make_marked_line(s9, pts[0], pts[3], pts[7]));
        CHECK(sigma == reference);
        CHECK(sigma[0] == Elem{0});
        CHECK(sigma[1] == Elem{1});
        ++lines_checked;
    }
    CHECK(lines_checked == 91);

    // A map that breaks the line is rejected.
    const auto broken = corrupt_swap(id, 40, 3);
    bool rejected = false;
    for (const auto& line : s4.enumerate_lines()) {
        std::vector<ProjPoint> images;
        for (const auto& p : s4.points_on_line(line)) {
            images.push_back(broken.apply(p));
        }
        if (s4.span_dimension(images) != 1) {
            const auto pts = s4.points_on_line(line);
            CHECK_THROWS_AS(sigma_from_line(broken, make_marked_line(s4, pts[0], pts[1], pts[2])), PreconditionError);
            rejected = true;
            break;
        }
    }
    CHECK(rejected);
}

TEST_CASE("Desargues configurations") {
    const auto s = space_of(5, 3);
    const Vec e0{Elem{1}, Elem{0}, Elem{0}, Elem{0}};
    const Vec e1{Elem{0}, Elem{1}, Elem{0}, Elem{0}};
    const Vec e2{Elem{0}, Elem{0}, Elem{1}, Elem{0}};
    const Vec e3{Elem{0}, Elem{0}, Elem{0}, Elem{1}};
    const auto config = desargues_build(s, e0, e1, e2, e3);
    CHECK(desargues_check(s, config));
    const Vec sum{Elem{1}, Elem{1}, Elem{0}, Elem{0}};
    CHECK_THROWS_AS(desargues_build(s, e0, e1, e2, sum), PreconditionError);
    CHECK_THROWS_AS(desargues_build(space_of(5, 2), Vec(3, Elem{1}), Vec(3, Elem{1}), Vec(3, Elem{1}), Vec(3, Elem{1})),
                    PreconditionError);

    auto broken = config;
    broken.points[0] = s.normalize(Vec{Elem{1}, Elem{2}, Elem{3}, Elem{4}});
    CHECK_FALSE(desargues_check(s, broken));

    // Perspective triangles from the configuration: centre [d], axis through
    // the differences of a, b, c.
    const Vec zero(4, Elem{0});
    const auto diff = [&](const Vec& u, const Vec& v) {
        Vec out(4);
        for (int i = 0; i < 4; ++i) {
            out[i] = s.field().sub(u[i], v[i]);
        }
        return s.normalize(out);
    };
    CHECK(desargues_theorem_check(s, diff(e0, zero), diff(e1, zero), diff(e2, zero), diff(e0, e3), diff(e1, e3),
                                  diff(e2, e3)));
}

TEST_CASE("Desargues theorem on hand-built and random triangles") {
    const auto s = space_of(7, 2);
    // Translate of a triangle in the affine chart z = 1.
    const auto A = pt({0, 0, 1});
    const auto B = pt({1, 0, 1});
    const auto C = pt({0, 1, 1});
    const auto D = pt({2, 3, 1});
    const auto E = pt({3, 3, 1});
    const auto F = pt({2, 4, 1});
    CHECK(desargues_theorem_check(s, A, B, C, D, E, F));
    CHECK_THROWS_AS(desargues_theorem_check(s, A, B, pt({2, 0, 1}), D, E, F), PreconditionError);
    CHECK_THROWS_AS(desargues_theorem_check(s, A, B, C, A, E, F), PreconditionError);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> pick(0, s.num_points() - 1);
    const auto random_point = [&] { return s.point_at(pick(rng)); };
    // Another point of the line GX, or X itself when the draw fails.
    const auto along = [&](const ProjPoint& G, const ProjPoint& X) {
        const auto pts = s.points_on_line(s.line_through(G, X));
        return pts[std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng)];
    };
    int arbitrary = 0;
    int perspective = 0;
    while (arbitrary < 100 || perspective < 100) {
        const bool centred = perspective < 100;
        std::array<ProjPoint, 6> t;
        for (int i = 0; i < 3; ++i) {
            t[i] = random_point();
        }
        if (centred) {
            const ProjPoint G = random_point();
            if (G == t[0] || G == t[1] || G == t[2]) {
                continue;
            }
            for (int i = 0; i < 3; ++i) {
                t[i + 3] = along(G, t[i]);
            }
        } else {
            for (int i = 3; i < 6; ++i) {
                t[i] = random_point();
            }
        }
        bool holds = false;
        try {
            holds = desargues_theorem_check(s, t[0], t[1], t[2], t[3], t[4], t[5]);
        } catch (const PreconditionError&) {
            continue;
        }
        CHECK(holds);
        ++(centred ? perspective : arbitrary);
    }
}
