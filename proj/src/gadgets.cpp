#include "projcorrect/gadgets.hpp"

#include <algorithm>
#include <tuple>

namespace projcorrect {

namespace {

// a*u + b*v
Vec combine(const Field& field, Elem a, const Vec& u, Elem b, const Vec& v) {
    Vec out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = field.add(field.mul(a, u[i]), field.mul(b, v[i]));
    }
    return out;
}

ProjPoint meet_point(const ProjSpace& space, const ProjLine& a, const ProjLine& b, const char* what) {
    const auto hit = space.intersect_lines(a, b);
    require(hit.kind == LineIntersection::Kind::point, std::string("degenerate configuration: ") + what);
    return *hit.point;
}

}  // namespace

MarkedLine make_marked_line(const ProjSpace& space, const ProjPoint& P, const ProjPoint& Q, const ProjPoint& R) {
    require(P != Q && Q != R && P != R, "marked points must be distinct");
    ProjLine line = space.line_through(P, R);
    require(space.contains(line, Q), "marked points must be collinear");
    return MarkedLine{std::move(line), P, Q, R};
}

std::pair<Vec, Vec> chart_basis(const ProjSpace& space, const MarkedLine& m) {
    const Field& field = space.field();
    const Vec& vp = m.P.coords;
    const Vec& r = m.R.coords;
    const auto coords = coordinates_in_plane(field, m.Q.coords, vp, r);
    require(coords.has_value() && coords->first.code != 0 && coords->second.code != 0,
            "marked points are not three distinct collinear points");
    // Q = alpha v_P + beta r, so [v_P + (beta/alpha) r] = Q.
    const Elem lambda = field.div(coords->second, coords->first);
    Vec vr(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        vr[i] = field.mul(lambda, r[i]);
    }
    return {vp, std::move(vr)};
}

ProjPoint chart_eval(const ProjSpace& space, const MarkedLine& m, Elem a) {
    const auto [vp, vr] = chart_basis(space, m);
    return space.normalize(combine(space.field(), space.field().one(), vp, a, vr));
}

Elem chart_inv(const ProjSpace& space, const MarkedLine& m, const ProjPoint& x) {
    const auto [vp, vr] = chart_basis(space, m);
    const auto coords = coordinates_in_plane(space.field(), x.coords, vp, vr);
    require(coords.has_value(), "point is not on the marked line");
    require(coords->first.code != 0, "the point at infinity has no chart value");
    return space.field().div(coords->second, coords->first);
}

MultGadget::MultGadget(const ProjSpace& space, const MarkedLine& m1, const MarkedLine& m2) : space_(&space) {
    const Field& field = space.field();
    require(m1.P == m2.P, "marked lines must share their zero point");
    require(m1.line != m2.line, "degenerate configuration: marked lines coincide");
    std::tie(vp_, vr_) = chart_basis(space, m1);
    vt_ = chart_basis(space, m2).second;
    chart_ = MarkedLine{space.line_through(m2.R, m1.R), space.normalize(vt_),
                        space.normalize(combine(field, field.one(), vt_, field.one(), vr_)), space.normalize(vr_)};
}

GadgetResult MultGadget::operator()(Elem a, Elem b) const {
    const Field& field = space_->field();
    require(b.code != 0, "b must be nonzero");
    const ProjPoint at_a = space_->normalize(combine(field, field.one(), vp_, a, vr_));
    const ProjPoint at_b = space_->normalize(combine(field, field.one(), vp_, b, vt_));
    return {meet_point(*space_, chart_.line, space_->line_through(at_a, at_b), "L_{T,R} and L_{a,b}"), chart_};
}

GadgetResult mult_gadget(const ProjSpace& space, const MarkedLine& m1, const MarkedLine& m2, Elem a, Elem b) {
    return MultGadget(space, m1, m2)(a, b);
}

AddGadget::AddGadget(const ProjSpace& space, const MarkedLine& m, const ProjPoint& S, const ProjPoint& T)
    : space_(&space) {
    require(!space.contains(m.line, S), "degenerate configuration: S lies on L");
    require(T != S && T != m.R, "degenerate configuration: T must differ from S and R");
    const ProjLine sr = space.line_through(S, m.R);
    require(space.contains(sr, T), "degenerate configuration: T is not on L_{S,R}");

    const ProjPoint V = meet_point(space, space.line_through(m.P, T), space.line_through(m.Q, S), "PT and QS");
    rv_ = space.line_through(m.R, V);
    const ProjPoint W = meet_point(space, space.line_through(m.P, S), rv_, "PS and RV");
    basis_a_ = chart_basis(space, m);
    basis_b_ = chart_basis(space, MarkedLine{sr, S, T, m.R});
    chart_ = make_marked_line(space, W, V, m.R);
}

GadgetResult AddGadget::operator()(Elem a, Elem b) const {
    const Field& field = space_->field();
    const ProjPoint at_a = space_->normalize(combine(field, field.one(), basis_a_.first, a, basis_a_.second));
    const ProjPoint at_b = space_->normalize(combine(field, field.one(), basis_b_.first, b, basis_b_.second));
    return {meet_point(*space_, space_->line_through(at_a, at_b), rv_, "L_{a,b} and RV"), chart_};
}

GadgetResult add_gadget(const ProjSpace& space, const MarkedLine& m, const ProjPoint& S, const ProjPoint& T, Elem a,
                        Elem b) {
    return AddGadget(space, m, S, T)(a, b);
}

std::vector<Elem> sigma_from_line(const PointMap& f, const MarkedLine& m) {
    const ProjSpace& dom = f.domain();
    const ProjSpace& cod = f.codomain();
    std::vector<ProjPoint> images;
    for (const auto& p : dom.points_on_line(m.line)) {
        images.push_back(f.apply(p));
    }
    require(cod.span_dimension(images) == 1, "the map does not send the marked line to a line");

    const MarkedLine image = make_marked_line(cod, f.apply(m.P), f.apply(m.Q), f.apply(m.R));
    std::vector<Elem> sigma;
    sigma.reserve(dom.q());
    for (const Elem a : dom.field().elements()) {
        sigma.push_back(chart_inv(cod, image, f.apply(chart_eval(dom, m, a))));
    }
    return sigma;
}

DesarguesConfig desargues_build(const ProjSpace& space, const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
    const Field& field = space.field();
    require(space.dim() >= 3, "Desargues configurations need dimension >= 3");
    require(vector_rank(field, {a, b, c, d}) == 4, "a, b, c, d must be linearly independent");

    const std::array<Vec, 5> v{Vec(a.size(), Elem{0}), a, b, c, d};
    const auto diff = [&](int i, int j) {
        return space.normalize(combine(field, field.one(), v[j], field.neg(field.one()), v[i]));
    };

    DesarguesConfig config;
    int p = 0;
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            config.points[p++] = diff(i, j);
        }
    }
    int l = 0;
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            for (int k = j + 1; k < 5; ++k) {
                config.lines[l++] = space.line_through(diff(i, j), diff(i, k));
            }
        }
    }
    return config;
}

bool desargues_check(const ProjSpace& space, const DesarguesConfig& config) {
    auto points = config.points;
    auto lines = config.lines;
    std::sort(points.begin(), points.end());
    std::sort(lines.begin(), lines.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end() ||
        std::adjacent_find(lines.begin(), lines.end()) != lines.end()) {
        return false;
    }
    std::array<int, 10> per_point{};
    for (const auto& line : config.lines) {
        int on = 0;
        for (std::size_t i = 0; i < config.points.size(); ++i) {
            if (space.contains(line, config.points[i])) {
                ++on;
                ++per_point[i];
            }
        }
        if (on != 3) {
            return false;
        }
    }
    return std::all_of(per_point.begin(), per_point.end(), [](int c) { return c == 3; });
}

bool desargues_theorem_check(const ProjSpace& space, const ProjPoint& A, const ProjPoint& B, const ProjPoint& C,
                             const ProjPoint& D, const ProjPoint& E, const ProjPoint& F) {
    const std::array<ProjPoint, 3> abc{A, B, C};
    const std::array<ProjPoint, 3> def{D, E, F};
    require(space.span_dimension(abc) == 2 && space.span_dimension(def) == 2, "degenerate triangle");
    require(A != D && B != E && C != F, "corresponding vertices coincide");

    const ProjLine ab = space.line_through(A, B);
    const ProjLine ac = space.line_through(A, C);
    const ProjLine bc = space.line_through(B, C);
    const ProjLine de = space.line_through(D, E);
    const ProjLine df = space.line_through(D, F);
    const ProjLine ef = space.line_through(E, F);
    require(ab != de && ac != df && bc != ef, "corresponding sides coincide");

    const ProjPoint H = meet_point(space, ab, de, "AB and DE do not meet");
    const ProjPoint I = meet_point(space, ac, df, "AC and DF do not meet");
    const ProjPoint J = meet_point(space, bc, ef, "BC and EF do not meet");
    const std::array<ProjPoint, 3> hij{H, I, J};
    const bool collinear = space.span_dimension(hij) <= 1;

    const ProjLine ad = space.line_through(A, D);
    const ProjLine be = space.line_through(B, E);
    const ProjLine cf = space.line_through(C, F);
    const auto g = space.intersect_lines(ad, be);
    const bool concurrent = g.kind == LineIntersection::Kind::point && space.contains(cf, *g.point);
    return concurrent == collinear;
}

}  // namespace projcorrect
