#pragma once

// Coordinate charts on marked lines, the incidence constructions that realise
// field multiplication and addition inside a projective plane, and Desargues
// configurations.

#include <array>
#include <vector>

#include "projcorrect/pointmap.hpp"
#include "projcorrect/projspace.hpp"

namespace projcorrect {

/// A line with three distinct marked points.  The chart sends 0 to P, 1 to Q
/// and leaves R at infinity.
struct MarkedLine {
    ProjLine line;
    ProjPoint P;
    ProjPoint Q;
    ProjPoint R;
};

/// Validates distinctness and collinearity.
MarkedLine make_marked_line(const ProjSpace& space, const ProjPoint& P, const ProjPoint& Q, const ProjPoint& R);

/// Basis (v_P, v_R) with v_P the normalized representative of P and v_R the
/// unique representative of R satisfying [v_P + v_R] = Q.
std::pair<Vec, Vec> chart_basis(const ProjSpace& space, const MarkedLine& m);

ProjPoint chart_eval(const ProjSpace& space, const MarkedLine& m, Elem a);

/// Throws PreconditionError when x is R or off the line.
Elem chart_inv(const ProjSpace& space, const MarkedLine& m, const ProjPoint& x);

/// A constructed point together with the chart in which its value is read.
struct GadgetResult {
    ProjPoint point;
    MarkedLine chart;
};

/// m1 = (L, {P, Q, R}) and m2 = (L', {P, S, T}) share P.  The gadget for
/// (a, b) is O = L_{T,R} meet L_{e1(a), e2(b)}, whose value in the chart
/// ([v_T], [v_T + v_R], [v_R]) on L_{T,R} is -a/b.  The frame validates the
/// configuration once and can then be evaluated for any a and b != 0.
class MultGadget {
public:
    MultGadget(const ProjSpace& space, const MarkedLine& m1, const MarkedLine& m2);

    GadgetResult operator()(Elem a, Elem b) const;
    const MarkedLine& chart() const { return chart_; }

private:
    const ProjSpace* space_;
    Vec vp_;
    Vec vr_;
    Vec vt_;
    MarkedLine chart_;
};

GadgetResult mult_gadget(const ProjSpace& space, const MarkedLine& m1, const MarkedLine& m2, Elem a, Elem b);

/// m = (L, {P, Q, R}); S off L; T on L_{S,R} distinct from S and R.  With
/// V = PT meet QS and W = PS meet RV, the point a (chart of m) and the point
/// b (chart (S, T, R) on L_{S,R}) span a line meeting RV in the point whose
/// value in the chart (W, V, R) is a + b.
class AddGadget {
public:
    AddGadget(const ProjSpace& space, const MarkedLine& m, const ProjPoint& S, const ProjPoint& T);

    GadgetResult operator()(Elem a, Elem b) const;
    const MarkedLine& chart() const { return chart_; }

private:
    const ProjSpace* space_;
    std::pair<Vec, Vec> basis_a_;  // chart of m
    std::pair<Vec, Vec> basis_b_;  // chart (S, T, R)
    ProjLine rv_;
    MarkedLine chart_;
};

GadgetResult add_gadget(const ProjSpace& space, const MarkedLine& m, const ProjPoint& S, const ProjPoint& T, Elem a,
                        Elem b);

/// Chart conjugate of f along m, as a table indexed by element code.
/// Throws PreconditionError if f does not send m.line to a line.
std::vector<Elem> sigma_from_line(const PointMap& f, const MarkedLine& m);

struct DesarguesConfig {
    std::array<ProjPoint, 10> points;
    std::array<ProjLine, 10> lines;
};

/// Points [u - v] for the pairs of {0, a, b, c, d}, and for each triple of
/// those five vectors the line spanned by its differences.  Throws unless
/// a, b, c, d are linearly independent.
DesarguesConfig desargues_build(const ProjSpace& space, const Vec& a, const Vec& b, const Vec& c, const Vec& d);

/// Ten distinct points and lines, three points per line, three lines per point.
bool desargues_check(const ProjSpace& space, const DesarguesConfig& config);

/// For triangles ABC and DEF: whether (AD, BE, CF concurrent) is equivalent
/// to (AB.DE, AC.DF, BC.EF collinear).  Throws PreconditionError when a
/// triangle is degenerate, a vertex pair coincides, a pair of corresponding
/// sides coincides, or a pair of corresponding sides does not meet.
bool desargues_theorem_check(const ProjSpace& space, const ProjPoint& A, const ProjPoint& B, const ProjPoint& C,
                             const ProjPoint& D, const ProjPoint& E, const ProjPoint& F);

}  // namespace projcorrect
