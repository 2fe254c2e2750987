#pragma once

// Points, lines and incidence in P^n(F_q).
//
// Points are stored normalized (lowest-index nonzero coordinate equal to 1)
// and indexed by their rank in lexicographic order of coordinate codes.
// Lines are stored as the reduced row-echelon form of a 2 x (n+1) basis, so
// equal lines compare equal member-wise.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "projcorrect/field.hpp"

namespace projcorrect {

using Vec = std::vector<Elem>;

struct ProjPoint {
    Vec coords;

    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

struct ProjLine {
    Vec row0;  // pivot column of row0 < pivot column of row1
    Vec row1;

    friend auto operator<=>(const ProjLine&, const ProjLine&) = default;
};

/// A line through x with two further marked points, an element of L_x^(2).
struct PointedLine {
    ProjLine line;
    ProjPoint x;
    ProjPoint y1;
    ProjPoint y2;
};

struct LineIntersection {
    enum class Kind { empty, point, line };
    Kind kind = Kind::empty;
    std::optional<ProjPoint> point;  // set iff kind == point
};

inline constexpr std::uint64_t kMaxEnumeratedLines = 10'000'000;

/// Rank of a list of row vectors over `field`.
int vector_rank(const Field& field, std::vector<Vec> rows);

/// Reduced row-echelon form; zero rows are dropped.
std::vector<Vec> rref(const Field& field, std::vector<Vec> rows);

/// Coefficients (alpha, beta) with v = alpha*b0 + beta*b1, if v lies in the
/// span of the independent vectors b0, b1.
std::optional<std::pair<Elem, Elem>> coordinates_in_plane(const Field& field, const Vec& v, const Vec& b0,
                                                          const Vec& b1);

class ProjSpace {
public:
    ProjSpace(Field field, int n);

    const Field& field() const { return field_; }
    int dim() const { return n_; }
    int q() const { return field_.q(); }

    std::uint64_t num_points() const;
    std::uint64_t num_lines() const;
    std::uint64_t lines_per_point() const;

    /// Scales v so its first nonzero coordinate is 1.  Throws on the zero vector.
    ProjPoint normalize(Vec v) const;

    std::uint64_t index_of(const ProjPoint& p) const;
    ProjPoint point_at(std::uint64_t index) const;

    std::vector<ProjPoint> enumerate_points() const;

    ProjLine line_through(const ProjPoint& a, const ProjPoint& b) const;
    bool contains(const ProjLine& line, const ProjPoint& p) const;
    std::vector<ProjPoint> points_on_line(const ProjLine& line) const;

    /// All lines in canonical order.  Throws when there are more than
    /// kMaxEnumeratedLines of them.
    std::vector<ProjLine> enumerate_lines() const;
    std::vector<ProjLine> lines_through_point(const ProjPoint& x) const;
    std::vector<PointedLine> pointed_lines_at(const ProjPoint& x) const;

    LineIntersection intersect_lines(const ProjLine& a, const ProjLine& b) const;

    /// Projective dimension of the span; throws on an empty set.
    int span_dimension(std::span<const ProjPoint> points) const;

    ProjPoint sample_point(std::uint64_t seed) const;
    ProjLine sample_line(std::uint64_t seed) const;

    friend bool operator==(const ProjSpace& a, const ProjSpace& b) {
        return a.n_ == b.n_ && a.field_ == b.field_;
    }

private:
    void check_point(const ProjPoint& p) const;

    Field field_;
    int n_;
    std::vector<std::uint64_t> qpow_;  // q^0 .. q^(n+1)
};

/// Dense incidence tables for spaces small enough to enumerate every line:
/// the points of each line, the lines through each point, and the line
/// spanned by each pair of distinct points.
class Incidence {
public:
    static constexpr std::uint32_t kNone = 0xffffffffu;
    static constexpr std::uint64_t kMaxPoints = 4096;

    explicit Incidence(const ProjSpace& space);

    static bool fits(const ProjSpace& space) {
        return space.num_points() <= kMaxPoints && space.num_lines() <= kMaxEnumeratedLines;
    }

    const ProjSpace& space() const { return space_; }
    std::uint32_t num_points() const { return num_points_; }
    std::uint32_t num_lines() const { return static_cast<std::uint32_t>(lines_.size()); }
    std::uint32_t points_per_line() const { return per_line_; }

    const ProjLine& line(std::uint32_t index) const { return lines_[index]; }
    std::span<const std::uint32_t> points_on(std::uint32_t line) const {
        return {line_points_.data() + static_cast<std::size_t>(line) * per_line_, per_line_};
    }
    std::span<const std::uint32_t> lines_through(std::uint32_t point) const {
        return {point_lines_.data() + static_cast<std::size_t>(point) * lines_per_point_, lines_per_point_};
    }
    /// Line through two points, or kNone when a == b.
    std::uint32_t line_of(std::uint32_t a, std::uint32_t b) const {
        return pair_line_[static_cast<std::size_t>(a) * num_points_ + b];
    }
    bool on_line(std::uint32_t point, std::uint32_t line) const;

    /// The unique common point of two distinct lines, or kNone if they are
    /// skew or equal.
    std::uint32_t meet(std::uint32_t a, std::uint32_t b) const;

    /// Index of `line` in enumeration order.
    std::uint32_t index_of(const ProjLine& line) const;

private:
    ProjSpace space_;
    std::uint32_t num_points_ = 0;
    std::uint32_t per_line_ = 0;
    std::uint32_t lines_per_point_ = 0;
    std::vector<ProjLine> lines_;
    std::vector<std::uint32_t> line_points_;
    std::vector<std::uint32_t> point_lines_;
    std::vector<std::uint32_t> pair_line_;
};

}  // namespace projcorrect
