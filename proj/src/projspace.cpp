#include "projcorrect/projspace.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "projcorrect/seeding.hpp"

namespace projcorrect {

std::vector<Vec> rref(const Field& field, std::vector<Vec> rows) {
    if (rows.empty()) {
        return rows;
    }
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c].code == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        const Elem scale = field.inv(rows[rank][c]);
        for (auto& e : rows[rank]) {
            e = field.mul(e, scale);
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c].code == 0) {
                continue;
            }
            const Elem factor = rows[r][c];
            for (std::size_t j = 0; j < cols; ++j) {
                rows[r][j] = field.sub(rows[r][j], field.mul(factor, rows[rank][j]));
            }
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

int vector_rank(const Field& field, std::vector<Vec> rows) {
    return static_cast<int>(rref(field, std::move(rows)).size());
}

std::optional<std::pair<Elem, Elem>> coordinates_in_plane(const Field& field, const Vec& v, const Vec& b0,
                                                          const Vec& b1) {
    // Find two coordinates where (b0, b1) is nonsingular, solve there, then
    // check the remaining coordinates.
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const Elem det = field.sub(field.mul(b0[i], b1[j]), field.mul(b0[j], b1[i]));
            if (det.code == 0) {
                continue;
            }
            const Elem det_inv = field.inv(det);
            const Elem alpha = field.mul(det_inv, field.sub(field.mul(v[i], b1[j]), field.mul(v[j], b1[i])));
            const Elem beta = field.mul(det_inv, field.sub(field.mul(b0[i], v[j]), field.mul(b0[j], v[i])));
            for (std::size_t c = 0; c < m; ++c) {
                const Elem rebuilt = field.add(field.mul(alpha, b0[c]), field.mul(beta, b1[c]));
                if (rebuilt != v[c]) {
                    return std::nullopt;
                }
            }
            return std::make_pair(alpha, beta);
        }
    }
    return std::nullopt;
}

ProjSpace::ProjSpace(Field field, int n) : field_(std::move(field)), n_(n) {
    require(n >= 1, "projective dimension must be >= 1");
    qpow_.resize(n + 2);
    qpow_[0] = 1;
    for (int i = 1; i <= n + 1; ++i) {
        qpow_[i] = qpow_[i - 1] * static_cast<std::uint64_t>(q());
        require(qpow_[i] < (std::uint64_t{1} << 40), "projective space too large");
    }
}

std::uint64_t ProjSpace::num_points() const { return (qpow_[n_ + 1] - 1) / (q() - 1); }

std::uint64_t ProjSpace::lines_per_point() const { return (qpow_[n_] - 1) / (q() - 1); }

std::uint64_t ProjSpace::num_lines() const {
    // Each point lies on lines_per_point lines and each line has q+1 points.
    return num_points() * lines_per_point() / static_cast<std::uint64_t>(q() + 1);
}

ProjPoint ProjSpace::normalize(Vec v) const {
    require(static_cast<int>(v.size()) == n_ + 1, "coordinate vector has wrong length");
    const auto lead = std::find_if(v.begin(), v.end(), [](Elem e) { return e.code != 0; });
    require(lead != v.end(), "the zero vector is not a projective point");
    const Elem scale = field_.inv(*lead);
    for (auto& e : v) {
        e = field_.mul(e, scale);
    }
    return ProjPoint{std::move(v)};
}

void ProjSpace::check_point(const ProjPoint& p) const {
    require(static_cast<int>(p.coords.size()) == n_ + 1, "point has wrong number of coordinates");
}

std::uint64_t ProjSpace::index_of(const ProjPoint& p) const {
    check_point(p);
    int lead = 0;
    while (lead <= n_ && p.coords[lead].code == 0) {
        ++lead;
    }
    require(lead <= n_ && p.coords[lead].code == 1, "point is not normalized");
    // Points whose leading index exceeds `lead` sort first.
    std::uint64_t index = (qpow_[n_ - lead] - 1) / (q() - 1);
    std::uint64_t tail = 0;
    for (int i = lead + 1; i <= n_; ++i) {
        tail = tail * q() + p.coords[i].code;
    }
    return index + tail;
}

ProjPoint ProjSpace::point_at(std::uint64_t index) const {
    require(index < num_points(), "point index out of range");
    for (int lead = n_; lead >= 0; --lead) {
        const std::uint64_t offset = (qpow_[n_ - lead] - 1) / (q() - 1);
        const std::uint64_t block = qpow_[n_ - lead];
        if (index < offset + block) {
            std::uint64_t tail = index - offset;
            Vec coords(n_ + 1, Elem{0});
            coords[lead] = Elem{1};
            for (int i = n_; i > lead; --i) {
                coords[i] = Elem{static_cast<std::uint32_t>(tail % q())};
                tail /= q();
            }
            return ProjPoint{std::move(coords)};
        }
    }
    throw PreconditionError("point index out of range");
}

std::vector<ProjPoint> ProjSpace::enumerate_points() const {
    std::vector<ProjPoint> out;
    out.reserve(num_points());
    for (std::uint64_t i = 0; i < num_points(); ++i) {
        out.push_back(point_at(i));
    }
    return out;
}

ProjLine ProjSpace::line_through(const ProjPoint& a, const ProjPoint& b) const {
    check_point(a);
    check_point(b);
    require(a != b, "a line needs two distinct points");
    auto rows = rref(field_, {a.coords, b.coords});
    require(rows.size() == 2, "points do not span a line");
    return ProjLine{std::move(rows[0]), std::move(rows[1])};
}

bool ProjSpace::contains(const ProjLine& line, const ProjPoint& p) const {
    check_point(p);
    const auto pivot = [](const Vec& row) {
        return static_cast<std::size_t>(std::find_if(row.begin(), row.end(), [](Elem e) { return e.code != 0; }) -
                                        row.begin());
    };
    const Elem c0 = p.coords[pivot(line.row0)];
    const Elem c1 = p.coords[pivot(line.row1)];
    for (int i = 0; i <= n_; ++i) {
        const Elem rebuilt = field_.add(field_.mul(c0, line.row0[i]), field_.mul(c1, line.row1[i]));
        if (rebuilt != p.coords[i]) {
            return false;
        }
    }
    return true;
}

std::vector<ProjPoint> ProjSpace::points_on_line(const ProjLine& line) const {
    std::vector<ProjPoint> out;
    out.reserve(q() + 1);
    out.push_back(normalize(line.row1));
    for (const Elem c : field_.elements()) {
        Vec v(n_ + 1);
        for (int i = 0; i <= n_; ++i) {
            v[i] = field_.add(line.row0[i], field_.mul(c, line.row1[i]));
        }
        out.push_back(normalize(std::move(v)));
    }
    std::sort(out.begin(), out.end(), [this](const ProjPoint& a, const ProjPoint& b) {
        return index_of(a) < index_of(b);
    });
    return out;
}

std::vector<ProjLine> ProjSpace::enumerate_lines() const {
    require(num_lines() <= kMaxEnumeratedLines,
            "too many lines to enumerate (" + std::to_string(num_lines()) + "); use sampling");
    std::vector<ProjLine> out;
    out.reserve(num_lines());
    const std::uint32_t qq = static_cast<std::uint32_t>(q());
    for (int i = 0; i <= n_; ++i) {
        for (int j = i + 1; j <= n_; ++j) {
            // Free positions: row0 after i except j; row1 after j.
            std::vector<int> free0;
            for (int c = i + 1; c <= n_; ++c) {
                if (c != j) {
                    free0.push_back(c);
                }
            }
            std::vector<int> free1;
            for (int c = j + 1; c <= n_; ++c) {
                free1.push_back(c);
            }
            const std::uint64_t count0 = qpow_[free0.size()];
            const std::uint64_t count1 = qpow_[free1.size()];
            for (std::uint64_t a = 0; a < count0; ++a) {
                Vec row0(n_ + 1, Elem{0});
                row0[i] = Elem{1};
                std::uint64_t rest = a;
                for (const int c : free0) {
                    row0[c] = Elem{static_cast<std::uint32_t>(rest % qq)};
                    rest /= qq;
                }
                for (std::uint64_t b = 0; b < count1; ++b) {
                    Vec row1(n_ + 1, Elem{0});
                    row1[j] = Elem{1};
                    std::uint64_t rest1 = b;
                    for (const int c : free1) {
                        row1[c] = Elem{static_cast<std::uint32_t>(rest1 % qq)};
                        rest1 /= qq;
                    }
                    out.push_back(ProjLine{row0, std::move(row1)});
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ProjLine> ProjSpace::lines_through_point(const ProjPoint& x) const {
    check_point(x);
    int lead = 0;
    while (lead <= n_ && x.coords[lead].code == 0) {
        ++lead;
    }
    require(lead <= n_, "zero vector");
    // Every line through x meets the hyperplane {coord[lead] = 0} exactly once.
    const ProjSpace hyperplane(field_, n_ - 1 >= 1 ? n_ - 1 : 1);
    std::vector<ProjLine> out;
    out.reserve(lines_per_point());
    if (n_ == 1) {
        Vec other(2, Elem{0});
        other[1 - lead] = Elem{1};
        out.push_back(line_through(x, ProjPoint{std::move(other)}));
        return out;
    }
    for (std::uint64_t h = 0; h < hyperplane.num_points(); ++h) {
        const ProjPoint hp = hyperplane.point_at(h);
        Vec v;
        v.reserve(n_ + 1);
        for (int i = 0; i < n_; ++i) {
            if (i == lead) {
                v.push_back(Elem{0});
            }
            v.push_back(hp.coords[i]);
        }
        if (lead == n_) {
            v.push_back(Elem{0});
        }
        out.push_back(line_through(x, normalize(std::move(v))));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PointedLine> ProjSpace::pointed_lines_at(const ProjPoint& x) const {
    std::vector<PointedLine> out;
    for (const ProjLine& line : lines_through_point(x)) {
        const auto pts = points_on_line(line);
        for (const auto& y1 : pts) {
            if (y1 == x) {
                continue;
            }
            for (const auto& y2 : pts) {
                if (y2 == x || y2 == y1) {
                    continue;
                }
                out.push_back(PointedLine{line, x, y1, y2});
            }
        }
    }
    return out;
}

LineIntersection ProjSpace::intersect_lines(const ProjLine& a, const ProjLine& b) const {
    if (a == b) {
        return {LineIntersection::Kind::line, std::nullopt};
    }
    // Kernel of the columns (a0, a1, b0, b1): with rank 3 it is spanned by
    // (x0, x1, x2, x3) and x0 a0 + x1 a1 is the common point.
    std::vector<Vec> rows(n_ + 1, Vec(4));
    for (int i = 0; i <= n_; ++i) {
        rows[i] = {a.row0[i], a.row1[i], b.row0[i], b.row1[i]};
    }
    rows = rref(field_, std::move(rows));
    if (rows.size() != 3) {
        return {LineIntersection::Kind::empty, std::nullopt};
    }
    std::array<bool, 4> pivot_col{};
    std::array<int, 3> pivot_of{};
    for (std::size_t r = 0; r < 3; ++r) {
        const auto c = std::find_if(rows[r].begin(), rows[r].end(), [](Elem e) { return e.code != 0; }) - rows[r].begin();
        pivot_col[c] = true;
        pivot_of[r] = static_cast<int>(c);
    }
    const int free = static_cast<int>(std::find(pivot_col.begin(), pivot_col.end(), false) - pivot_col.begin());
    std::array<Elem, 4> x{};
    x[free] = Elem{1};
    for (std::size_t r = 0; r < 3; ++r) {
        x[pivot_of[r]] = field_.neg(rows[r][free]);
    }
    Vec v(n_ + 1);
    for (int i = 0; i <= n_; ++i) {
        v[i] = field_.add(field_.mul(x[0], a.row0[i]), field_.mul(x[1], a.row1[i]));
    }
    return {LineIntersection::Kind::point, normalize(std::move(v))};
}

int ProjSpace::span_dimension(std::span<const ProjPoint> points) const {
    require(!points.empty(), "span of an empty set");
    std::vector<Vec> rows;
    rows.reserve(points.size());
    for (const auto& p : points) {
        check_point(p);
        rows.push_back(p.coords);
    }
    return vector_rank(field_, std::move(rows)) - 1;
}

ProjPoint ProjSpace::sample_point(std::uint64_t seed) const {
    std::mt19937_64 rng(mix64(seed));
    std::uniform_int_distribution<std::uint64_t> pick(0, num_points() - 1);
    return point_at(pick(rng));
}

ProjLine ProjSpace::sample_line(std::uint64_t seed) const {
    // Every line carries the same number q(q+1) of ordered point pairs.
    std::mt19937_64 rng(mix64(seed));
    std::uniform_int_distribution<std::uint64_t> pick(0, num_points() - 1);
    const std::uint64_t a = pick(rng);
    std::uint64_t b = a;
    while (b == a) {
        b = pick(rng);
    }
    return line_through(point_at(a), point_at(b));
}

Incidence::Incidence(const ProjSpace& space) : space_(space) {
    require(space.num_points() <= kMaxPoints, "space too large for dense incidence tables");
    num_points_ = static_cast<std::uint32_t>(space.num_points());
    per_line_ = static_cast<std::uint32_t>(space.q() + 1);
    lines_per_point_ = static_cast<std::uint32_t>(space.lines_per_point());
    lines_ = space.enumerate_lines();

    line_points_.reserve(lines_.size() * per_line_);
    for (const auto& line : lines_) {
        const std::size_t start = line_points_.size();
        for (const auto& p : space.points_on_line(line)) {
            line_points_.push_back(static_cast<std::uint32_t>(space.index_of(p)));
        }
        std::sort(line_points_.begin() + static_cast<std::ptrdiff_t>(start), line_points_.end());
    }

    pair_line_.assign(static_cast<std::size_t>(num_points_) * num_points_, kNone);
    point_lines_.assign(static_cast<std::size_t>(num_points_) * lines_per_point_, kNone);
    std::vector<std::uint32_t> filled(num_points_, 0);
    for (std::uint32_t l = 0; l < num_lines(); ++l) {
        const auto pts = points_on(l);
        for (const auto a : pts) {
            point_lines_[static_cast<std::size_t>(a) * lines_per_point_ + filled[a]++] = l;
            for (const auto b : pts) {
                if (a != b) {
                    pair_line_[static_cast<std::size_t>(a) * num_points_ + b] = l;
                }
            }
        }
    }
}

bool Incidence::on_line(std::uint32_t point, std::uint32_t line) const {
    const auto pts = points_on(line);
    return std::binary_search(pts.begin(), pts.end(), point);
}

std::uint32_t Incidence::meet(std::uint32_t a, std::uint32_t b) const {
    if (a == b) {
        return kNone;
    }
    const auto pa = points_on(a);
    const auto pb = points_on(b);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < pa.size() && j < pb.size()) {
        if (pa[i] == pb[j]) {
            return pa[i];
        }
        if (pa[i] < pb[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return kNone;
}

std::uint32_t Incidence::index_of(const ProjLine& line) const {
    const auto it = std::lower_bound(lines_.begin(), lines_.end(), line);
    require(it != lines_.end() && *it == line, "line does not belong to this space");
    return static_cast<std::uint32_t>(it - lines_.begin());
}

}  // namespace projcorrect
