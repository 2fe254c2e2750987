#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "projcorrect/projspace.hpp"

namespace projcorrect {

/// A total injection between the point sets of two projective spaces over the
/// same field, tabulated by canonical point index.
class PointMap {
public:
    /// Throws PreconditionError unless the fields agree, the table covers
    /// every domain point, all entries are in range, and no two agree.
    PointMap(ProjSpace domain, ProjSpace codomain, std::vector<std::uint32_t> table);

    static PointMap identity(const ProjSpace& space);

    const ProjSpace& domain() const { return domain_; }
    const ProjSpace& codomain() const { return codomain_; }
    std::span<const std::uint32_t> table() const { return table_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(table_.size()); }

    std::uint32_t operator()(std::uint32_t point) const { return table_[point]; }
    ProjPoint apply(const ProjPoint& p) const;

    friend bool operator==(const PointMap&, const PointMap&) = default;

private:
    ProjSpace domain_;
    ProjSpace codomain_;
    std::vector<std::uint32_t> table_;
};

}  // namespace projcorrect
