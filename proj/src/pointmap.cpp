#include "projcorrect/pointmap.hpp"

#include <numeric>

namespace projcorrect {

PointMap::PointMap(ProjSpace domain, ProjSpace codomain, std::vector<std::uint32_t> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
    require(domain_.field() == codomain_.field(), "domain and codomain must share a field");
    require(table_.size() == domain_.num_points(), "map table must have one entry per domain point");
    std::vector<bool> hit(codomain_.num_points(), false);
    for (std::size_t i = 0; i < table_.size(); ++i) {
        require(table_[i] < codomain_.num_points(), "map entry " + std::to_string(i) + " out of range");
        require(!hit[table_[i]], "map is not injective (duplicate image " + std::to_string(table_[i]) + ")");
        hit[table_[i]] = true;
    }
}

PointMap PointMap::identity(const ProjSpace& space) {
    std::vector<std::uint32_t> table(space.num_points());
    std::iota(table.begin(), table.end(), 0u);
    return PointMap(space, space, std::move(table));
}

ProjPoint PointMap::apply(const ProjPoint& p) const {
    return codomain_.point_at(table_[domain_.index_of(p)]);
}

}  // namespace projcorrect
