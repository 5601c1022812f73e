#include "weakdiam/objects.hpp"

#include <stdexcept>
#include <string>

namespace weakdiam {

ObjectSystem::ObjectSystem(std::shared_ptr<const Space> space, std::vector<PointSet> objects)
    : space_(std::move(space)), objects_(std::move(objects)) {
  if (!space_) throw std::invalid_argument("object system needs a space");
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (objects_[i].empty()) throw std::invalid_argument("object " + std::to_string(i) + " is empty");
    if (objects_[i].ids().back() >= space_->size())
      throw std::invalid_argument("object " + std::to_string(i) + " references point " +
                                  std::to_string(objects_[i].ids().back()) + " but the space has " +
                                  std::to_string(space_->size()) + " points");
  }
}

ObjectSystem ObjectSystem::subsystem(const std::vector<std::size_t>& ids) const {
  std::vector<PointSet> picked;
  picked.reserve(ids.size());
  for (std::size_t id : ids) picked.push_back(objects_.at(id));
  return ObjectSystem(space_, std::move(picked));
}

std::vector<double> object_diameters(const ObjectSystem& system) {
  std::vector<double> out(system.size());
  const auto n = static_cast<long>(system.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) out[i] = set_diameter(system.space(), system.object(i));
  return out;
}

}  // namespace weakdiam
