#pragma once

#include <memory>
#include <vector>

#include "weakdiam/metric.hpp"

namespace weakdiam {

// The object system: named (by position) nonempty point subsets of one Space.
class ObjectSystem {
 public:
  ObjectSystem() = default;
  // Throws std::invalid_argument naming the offending object if one is empty
  // or references a point outside the space.
  ObjectSystem(std::shared_ptr<const Space> space, std::vector<PointSet> objects);

  const Space& space() const { return *space_; }
  const std::shared_ptr<const Space>& space_ptr() const { return space_; }
  std::size_t size() const { return objects_.size(); }
  bool empty() const { return objects_.empty(); }
  const PointSet& object(std::size_t i) const { return objects_[i]; }
  const std::vector<PointSet>& objects() const { return objects_; }

  // Subsystem of the given objects, in the given order.
  ObjectSystem subsystem(const std::vector<std::size_t>& ids) const;

 private:
  std::shared_ptr<const Space> space_;
  std::vector<PointSet> objects_;
};

// Parallel over objects.
std::vector<double> object_diameters(const ObjectSystem& system);

}  // namespace weakdiam
