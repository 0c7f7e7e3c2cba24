#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace mrbot {

using Vec3 = Eigen::Vector3d;

}  // namespace mrbot
