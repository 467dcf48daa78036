#pragma once

#include <span>
#include <string>

#include <Eigen/Dense>

#include "netclass/classifier.hpp"
#include "netclass/distance.hpp"

namespace netclass {

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  std::string group;  // legend entry; points of a group share a color
};

/// Standalone SVG scatter plot. `connect` joins each group's points in the
/// given order (used for ROC curves).
std::string scatter_svg(std::span<const ScatterPoint> points, const std::string& title, const std::string& x_label,
                        const std::string& y_label, bool connect = false);

/// MDS coordinates (rows = networks) colored by mechanism label.
std::string state_space_svg(const StateSpace& space, const Eigen::MatrixXd& coordinates);

/// One curve per mechanism, legend entries carrying the AUC.
std::string roc_svg(const RocResult& result);

}  // namespace netclass
