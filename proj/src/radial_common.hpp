// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "thinlayer/discretization.hpp"
#include "thinlayer/model.hpp"
#include "thinlayer/radial_membrane.hpp"

namespace thinlayer {

BoxProblem side_problem(Side side, const ModeIndex& mode, const Geometry& geometry, const CoefficientModel& model,
                        std::vector<double> nodes);

void apply_outer_condition(BoxProblem& p, const Geometry& geometry);

/// Re-inserts eliminated Dirichlet nodes as zeros.
std::vector<double> full_vector(const BoxSystem& sys, std::size_t node_count, const std::vector<double>& v);

}  // namespace thinlayer
