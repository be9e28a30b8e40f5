#pragma once

#include "aorrt/core/coords.hpp"
#include "aorrt/core/errors.hpp"
#include "aorrt/core/random.hpp"
#include "aorrt/core/types.hpp"
#include "aorrt/dynamics/integrator.hpp"
#include "aorrt/dynamics/lipschitz.hpp"
#include "aorrt/dynamics/system.hpp"
#include "aorrt/dynamics/systems.hpp"
#include "aorrt/geometry/collision.hpp"
#include "aorrt/metric/kd_tree.hpp"
#include "aorrt/metric/metric.hpp"
#include "aorrt/metric/nn_index.hpp"
#include "aorrt/planners/generic_rrt.hpp"
#include "aorrt/planners/plan.hpp"
#include "aorrt/scenarios/builtin.hpp"
#include "aorrt/scenarios/oracles.hpp"
#include "aorrt/scenarios/scenario_json.hpp"
#include "aorrt/bench/benchmark.hpp"
#include "aorrt/bench/convergence.hpp"
