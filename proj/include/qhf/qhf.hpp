#pragma once

#include "qhf/error.hpp"
#include "qhf/tolerances.hpp"
#include "qhf/matrix.hpp"
#include "qhf/state.hpp"
#include "qhf/hermitization.hpp"
#include "qhf/metric_solver.hpp"
#include "qhf/golden_section.hpp"
#include "qhf/hybrid_split.hpp"
#include "qhf/evolution.hpp"
#include "qhf/example_model.hpp"
