#pragma once

// Umbrella header for the SAA chance-constraint toolkit.

#include "saa/bounds.hpp"
#include "saa/confidence.hpp"
#include "saa/json_io.hpp"
#include "saa/newsvendor.hpp"
#include "saa/posterior_validator.hpp"
#include "saa/problem.hpp"
#include "saa/rng.hpp"
#include "saa/saa_core.hpp"
#include "saa/sample_planner.hpp"
#include "saa/scenario.hpp"
#include "saa/special_functions.hpp"
