#pragma once

#include "anai/calibration.hpp"
#include "anai/csv_io.hpp"
#include "anai/dynamics.hpp"
#include "anai/errors.hpp"
#include "anai/indices.hpp"
#include "anai/phase_space.hpp"
#include "anai/scenario_io.hpp"
