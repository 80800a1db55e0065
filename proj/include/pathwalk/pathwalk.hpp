#pragma once

// Umbrella header.

#include "pathwalk/errors.hpp"
#include "pathwalk/evolution.hpp"
#include "pathwalk/jacobi.hpp"
#include "pathwalk/limit.hpp"
#include "pathwalk/tables.hpp"
#include "pathwalk/time_average.hpp"
#include "pathwalk/unitary_spectrum.hpp"
#include "pathwalk/walk.hpp"
