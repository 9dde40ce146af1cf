#pragma once

// Umbrella header: the whole dispersive-readout simulation library.

#include "readoutsim/chain.hpp"
#include "readoutsim/config.hpp"
#include "readoutsim/errors.hpp"
#include "readoutsim/fidelity.hpp"
#include "readoutsim/montecarlo.hpp"
#include "readoutsim/noise.hpp"
#include "readoutsim/report.hpp"
#include "readoutsim/resonator.hpp"
#include "readoutsim/rng.hpp"
#include "readoutsim/signal.hpp"
#include "readoutsim/sweep.hpp"
#include "readoutsim/touchstone.hpp"
#include "readoutsim/units.hpp"
