#pragma once

#include "pathrun/action.hpp"
#include "pathrun/agents.hpp"
#include "pathrun/config.hpp"
#include "pathrun/errors.hpp"
#include "pathrun/io.hpp"
#include "pathrun/lattice.hpp"
#include "pathrun/layered.hpp"
#include "pathrun/level.hpp"
#include "pathrun/pathsearch.hpp"
#include "pathrun/propagator.hpp"
#include "pathrun/rng.hpp"
#include "pathrun/runstats.hpp"
#include "pathrun/sim.hpp"
#include "pathrun/transition.hpp"
