#pragma once

#include "artifact.hpp"
#include "config.hpp"
#include "dynamics.hpp"
#include "emit.hpp"
#include "errors.hpp"
#include "ingest.hpp"
#include "lattice.hpp"
#include "market.hpp"
#include "random.hpp"
#include "simulation.hpp"
#include "state.hpp"
#include "stats.hpp"
