#pragma once

#include "vodmesh/analytic.hpp"
#include "vodmesh/config_io.hpp"
#include "vodmesh/content.hpp"
#include "vodmesh/engine.hpp"
#include "vodmesh/errors.hpp"
#include "vodmesh/numfmt.hpp"
#include "vodmesh/path_search.hpp"
#include "vodmesh/report.hpp"
#include "vodmesh/rng.hpp"
#include "vodmesh/sim_config.hpp"
#include "vodmesh/topology.hpp"
#include "vodmesh/topology_io.hpp"
