#pragma once

#include "sokoban/assignment.hpp"
#include "sokoban/bench.hpp"
#include "sokoban/dataset.hpp"
#include "sokoban/deadlock.hpp"
#include "sokoban/geometry.hpp"
#include "sokoban/heuristics.hpp"
#include "sokoban/io.hpp"
#include "sokoban/level.hpp"
#include "sokoban/search.hpp"
#include "sokoban/state.hpp"
#include "sokoban/tunnels.hpp"
