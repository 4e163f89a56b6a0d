#pragma once

#include "heffter/algebra.hpp"
#include "heffter/arrays.hpp"
#include "heffter/current_graphs.hpp"
#include "heffter/cycle_systems.hpp"
#include "heffter/derived.hpp"
#include "heffter/graph.hpp"
#include "heffter/orderings.hpp"
#include "heffter/search.hpp"
#include "heffter/surface_maps.hpp"
