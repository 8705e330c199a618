#pragma once

#include "colour_set.hpp"
#include "errors.hpp"
#include "gadget.hpp"
#include "generator.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "io.hpp"
#include "layers.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "rules.hpp"
#include "solver.hpp"
#include "structure.hpp"
#include "subgraph.hpp"
#include "two_sat.hpp"
