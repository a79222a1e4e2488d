#pragma once

#include "cfp/errors.hpp"
#include "cfp/graph.hpp"
#include "cfp/matching.hpp"
#include "cfp/multigraph.hpp"
#include "cfp/decompose.hpp"
#include "cfp/structure.hpp"
#include "cfp/galvin.hpp"
#include "cfp/oracle.hpp"
#include "cfp/cobip.hpp"
#include "cfp/elementary.hpp"
#include "cfp/solver.hpp"
#include "cfp/gen.hpp"
#include "cfp/io.hpp"
