#pragma once

// Everything the library offers, in one include.

#include "swapdyn/core/classify.hpp"
#include "swapdyn/core/error.hpp"
#include "swapdyn/core/instance.hpp"
#include "swapdyn/core/io.hpp"
#include "swapdyn/core/matching.hpp"
#include "swapdyn/core/swap.hpp"
#include "swapdyn/generate.hpp"
#include "swapdyn/genstar.hpp"
#include "swapdyn/oracle.hpp"
#include "swapdyn/path/path.hpp"
#include "swapdyn/reductions/cnf.hpp"
#include "swapdyn/reductions/constructions.hpp"
#include "swapdyn/star.hpp"
#include "swapdyn/tree.hpp"
