#pragma once

#include "braidbu/braid_pi1.hpp"
#include "braidbu/bu_decision.hpp"
#include "braidbu/config_space.hpp"
#include "braidbu/covering.hpp"
#include "braidbu/error.hpp"
#include "braidbu/free_group.hpp"
#include "braidbu/graph.hpp"
#include "braidbu/morse.hpp"
#include "braidbu/permutation.hpp"
#include "braidbu/report.hpp"
#include "braidbu/suite.hpp"
#include "braidbu/two_complex.hpp"
