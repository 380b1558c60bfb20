#pragma once

#include "rkep/bench.hpp"
#include "rkep/formulations.hpp"
#include "rkep/graph.hpp"
#include "rkep/kep.hpp"
#include "rkep/milp/branch_and_bound.hpp"
#include "rkep/milp/model.hpp"
#include "rkep/solvers.hpp"
