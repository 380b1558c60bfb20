#pragma once

#include "rkep/formulations/common.hpp"
#include "rkep/formulations/master.hpp"
#include "rkep/formulations/recourse.hpp"
#include "rkep/formulations/subproblem.hpp"
