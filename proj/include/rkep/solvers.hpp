#pragma once

#include "rkep/solvers/attack_bb.hpp"
#include "rkep/solvers/brute_force.hpp"
#include "rkep/solvers/cutting_plane.hpp"
#include "rkep/solvers/robust.hpp"
#include "rkep/solvers/types.hpp"
