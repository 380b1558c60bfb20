#pragma once

#include "rkep/bench/aggregate.hpp"
#include "rkep/bench/generator.hpp"
#include "rkep/bench/io.hpp"
#include "rkep/bench/matrix.hpp"
#include "rkep/bench/record.hpp"
