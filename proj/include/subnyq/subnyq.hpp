#pragma once

#include "capacity.hpp"
#include "channel.hpp"
#include "combinatorics.hpp"
#include "converse.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "io.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "samplers.hpp"
