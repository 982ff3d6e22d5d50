#pragma once

#include "mstd/bitmask.hpp"
#include "mstd/error.hpp"
#include "mstd/exactlaw.hpp"
#include "mstd/montecarlo.hpp"
#include "mstd/oracle.hpp"
#include "mstd/rng.hpp"
#include "mstd/setcore.hpp"
