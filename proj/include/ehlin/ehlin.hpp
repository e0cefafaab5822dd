#pragma once

#include "ehlin/asymptotics.hpp"
#include "ehlin/distribution.hpp"
#include "ehlin/greedy_bounds.hpp"
#include "ehlin/grids.hpp"
#include "ehlin/io.hpp"
#include "ehlin/linear_perf.hpp"
#include "ehlin/numerics.hpp"
#include "ehlin/parallel.hpp"
#include "ehlin/simulator.hpp"
#include "ehlin/slope_opt.hpp"
#include "ehlin/sweep.hpp"
#include "ehlin/tables.hpp"
#include "ehlin/universal.hpp"
#include "ehlin/verify.hpp"
