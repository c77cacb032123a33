#pragma once

#include "bullwhip/core_stats.hpp"
#include "bullwhip/error.hpp"
#include "bullwhip/matrix.hpp"
#include "bullwhip/product_aggregation.hpp"
#include "bullwhip/random.hpp"
#include "bullwhip/seasonality.hpp"
#include "bullwhip/series.hpp"
#include "bullwhip/simulation.hpp"
#include "bullwhip/time_aggregation.hpp"
#include "bullwhip/version.hpp"
