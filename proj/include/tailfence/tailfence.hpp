#pragma once

#include "distributions.hpp"
#include "empirical.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "fences.hpp"
#include "monte_carlo.hpp"
#include "probability.hpp"
#include "random.hpp"
#include "root_finding.hpp"
#include "sample.hpp"
#include "sampling.hpp"
