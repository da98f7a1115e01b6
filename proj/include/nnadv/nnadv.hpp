#pragma once

#include "nnadv/adversarial.hpp"
#include "nnadv/conditions.hpp"
#include "nnadv/error.hpp"
#include "nnadv/instance.hpp"
#include "nnadv/metric.hpp"
#include "nnadv/nnr.hpp"
#include "nnadv/optimum.hpp"
#include "nnadv/parallel.hpp"
#include "nnadv/perturb.hpp"
#include "nnadv/report.hpp"
#include "nnadv/sweep.hpp"
#include "nnadv/tour.hpp"
#include "nnadv/tsplib.hpp"
