#pragma once

#include "qres/errors.hpp"
#include "qres/geometry.hpp"
#include "qres/json_io.hpp"
#include "qres/lp.hpp"
#include "qres/matrix.hpp"
#include "qres/reach.hpp"
#include "qres/resilience.hpp"
#include "qres/scenarios.hpp"
#include "qres/system.hpp"
