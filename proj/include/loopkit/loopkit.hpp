#pragma once

// Exact-arithmetic identifiability toolkit for isolated loop networks.

#include "loopkit/ambiguity.hpp"
#include "loopkit/dual.hpp"
#include "loopkit/emp.hpp"
#include "loopkit/errors.hpp"
#include "loopkit/json_io.hpp"
#include "loopkit/loop_network.hpp"
#include "loopkit/oracle.hpp"
#include "loopkit/poly.hpp"
#include "loopkit/rank.hpp"
#include "loopkit/rat.hpp"
#include "loopkit/rational_function.hpp"
#include "loopkit/recover.hpp"
