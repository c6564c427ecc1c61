#pragma once

#include "alsel/boxloss.hpp"
#include "alsel/distance.hpp"
#include "alsel/error.hpp"
#include "alsel/fusion.hpp"
#include "alsel/io.hpp"
#include "alsel/rng.hpp"
#include "alsel/selection.hpp"
#include "alsel/synthbench.hpp"
#include "alsel/types.hpp"
