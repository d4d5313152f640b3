#pragma once

#include "conewalk/cone.hpp"
#include "conewalk/exact_engine.hpp"
#include "conewalk/gof.hpp"
#include "conewalk/meander.hpp"
#include "conewalk/point.hpp"
#include "conewalk/rng.hpp"
#include "conewalk/sampler.hpp"
#include "conewalk/spec_parse.hpp"
#include "conewalk/special_functions.hpp"
#include "conewalk/tail_analysis.hpp"
#include "conewalk/walk.hpp"
