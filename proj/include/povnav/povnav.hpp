#pragma once

#include "povnav/camera.hpp"
#include "povnav/core.hpp"
#include "povnav/goalproj.hpp"
#include "povnav/harness/environment.hpp"
#include "povnav/harness/episode.hpp"
#include "povnav/harness/frames.hpp"
#include "povnav/harness/planner.hpp"
#include "povnav/harness/suite.hpp"
#include "povnav/horizon.hpp"
#include "povnav/keyvalue.hpp"
#include "povnav/pathgen.hpp"
#include "povnav/pgm.hpp"
#include "povnav/segmentation.hpp"
#include "povnav/servo.hpp"
#include "povnav/sim/scenario.hpp"
#include "povnav/sim/world.hpp"
#include "povnav/subgoal.hpp"
