#pragma once

#include "weylsep/bipartite.hpp"
#include "weylsep/bloch.hpp"
#include "weylsep/error.hpp"
#include "weylsep/io.hpp"
#include "weylsep/linalg.hpp"
#include "weylsep/random.hpp"
#include "weylsep/state_spec.hpp"
#include "weylsep/states.hpp"
#include "weylsep/teleport.hpp"
#include "weylsep/weyl.hpp"
