#pragma once

#include "diskinterp/blaschke.hpp"
#include "diskinterp/disk_geometry.hpp"
#include "diskinterp/errors.hpp"
#include "diskinterp/generators.hpp"
#include "diskinterp/hoffman.hpp"
#include "diskinterp/pick_solver.hpp"
#include "diskinterp/theorem_chain.hpp"
