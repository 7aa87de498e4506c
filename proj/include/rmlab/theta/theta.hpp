#pragma once

#include "rmlab/theta/checks.hpp"
#include "rmlab/theta/lattice_sum.hpp"
#include "rmlab/theta/rm_theta.hpp"
