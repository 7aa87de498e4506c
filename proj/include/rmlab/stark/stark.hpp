#pragma once

#include "rmlab/stark/conjecture.hpp"
#include "rmlab/stark/ray_class.hpp"
#include "rmlab/stark/recognize.hpp"
#include "rmlab/stark/zeta.hpp"
