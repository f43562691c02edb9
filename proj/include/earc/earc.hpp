#pragma once

#include "css.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "matrix.hpp"
#include "pmcode.hpp"
#include "repair.hpp"
#include "rng.hpp"
#include "stabilizer.hpp"
#include "tradeoff.hpp"
