#pragma once

#include "model.hpp"
#include "symmetry.hpp"
#include "constraints.hpp"
#include "action.hpp"
#include "deform.hpp"
#include "optimizer.hpp"
#include "verify.hpp"
#include "io.hpp"
#include "plot.hpp"
