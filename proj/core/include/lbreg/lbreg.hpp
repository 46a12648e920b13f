#pragma once

#include "lbreg/diagnostics.hpp"
#include "lbreg/experiment.hpp"
#include "lbreg/grid.hpp"
#include "lbreg/grid_io.hpp"
#include "lbreg/objectives.hpp"
#include "lbreg/potentials.hpp"
#include "lbreg/solver.hpp"
#include "lbreg/transforms.hpp"
