#pragma once

#include "gramfield/distribution.hpp"
#include "gramfield/experiment.hpp"
#include "gramfield/filter_io.hpp"
#include "gramfield/limit_solver.hpp"
#include "gramfield/matgen.hpp"
#include "gramfield/matrix_io.hpp"
#include "gramfield/parallel.hpp"
#include "gramfield/rng.hpp"
#include "gramfield/spectra.hpp"
#include "gramfield/symbols.hpp"
#include "gramfield/transforms.hpp"
