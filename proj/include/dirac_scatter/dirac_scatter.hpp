#pragma once

// Umbrella header for the whole library.

#include "adjoint.hpp"
#include "born.hpp"
#include "config.hpp"
#include "descent.hpp"
#include "dispersion.hpp"
#include "fourier.hpp"
#include "full_inversion.hpp"
#include "greens.hpp"
#include "hermite.hpp"
#include "io.hpp"
#include "legendre.hpp"
#include "merge.hpp"
#include "metrics.hpp"
#include "modes.hpp"
#include "noise.hpp"
#include "observation.hpp"
#include "overlaps.hpp"
#include "potential.hpp"
#include "quadrature.hpp"
#include "runner.hpp"
#include "scalar_inversion.hpp"
#include "slab.hpp"
#include "stability.hpp"
#include "targets.hpp"
#include "tr_matrix.hpp"
