#pragma once

#include "longmem/errors.hpp"
#include "longmem/fraccoeff.hpp"
#include "longmem/io.hpp"
#include "longmem/matrix.hpp"
#include "longmem/montecarlo.hpp"
#include "longmem/predictor.hpp"
#include "longmem/quadrature.hpp"
#include "longmem/risk.hpp"
#include "longmem/rng.hpp"
#include "longmem/sample_path.hpp"
#include "longmem/simulate.hpp"
#include "longmem/special.hpp"
#include "longmem/spectral.hpp"
#include "longmem/toeplitz.hpp"
#include "longmem/version.hpp"
