#pragma once

// Umbrella header for the whole library.

#include "qpart/bound_report.hpp"
#include "qpart/complex_matrix.hpp"
#include "qpart/density_matrix.hpp"
#include "qpart/errors.hpp"
#include "qpart/hermitian_eig.hpp"
#include "qpart/matrix_io.hpp"
#include "qpart/partition.hpp"
#include "qpart/rng.hpp"
#include "qpart/spin_flip.hpp"
#include "qpart/tavis_cummings.hpp"
#include "qpart/verify.hpp"
