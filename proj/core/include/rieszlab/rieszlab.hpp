#pragma once

// Umbrella header for the rieszlab core library.

#include "rieszlab/errors.hpp"
#include "rieszlab/far_field.hpp"
#include "rieszlab/fourier.hpp"
#include "rieszlab/grid.hpp"
#include "rieszlab/h_kernel.hpp"
#include "rieszlab/multi_index.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/operators.hpp"
#include "rieszlab/parallel.hpp"
#include "rieszlab/quadrature.hpp"
#include "rieszlab/random.hpp"
#include "rieszlab/singular_convolution.hpp"
#include "rieszlab/sparse_process.hpp"
#include "rieszlab/special_functions.hpp"
#include "rieszlab/symbols.hpp"
#include "rieszlab/test_functions.hpp"
#include "rieszlab/verification.hpp"
