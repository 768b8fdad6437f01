#pragma once

#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"
#include "fraclap/laplacian.hpp"
#include "fraclap/mellin.hpp"
#include "fraclap/onesided.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"
#include "fraclap/stable.hpp"
#include "fraclap/test_functions.hpp"
