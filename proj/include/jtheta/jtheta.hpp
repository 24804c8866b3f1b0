#ifndef JTHETA_JTHETA_HPP
#define JTHETA_JTHETA_HPP

#include "complex.hpp"
#include "contour.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "siegel.hpp"
#include "sweep.hpp"
#include "theta_core.hpp"
#include "verify.hpp"

#endif
