#pragma once

// Umbrella header: certification of left-orderable surgery slopes on
// hyperbolic genus-one two-bridge knots K(m, n) through explicit real
// SL(2, R) representations.

#include "slopecert/certificate_io.hpp"
#include "slopecert/certify.hpp"
#include "slopecert/errors.hpp"
#include "slopecert/int_poly.hpp"
#include "slopecert/mat2.hpp"
#include "slopecert/precision.hpp"
#include "slopecert/rep.hpp"
#include "slopecert/riley.hpp"
#include "slopecert/slope.hpp"
#include "slopecert/word.hpp"
