#pragma once

#include "liequant/constants.hpp"
#include "liequant/error.hpp"
#include "liequant/fock_boson.hpp"
#include "liequant/fock_fermion.hpp"
#include "liequant/lie.hpp"
#include "liequant/matrix.hpp"
#include "liequant/poisson.hpp"
#include "liequant/polynomial.hpp"
#include "liequant/rotations.hpp"
#include "liequant/spectra.hpp"
#include "liequant/su2.hpp"
#include "liequant/thermal.hpp"
