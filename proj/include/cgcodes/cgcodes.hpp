#pragma once

#include "cgcodes/code.hpp"
#include "cgcodes/errors.hpp"
#include "cgcodes/intmat.hpp"
#include "cgcodes/ivp.hpp"
#include "cgcodes/lattice.hpp"
#include "cgcodes/search.hpp"
