#pragma once

#include "lindblad/types.hpp"
#include "lindblad/basis.hpp"
#include "lindblad/hermitian_eigen.hpp"
#include "lindblad/superop.hpp"
#include "lindblad/forward.hpp"
#include "lindblad/inverse.hpp"
#include "lindblad/spaces.hpp"
#include "lindblad/cp.hpp"
#include "lindblad/odesolve.hpp"
#include "lindblad/random.hpp"
#include "lindblad/rarity.hpp"
