#pragma once

// Umbrella header.

#include "cosep/coalgebra.hpp"
#include "cosep/coring.hpp"
#include "cosep/coseparability.hpp"
#include "cosep/dorroh.hpp"
#include "cosep/dual_algebra.hpp"
#include "cosep/format.hpp"
#include "cosep/matrix.hpp"
#include "cosep/scalar.hpp"
