#pragma once

#include "catalog.hpp"
#include "engel.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "lie_algebra.hpp"
#include "lie_module.hpp"
#include "matrix.hpp"
#include "roots.hpp"
#include "sampling.hpp"
#include "scalar.hpp"
#include "submodule.hpp"
