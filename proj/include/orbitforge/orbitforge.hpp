#pragma once

#include "orbitforge/equation_set.hpp"
#include "orbitforge/error.hpp"
#include "orbitforge/evaluation.hpp"
#include "orbitforge/export.hpp"
#include "orbitforge/json_io.hpp"
#include "orbitforge/matrix.hpp"
#include "orbitforge/orbits_gl.hpp"
#include "orbitforge/orbits_sp.hpp"
#include "orbitforge/padic.hpp"
#include "orbitforge/parallel.hpp"
#include "orbitforge/partitions.hpp"
#include "orbitforge/polynomial.hpp"
#include "orbitforge/subsets.hpp"
#include "orbitforge/verify.hpp"
#include "orbitforge/version.hpp"
#include "orbitforge/weyman.hpp"
