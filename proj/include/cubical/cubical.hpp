#pragma once

// Umbrella header for the cubical library: cube categories as function
// tables, finite truncated cubical sets, left Kan extension along theory
// inclusions, geometric and cartesian products, and open-box filling
// certificates.

#include "cubical/anodyne.hpp"
#include "cubical/cube_map.hpp"
#include "cubical/cubical_set.hpp"
#include "cubical/decomp.hpp"
#include "cubical/factor.hpp"
#include "cubical/hom.hpp"
#include "cubical/kan.hpp"
#include "cubical/serialize.hpp"
#include "cubical/sweeps.hpp"
#include "cubical/theory.hpp"
