#ifndef POSGEO_POSGEO_HPP
#define POSGEO_POSGEO_HPP

#include "posgeo/adjoint.hpp"
#include "posgeo/canonical.hpp"
#include "posgeo/coordinates.hpp"
#include "posgeo/geometry.hpp"
#include "posgeo/projective.hpp"

#endif  // POSGEO_POSGEO_HPP
