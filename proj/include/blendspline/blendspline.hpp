#pragma once

#include "blendspline/blend.hpp"
#include "blendspline/bounds.hpp"
#include "blendspline/bspline.hpp"
#include "blendspline/data.hpp"
#include "blendspline/error.hpp"
#include "blendspline/grid.hpp"
#include "blendspline/localinterp.hpp"
#include "blendspline/molecule.hpp"
#include "blendspline/oracle.hpp"
#include "blendspline/quasi.hpp"
#include "blendspline/spline.hpp"
#include "blendspline/stream.hpp"
#include "blendspline/symfun.hpp"
#include "blendspline/vandermonde.hpp"
