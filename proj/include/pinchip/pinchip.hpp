#pragma once

// Umbrella header.

#include "pinchip/app.hpp"
#include "pinchip/config.hpp"
#include "pinchip/error.hpp"
#include "pinchip/layout.hpp"
#include "pinchip/materials.hpp"
#include "pinchip/numeric.hpp"
#include "pinchip/golden.hpp"
#include "pinchip/rfnet.hpp"
#include "pinchip/scaling.hpp"
#include "pinchip/thermal.hpp"
#include "pinchip/tlines.hpp"
#include "pinchip/units.hpp"
#include "pinchip/version.hpp"
