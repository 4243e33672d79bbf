#pragma once

#include "dcm/appendix.hpp"
#include "dcm/convert3d.hpp"
#include "dcm/detect.hpp"
#include "dcm/dyadics.hpp"
#include "dcm/errors.hpp"
#include "dcm/exterior.hpp"
#include "dcm/json_io.hpp"
#include "dcm/media.hpp"
#include "dcm/waves.hpp"
