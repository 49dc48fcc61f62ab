#pragma once

#include "ncprism/convexity.hpp"
#include "ncprism/dilation.hpp"
#include "ncprism/error.hpp"
#include "ncprism/finite_field.hpp"
#include "ncprism/json_io.hpp"
#include "ncprism/matkernel.hpp"
#include "ncprism/ossys.hpp"
#include "ncprism/random.hpp"
#include "ncprism/reps.hpp"
