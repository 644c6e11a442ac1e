#pragma once

// Umbrella header.

#include "compstar/combinatorics.hpp"
#include "compstar/common.hpp"
#include "compstar/enumerate.hpp"
#include "compstar/field.hpp"
#include "compstar/patterns.hpp"
#include "compstar/pp.hpp"
#include "compstar/quiver.hpp"
#include "compstar/segment.hpp"
#include "compstar/verify.hpp"
