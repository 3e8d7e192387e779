#pragma once

/// Umbrella header: the whole library in one include.

#include "entsep/linalg.hpp"     // IWYU pragma: export
#include "entsep/states.hpp"     // IWYU pragma: export
#include "entsep/state_io.hpp"   // IWYU pragma: export
#include "entsep/criteria.hpp"   // IWYU pragma: export
#include "entsep/bounds.hpp"     // IWYU pragma: export
