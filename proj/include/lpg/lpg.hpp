#pragma once

// Convenience umbrella for the whole library.

#include "lpg/baselines.hpp"
#include "lpg/config.hpp"
#include "lpg/csv.hpp"
#include "lpg/errors.hpp"
#include "lpg/experiment.hpp"
#include "lpg/game.hpp"
#include "lpg/localization.hpp"
#include "lpg/profiles.hpp"
#include "lpg/rng.hpp"
#include "lpg/solver.hpp"
