#pragma once

#include "adaptopt/analysis.hpp"
#include "adaptopt/core.hpp"
#include "adaptopt/error_models.hpp"
#include "adaptopt/laws_continuous.hpp"
#include "adaptopt/laws_discrete.hpp"
#include "adaptopt/losses.hpp"
#include "adaptopt/signals.hpp"
