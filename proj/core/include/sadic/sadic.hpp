#pragma once

// Umbrella header.

#include "sadic/digits.hpp"
#include "sadic/frequency.hpp"
#include "sadic/generators.hpp"
#include "sadic/pipeline.hpp"
#include "sadic/rational.hpp"
#include "sadic/stats.hpp"
#include "sadic/stream.hpp"
#include "sadic/transforms.hpp"
#include "sadic/verify.hpp"
