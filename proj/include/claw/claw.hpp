#pragma once
// Umbrella header.

#include "claw/errors.hpp"
#include "claw/flux.hpp"
#include "claw/measure.hpp"
#include "claw/transport_collapse.hpp"
#include "claw/version.hpp"
#include "claw/viscous.hpp"
#include "claw/wasserstein.hpp"
