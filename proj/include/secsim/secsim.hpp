#pragma once

// Umbrella header for the secsim physical-layer secrecy toolkit.

#include "secsim/attack.hpp"
#include "secsim/beamforming.hpp"
#include "secsim/d2d.hpp"
#include "secsim/errors.hpp"
#include "secsim/fading.hpp"
#include "secsim/iot.hpp"
#include "secsim/mimo.hpp"
#include "secsim/monte_carlo.hpp"
#include "secsim/point_process.hpp"
#include "secsim/propagation.hpp"
#include "secsim/random.hpp"
#include "secsim/result_table.hpp"
#include "secsim/scenario.hpp"
#include "secsim/secrecy.hpp"
#include "secsim/spectrum_sharing.hpp"
#include "secsim/udn.hpp"
#include "secsim/units.hpp"
#include "secsim/weather.hpp"
