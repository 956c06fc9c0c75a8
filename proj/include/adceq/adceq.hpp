#pragma once

#include "adceq/common.hpp"
#include "adceq/equiv_model.hpp"
#include "adceq/metrics.hpp"
#include "adceq/mimo.hpp"
#include "adceq/monte_carlo.hpp"
#include "adceq/ofdm.hpp"
#include "adceq/quantizer.hpp"
#include "adceq/random.hpp"
#include "adceq/table_io.hpp"
#include "adceq/validation.hpp"
#include "adceq/version.hpp"
