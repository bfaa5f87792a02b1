#pragma once

// Umbrella header: the whole pipeline from rate panel to scaling report.

#include "fxmst/cleaning.hpp"
#include "fxmst/correlation.hpp"
#include "fxmst/csv.hpp"
#include "fxmst/currency.hpp"
#include "fxmst/degree.hpp"
#include "fxmst/distance.hpp"
#include "fxmst/errors.hpp"
#include "fxmst/format.hpp"
#include "fxmst/graph_export.hpp"
#include "fxmst/mst.hpp"
#include "fxmst/nullmodel.hpp"
#include "fxmst/panel.hpp"
#include "fxmst/pipeline.hpp"
#include "fxmst/power_fit.hpp"
#include "fxmst/returns.hpp"
#include "fxmst/rng.hpp"
#include "fxmst/spectrum.hpp"
