#pragma once

// Umbrella header for the mathematical core (no HTTP).

#include "qlab/canonical.hpp"
#include "qlab/engine.hpp"
#include "qlab/errors.hpp"
#include "qlab/gvector.hpp"
#include "qlab/laurent.hpp"
#include "qlab/oracle.hpp"
#include "qlab/quiver_json.hpp"
#include "qlab/report.hpp"
#include "qlab/skew_matrix.hpp"
#include "qlab/verifier.hpp"
#include "qlab/vertex_set.hpp"
