#pragma once

// Umbrella header: exact sandpile-group computations on sinked graphs,
// circle-valued harmonic representations, rectangle morphisms, and the
// verification suites.

#include "sandpile/dynamics.hpp"
#include "sandpile/graph.hpp"
#include "sandpile/harmonic.hpp"
#include "sandpile/int_matrix.hpp"
#include "sandpile/json_io.hpp"
#include "sandpile/linalg.hpp"
#include "sandpile/numeric.hpp"
#include "sandpile/rect.hpp"
#include "sandpile/verify.hpp"
