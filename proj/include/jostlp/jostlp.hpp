#pragma once

// 1-D short-range scattering (Jost solutions, transmission/reflection,
// zero-resonance detection), dyadic functional-calculus kernels of
// H = -d^2/dx^2 + V, homogeneous dyadic-block norms and their perturbed/
// free comparison, cross-localization decay measurements, and the
// dyadic-shell Riesz scaling study.

#include "jostlp/besov.hpp"
#include "jostlp/blocks.hpp"
#include "jostlp/config.hpp"
#include "jostlp/errors.hpp"
#include "jostlp/estimates.hpp"
#include "jostlp/grid.hpp"
#include "jostlp/gronwall.hpp"
#include "jostlp/holder.hpp"
#include "jostlp/io.hpp"
#include "jostlp/jost_field.hpp"
#include "jostlp/kernels.hpp"
#include "jostlp/math.hpp"
#include "jostlp/potential.hpp"
#include "jostlp/reference.hpp"
#include "jostlp/run.hpp"
#include "jostlp/scattering.hpp"
#include "jostlp/shells.hpp"
#include "jostlp/verify.hpp"
#include "jostlp/volterra.hpp"
#include "jostlp/window.hpp"
