#pragma once

#include "qednp/csv.hpp"
#include "qednp/emitter.hpp"
#include "qednp/errors.hpp"
#include "qednp/grid.hpp"
#include "qednp/jc.hpp"
#include "qednp/ldos.hpp"
#include "qednp/phonon.hpp"
#include "qednp/quadrature.hpp"
#include "qednp/quantum_dot.hpp"
#include "qednp/resonance.hpp"
#include "qednp/spectrum.hpp"
#include "qednp/units.hpp"
#include "qednp/waveguide.hpp"
