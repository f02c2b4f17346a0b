#pragma once

// Umbrella header: finite-speed causal models versus quantum correlations.
//
//   rational        exact arithmetic and scalar traits
//   complex_matrix  dense complex matrices, tensor products, state vectors
//   quantum         states, binary observables, Born-rule behaviors
//   behavior        multiparty conditional probability tables
//   ch_facets       the 8 Clauser-Horne facets of the 2222 local polytope
//   inequality      the 23-term four-party inequality and its evaluation
//   simplex         exact two-phase simplex with verifiable certificates
//   certifier       polytope programs: the causal bound and marginal feasibility
//   spacetime       v-cones, Lorentz boosts, configuration validation, bounds
//   vcausal_model   finite-speed models, the triangle protocol, message speed
//   io              behavior / config / model / certificate documents

#include "vcausal/behavior.hpp"
#include "vcausal/certifier.hpp"
#include "vcausal/ch_facets.hpp"
#include "vcausal/complex_matrix.hpp"
#include "vcausal/errors.hpp"
#include "vcausal/inequality.hpp"
#include "vcausal/io.hpp"
#include "vcausal/quantum.hpp"
#include "vcausal/rational.hpp"
#include "vcausal/simplex.hpp"
#include "vcausal/spacetime.hpp"
#include "vcausal/vcausal_model.hpp"
