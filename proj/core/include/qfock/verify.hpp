#pragma once

#include <vector>

#include "qfock/config.hpp"
#include "qfock/report.hpp"

namespace qfock {

// Runs every module-level invariant against the configured deformation:
// braid relation, symmetrizer oracle equivalence, reduced-word
// independence, inner-product laws, positivity, adjoint duality,
// commutation seeds and bounds, Wick laws, projection and conditional
// expectation laws, route agreement and decay domination on the configured
// experiments. Randomized checks draw from the config seed.
std::vector<InvariantResult> run_invariant_suite(const RunConfig& config,
                                                 GramCache& cache);

}  // namespace qfock
