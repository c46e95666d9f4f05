#pragma once

// JSON documents emitted by the command-line tool.

#include <json.hpp>

#include "bcnf/prover.hpp"
#include "bcnf/sim.hpp"

namespace bcnf {

nlohmann::ordered_json outcome_to_json(const ProofOutcome& outcome);

nlohmann::ordered_json classification_to_json(const Classification& c);

// Phase-portrait export: the region polygons, the preimage-fan lines, and a
// post-transient orbit of the origin. Requires a built trapping region.
nlohmann::ordered_json phase_to_json(const Params& params, const ProofOutcome& outcome,
                                     const TrappingRegion& region, const PreimageFan& fan,
                                     int attractor_samples);

}  // namespace bcnf
