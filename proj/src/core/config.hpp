#pragma once

#include <string>

#include "core/bounds.hpp"
#include "core/montecarlo.hpp"

namespace adseq {

// Canonicalized JSON (sorted keys, minimal whitespace, shortest
// round-trip numbers). Parsing back the canonical text reproduces it.
std::string canonical_config(const std::string& json_text);

// FNV-1a 64-bit digest of the canonical form, as 16 hex characters.
std::string config_hash_hex(const std::string& json_text);

// Experiment plan from the {map, observable, sim} sections.
SimConfig sim_config_from_json(const std::string& json_text);

// Statistic families requested by sim.stats (default: moments).
unsigned stats_mask_from_json(const std::string& json_text);

// Bound inputs from the {alpha, alpha2, quantile, bounds} sections.
BoundInputs bound_inputs_from_json(const std::string& json_text);

// Evaluates every requested bound over the configured (n, x, p) grids
// and returns one JSON document with a named field per term.
std::string evaluate_bounds_json(const std::string& json_text);

// Serialization helpers shared by the C API.
std::string observable_to_json(const Observable& f);
Observable observable_from_json(const std::string& json_text);
AlphaModel alpha_from_json(const std::string& json_text);
QuantileModel quantile_from_json(const std::string& json_text);

} // namespace adseq
