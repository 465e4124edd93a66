#pragma once

#include "magbloch/config.hpp"

#include <exception>
#include <iosfwd>
#include <string>

namespace magbloch {

constexpr long butterfly_q_cap = 200;

// Each command returns the full output text; nothing is written on failure.
std::string cmd_butterfly(const RunConfig& cfg);
std::string cmd_effective(const RunConfig& cfg);
std::string cmd_two_band(const RunConfig& cfg);
std::string cmd_sapt(const RunConfig& cfg);
std::string cmd_oracle_compare(const RunConfig& cfg);

// Fluxes for strong-field commands: explicit fluxes, fluxes matching --delta, or the oracle sweep.
std::vector<RationalFlux> strong_field_fluxes(const RunConfig& cfg);
// Reduced p/q with q <= q_cap and 2πδ² = p/q; ConfigError names the nearest candidate otherwise.
RationalFlux flux_for_delta(double delta, long q_cap = butterfly_q_cap);

// 0 ok, 2 config, 3 numeric, 4 resource.
int exit_code_for(const std::exception& e);
// Validates, dispatches on cfg.command, writes the output; errors go to err with command context.
int run_command(const RunConfig& cfg, std::ostream& err);

} // namespace magbloch
