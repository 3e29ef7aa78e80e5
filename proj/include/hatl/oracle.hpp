#pragma once

#include "hatl/engine.hpp"

#include <vector>

namespace hatl
{

struct oracle_limits
{
    std::size_t max_states = 6;
    std::size_t max_candidates = 100'000;
    std::size_t max_paths = 5'000'000;
};

// Independent check of one strategic node (memoryless candidates, crisp
// transitions, non-strategic operands): for every candidate and start state
// it enumerates the strategy-consistent plays as lassos and evaluates the
// path semantics on each. Throws limit_exceeded.
[[nodiscard]] degree_map brute_force_oracle( const rfcgs& m, const formula& node, const check_config& cfg,
                                             const oracle_limits& limits = {} );

// Same search with Boolean semantics; operand degrees are read as >= 0.5.
[[nodiscard]] std::vector<bool> classical_oracle( const rfcgs& m, const formula& node, const check_config& cfg,
                                                  const oracle_limits& limits = {} );

} // namespace hatl
