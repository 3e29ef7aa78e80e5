#pragma once

#include "hatl/engine.hpp"

#include <string>

namespace hatl
{

struct demo
{
    std::string name;
    rfcgs model;
    std::string formula;
    check_config config;
};

// Carrier and villain drones on the {0,0.3,0.6,1}^2 grid. The carrier has
// to reach the safe zone [0.3,0.6]^2 without the villain getting closer
// than 0.5.
[[nodiscard]] demo drone_demo( std::uint64_t budget = 5 );

// Carrier and drone cooperating against an idle villain; two routes reach
// the goal, costing 5 and 6.
[[nodiscard]] demo coalition_demo( std::uint64_t budget = 5 );

// The two-rule-per-member plan of cost 5 and the straight-line plan of cost 6.
[[nodiscard]] collective_memoryless coalition_witness( const rfcgs& m );
[[nodiscard]] collective_memoryless coalition_naive( const rfcgs& m );

} // namespace hatl
