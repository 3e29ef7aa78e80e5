#pragma once

#include "hatl/engine.hpp"

#include <json.hpp>

namespace hatl
{

// Machine-readable report; degrees are keyed by state name.
[[nodiscard]] nlohmann::json result_to_json( const rfcgs& m, const check_result& r );
[[nodiscard]] nlohmann::json strategic_to_json( const rfcgs& m, const strategic_result& r );

// Short human summary, one strategy per strategic node.
[[nodiscard]] std::string summarize( const rfcgs& m, const check_result& r );

} // namespace hatl
