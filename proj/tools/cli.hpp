#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hatl::cli
{

inline constexpr int exit_true = 0;
inline constexpr int exit_false = 1;
inline constexpr int exit_error = 2;
inline constexpr int exit_usage = 64;
inline constexpr int exit_input = 65;

// args excludes the program name.
int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace hatl::cli
