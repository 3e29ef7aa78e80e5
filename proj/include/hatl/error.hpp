#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hatl
{

enum class error_kind
{
    schema,
    dangling_reference,
    partial_transition,
    degree_range,
    unavailable_action,
    parse,
    unknown_connective,
    negative_bound,
    arity,
    unknown_atom,
    no_match,
    state_blowup,
    invalid_strategy,
    non_convergence,
    limit_exceeded,
};

[[nodiscard]] std::string_view to_string( error_kind kind );

// Single exception type for the library; callers dispatch on kind().
class error : public std::runtime_error
{
    error_kind _kind;

public:
    error( error_kind kind, const std::string& what )
            : std::runtime_error( std::string( to_string( kind ) ) + ": " + what ), _kind{ kind }
    {
    }

    [[nodiscard]] error_kind kind() const noexcept { return _kind; }
};

} // namespace hatl
