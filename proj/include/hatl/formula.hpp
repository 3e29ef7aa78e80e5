#pragma once

#include "hatl/model.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hatl
{

enum class connective
{
    min,
    max,
    neg,
    impl,
    // arithmetic mean; not one of the classical fuzzy connectives
    avg,
};

[[nodiscard]] std::string_view to_string( connective fn );

// Accepts min, max, not/neg, impl, avg.
[[nodiscard]] connective connective_from_name( std::string_view name );

// Throws arity / degree_range.
[[nodiscard]] degree eval_connective( connective fn, std::span<const degree> args );
[[nodiscard]] degree eval_connective( std::string_view name, std::span<const degree> args );

enum class path_op
{
    next,
    until,
    release,
};

// State formula. G and F never appear: the parser rewrites them to
// (false R phi) and (true U phi).
struct formula
{
    enum class kind
    {
        constant,
        atom,
        // crisp comparison p ~ c, degree 1 or 0
        compare,
        apply,
        strategic,
    };

    kind node_kind = kind::constant;
    degree value = 0.0;
    std::string atom;
    comparator op = comparator::lt;
    degree threshold = 0.0;
    connective fn = connective::min;
    std::vector<std::string> coalition;
    std::uint64_t k_bound = 0;
    std::uint64_t b_bound = 0;
    path_op path = path_op::next;
    // apply: arguments; strategic: path operands (one for X, two for U/R)
    std::vector<formula> children;

    bool operator==( const formula& ) const = default;

    static formula constant( degree v );
    static formula make_atom( std::string name );
    static formula make_compare( std::string name, comparator op, degree threshold );
    static formula make_apply( connective fn, std::vector<formula> args );
    static formula make_strategic( std::vector<std::string> coalition, std::uint64_t k, std::uint64_t b, path_op path,
                                   std::vector<formula> operands );

    [[nodiscard]] bool is_strategic() const { return node_kind == kind::strategic; }
    [[nodiscard]] std::size_t strategic_depth() const;
    [[nodiscard]] std::string to_string() const;
};

// Throws parse / unknown_connective / negative_bound / arity.
[[nodiscard]] formula parse_formula( std::string_view text );

} // namespace hatl
