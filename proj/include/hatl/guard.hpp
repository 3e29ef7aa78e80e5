#pragma once

#include "hatl/model.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hatl
{

// Crisp Boolean condition over fuzzy-labelled states. Immutable, cheap to copy
// (children are shared).
class guard_expr
{
public:
    enum class kind
    {
        truth,
        compare,
        // bare atom p, read as p >= tau_guard
        atom,
        negation,
        conjunction,
        disjunction,
    };

    static guard_expr truth();
    static guard_expr compare( std::string atom, comparator op, degree threshold );
    static guard_expr atom( std::string atom );
    static guard_expr negate( guard_expr operand );
    static guard_expr conjoin( guard_expr lhs, guard_expr rhs );
    static guard_expr disjoin( guard_expr lhs, guard_expr rhs );

    [[nodiscard]] kind node_kind() const;
    [[nodiscard]] const std::string& atom_name() const;
    [[nodiscard]] comparator op() const;
    [[nodiscard]] degree threshold() const;
    // operand of a negation, or left child of a binary node
    [[nodiscard]] const guard_expr& lhs() const;
    [[nodiscard]] const guard_expr& rhs() const;

    [[nodiscard]] bool is_true() const { return node_kind() == kind::truth; }

    // One per leaf (true, comparison, bare atom) plus one per operator.
    [[nodiscard]] std::size_t symbol_count() const;
    [[nodiscard]] std::string to_string() const;

    bool operator==( const guard_expr& other ) const;

    // implementation detail
    struct node;

private:
    explicit guard_expr( std::shared_ptr<const node> n ) : _node{ std::move( n ) } {}
    std::shared_ptr<const node> _node;
};

inline constexpr degree default_tau_guard = 0.5;

[[nodiscard]] guard_expr parse_guard( std::string_view text );

// Throws unknown_atom.
[[nodiscard]] bool eval_guard( const rfcgs& m, state_id s, const guard_expr& g, degree tau_guard = default_tau_guard );
[[nodiscard]] inline std::size_t symbol_count( const guard_expr& g ) { return g.symbol_count(); }

// Truth value of g at every state of m.
[[nodiscard]] std::vector<bool> guard_truth_table( const rfcgs& m, const guard_expr& g, degree tau_guard );

[[nodiscard]] guard_expr guard_from_pool( const guard_atom& ga );

// Shortest decimal text that reads back to the same double.
[[nodiscard]] std::string format_degree( double value );

} // namespace hatl
