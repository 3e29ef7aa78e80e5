#pragma once

#include "hatl/guard.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hatl
{

// Regular expression whose letters are guards; a literal g matches one state
// satisfying g.
class guard_regex
{
public:
    enum class kind
    {
        literal,
        concat,
        alt,
        star,
    };

    static guard_regex literal( guard_expr g );
    static guard_regex concat( guard_regex lhs, guard_regex rhs );
    static guard_regex alt( guard_regex lhs, guard_regex rhs );
    static guard_regex star( guard_regex operand );
    // True* . g, the recall form of a memoryless guard
    static guard_regex lift( guard_expr g );
    // True* . True, the catch-all default rule
    static guard_regex any_history();

    [[nodiscard]] kind node_kind() const;
    [[nodiscard]] const guard_expr& guard() const;
    [[nodiscard]] const guard_regex& lhs() const;
    [[nodiscard]] const guard_regex& rhs() const;

    // literal symbol counts plus one per operator
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::string to_string() const;

    bool operator==( const guard_regex& other ) const;

    // implementation detail
    struct node;

private:
    explicit guard_regex( std::shared_ptr<const node> n ) : _node{ std::move( n ) } {}
    std::shared_ptr<const node> _node;
};

[[nodiscard]] guard_regex parse_regex( std::string_view text );

// Distinct non-True literals of r in first-occurrence order (deduplicated by
// printed text). These are the bits of a letter.
[[nodiscard]] std::vector<guard_expr> regex_literals( const guard_regex& r );

using letter = std::uint32_t;

struct nfa
{
    // literal < 0 marks an epsilon edge; literal_true fires on every letter
    static constexpr int epsilon = -1;
    static constexpr int literal_true = -2;

    struct edge
    {
        std::size_t to;
        int literal;
    };

    std::vector<std::vector<edge>> edges;
    std::size_t start = 0;
    std::size_t accept = 0;
    std::vector<guard_expr> literals;
    std::size_t regex_size = 0;

    [[nodiscard]] std::size_t state_count() const { return edges.size(); }
};

[[nodiscard]] nfa regex_to_nfa( const guard_regex& r );
[[nodiscard]] bool nfa_accepts( const nfa& a, std::span<const letter> word );

struct guard_dfa
{
    std::vector<guard_expr> literals;
    std::size_t initial = 0;
    std::vector<bool> accepting;
    // delta[q][letter]
    std::vector<std::vector<std::uint32_t>> delta;

    [[nodiscard]] std::size_t state_count() const { return delta.size(); }
    [[nodiscard]] std::size_t letter_count() const { return std::size_t{ 1 } << literals.size(); }
    [[nodiscard]] std::uint32_t step( std::uint32_t q, letter l ) const { return delta[ q ][ l ]; }
};

// Subset construction over the NFA's literal-edge states. Throws state_blowup
// when the result exceeds 2^(2*size).
[[nodiscard]] guard_dfa nfa_to_dfa( const nfa& a );
[[nodiscard]] inline guard_dfa compile_regex( const guard_regex& r ) { return nfa_to_dfa( regex_to_nfa( r ) ); }

[[nodiscard]] letter letter_of( const rfcgs& m, std::span<const guard_expr> literals, state_id s, degree tau_guard );
[[nodiscard]] std::uint32_t dfa_step( const rfcgs& m, const guard_dfa& d, std::uint32_t q, state_id s, degree tau_guard );

// h non-empty
[[nodiscard]] bool history_matches( const rfcgs& m, const guard_regex& r, std::span<const state_id> h,
                                    degree tau_guard );

} // namespace hatl
