#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hatl
{

using agent_id = std::size_t;
using state_id = std::size_t;
using atom_id = std::size_t;
// Index into one agent's own action list.
using action_id = std::size_t;
using degree = double;

// One local action per agent, in agent order.
using joint_action = std::vector<action_id>;

enum class comparator
{
    lt,
    le,
    gt,
    ge,
    eq,
};

[[nodiscard]] std::string_view to_string( comparator cmp );
[[nodiscard]] std::optional<comparator> parse_comparator( std::string_view text );
[[nodiscard]] bool compare( degree value, comparator cmp, degree threshold );

struct action_def
{
    std::string name;
    std::uint64_t cost = 0;

    bool operator==( const action_def& ) const = default;
};

struct agent_def
{
    std::string name;
    std::vector<action_def> actions;
    std::uint64_t resource = 0;

    bool operator==( const agent_def& ) const = default;
};

// Vocabulary entry for strategy-guard enumeration.
struct guard_atom
{
    std::string atom;
    comparator op = comparator::lt;
    degree threshold = 0.0;

    bool operator==( const guard_atom& ) const = default;
};

// Resource-bounded fuzzy concurrent game structure. Plain data: a value may
// violate its invariants until validate() says otherwise; load_model() only
// returns valid instances.
struct rfcgs
{
    std::vector<agent_def> agents;
    std::vector<std::string> atoms;
    std::vector<guard_atom> guard_pool;
    std::vector<std::string> states;
    state_id initial = 0;
    // labels[s][p]
    std::vector<std::vector<degree>> labels;
    // availability[a][s]: sorted local action indices
    std::vector<std::vector<std::vector<action_id>>> availability;
    // transitions[s]: joint_code -> target
    std::vector<std::unordered_map<std::uint64_t, state_id>> transitions;

    bool operator==( const rfcgs& ) const = default;

    [[nodiscard]] std::size_t agent_count() const { return agents.size(); }
    [[nodiscard]] std::size_t state_count() const { return states.size(); }

    [[nodiscard]] std::optional<agent_id> find_agent( std::string_view name ) const;
    [[nodiscard]] std::optional<atom_id> find_atom( std::string_view name ) const;
    [[nodiscard]] std::optional<state_id> find_state( std::string_view name ) const;
    [[nodiscard]] std::optional<action_id> find_action( agent_id a, std::string_view name ) const;

    [[nodiscard]] std::uint64_t cost( agent_id a, action_id act ) const { return agents[ a ].actions[ act ].cost; }
    [[nodiscard]] const std::vector<action_id>& available( agent_id a, state_id s ) const
    {
        return availability[ a ][ s ];
    }
    [[nodiscard]] bool is_available( agent_id a, state_id s, action_id act ) const;

    // Mixed-radix code over the agents' full action lists; agent 0 is the most
    // significant digit. Also the 0-based index of the joint action in the
    // global label ordering.
    [[nodiscard]] std::uint64_t joint_code( std::span<const action_id> joint ) const;
    [[nodiscard]] joint_action decode_joint( std::uint64_t code ) const;
    [[nodiscard]] std::uint64_t joint_action_count() const;
};

enum class violation_kind
{
    no_agents,
    no_states,
    empty_actions,
    initial_state,
    label_shape,
    degree_range,
    empty_availability,
    unknown_action,
    partial_transition,
    extra_transition,
    dangling_target,
    guard_atom,
    duplicate_name,
};

[[nodiscard]] std::string_view to_string( violation_kind kind );

struct violation
{
    violation_kind kind;
    std::string detail;
};

[[nodiscard]] std::vector<violation> validate( const rfcgs& m );

// Parses and validates a model file (JSON). Throws hatl::error.
[[nodiscard]] rfcgs load_model( std::string_view text );
[[nodiscard]] rfcgs load_model_file( const std::string& path );
// Fully explicit JSON form; load_model( serialize_model( m ) ) == m.
[[nodiscard]] std::string serialize_model( const rfcgs& m );

// t(s, c); throws unavailable_action if some c_a is not available at s.
[[nodiscard]] state_id successor( const rfcgs& m, state_id s, std::span<const action_id> joint );

// All available joint actions at s, in mixed-radix order over availability.
[[nodiscard]] std::vector<joint_action> available_joint_actions( const rfcgs& m, state_id s );

} // namespace hatl
