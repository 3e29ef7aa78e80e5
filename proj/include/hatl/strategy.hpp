#pragma once

#include "hatl/guard.hpp"
#include "hatl/regex.hpp"

#include <json.hpp>

#include <span>
#include <variant>
#include <vector>

namespace hatl
{

enum class complexity_metric
{
    symbols,
    rules,
};

struct memoryless_rule
{
    guard_expr guard;
    action_id action;

    bool operator==( const memoryless_rule& ) const = default;
};

// Ordered guarded actions; the last rule is (true, default action).
struct memoryless_strategy
{
    agent_id agent = 0;
    std::vector<memoryless_rule> rules;

    [[nodiscard]] std::size_t length() const { return rules.size(); }
    bool operator==( const memoryless_strategy& ) const = default;
};

struct recall_rule
{
    guard_regex regex;
    action_id action;

    bool operator==( const recall_rule& ) const = default;
};

// Last rule is (True* . True, default action).
struct recall_strategy
{
    agent_id agent = 0;
    std::vector<recall_rule> rules;

    [[nodiscard]] std::size_t length() const { return rules.size(); }
    bool operator==( const recall_strategy& ) const = default;
};

// One member per coalition agent, in increasing agent order.
using collective_memoryless = std::vector<memoryless_strategy>;
using collective_recall = std::vector<recall_strategy>;
using collective_strategy = std::variant<collective_memoryless, collective_recall>;

[[nodiscard]] std::size_t complexity( const memoryless_strategy& s, complexity_metric metric );
// symbols: sum of regex sizes, the catch-all default rule counting 0
[[nodiscard]] std::size_t complexity( const recall_strategy& s, complexity_metric metric );
[[nodiscard]] std::size_t complexity( const collective_memoryless& s, complexity_metric metric );
[[nodiscard]] std::size_t complexity( const collective_recall& s, complexity_metric metric );

// Smallest rule whose guard holds at q and whose action is available at q.
// Throws no_match.
[[nodiscard]] std::size_t match_memoryless( const rfcgs& m, const memoryless_strategy& s, state_id q,
                                            degree tau_guard = default_tau_guard );

// Rule selection given each rule's DFA state after the history ending in last.
[[nodiscard]] std::size_t match_recall( const rfcgs& m, const recall_strategy& s, std::span<const guard_dfa> dfas,
                                        std::span<const std::uint32_t> dfa_states, state_id last );
// Convenience form over an explicit history (compiles the regexes).
[[nodiscard]] std::size_t match_recall( const rfcgs& m, const recall_strategy& s, std::span<const state_id> h,
                                        degree tau_guard = default_tau_guard );

// Every rule's action cost fits the agent's resource.
[[nodiscard]] bool static_cost_ok( const rfcgs& m, const memoryless_strategy& s );
[[nodiscard]] bool static_cost_ok( const rfcgs& m, const recall_strategy& s );

// Sum of rule action costs; one use of every rule.
[[nodiscard]] std::uint64_t static_cost( const rfcgs& m, const memoryless_strategy& s );
[[nodiscard]] std::uint64_t static_cost( const rfcgs& m, const recall_strategy& s );
[[nodiscard]] std::uint64_t static_cost( const rfcgs& m, const collective_strategy& s );

// States where match is defined.
[[nodiscard]] std::vector<state_id> dom( const rfcgs& m, const memoryless_strategy& s,
                                         degree tau_guard = default_tau_guard );

// Default-rule discipline and action availability; throws invalid_strategy.
void check_strategy( const rfcgs& m, const memoryless_strategy& s, degree tau_guard = default_tau_guard );
void check_strategy( const rfcgs& m, const recall_strategy& s );

[[nodiscard]] recall_strategy lift( const memoryless_strategy& s );
[[nodiscard]] collective_recall lift( const collective_memoryless& s );

// {agent: [{guard|regex, action, cost}]}
[[nodiscard]] nlohmann::json strategy_to_json( const rfcgs& m, const collective_strategy& s );
// Throws schema / parse errors. Members come back in agent order.
[[nodiscard]] collective_strategy strategy_from_json( const rfcgs& m, const nlohmann::json& j );

[[nodiscard]] std::string to_string( const rfcgs& m, const memoryless_strategy& s );
[[nodiscard]] std::string to_string( const rfcgs& m, const recall_strategy& s );

} // namespace hatl
