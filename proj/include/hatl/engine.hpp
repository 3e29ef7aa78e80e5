#pragma once

#include "hatl/enumerate.hpp"
#include "hatl/formula.hpp"
#include "hatl/fuzzy_ctl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hatl
{

enum class strategy_mode
{
    memoryless,
    recall,
};

struct check_config
{
    strategy_mode mode = strategy_mode::memoryless;
    complexity_metric metric = complexity_metric::symbols;
    degree tau_guard = default_tau_guard;
    degree tau_true = default_tau_true;
    transition_mode transitions = transition_mode::crisp;
    std::uint64_t depth_cap = 5;
    // 0: hardware concurrency
    std::size_t workers = 1;
    std::size_t max_guard_symbols = 3;
    std::size_t max_regex_size = 3;
    // recall mode: only memoryless-expressible candidates (g -> True* . g)
    bool lifted_recall = false;
    // stop a strategic node once its initial-state degree reaches tau_true;
    // the rest of the degree map is then a lower bound
    bool verdict_only = false;
};

struct check_stats
{
    std::size_t candidates = 0;
    std::size_t arenas = 0;
    std::size_t arena_configs = 0;
    std::size_t fixpoint_iterations = 0;
    std::size_t unfolding_nodes = 0;
    // deepest unfolding level used by any recall branch
    std::uint64_t max_unfolding_depth = 0;
    // smallest min(L, cap) used; 0 when no unfolding ran
    std::uint64_t effective_depth = 0;
    bool depth_cap_hit = false;
    double wall_ms = 0.0;
};

struct strategic_result
{
    std::string formula;
    degree_map degrees;
    std::optional<collective_strategy> best;
    degree best_degree = 0.0;
    // sum of the best strategy's rule costs
    std::uint64_t static_cost = 0;
    // largest coalition cost spent at any non-exhausted configuration
    // reachable from the initial one under the best strategy
    std::uint64_t max_spent = 0;
    // largest cost spent when the right operand of U first holds (U only)
    std::optional<std::uint64_t> goal_cost;
};

struct check_result
{
    bool verdict = false;
    degree degree_initial = 0.0;
    degree_map degrees;
    // one per strategic subformula, innermost first
    std::vector<strategic_result> strategic;
    check_stats stats;
};

// Degree map of a state formula over model states; strategic subformulas are
// solved bottom-up.
[[nodiscard]] check_result check( const rfcgs& m, const formula& phi, const check_config& cfg );

// Degree map of the strategic node when the coalition is restricted to the
// single given strategy (operands still solved by check).
[[nodiscard]] degree_map evaluate_strategy( const rfcgs& m, const formula& node, const collective_strategy& sigma,
                                            const check_config& cfg );

// Degrees and witness costs of one given strategy on a strategic node.
[[nodiscard]] strategic_result inspect_strategy( const rfcgs& m, const formula& node, const collective_strategy& sigma,
                                                 const check_config& cfg );

// Coalition agent ids of a strategic node; throws dangling_reference.
[[nodiscard]] std::vector<agent_id> resolve_coalition( const rfcgs& m, const formula& node );

// Per-state degrees of a non-strategic leaf (constant, atom, comparison).
[[nodiscard]] degree_map leaf_map( const rfcgs& m, const formula& leaf );

} // namespace hatl
