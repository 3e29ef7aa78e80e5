#pragma once

#include "hatl/strategy.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace hatl
{

inline constexpr state_id no_state = std::numeric_limits<state_id>::max();

// (model state, remaining coalition budget, remaining resource per coalition
// member, DFA state per recall rule).
struct arena_config
{
    state_id state = no_state;
    std::uint64_t budget = 0;
    std::vector<std::uint64_t> resources;
    std::vector<std::uint32_t> dfa_states;

    bool operator==( const arena_config& ) const = default;
};

struct arena_edge
{
    std::size_t target;
    std::uint64_t joint_code;
    std::uint64_t coalition_cost;
};

// Strategy-restricted product of the model. Configuration 0 is the exhausted
// sink: it self-loops and every atom is 0 there.
struct arena
{
    static constexpr std::size_t sink = 0;

    std::vector<agent_id> coalition;
    std::uint64_t budget = 0;
    std::vector<arena_config> configs;
    std::vector<std::vector<arena_edge>> edges;
    // initial[s]: configuration (s, b, res, dfas after s)
    std::vector<std::size_t> initial;

    [[nodiscard]] std::size_t config_count() const { return configs.size(); }
};

// Throws invalid_strategy if a member has no applicable rule somewhere.
[[nodiscard]] arena build_arena_memoryless( const rfcgs& m, const collective_memoryless& sigma, std::uint64_t b,
                                            degree tau_guard = default_tau_guard );
// dfas[i][j]: compiled regex of rule j of member i
[[nodiscard]] arena build_arena_recall( const rfcgs& m, const collective_recall& sigma,
                                        const std::vector<std::vector<guard_dfa>>& dfas, std::uint64_t b,
                                        degree tau_guard = default_tau_guard );
[[nodiscard]] std::vector<std::vector<guard_dfa>> compile_strategy( const collective_recall& sigma );

// |St| * (b+1) * prod(res_a + 1) * prod over recall rules of DFA sizes
[[nodiscard]] std::uint64_t config_bound( const rfcgs& m, const std::vector<agent_id>& coalition, std::uint64_t b,
                                          std::uint64_t dfa_product = 1 );

enum class transition_mode
{
    crisp,
    labelled,
};

struct fuzzy_kripke
{
    struct edge
    {
        std::size_t to;
        degree r;
    };

    // succ[s]: one entry per distinct successor
    std::vector<std::vector<edge>> succ;
    // model state behind each node (no_state for the sink)
    std::vector<state_id> origin;
    // V[s][p]
    std::vector<std::vector<degree>> valuation;
    std::vector<std::size_t> initial;

    [[nodiscard]] std::size_t size() const { return succ.size(); }
};

// crisp: R = 1 on every edge. labelled: R = max over parallel edges of
// index/(|Labels|+1), index 1-based in the joint-action order.
[[nodiscard]] fuzzy_kripke to_fuzzy_kripke( const rfcgs& m, const arena& a, transition_mode mode );

// Degree map over model states pulled back to the nodes; the sink gets 0.
[[nodiscard]] std::vector<degree> pull_back( const fuzzy_kripke& k, const std::vector<degree>& model_map );

struct depth_bound_result
{
    std::uint64_t value;
    bool saturated;
};

inline constexpr std::uint64_t default_depth_ceiling = std::uint64_t{ 1 } << 40;

// nstates * 2^(2k^2) * prod(r + 1), saturating at ceiling.
[[nodiscard]] depth_bound_result depth_bound( std::uint64_t nstates, std::uint64_t k,
                                              const std::vector<std::uint64_t>& resources,
                                              std::uint64_t ceiling = default_depth_ceiling );

// Text listing of configurations and edges.
[[nodiscard]] std::string dump( const rfcgs& m, const arena& a );

} // namespace hatl
