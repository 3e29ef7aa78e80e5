#pragma once

#include "hatl/strategy.hpp"

#include <vector>

namespace hatl
{

struct enumeration_options
{
    complexity_metric metric = complexity_metric::symbols;
    degree tau_guard = default_tau_guard;
    // caps used under the rules metric, where k says nothing about guard size
    std::size_t max_guard_symbols = 3;
    std::size_t max_regex_size = 3;
};

// Guards over the model's pool built with true, !, &, |, in nondecreasing
// symbol count, one representative per truth table over all states. Tables
// that are constant (tautology or contradiction) are left out.
[[nodiscard]] std::vector<guard_expr> guard_vocabulary( const rfcgs& m, std::size_t max_symbols,
                                                        degree tau_guard = default_tau_guard );

// Every regex of size <= max_size over {true} plus the guard vocabulary,
// in nondecreasing size. Stars of stars and empty languages are dropped.
[[nodiscard]] std::vector<guard_regex> regex_vocabulary( const rfcgs& m, std::size_t max_size,
                                                         degree tau_guard = default_tau_guard );

// Member strategies of one agent with complexity <= k and every rule cost and
// the summed rule cost within the agent's resource; canonical order.
[[nodiscard]] std::vector<memoryless_strategy> enumerate_member_memoryless( const rfcgs& m, agent_id a, std::size_t k,
                                                                            const enumeration_options& opts );
[[nodiscard]] std::vector<recall_strategy> enumerate_member_recall( const rfcgs& m, agent_id a, std::size_t k,
                                                                    const enumeration_options& opts );

// Collective candidates: total complexity <= k, summed static cost <= b.
// Ordered by total complexity, then lexicographically by (guard, action) rule
// indices with each default rule last.
[[nodiscard]] std::vector<collective_memoryless> enumerate_memoryless( const rfcgs& m,
                                                                       const std::vector<agent_id>& coalition,
                                                                       std::size_t k, std::uint64_t b,
                                                                       const enumeration_options& opts );
[[nodiscard]] std::vector<collective_recall> enumerate_recall( const rfcgs& m, const std::vector<agent_id>& coalition,
                                                               std::size_t k, std::uint64_t b,
                                                               const enumeration_options& opts );

// Memoryless candidates rewritten with guards g -> True* . g.
[[nodiscard]] std::vector<collective_recall> enumerate_lifted( const rfcgs& m, const std::vector<agent_id>& coalition,
                                                               std::size_t k, std::uint64_t b,
                                                               const enumeration_options& opts );

} // namespace hatl
