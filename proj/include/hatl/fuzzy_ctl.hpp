#pragma once

#include "hatl/arena.hpp"

#include <vector>

namespace hatl
{

using degree_map = std::vector<degree>;

enum class quantifier
{
    exists,
    forall,
};

struct fixpoint_stats
{
    std::size_t iterations = 0;
};

// EX phi (s) = max over successors of min(R, phi)
[[nodiscard]] degree_map ex_map( const fuzzy_kripke& k, const degree_map& phi );
// AX phi (s) = min over successors of max(1 - R, phi)
[[nodiscard]] degree_map ax_map( const fuzzy_kripke& k, const degree_map& phi );

// Least fixpoint of Z = max(phi2, min(phi1, QX Z)) from all-zero, iterated to
// exact stabilization. Throws non_convergence past |S| * |value set| rounds.
[[nodiscard]] degree_map lfp_until( const fuzzy_kripke& k, quantifier q, const degree_map& phi1,
                                    const degree_map& phi2, fixpoint_stats* stats = nullptr );
// Greatest fixpoint of Z = min(phi2, max(phi1, QX Z)) from all-one.
[[nodiscard]] degree_map gfp_release( const fuzzy_kripke& k, quantifier q, const degree_map& phi1,
                                      const degree_map& phi2, fixpoint_stats* stats = nullptr );

inline constexpr degree default_tau_true = 1.0;

// {s | map(s) >= tau}
[[nodiscard]] std::vector<std::size_t> meta_truth( const degree_map& map, degree tau = default_tau_true );

} // namespace hatl
