#pragma once

// Shared generators and independent reference implementations for tests.

#include "hatl/arena.hpp"
#include "hatl/engine.hpp"
#include "hatl/fuzzy_ctl.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace hatl::testing
{

inline double grid_degree( std::mt19937_64& rng, int steps = 10 )
{
    return static_cast<double>( std::uniform_int_distribution<int>( 0, steps )( rng ) ) / steps;
}

inline std::size_t pick( std::mt19937_64& rng, std::size_t lo, std::size_t hi )
{
    return std::uniform_int_distribution<std::size_t>( lo, hi )( rng );
}

struct random_model_options
{
    std::size_t max_states = 6;
    std::size_t agents = 2;
    std::size_t max_actions = 2;
    std::uint64_t max_cost = 2;
    std::uint64_t max_resource = 3;
    std::uint64_t min_resource = 1;
    // keeps a legal default rule (true, first action) for every agent
    bool first_action_everywhere = true;
    std::size_t min_actions = 1;
};

// Atoms p, q on a 0.1 grid; guard pool p>=0.5 and q<0.5.
inline rfcgs random_model( std::mt19937_64& rng, const random_model_options& o = {} )
{
    rfcgs m;
    const auto n = pick( rng, 1, o.max_states );
    for ( std::size_t a = 0; a < o.agents; ++a )
    {
        agent_def ag{ "a" + std::to_string( a ), {}, pick( rng, std::min( o.min_resource, o.max_resource ), o.max_resource ) };
        const auto na = pick( rng, std::min( o.min_actions, o.max_actions ), o.max_actions );
        for ( std::size_t i = 0; i < na; ++i )
            ag.actions.push_back( { "x" + std::to_string( i ), pick( rng, 0, o.max_cost ) } );
        m.agents.push_back( ag );
    }
    m.atoms = { "p", "q" };
    m.guard_pool = { guard_atom{ "p", comparator::ge, 0.5 }, guard_atom{ "q", comparator::lt, 0.5 } };
    for ( std::size_t s = 0; s < n; ++s )
    {
        m.states.push_back( "s" + std::to_string( s ) );
        m.labels.push_back( { grid_degree( rng ), grid_degree( rng ) } );
    }
    m.availability.assign( o.agents, std::vector<std::vector<action_id>>( n ) );
    for ( std::size_t a = 0; a < o.agents; ++a )
        for ( std::size_t s = 0; s < n; ++s )
        {
            auto& av = m.availability[ a ][ s ];
            for ( action_id i = 0; i < m.agents[ a ].actions.size(); ++i )
                if ( ( i == 0 && o.first_action_everywhere ) || pick( rng, 0, 2 ) > 0 )
                    av.push_back( i );
            if ( av.empty() )
                av.push_back( pick( rng, 0, m.agents[ a ].actions.size() - 1 ) );
        }
    m.transitions.assign( n, {} );
    for ( std::size_t s = 0; s < n; ++s )
        for ( const auto& joint : available_joint_actions( m, s ) )
            m.transitions[ s ].emplace( m.joint_code( joint ), pick( rng, 0, n - 1 ) );
    m.initial = 0;
    return m;
}

inline fuzzy_kripke random_fks( std::mt19937_64& rng, std::size_t max_states, bool boolean )
{
    fuzzy_kripke k;
    const auto n = pick( rng, 1, max_states );
    k.succ.resize( n );
    for ( std::size_t s = 0; s < n; ++s )
    {
        const auto out = pick( rng, 1, std::min<std::size_t>( n, 3 ) );
        std::vector<std::size_t> targets( n );
        for ( std::size_t t = 0; t < n; ++t )
            targets[ t ] = t;
        std::shuffle( targets.begin(), targets.end(), rng );
        for ( std::size_t i = 0; i < out; ++i )
            k.succ[ s ].push_back( { targets[ i ], boolean ? double( pick( rng, 0, 1 ) ) : grid_degree( rng, 4 ) } );
        k.origin.push_back( s );
        k.initial.push_back( s );
    }
    return k;
}

inline degree_map random_map( std::mt19937_64& rng, std::size_t n, bool boolean )
{
    degree_map d( n );
    for ( auto& x : d )
        x = boolean ? double( pick( rng, 0, 1 ) ) : grid_degree( rng );
    return d;
}

enum class lasso_op
{
    until,
    release,
};

// Reference for lfp_until / gfp_release: for every lasso from s (simple path
// closed by its first repeat) iterate the one-step recurrence along the lasso
// to stabilization, then take max (E) or min (A) over lassos.
inline degree_map lasso_oracle( const fuzzy_kripke& k, quantifier q, lasso_op op, const degree_map& phi1,
                                const degree_map& phi2 )
{
    const auto n = k.size();
    degree_map out( n );
    for ( std::size_t s0 = 0; s0 < n; ++s0 )
    {
        degree best = q == quantifier::exists ? 0.0 : 1.0;
        std::vector<std::size_t> path{ s0 };
        std::vector<degree> weights;
        std::function<void()> grow = [ & ] {
            for ( const auto& e : k.succ[ path.back() ] )
            {
                const auto it = std::find( path.begin(), path.end(), e.to );
                weights.push_back( e.r );
                if ( it != path.end() )
                {
                    const auto loop = static_cast<std::size_t>( it - path.begin() );
                    const auto len = path.size();
                    std::vector<degree> z( len, op == lasso_op::until ? 0.0 : 1.0 );
                    for ( bool changed = true; changed; )
                    {
                        changed = false;
                        for ( std::size_t i = len; i-- > 0; )
                        {
                            const auto nxt = z[ i + 1 < len ? i + 1 : loop ];
                            const auto r = weights[ i ];
                            const auto step = q == quantifier::exists ? std::min( r, nxt ) : std::max( 1.0 - r, nxt );
                            const auto v = op == lasso_op::until
                                                   ? std::max( phi2[ path[ i ] ], std::min( phi1[ path[ i ] ], step ) )
                                                   : std::min( phi2[ path[ i ] ], std::max( phi1[ path[ i ] ], step ) );
                            if ( v != z[ i ] )
                            {
                                z[ i ] = v;
                                changed = true;
                            }
                        }
                    }
                    best = q == quantifier::exists ? std::max( best, z[ 0 ] ) : std::min( best, z[ 0 ] );
                }
                else
                {
                    path.push_back( e.to );
                    grow();
                    path.pop_back();
                }
                weights.pop_back();
            }
        };
        grow();
        out[ s0 ] = best;
    }
    return out;
}

// Textbook set-based CTL over edges with R = 1, for {0,1} instances.
// until: E/A[phi1 U phi2]; release: E/A[phi1 R phi2] via duality.
inline std::vector<bool> classical_ctl( const fuzzy_kripke& k, quantifier q, lasso_op op, const std::vector<bool>& a,
                                        const std::vector<bool>& b )
{
    const auto n = k.size();
    auto live = [ & ]( std::size_t s ) {
        std::vector<std::size_t> out;
        for ( const auto& e : k.succ[ s ] )
            if ( e.r >= 1.0 )
                out.push_back( e.to );
        return out;
    };
    // E/A[x U y] by worklist
    auto until = [ & ]( quantifier qq, const std::vector<bool>& x, const std::vector<bool>& y ) {
        std::vector<bool> sat = y;
        for ( bool changed = true; changed; )
        {
            changed = false;
            for ( std::size_t s = 0; s < n; ++s )
            {
                if ( sat[ s ] || !x[ s ] )
                    continue;
                const auto next = live( s );
                bool ok = qq == quantifier::exists ? false : true;
                for ( auto t : next )
                    ok = qq == quantifier::exists ? ok || sat[ t ] : ok && sat[ t ];
                if ( ok )
                {
                    sat[ s ] = true;
                    changed = true;
                }
            }
        }
        return sat;
    };
    if ( op == lasso_op::until )
        return until( q, a, b );
    // E[a R b] = !A[!a U !b], A[a R b] = !E[!a U !b]
    std::vector<bool> na( n ), nb( n );
    for ( std::size_t s = 0; s < n; ++s )
    {
        na[ s ] = !a[ s ];
        nb[ s ] = !b[ s ];
    }
    auto r = until( q == quantifier::exists ? quantifier::forall : quantifier::exists, na, nb );
    for ( std::size_t s = 0; s < n; ++s )
        r[ s ] = !r[ s ];
    return r;
}

} // namespace hatl::testing
