#include "hatl/oracle.hpp"

#include "hatl/error.hpp"

#include <algorithm>
#include <functional>

namespace hatl
{

namespace
{

// Pointwise evaluation of a formula without strategic subformulas.
degree_map operand_map( const rfcgs& m, const formula& f )
{
    if ( f.is_strategic() )
        throw error( error_kind::limit_exceeded, "oracle supports a single strategic operator" );
    if ( f.node_kind != formula::kind::apply )
        return leaf_map( m, f );
    std::vector<degree_map> args;
    for ( const auto& c : f.children )
        args.push_back( operand_map( m, c ) );
    degree_map out( m.state_count() );
    for ( state_id s = 0; s < m.state_count(); ++s )
    {
        std::vector<degree> at;
        for ( const auto& a : args )
            at.push_back( a[ s ] );
        out[ s ] = eval_connective( f.fn, at );
    }
    return out;
}

struct play_config
{
    // no_state marks the exhausted sink
    state_id state;
    std::uint64_t budget;
    std::vector<std::uint64_t> resources;

    bool operator==( const play_config& ) const = default;
};

// Successor configurations under one candidate, opponents ranging freely.
std::vector<play_config> step( const rfcgs& m, const collective_memoryless& sigma, const play_config& c,
                               degree tau_guard )
{
    if ( c.state == no_state )
        return { c };
    std::vector<action_id> fixed;
    std::uint64_t cost = 0;
    bool affordable = true;
    for ( std::size_t i = 0; i < sigma.size(); ++i )
    {
        const auto& s = sigma[ i ];
        const auto act = s.rules[ match_memoryless( m, s, c.state, tau_guard ) ].action;
        fixed.push_back( act );
        cost += m.cost( s.agent, act );
        affordable = affordable && m.cost( s.agent, act ) <= c.resources[ i ];
    }
    affordable = affordable && cost <= c.budget;
    if ( !affordable )
        return { play_config{ no_state, 0, {} } };

    std::vector<play_config> out;
    for ( const auto& joint : available_joint_actions( m, c.state ) )
    {
        bool consistent = true;
        for ( std::size_t i = 0; i < sigma.size(); ++i )
            consistent = consistent && joint[ sigma[ i ].agent ] == fixed[ i ];
        if ( !consistent )
            continue;
        play_config next{ successor( m, c.state, joint ), c.budget - cost, c.resources };
        for ( std::size_t i = 0; i < sigma.size(); ++i )
            next.resources[ i ] -= m.cost( sigma[ i ].agent, fixed[ i ] );
        if ( std::find( out.begin(), out.end(), next ) == out.end() )
            out.push_back( std::move( next ) );
    }
    return out;
}

// Value of the path operator on the lasso seq[0..n) looping back to seq[loop].
template <typename T>
T lasso_value( path_op op, const std::vector<T>& v1, const std::vector<T>& v2, std::size_t loop,
               std::function<T( T, T )> lo, std::function<T( T, T )> hi, T bottom, T top )
{
    const std::size_t n = v1.size();
    auto at = [ & ]( std::size_t p ) { return p < n ? p : loop + ( p - n ) % ( n - loop ); };
    const std::size_t horizon = n + ( n - loop );
    if ( op == path_op::next )
        return v2[ at( 1 ) ];
    if ( op == path_op::until )
    {
        // max_j min(v2_j, min_{i<j} v1_i)
        T best = bottom, prefix = top;
        for ( std::size_t p = 0; p < horizon; ++p )
        {
            best = hi( best, lo( v2[ at( p ) ], prefix ) );
            prefix = lo( prefix, v1[ at( p ) ] );
        }
        return best;
    }
    // min_j max(v2_j, max_{i<j} v1_i)
    T worst = top, prefix = bottom;
    for ( std::size_t p = 0; p < horizon; ++p )
    {
        worst = lo( worst, hi( v2[ at( p ) ], prefix ) );
        prefix = hi( prefix, v1[ at( p ) ] );
    }
    return worst;
}

struct search
{
    const rfcgs& m;
    const formula& node;
    const check_config& cfg;
    const oracle_limits& limits;
    degree_map phi1;
    degree_map phi2;
    std::vector<agent_id> coalition;
    std::vector<collective_memoryless> candidates;
    std::size_t paths = 0;

    search( const rfcgs& m_, const formula& node_, const check_config& cfg_, const oracle_limits& limits_ )
        : m{ m_ }, node{ node_ }, cfg{ cfg_ }, limits{ limits_ }
    {
        if ( !node.is_strategic() )
            throw error( error_kind::limit_exceeded, "oracle needs a strategic formula" );
        if ( m.state_count() > limits.max_states )
            throw error( error_kind::limit_exceeded, "model too large for the oracle" );
        if ( cfg.transitions != transition_mode::crisp || cfg.mode != strategy_mode::memoryless )
            throw error( error_kind::limit_exceeded, "oracle covers memoryless crisp checks only" );
        if ( node.path == path_op::next )
        {
            phi2 = operand_map( m, node.children.at( 0 ) );
            phi1.assign( m.state_count(), 0.0 );
        }
        else
        {
            phi1 = operand_map( m, node.children.at( 0 ) );
            phi2 = operand_map( m, node.children.at( 1 ) );
        }
        coalition = resolve_coalition( m, node );
        enumeration_options opts{ cfg.metric, cfg.tau_guard, cfg.max_guard_symbols, cfg.max_regex_size };
        candidates = enumerate_memoryless( m, coalition, node.k_bound, node.b_bound, opts );
        if ( candidates.size() > limits.max_candidates )
            throw error( error_kind::limit_exceeded, "too many candidates for the oracle" );
    }

    // Calls visit(seq, loop) for every simple play prefix closed into a lasso.
    template <typename Visit>
    void lassos( const collective_memoryless& sigma, state_id s, Visit visit )
    {
        std::vector<std::uint64_t> resources;
        for ( auto a : coalition )
            resources.push_back( m.agents[ a ].resource );
        std::vector<play_config> seq{ play_config{ s, node.b_bound, resources } };
        std::function<void()> grow = [ & ] {
            for ( const auto& next : step( m, sigma, seq.back(), cfg.tau_guard ) )
            {
                const auto it = std::find( seq.begin(), seq.end(), next );
                if ( it != seq.end() )
                {
                    if ( ++paths > limits.max_paths )
                        throw error( error_kind::limit_exceeded, "too many plays for the oracle" );
                    visit( seq, static_cast<std::size_t>( it - seq.begin() ) );
                    continue;
                }
                seq.push_back( next );
                grow();
                seq.pop_back();
            }
        };
        grow();
    }

    degree value( const play_config& c, const degree_map& phi ) const
    {
        return c.state == no_state ? 0.0 : phi[ c.state ];
    }
};

} // namespace

degree_map brute_force_oracle( const rfcgs& m, const formula& node, const check_config& cfg,
                               const oracle_limits& limits )
{
    search sr( m, node, cfg, limits );
    degree_map out( m.state_count(), 0.0 );
    const std::function<degree( degree, degree )> lo = []( degree x, degree y ) { return std::min( x, y ); };
    const std::function<degree( degree, degree )> hi = []( degree x, degree y ) { return std::max( x, y ); };
    for ( const auto& sigma : sr.candidates )
        for ( state_id s = 0; s < m.state_count(); ++s )
        {
            degree worst = 1.0;
            sr.lassos( sigma, s, [ & ]( const std::vector<play_config>& seq, std::size_t loop ) {
                std::vector<degree> v1, v2;
                for ( const auto& c : seq )
                {
                    v1.push_back( sr.value( c, sr.phi1 ) );
                    v2.push_back( sr.value( c, sr.phi2 ) );
                }
                worst = std::min( worst, lasso_value<degree>( node.path, v1, v2, loop, lo, hi, 0.0, 1.0 ) );
            } );
            out[ s ] = std::max( out[ s ], worst );
        }
    return out;
}

std::vector<bool> classical_oracle( const rfcgs& m, const formula& node, const check_config& cfg,
                                    const oracle_limits& limits )
{
    search sr( m, node, cfg, limits );
    std::vector<bool> out( m.state_count(), false );
    const std::function<int( int, int )> conj = []( int x, int y ) { return x & y; };
    const std::function<int( int, int )> disj = []( int x, int y ) { return x | y; };
    for ( const auto& sigma : sr.candidates )
        for ( state_id s = 0; s < m.state_count(); ++s )
        {
            if ( out[ s ] )
                continue;
            bool all = true;
            sr.lassos( sigma, s, [ & ]( const std::vector<play_config>& seq, std::size_t loop ) {
                std::vector<int> v1, v2;
                for ( const auto& c : seq )
                {
                    v1.push_back( sr.value( c, sr.phi1 ) >= 0.5 );
                    v2.push_back( sr.value( c, sr.phi2 ) >= 0.5 );
                }
                all = all && lasso_value<int>( node.path, v1, v2, loop, conj, disj, 0, 1 );
            } );
            out[ s ] = all;
        }
    return out;
}

} // namespace hatl
