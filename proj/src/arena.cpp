#include "hatl/arena.hpp"

#include "hatl/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace hatl
{

namespace
{

struct key_hash
{
    std::size_t operator()( const std::vector<std::uint64_t>& v ) const
    {
        std::size_t h = v.size();
        for ( auto x : v )
            h ^= std::hash<std::uint64_t>{}( x ) + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 );
        return h;
    }
};

void flatten_into( const arena_config& c, std::vector<std::uint64_t>& k )
{
    k.assign( { c.state, c.budget } );
    k.insert( k.end(), c.resources.begin(), c.resources.end() );
    k.insert( k.end(), c.dfa_states.begin(), c.dfa_states.end() );
}

// Breadth-first product construction shared by both strategy kinds.
// prescribe(config) gives the coalition members' actions; advance(dfas, s)
// gives the DFA states after moving to s.
template <typename Prescribe, typename Advance, typename Start>
arena explore( const rfcgs& m, std::vector<agent_id> coalition, std::uint64_t b, Prescribe prescribe, Advance advance,
               Start start )
{
    arena a;
    a.coalition = std::move( coalition );
    a.budget = b;
    a.configs.push_back( arena_config{} );
    a.edges.push_back( { arena_edge{ arena::sink, 0, 0 } } );

    std::unordered_map<std::vector<std::uint64_t>, std::size_t, key_hash> index;
    std::vector<std::size_t> queue;
    std::vector<std::uint64_t> scratch;
    auto intern = [ & ]( arena_config c ) {
        flatten_into( c, scratch );
        if ( const auto it = index.find( scratch ); it != index.end() )
            return it->second;
        const auto id = a.configs.size();
        index.emplace( scratch, id );
        a.configs.push_back( std::move( c ) );
        a.edges.emplace_back();
        queue.push_back( id );
        return id;
    };

    std::vector<std::uint64_t> resources;
    for ( auto ag : a.coalition )
        resources.push_back( m.agents[ ag ].resource );
    for ( state_id s = 0; s < m.state_count(); ++s )
        a.initial.push_back( intern( arena_config{ s, b, resources, start( s ) } ) );

    std::vector<bool> member( m.agent_count(), false );
    std::vector<std::size_t> slot( m.agent_count(), 0 );
    for ( std::size_t i = 0; i < a.coalition.size(); ++i )
    {
        member[ a.coalition[ i ] ] = true;
        slot[ a.coalition[ i ] ] = i;
    }

    // best joint code per target; index state_count() stands for the sink
    constexpr auto none = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> best_code( m.state_count() + 1, none );
    std::vector<state_id> touched;
    for ( std::size_t done = 0; done < queue.size(); ++done )
    {
        const auto id = queue[ done ];
        const arena_config current = a.configs[ id ];
        const auto s = current.state;
        const std::vector<action_id> fixed = prescribe( current );

        std::vector<std::vector<action_id>> choices( m.agent_count() );
        for ( agent_id ag = 0; ag < m.agent_count(); ++ag )
            choices[ ag ] = member[ ag ] ? std::vector<action_id>{ fixed[ slot[ ag ] ] } : m.available( ag, s );

        std::uint64_t cost = 0;
        bool affordable = true;
        for ( std::size_t i = 0; i < a.coalition.size(); ++i )
        {
            const auto c = m.cost( a.coalition[ i ], fixed[ i ] );
            cost += c;
            affordable = affordable && c <= current.resources[ i ];
        }
        affordable = affordable && cost <= current.budget;

        std::vector<arena_edge> out;
        std::vector<std::uint64_t> left = current.resources;
        if ( affordable )
            for ( std::size_t i = 0; i < a.coalition.size(); ++i )
                left[ i ] -= m.cost( a.coalition[ i ], fixed[ i ] );

        // Parallel edges to one target are merged, keeping the largest joint
        // code: every consumer only needs the max label per target.
        std::vector<std::size_t> digit( m.agent_count(), 0 );
        joint_action joint( m.agent_count() );
        touched.clear();
        bool more = true;
        while ( more )
        {
            for ( agent_id ag = 0; ag < m.agent_count(); ++ag )
                joint[ ag ] = choices[ ag ][ digit[ ag ] ];
            const auto code = m.joint_code( joint );
            const auto next = affordable ? m.transitions[ s ].at( code ) : m.state_count();
            if ( best_code[ next ] == none )
                touched.push_back( next );
            if ( best_code[ next ] == none || code > best_code[ next ] )
                best_code[ next ] = code;
            // next mixed-radix digit, last agent fastest
            more = false;
            for ( std::size_t ag = m.agent_count(); ag-- > 0; )
            {
                if ( ++digit[ ag ] < choices[ ag ].size() )
                {
                    more = true;
                    break;
                }
                digit[ ag ] = 0;
            }
        }
        for ( const auto next : touched )
        {
            const auto code = std::exchange( best_code[ next ], none );
            if ( !affordable )
                out.push_back( { arena::sink, code, cost } );
            else
                out.push_back(
                        { intern( arena_config{ next, current.budget - cost, left, advance( current.dfa_states, next ) } ),
                          code, cost } );
        }
        a.edges[ id ] = std::move( out );
    }
    return a;
}

std::vector<agent_id> members_of( const auto& sigma )
{
    std::vector<agent_id> out;
    for ( const auto& s : sigma )
        out.push_back( s.agent );
    for ( std::size_t i = 1; i < out.size(); ++i )
        if ( out[ i - 1 ] >= out[ i ] )
            throw error( error_kind::invalid_strategy, "collective members must be in increasing agent order" );
    return out;
}

} // namespace

arena build_arena_memoryless( const rfcgs& m, const collective_memoryless& sigma, std::uint64_t b, degree tau_guard )
{
    // memoryless choices depend only on the model state
    std::vector<std::vector<action_id>> cache( m.state_count() );
    auto prescribe = [ & ]( const arena_config& c ) {
        auto& slot = cache[ c.state ];
        if ( slot.empty() && !sigma.empty() )
            for ( const auto& s : sigma )
            {
                try
                {
                    slot.push_back( s.rules[ match_memoryless( m, s, c.state, tau_guard ) ].action );
                }
                catch ( const error& e )
                {
                    throw error( error_kind::invalid_strategy, e.what() );
                }
            }
        return slot;
    };
    auto advance = []( const std::vector<std::uint32_t>&, state_id ) { return std::vector<std::uint32_t>{}; };
    auto start = []( state_id ) { return std::vector<std::uint32_t>{}; };
    return explore( m, members_of( sigma ), b, prescribe, advance, start );
}

std::vector<std::vector<guard_dfa>> compile_strategy( const collective_recall& sigma )
{
    std::vector<std::vector<guard_dfa>> out;
    for ( const auto& s : sigma )
    {
        out.emplace_back();
        for ( const auto& r : s.rules )
            out.back().push_back( compile_regex( r.regex ) );
    }
    return out;
}

arena build_arena_recall( const rfcgs& m, const collective_recall& sigma,
                          const std::vector<std::vector<guard_dfa>>& dfas, std::uint64_t b, degree tau_guard )
{
    auto advance = [ & ]( const std::vector<std::uint32_t>& qs, state_id next ) {
        std::vector<std::uint32_t> out;
        out.reserve( qs.size() );
        std::size_t flat = 0;
        for ( const auto& member : dfas )
            for ( const auto& d : member )
                out.push_back( dfa_step( m, d, qs[ flat++ ], next, tau_guard ) );
        return out;
    };
    auto start = [ & ]( state_id s ) {
        std::vector<std::uint32_t> init;
        for ( const auto& member : dfas )
            for ( const auto& d : member )
                init.push_back( static_cast<std::uint32_t>( d.initial ) );
        return advance( init, s );
    };
    auto prescribe = [ & ]( const arena_config& c ) {
        std::vector<action_id> out;
        std::size_t flat = 0;
        for ( std::size_t i = 0; i < sigma.size(); ++i )
        {
            const std::span<const std::uint32_t> qs( c.dfa_states.data() + flat, dfas[ i ].size() );
            flat += dfas[ i ].size();
            try
            {
                out.push_back( sigma[ i ].rules[ match_recall( m, sigma[ i ], dfas[ i ], qs, c.state ) ].action );
            }
            catch ( const error& e )
            {
                throw error( error_kind::invalid_strategy, e.what() );
            }
        }
        return out;
    };
    return explore( m, members_of( sigma ), b, prescribe, advance, start );
}

std::uint64_t config_bound( const rfcgs& m, const std::vector<agent_id>& coalition, std::uint64_t b,
                            std::uint64_t dfa_product )
{
    std::uint64_t bound = m.state_count() * ( b + 1 ) * dfa_product;
    for ( auto a : coalition )
        bound *= m.agents[ a ].resource + 1;
    return bound;
}

fuzzy_kripke to_fuzzy_kripke( const rfcgs& m, const arena& a, transition_mode mode )
{
    fuzzy_kripke k;
    const auto n = a.config_count();
    k.succ.resize( n );
    k.origin.resize( n );
    k.valuation.resize( n );
    k.initial = a.initial;
    const double labels = static_cast<double>( m.joint_action_count() );
    for ( std::size_t c = 0; c < n; ++c )
    {
        k.origin[ c ] = a.configs[ c ].state;
        k.valuation[ c ] = c == arena::sink ? std::vector<degree>( m.atoms.size(), 0.0 ) : m.labels[ a.configs[ c ].state ];
        std::map<std::size_t, degree> merged;
        for ( const auto& e : a.edges[ c ] )
        {
            degree r = 1.0;
            if ( mode == transition_mode::labelled && c != arena::sink )
                r = static_cast<double>( e.joint_code + 1 ) / ( labels + 1.0 );
            auto& slot = merged[ e.target ];
            slot = std::max( slot, r );
        }
        for ( const auto& [ to, r ] : merged )
            k.succ[ c ].push_back( { to, r } );
    }
    return k;
}

std::vector<degree> pull_back( const fuzzy_kripke& k, const std::vector<degree>& model_map )
{
    std::vector<degree> out( k.size(), 0.0 );
    for ( std::size_t c = 0; c < k.size(); ++c )
        if ( k.origin[ c ] != no_state )
            out[ c ] = model_map[ k.origin[ c ] ];
    return out;
}

namespace
{

bool saturating_mul( std::uint64_t& acc, std::uint64_t factor, std::uint64_t ceiling )
{
    if ( factor != 0 && acc > ceiling / factor )
    {
        acc = ceiling;
        return true;
    }
    acc *= factor;
    if ( acc > ceiling )
    {
        acc = ceiling;
        return true;
    }
    return false;
}

} // namespace

depth_bound_result depth_bound( std::uint64_t nstates, std::uint64_t k, const std::vector<std::uint64_t>& resources,
                                std::uint64_t ceiling )
{
    std::uint64_t value = 1;
    bool saturated = saturating_mul( value, nstates, ceiling );
    // 2^(2k^2) as repeated doubling so large k saturates instead of overflowing
    const std::uint64_t exponent = k > 4 ? 64 : 2 * k * k;
    for ( std::uint64_t i = 0; i < exponent && !saturated; ++i )
        saturated = saturating_mul( value, 2, ceiling );
    for ( auto r : resources )
        if ( !saturated )
            saturated = saturating_mul( value, r + 1, ceiling );
    return { saturated ? ceiling : value, saturated };
}

std::string dump( const rfcgs& m, const arena& a )
{
    std::ostringstream out;
    out << "configs " << a.config_count() << "\n";
    for ( std::size_t c = 0; c < a.config_count(); ++c )
    {
        const auto& cfg = a.configs[ c ];
        out << c << ": ";
        if ( c == arena::sink )
            out << "exhausted";
        else
        {
            out << m.states[ cfg.state ] << " b=" << cfg.budget << " res=[";
            for ( std::size_t i = 0; i < cfg.resources.size(); ++i )
                out << ( i ? "," : "" ) << cfg.resources[ i ];
            out << "]";
            if ( !cfg.dfa_states.empty() )
            {
                out << " dfa=[";
                for ( std::size_t i = 0; i < cfg.dfa_states.size(); ++i )
                    out << ( i ? "," : "" ) << cfg.dfa_states[ i ];
                out << "]";
            }
        }
        out << "\n";
        for ( const auto& e : a.edges[ c ] )
        {
            out << "  ";
            const auto joint = m.decode_joint( e.joint_code );
            for ( agent_id ag = 0; ag < joint.size(); ++ag )
                out << ( ag ? "," : "" ) << m.agents[ ag ].actions[ joint[ ag ] ].name;
            out << " cost=" << e.coalition_cost << " -> " << e.target << "\n";
        }
    }
    return out.str();
}

} // namespace hatl
