#include "hatl/strategy.hpp"

#include "hatl/error.hpp"

#include <algorithm>

namespace hatl
{

namespace
{

bool is_default_regex( const guard_regex& r ) { return r == guard_regex::any_history(); }

} // namespace

std::size_t complexity( const memoryless_strategy& s, complexity_metric metric )
{
    if ( metric == complexity_metric::rules )
        return s.rules.size();
    std::size_t total = 0;
    for ( const auto& r : s.rules )
        total += r.guard.symbol_count();
    return total;
}

std::size_t complexity( const recall_strategy& s, complexity_metric metric )
{
    if ( metric == complexity_metric::rules )
        return s.rules.size();
    std::size_t total = 0;
    for ( std::size_t i = 0; i < s.rules.size(); ++i )
    {
        const bool catch_all = i + 1 == s.rules.size() && is_default_regex( s.rules[ i ].regex );
        if ( !catch_all )
            total += s.rules[ i ].regex.size();
    }
    return total;
}

std::size_t complexity( const collective_memoryless& s, complexity_metric metric )
{
    std::size_t total = 0;
    for ( const auto& member : s )
        total += complexity( member, metric );
    return total;
}

std::size_t complexity( const collective_recall& s, complexity_metric metric )
{
    std::size_t total = 0;
    for ( const auto& member : s )
        total += complexity( member, metric );
    return total;
}

std::size_t match_memoryless( const rfcgs& m, const memoryless_strategy& s, state_id q, degree tau_guard )
{
    for ( std::size_t i = 0; i < s.rules.size(); ++i )
        if ( eval_guard( m, q, s.rules[ i ].guard, tau_guard ) && m.is_available( s.agent, q, s.rules[ i ].action ) )
            return i;
    throw error( error_kind::no_match, "no rule of " + m.agents[ s.agent ].name + " applies at " + m.states[ q ] );
}

std::size_t match_recall( const rfcgs& m, const recall_strategy& s, std::span<const guard_dfa> dfas,
                          std::span<const std::uint32_t> dfa_states, state_id last )
{
    for ( std::size_t i = 0; i < s.rules.size(); ++i )
        if ( dfas[ i ].accepting[ dfa_states[ i ] ] && m.is_available( s.agent, last, s.rules[ i ].action ) )
            return i;
    throw error( error_kind::no_match, "no rule of " + m.agents[ s.agent ].name + " applies at " + m.states[ last ] );
}

std::size_t match_recall( const rfcgs& m, const recall_strategy& s, std::span<const state_id> h, degree tau_guard )
{
    if ( h.empty() )
        throw error( error_kind::no_match, "empty history" );
    std::vector<guard_dfa> dfas;
    std::vector<std::uint32_t> states;
    for ( const auto& r : s.rules )
    {
        dfas.push_back( compile_regex( r.regex ) );
        auto q = static_cast<std::uint32_t>( dfas.back().initial );
        for ( auto st : h )
            q = dfa_step( m, dfas.back(), q, st, tau_guard );
        states.push_back( q );
    }
    return match_recall( m, s, dfas, states, h.back() );
}

bool static_cost_ok( const rfcgs& m, const memoryless_strategy& s )
{
    return std::all_of( s.rules.begin(), s.rules.end(),
                        [ & ]( const auto& r ) { return m.cost( s.agent, r.action ) <= m.agents[ s.agent ].resource; } );
}

bool static_cost_ok( const rfcgs& m, const recall_strategy& s )
{
    return std::all_of( s.rules.begin(), s.rules.end(),
                        [ & ]( const auto& r ) { return m.cost( s.agent, r.action ) <= m.agents[ s.agent ].resource; } );
}

std::uint64_t static_cost( const rfcgs& m, const memoryless_strategy& s )
{
    std::uint64_t total = 0;
    for ( const auto& r : s.rules )
        total += m.cost( s.agent, r.action );
    return total;
}

std::uint64_t static_cost( const rfcgs& m, const recall_strategy& s )
{
    std::uint64_t total = 0;
    for ( const auto& r : s.rules )
        total += m.cost( s.agent, r.action );
    return total;
}

std::uint64_t static_cost( const rfcgs& m, const collective_strategy& s )
{
    return std::visit(
            [ & ]( const auto& members ) {
                std::uint64_t total = 0;
                for ( const auto& member : members )
                    total += static_cost( m, member );
                return total;
            },
            s );
}

std::vector<state_id> dom( const rfcgs& m, const memoryless_strategy& s, degree tau_guard )
{
    std::vector<state_id> out;
    for ( state_id q = 0; q < m.state_count(); ++q )
    {
        const bool defined = std::any_of( s.rules.begin(), s.rules.end(), [ & ]( const auto& r ) {
            return eval_guard( m, q, r.guard, tau_guard ) && m.is_available( s.agent, q, r.action );
        } );
        if ( defined )
            out.push_back( q );
    }
    return out;
}

void check_strategy( const rfcgs& m, const memoryless_strategy& s, degree tau_guard )
{
    const auto& name = m.agents.at( s.agent ).name;
    if ( s.rules.empty() || !s.rules.back().guard.is_true() )
        throw error( error_kind::invalid_strategy, name + ": last rule must be (true, action)" );
    for ( const auto& r : s.rules )
        if ( r.action >= m.agents[ s.agent ].actions.size() )
            throw error( error_kind::invalid_strategy, name + ": unknown action" );
    // the default action has to be playable everywhere, so match is total
    for ( state_id q = 0; q < m.state_count(); ++q )
        if ( !m.is_available( s.agent, q, s.rules.back().action ) )
            throw error( error_kind::invalid_strategy,
                         name + ": default action unavailable at " + m.states[ q ] );
    (void)tau_guard;
}

void check_strategy( const rfcgs& m, const recall_strategy& s )
{
    const auto& name = m.agents.at( s.agent ).name;
    if ( s.rules.empty() || !is_default_regex( s.rules.back().regex ) )
        throw error( error_kind::invalid_strategy, name + ": last rule must be ({true}*.{true}, action)" );
    for ( const auto& r : s.rules )
        if ( r.action >= m.agents[ s.agent ].actions.size() )
            throw error( error_kind::invalid_strategy, name + ": unknown action" );
    for ( state_id q = 0; q < m.state_count(); ++q )
        if ( !m.is_available( s.agent, q, s.rules.back().action ) )
            throw error( error_kind::invalid_strategy,
                         name + ": default action unavailable at " + m.states[ q ] );
}

recall_strategy lift( const memoryless_strategy& s )
{
    recall_strategy out{ s.agent, {} };
    for ( std::size_t i = 0; i < s.rules.size(); ++i )
    {
        const bool last = i + 1 == s.rules.size();
        out.rules.push_back( { last && s.rules[ i ].guard.is_true() ? guard_regex::any_history()
                                                                    : guard_regex::lift( s.rules[ i ].guard ),
                               s.rules[ i ].action } );
    }
    return out;
}

collective_recall lift( const collective_memoryless& s )
{
    collective_recall out;
    for ( const auto& member : s )
        out.push_back( lift( member ) );
    return out;
}

namespace
{

template <typename Strategy>
nlohmann::json member_json( const rfcgs& m, const Strategy& s )
{
    auto rules = nlohmann::json::array();
    for ( const auto& r : s.rules )
    {
        nlohmann::json j;
        if constexpr ( std::is_same_v<Strategy, memoryless_strategy> )
            j[ "guard" ] = r.guard.to_string();
        else
            j[ "regex" ] = r.regex.to_string();
        j[ "action" ] = m.agents[ s.agent ].actions[ r.action ].name;
        j[ "cost" ] = m.cost( s.agent, r.action );
        rules.push_back( std::move( j ) );
    }
    return rules;
}

} // namespace

nlohmann::json strategy_to_json( const rfcgs& m, const collective_strategy& s )
{
    auto out = nlohmann::json::object();
    std::visit(
            [ & ]( const auto& members ) {
                for ( const auto& member : members )
                    out[ m.agents[ member.agent ].name ] = member_json( m, member );
            },
            s );
    return out;
}

collective_strategy strategy_from_json( const rfcgs& m, const nlohmann::json& j )
{
    if ( !j.is_object() )
        throw error( error_kind::schema, "strategy must be an object keyed by agent" );
    bool recall = false;
    for ( const auto& [ name, rules ] : j.items() )
        for ( const auto& r : rules )
            recall = recall || r.contains( "regex" );

    collective_memoryless memoryless;
    collective_recall with_recall;
    for ( const auto& [ name, rules ] : j.items() )
    {
        const auto a = m.find_agent( name );
        if ( !a )
            throw error( error_kind::dangling_reference, "unknown agent " + name );
        if ( !rules.is_array() )
            throw error( error_kind::schema, "rules of " + name + " must be a list" );
        memoryless_strategy ms{ *a, {} };
        recall_strategy rs{ *a, {} };
        for ( const auto& r : rules )
        {
            const auto act_name = r.at( "action" ).get<std::string>();
            const auto act = m.find_action( *a, act_name );
            if ( !act )
                throw error( error_kind::dangling_reference, "unknown action " + act_name + " of " + name );
            if ( recall )
            {
                auto regex = r.contains( "regex" ) ? parse_regex( r.at( "regex" ).get<std::string>() )
                                                   : guard_regex::lift( parse_guard( r.at( "guard" ).get<std::string>() ) );
                rs.rules.push_back( { std::move( regex ), *act } );
            }
            else
                ms.rules.push_back( { parse_guard( r.at( "guard" ).get<std::string>() ), *act } );
        }
        memoryless.push_back( std::move( ms ) );
        with_recall.push_back( std::move( rs ) );
    }
    auto by_agent = []( const auto& x, const auto& y ) { return x.agent < y.agent; };
    if ( recall )
    {
        std::sort( with_recall.begin(), with_recall.end(), by_agent );
        return with_recall;
    }
    std::sort( memoryless.begin(), memoryless.end(), by_agent );
    return memoryless;
}

std::string to_string( const rfcgs& m, const memoryless_strategy& s )
{
    std::string out = "{";
    for ( std::size_t i = 0; i < s.rules.size(); ++i )
        out += ( i ? ", (" : "(" ) + s.rules[ i ].guard.to_string() + ", " +
               m.agents[ s.agent ].actions[ s.rules[ i ].action ].name + ")";
    return out + "}";
}

std::string to_string( const rfcgs& m, const recall_strategy& s )
{
    std::string out = "{";
    for ( std::size_t i = 0; i < s.rules.size(); ++i )
        out += ( i ? ", (" : "(" ) + s.rules[ i ].regex.to_string() + ", " +
               m.agents[ s.agent ].actions[ s.rules[ i ].action ].name + ")";
    return out + "}";
}

} // namespace hatl
