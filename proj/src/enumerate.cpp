#include "hatl/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

namespace hatl
{

std::vector<guard_expr> guard_vocabulary( const rfcgs& m, std::size_t max_symbols, degree tau_guard )
{
    using table = std::vector<bool>;
    std::set<table> seen;
    // by_size[n]: representatives with n symbols, including the constant ones
    // so that e.g. !p stays reachable when p is constant
    std::vector<std::vector<std::pair<guard_expr, table>>> by_size( max_symbols + 1 );
    std::vector<guard_expr> out;

    auto offer = [ & ]( guard_expr g, table t, std::size_t n ) {
        if ( !seen.insert( t ).second )
            return;
        const bool constant = std::all_of( t.begin(), t.end(), []( bool x ) { return x; } ) ||
                              std::none_of( t.begin(), t.end(), []( bool x ) { return x; } );
        if ( !constant )
            out.push_back( g );
        by_size[ n ].emplace_back( std::move( g ), std::move( t ) );
    };

    if ( max_symbols >= 1 )
        for ( const auto& ga : m.guard_pool )
        {
            auto g = guard_from_pool( ga );
            auto t = guard_truth_table( m, g, tau_guard );
            offer( std::move( g ), std::move( t ), 1 );
        }
    for ( std::size_t n = 2; n <= max_symbols; ++n )
    {
        for ( std::size_t i = 0; i < by_size[ n - 1 ].size(); ++i )
        {
            const auto [ g, t ] = by_size[ n - 1 ][ i ];
            table neg( t.size() );
            for ( std::size_t s = 0; s < t.size(); ++s )
                neg[ s ] = !t[ s ];
            offer( guard_expr::negate( g ), std::move( neg ), n );
        }
        for ( std::size_t left = 1; left + 1 < n; ++left )
        {
            const std::size_t right = n - 1 - left;
            for ( std::size_t i = 0; i < by_size[ left ].size(); ++i )
                for ( std::size_t j = 0; j < by_size[ right ].size(); ++j )
                {
                    const auto [ gl, tl ] = by_size[ left ][ i ];
                    const auto [ gr, tr ] = by_size[ right ][ j ];
                    table conj( tl.size() ), disj( tl.size() );
                    for ( std::size_t s = 0; s < tl.size(); ++s )
                    {
                        conj[ s ] = tl[ s ] && tr[ s ];
                        disj[ s ] = tl[ s ] || tr[ s ];
                    }
                    offer( guard_expr::conjoin( gl, gr ), std::move( conj ), n );
                    offer( guard_expr::disjoin( gl, gr ), std::move( disj ), n );
                }
        }
    }
    return out;
}

std::vector<guard_regex> regex_vocabulary( const rfcgs& m, std::size_t max_size, degree tau_guard )
{
    std::vector<std::vector<guard_regex>> by_size( max_size + 1 );
    if ( max_size >= 1 )
        by_size[ 1 ].push_back( guard_regex::literal( guard_expr::truth() ) );
    for ( auto& g : guard_vocabulary( m, max_size, tau_guard ) )
        by_size[ g.symbol_count() ].push_back( guard_regex::literal( g ) );
    for ( std::size_t n = 2; n <= max_size; ++n )
    {
        for ( const auto& r : by_size[ n - 1 ] )
            if ( r.node_kind() != guard_regex::kind::star )
                by_size[ n ].push_back( guard_regex::star( r ) );
        for ( std::size_t left = 1; left + 1 < n; ++left )
            for ( const auto& a : by_size[ left ] )
                for ( const auto& b : by_size[ n - 1 - left ] )
                {
                    by_size[ n ].push_back( guard_regex::concat( a, b ) );
                    by_size[ n ].push_back( guard_regex::alt( a, b ) );
                }
    }
    std::vector<guard_regex> out;
    for ( auto& level : by_size )
        for ( auto& r : level )
        {
            const auto d = compile_regex( r );
            if ( std::any_of( d.accepting.begin(), d.accepting.end(), []( bool x ) { return x; } ) )
                out.push_back( std::move( r ) );
        }
    return out;
}

namespace
{

constexpr std::size_t default_item = std::numeric_limits<std::size_t>::max();

using rule_key = std::vector<std::pair<std::size_t, action_id>>;

struct rule_option
{
    std::size_t item;
    action_id action;
    std::size_t weight;
};

struct member_plan
{
    rule_key rules;
    std::size_t complexity;
    std::uint64_t cost;
};

// All rule sequences over distinct items followed by a default rule.
std::vector<member_plan> plan_members( const rfcgs& m, agent_id a, const std::vector<rule_option>& options,
                                       const std::vector<action_id>& defaults, std::size_t default_weight,
                                       std::size_t k )
{
    std::vector<member_plan> plans;
    const auto resource = m.agents[ a ].resource;
    rule_key current;
    std::set<std::size_t> used;

    std::function<void( std::size_t, std::uint64_t )> grow = [ & ]( std::size_t weight, std::uint64_t cost ) {
        for ( auto d : defaults )
            if ( weight + default_weight <= k && cost + m.cost( a, d ) <= resource )
            {
                auto rules = current;
                rules.emplace_back( default_item, d );
                plans.push_back( { std::move( rules ), weight + default_weight, cost + m.cost( a, d ) } );
            }
        for ( const auto& o : options )
        {
            if ( used.count( o.item ) || weight + o.weight + default_weight > k ||
                 cost + m.cost( a, o.action ) > resource )
                continue;
            used.insert( o.item );
            current.emplace_back( o.item, o.action );
            grow( weight + o.weight, cost + m.cost( a, o.action ) );
            current.pop_back();
            used.erase( o.item );
        }
    };
    grow( 0, 0 );
    std::sort( plans.begin(), plans.end(), []( const member_plan& x, const member_plan& y ) {
        return std::tie( x.complexity, x.rules ) < std::tie( y.complexity, y.rules );
    } );
    return plans;
}

std::vector<action_id> default_actions( const rfcgs& m, agent_id a )
{
    std::vector<action_id> out;
    for ( action_id act = 0; act < m.agents[ a ].actions.size(); ++act )
    {
        bool everywhere = m.cost( a, act ) <= m.agents[ a ].resource;
        for ( state_id s = 0; everywhere && s < m.state_count(); ++s )
            everywhere = m.is_available( a, s, act );
        if ( everywhere )
            out.push_back( act );
    }
    return out;
}

std::vector<member_plan> memoryless_plans( const rfcgs& m, agent_id a, std::size_t k, const enumeration_options& opts,
                                           std::vector<guard_expr>& vocabulary )
{
    if ( k == 0 )
        return {};
    const bool rules = opts.metric == complexity_metric::rules;
    vocabulary = guard_vocabulary( m, rules ? opts.max_guard_symbols : k - 1, opts.tau_guard );
    std::vector<rule_option> options;
    for ( std::size_t g = 0; g < vocabulary.size(); ++g )
    {
        const auto table = guard_truth_table( m, vocabulary[ g ], opts.tau_guard );
        for ( action_id act = 0; act < m.agents[ a ].actions.size(); ++act )
        {
            if ( m.cost( a, act ) > m.agents[ a ].resource )
                continue;
            bool somewhere = false;
            for ( state_id s = 0; !somewhere && s < m.state_count(); ++s )
                somewhere = table[ s ] && m.is_available( a, s, act );
            if ( somewhere )
                options.push_back( { g, act, rules ? 1 : vocabulary[ g ].symbol_count() } );
        }
    }
    return plan_members( m, a, options, default_actions( m, a ), 1, k );
}

std::vector<member_plan> recall_plans( const rfcgs& m, agent_id a, std::size_t k, const enumeration_options& opts,
                                       std::vector<guard_regex>& vocabulary )
{
    const bool rules = opts.metric == complexity_metric::rules;
    if ( rules && k == 0 )
        return {};
    vocabulary = regex_vocabulary( m, rules ? opts.max_regex_size : k, opts.tau_guard );
    std::vector<rule_option> options;
    for ( std::size_t r = 0; r < vocabulary.size(); ++r )
        for ( action_id act = 0; act < m.agents[ a ].actions.size(); ++act )
        {
            if ( m.cost( a, act ) > m.agents[ a ].resource )
                continue;
            bool somewhere = false;
            for ( state_id s = 0; !somewhere && s < m.state_count(); ++s )
                somewhere = m.is_available( a, s, act );
            if ( somewhere )
                options.push_back( { r, act, rules ? 1 : vocabulary[ r ].size() } );
        }
    return plan_members( m, a, options, default_actions( m, a ), rules ? 1 : 0, k );
}

memoryless_strategy build_memoryless( agent_id a, const member_plan& p, const std::vector<guard_expr>& vocabulary )
{
    memoryless_strategy s{ a, {} };
    for ( const auto& [ item, act ] : p.rules )
        s.rules.push_back( { item == default_item ? guard_expr::truth() : vocabulary[ item ], act } );
    return s;
}

recall_strategy build_recall( agent_id a, const member_plan& p, const std::vector<guard_regex>& vocabulary )
{
    recall_strategy s{ a, {} };
    for ( const auto& [ item, act ] : p.rules )
        s.rules.push_back( { item == default_item ? guard_regex::any_history() : vocabulary[ item ], act } );
    return s;
}

// Index tuples into per-agent plan lists, in canonical collective order.
std::vector<std::vector<std::size_t>> combine( const std::vector<std::vector<member_plan>>& plans, std::size_t k,
                                               std::uint64_t b )
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> pick;
    std::function<void( std::size_t, std::size_t, std::uint64_t )> walk = [ & ]( std::size_t i, std::size_t weight,
                                                                                  std::uint64_t cost ) {
        if ( i == plans.size() )
        {
            out.push_back( pick );
            return;
        }
        for ( std::size_t j = 0; j < plans[ i ].size(); ++j )
        {
            const auto& p = plans[ i ][ j ];
            if ( weight + p.complexity > k || cost + p.cost > b )
                continue;
            pick.push_back( j );
            walk( i + 1, weight + p.complexity, cost + p.cost );
            pick.pop_back();
        }
    };
    walk( 0, 0, 0 );

    auto key = [ & ]( const std::vector<std::size_t>& t ) {
        std::size_t weight = 0;
        rule_key rules;
        for ( std::size_t i = 0; i < t.size(); ++i )
        {
            const auto& p = plans[ i ][ t[ i ] ];
            weight += p.complexity;
            rules.insert( rules.end(), p.rules.begin(), p.rules.end() );
        }
        return std::make_pair( weight, rules );
    };
    std::vector<std::pair<std::pair<std::size_t, rule_key>, std::size_t>> keyed;
    keyed.reserve( out.size() );
    for ( std::size_t i = 0; i < out.size(); ++i )
        keyed.emplace_back( key( out[ i ] ), i );
    std::sort( keyed.begin(), keyed.end() );
    std::vector<std::vector<std::size_t>> sorted;
    sorted.reserve( out.size() );
    for ( auto& [ k2, i ] : keyed )
        sorted.push_back( std::move( out[ i ] ) );
    return sorted;
}

std::vector<agent_id> sorted_coalition( std::vector<agent_id> coalition )
{
    std::sort( coalition.begin(), coalition.end() );
    coalition.erase( std::unique( coalition.begin(), coalition.end() ), coalition.end() );
    return coalition;
}

} // namespace

std::vector<memoryless_strategy> enumerate_member_memoryless( const rfcgs& m, agent_id a, std::size_t k,
                                                              const enumeration_options& opts )
{
    std::vector<guard_expr> vocabulary;
    std::vector<memoryless_strategy> out;
    for ( const auto& p : memoryless_plans( m, a, k, opts, vocabulary ) )
        out.push_back( build_memoryless( a, p, vocabulary ) );
    return out;
}

std::vector<recall_strategy> enumerate_member_recall( const rfcgs& m, agent_id a, std::size_t k,
                                                      const enumeration_options& opts )
{
    std::vector<guard_regex> vocabulary;
    std::vector<recall_strategy> out;
    for ( const auto& p : recall_plans( m, a, k, opts, vocabulary ) )
        out.push_back( build_recall( a, p, vocabulary ) );
    return out;
}

std::vector<collective_memoryless> enumerate_memoryless( const rfcgs& m, const std::vector<agent_id>& coalition,
                                                         std::size_t k, std::uint64_t b,
                                                         const enumeration_options& opts )
{
    const auto agents = sorted_coalition( coalition );
    std::vector<std::vector<member_plan>> plans;
    std::vector<std::vector<guard_expr>> vocabularies( agents.size() );
    for ( std::size_t i = 0; i < agents.size(); ++i )
        plans.push_back( memoryless_plans( m, agents[ i ], k, opts, vocabularies[ i ] ) );
    std::vector<collective_memoryless> out;
    for ( const auto& t : combine( plans, k, b ) )
    {
        collective_memoryless c;
        for ( std::size_t i = 0; i < t.size(); ++i )
            c.push_back( build_memoryless( agents[ i ], plans[ i ][ t[ i ] ], vocabularies[ i ] ) );
        out.push_back( std::move( c ) );
    }
    return out;
}

std::vector<collective_recall> enumerate_recall( const rfcgs& m, const std::vector<agent_id>& coalition, std::size_t k,
                                                 std::uint64_t b, const enumeration_options& opts )
{
    const auto agents = sorted_coalition( coalition );
    std::vector<std::vector<member_plan>> plans;
    std::vector<std::vector<guard_regex>> vocabularies( agents.size() );
    for ( std::size_t i = 0; i < agents.size(); ++i )
        plans.push_back( recall_plans( m, agents[ i ], k, opts, vocabularies[ i ] ) );
    std::vector<collective_recall> out;
    for ( const auto& t : combine( plans, k, b ) )
    {
        collective_recall c;
        for ( std::size_t i = 0; i < t.size(); ++i )
            c.push_back( build_recall( agents[ i ], plans[ i ][ t[ i ] ], vocabularies[ i ] ) );
        out.push_back( std::move( c ) );
    }
    return out;
}

std::vector<collective_recall> enumerate_lifted( const rfcgs& m, const std::vector<agent_id>& coalition, std::size_t k,
                                                 std::uint64_t b, const enumeration_options& opts )
{
    std::vector<collective_recall> out;
    for ( const auto& c : enumerate_memoryless( m, coalition, k, b, opts ) )
        out.push_back( lift( c ) );
    return out;
}

} // namespace hatl
