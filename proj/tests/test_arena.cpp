#include "hatl/arena.hpp"
#include "hatl/demos.hpp"
#include "hatl/error.hpp"
#include "hatl/fuzzy_ctl.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace hatl;
using namespace hatl::testing;

namespace
{

std::size_t edge_to( const arena& a, std::size_t from, state_id to )
{
    for ( const auto& e : a.edges[ from ] )
        if ( a.configs[ e.target ].state == to )
            return e.target;
    FAIL( "no edge" );
    return 0;
}

const arena_edge& first_edge( const arena& a, std::size_t from, state_id to )
{
    for ( const auto& e : a.edges[ from ] )
        if ( a.configs[ e.target ].state == to )
            return e;
    throw std::logic_error( "no edge" );
}

} // namespace

TEST_CASE( "drone arena spends 3 then 2 on the winning branch" )
{
    const auto m = drone_demo().model;
    const collective_memoryless sigma{
            { 0, { { parse_guard( "!(dist<0.5)" ), 0 }, { guard_expr::truth(), 1 } } } };
    const auto a = build_arena_memoryless( m, sigma, 5 );
    const auto init = a.initial[ m.initial ];
    CHECK( a.configs[ init ].budget == 5 );
    CHECK( a.configs[ init ].resources == std::vector<std::uint64_t>{ 5 } );
    // villain descends: carrier lands in the safe zone next to it
    const auto near = *m.find_state( "c11v22" );
    const auto& e1 = first_edge( a, init, near );
    CHECK( e1.coalition_cost == 3 );
    const auto c1 = edge_to( a, init, near );
    CHECK( a.configs[ c1 ].budget == 2 );
    CHECK( m.labels[ near ][ 0 ] < 0.5 );
    const auto& e2 = first_edge( a, c1, *m.find_state( "c12v21" ) );
    CHECK( e2.coalition_cost == 2 );
    CHECK( a.configs[ e2.target ].budget == 0 );
    // any further move is unaffordable
    for ( const auto& e : a.edges[ e2.target ] )
        CHECK( e.target == arena::sink );
    CHECK( a.config_count() <= config_bound( m, { 0 }, 5 ) );
}

TEST_CASE( "zero budget with positive costs exhausts at once" )
{
    const auto m = drone_demo().model;
    const collective_memoryless sigma{ { 0, { { guard_expr::truth(), 1 } } } };
    const auto a = build_arena_memoryless( m, sigma, 0 );
    for ( state_id s = 0; s < m.state_count(); ++s )
        for ( const auto& e : a.edges[ a.initial[ s ] ] )
            CHECK( e.target == arena::sink );
    REQUIRE( a.edges[ arena::sink ].size() == 1 );
    CHECK( a.edges[ arena::sink ][ 0 ].target == arena::sink );
}

TEST_CASE( "zero-cost strategy keeps the budget constant" )
{
    std::mt19937_64 rng( 3 );
    for ( int trial = 0; trial < 20; ++trial )
    {
        auto m = random_model( rng, { 5, 1, 2, 0, 2 } );
        // make action 0 available everywhere so (true, 0) is a strategy
        for ( auto& av : m.availability[ 0 ] )
            if ( av.front() != 0 )
                av.insert( av.begin(), 0 );
        m.transitions.assign( m.state_count(), {} );
        for ( state_id s = 0; s < m.state_count(); ++s )
            for ( const auto& j : available_joint_actions( m, s ) )
                m.transitions[ s ].emplace( m.joint_code( j ), ( s + j[ 0 ] + 1 ) % m.state_count() );
        REQUIRE( validate( m ).empty() );
        const collective_memoryless sigma{ { 0, { { guard_expr::truth(), 0 } } } };
        const auto a = build_arena_memoryless( m, sigma, 3 );
        // one configuration per model state plus the sink
        CHECK( a.config_count() == m.state_count() + 1 );
        for ( std::size_t c = 1; c < a.config_count(); ++c )
        {
            CHECK( a.configs[ c ].budget == 3 );
            REQUIRE( a.edges[ c ].size() == 1 );
            CHECK( a.configs[ a.edges[ c ][ 0 ].target ].state == ( a.configs[ c ].state + 1 ) % m.state_count() );
        }
    }
}

TEST_CASE( "lifted recall arena matches the memoryless arena" )
{
    std::mt19937_64 rng( 17 );
    const enumeration_options opts{ complexity_metric::rules };
    int compared = 0;
    for ( int trial = 0; trial < 30; ++trial )
    {
        const auto m = random_model( rng, { 5, 2, 2, 2, 3 } );
        const auto cands = enumerate_memoryless( m, { 0 }, 2, 3, opts );
        for ( std::size_t i = 0; i < std::min<std::size_t>( cands.size(), 10 ); ++i )
        {
            const auto& sigma = cands[ i ];
            const auto mem = build_arena_memoryless( m, sigma, 3 );
            const auto lifted = lift( sigma );
            const auto rec = build_arena_recall( m, lifted, compile_strategy( lifted ), 3 );
            // same reachable (state, budget, resources) triples and the same degrees
            using triple = std::tuple<state_id, std::uint64_t, std::vector<std::uint64_t>>;
            std::set<triple> x, y;
            for ( const auto& c : mem.configs )
                x.emplace( c.state, c.budget, c.resources );
            for ( const auto& c : rec.configs )
                y.emplace( c.state, c.budget, c.resources );
            CHECK( x == y );
            const auto kx = to_fuzzy_kripke( m, mem, transition_mode::crisp );
            const auto ky = to_fuzzy_kripke( m, rec, transition_mode::crisp );
            degree_map px( m.state_count() ), qx( m.state_count() );
            for ( state_id s = 0; s < m.state_count(); ++s )
            {
                px[ s ] = m.labels[ s ][ 0 ];
                qx[ s ] = m.labels[ s ][ 1 ];
            }
            const auto zx = lfp_until( kx, quantifier::forall, pull_back( kx, px ), pull_back( kx, qx ) );
            const auto zy = lfp_until( ky, quantifier::forall, pull_back( ky, px ), pull_back( ky, qx ) );
            for ( state_id s = 0; s < m.state_count(); ++s )
                CHECK( zx[ kx.initial[ s ] ] == zy[ ky.initial[ s ] ] );
            ++compared;
        }
    }
    CHECK( compared > 20 );
}

TEST_CASE( "a rule needing two steps of history does not fire at the start" )
{
    const auto m = load_model( R"({
      "agents": [{"name": "a", "actions": ["x", "y"], "resource": 4}],
      "atoms": ["p"],
      "states": [{"name": "s0", "labels": {"p": 1}}, "s1"],
      "initial": "s0",
      "transitions": [
        {"from": "s0", "actions": {"a": "x"}, "to": "s0"}, {"from": "s0", "actions": {"a": "y"}, "to": "s1"},
        {"from": "s1", "default_to": "s1"}]
    })" );
    const collective_recall sigma{ { 0, { { parse_regex( "{p}.{p}" ), 1 }, { guard_regex::any_history(), 0 } } } };
    const auto a = build_arena_recall( m, sigma, compile_strategy( sigma ), 4 );
    const auto init = a.initial[ 0 ];
    REQUIRE( a.edges[ init ].size() == 1 );
    // x at the start (stays in s0), then y once the history is p.p
    const auto next = a.edges[ init ][ 0 ].target;
    CHECK( a.configs[ next ].state == 0 );
    REQUIRE( a.edges[ next ].size() == 1 );
    CHECK( a.configs[ a.edges[ next ][ 0 ].target ].state == 1 );
}

TEST_CASE( "labelled transitions" )
{
    const auto m = load_model( R"({
      "agents": [{"name": "a", "actions": ["x"], "resource": 0},
                 {"name": "o", "actions": ["u", "v", "w"], "resource": 0}],
      "atoms": ["p"],
      "states": ["s0", "s1", "s2"],
      "initial": "s0",
      "transitions": [
        {"from": "s0", "actions": {"a": "x", "o": "u"}, "to": "s1"},
        {"from": "s0", "actions": {"a": "x", "o": "v"}, "to": "s2"},
        {"from": "s0", "actions": {"a": "x", "o": "w"}, "to": "s1"},
        {"from": "s1", "default_to": "s1"}, {"from": "s2", "default_to": "s2"}]
    })" );
    const collective_memoryless sigma{ { 0, { { guard_expr::truth(), 0 } } } };
    const auto a = build_arena_memoryless( m, sigma, 0 );
    const auto k = to_fuzzy_kripke( m, a, transition_mode::labelled );
    const auto init = a.initial[ 0 ];
    REQUIRE( k.succ[ init ].size() == 2 );
    for ( const auto& e : k.succ[ init ] )
    {
        if ( k.origin[ e.to ] == 1 )
            CHECK( e.r == doctest::Approx( 0.75 ) );
        else
            CHECK( e.r == doctest::Approx( 0.5 ) );
    }
    const auto crisp = to_fuzzy_kripke( m, a, transition_mode::crisp );
    for ( const auto& row : crisp.succ )
        for ( const auto& e : row )
            CHECK( e.r == 1.0 );
    CHECK( crisp.origin[ arena::sink ] == no_state );
}

TEST_CASE( "depth bound" )
{
    CHECK( depth_bound( 4, 1, { 2 } ).value == 48 );
    CHECK( depth_bound( 1, 0, {} ).value == 1 );
    CHECK( depth_bound( 10, 2, { 1, 1 } ).value == 10240 );
    const auto big = depth_bound( 100, 5, { 5 } );
    CHECK( big.saturated );
    CHECK( big.value == default_depth_ceiling );
}

TEST_CASE( "configuration count stays within the bound on random models" )
{
    std::mt19937_64 rng( 23 );
    for ( int trial = 0; trial < 30; ++trial )
    {
        const auto m = random_model( rng );
        const std::uint64_t b = pick( rng, 0, 4 );
        for ( const auto& sigma : enumerate_memoryless( m, { 0, 1 }, 3, b, { complexity_metric::rules } ) )
        {
            const auto a = build_arena_memoryless( m, sigma, b );
            CHECK( a.config_count() <= config_bound( m, { 0, 1 }, b ) + 1 );
        }
    }
}
