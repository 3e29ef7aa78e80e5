#include "hatl/demos.hpp"
#include "hatl/engine.hpp"
#include "hatl/error.hpp"
#include "hatl/oracle.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace hatl;
using namespace hatl::testing;

namespace
{

check_config rules_config()
{
    check_config cfg;
    cfg.metric = complexity_metric::rules;
    return cfg;
}

rfcgs one_state( double p )
{
    rfcgs m;
    m.agents = { agent_def{ "a", { { "x", 0 } }, 0 } };
    m.atoms = { "p" };
    m.states = { "s" };
    m.labels = { { p } };
    m.availability = { { { 0 } } };
    m.transitions = { { { 0, 0 } } };
    return m;
}

} // namespace

TEST_CASE( "drone case study" )
{
    const auto d = drone_demo();
    const auto r = check( d.model, parse_formula( d.formula ), d.config );
    CHECK( r.verdict );
    CHECK( r.degree_initial == 1.0 );
    CHECK( r.stats.candidates >= 1 );
    REQUIRE( r.strategic.size() == 1 );
    const auto& s = r.strategic[ 0 ];
    REQUIRE( s.best );
    const auto& sigma = std::get<collective_memoryless>( *s.best );
    REQUIRE( sigma.size() == 1 );
    CHECK( to_string( d.model, sigma[ 0 ] ) == "{(!(dist<0.5), right), (true, ascend)}" );
    CHECK( s.static_cost == 5 );
    CHECK( s.max_spent == 5 );
    CHECK( s.goal_cost == 3 );

    for ( std::uint64_t b : { 1u, 4u } )
    {
        const auto low = drone_demo( b );
        CHECK_FALSE( check( low.model, parse_formula( low.formula ), low.config ).verdict );
    }
}

TEST_CASE( "coalition scenario" )
{
    const auto d = coalition_demo();
    const auto phi = parse_formula( d.formula );
    const auto r = check( d.model, phi, d.config );
    CHECK( r.verdict );

    const auto w = inspect_strategy( d.model, phi, coalition_witness( d.model ), d.config );
    CHECK( w.best_degree == 1.0 );
    CHECK( w.goal_cost == 5 );
    CHECK( w.max_spent == 5 );

    const auto naive = inspect_strategy( d.model, phi, coalition_naive( d.model ), d.config );
    CHECK( naive.best_degree == 0.0 );
    const auto d6 = coalition_demo( 6 );
    const auto naive6 = inspect_strategy( d6.model, parse_formula( d6.formula ), coalition_naive( d6.model ), d6.config );
    CHECK( naive6.best_degree == 1.0 );
    CHECK( naive6.goal_cost == 6 );
}

TEST_CASE( "no candidates gives the zero map" )
{
    const auto d = drone_demo();
    const auto r = check( d.model, parse_formula( "<<carrier>>[k<=0,b<=5](!(dist<0.5) U safe)" ), d.config );
    CHECK_FALSE( r.verdict );
    for ( auto x : r.degrees )
        CHECK( x == 0.0 );
}

TEST_CASE( "propositional formulas need no candidates" )
{
    std::mt19937_64 rng( 2 );
    const auto m = random_model( rng );
    const auto r = check( m, parse_formula( "min(p, q)" ), {} );
    CHECK( r.stats.candidates == 0 );
    for ( state_id s = 0; s < m.state_count(); ++s )
        CHECK( r.degrees[ s ] == std::min( m.labels[ s ][ 0 ], m.labels[ s ][ 1 ] ) );
}

TEST_CASE( "nested strategic formulas equal a two-pass computation" )
{
    std::mt19937_64 rng( 41 );
    for ( int trial = 0; trial < 20; ++trial )
    {
        const auto m = random_model( rng, { 3, 2, 2, 1, 2 } );
        const auto cfg = rules_config();
        const auto inner = check( m, parse_formula( "<<a1>>[k<=2,b<=2] X p" ), cfg );
        auto m2 = m;
        m2.atoms.push_back( "inner" );
        for ( state_id s = 0; s < m.state_count(); ++s )
            m2.labels[ s ].push_back( inner.degrees[ s ] );
        const auto two_pass = check( m2, parse_formula( "<<a0>>[k<=2,b<=2] X inner" ), cfg );
        const auto nested = check( m, parse_formula( "<<a0>>[k<=2,b<=2] X <<a1>>[k<=2,b<=2] X p" ), cfg );
        CHECK( nested.degrees == two_pass.degrees );
        CHECK( nested.strategic.size() == 2 );
    }
}

TEST_CASE( "constant lasso" )
{
    for ( double p : { 0.4, 1.0 } )
    {
        const auto m = one_state( p );
        const auto phi = parse_formula( "<<a>>[k<=1,b<=0] G p" );
        CHECK( check( m, phi, rules_config() ).degrees[ 0 ] == p );
        CHECK( brute_force_oracle( m, phi, rules_config() )[ 0 ] == p );
    }
}

TEST_CASE( "engine agrees with the brute-force oracle" )
{
    std::mt19937_64 rng( 101 );
    const char* paths[] = { "X p", "(p U q)", "G p", "(q R p)" };
    for ( int trial = 0; trial < 60; ++trial )
    {
        const auto m = random_model( rng, { 5, 2, 2, 2, 3 } );
        const auto k = pick( rng, 1, 2 );
        const auto b = pick( rng, 0, 4 );
        const std::string coalition = pick( rng, 0, 2 ) == 0 ? "a0,a1" : "a0";
        const auto text = "<<" + coalition + ">>[k<=" + std::to_string( k ) + ",b<=" + std::to_string( b ) + "] " +
                          paths[ pick( rng, 0, 3 ) ];
        const auto phi = parse_formula( text );
        const auto got = check( m, phi, rules_config() ).degrees;
        const auto want = brute_force_oracle( m, phi, rules_config() );
        for ( state_id s = 0; s < m.state_count(); ++s )
            CHECK_MESSAGE( std::abs( got[ s ] - want[ s ] ) <= 1e-12, text, " state ", s );
    }
}

TEST_CASE( "workers do not change the result" )
{
    const auto d = coalition_demo();
    auto cfg = d.config;
    cfg.workers = 4;
    const auto phi = parse_formula( d.formula );
    const auto a = check( d.model, phi, d.config );
    const auto b = check( d.model, phi, cfg );
    CHECK( a.degrees == b.degrees );
    REQUIRE( a.strategic[ 0 ].best );
    REQUIRE( b.strategic[ 0 ].best );
    CHECK( *a.strategic[ 0 ].best == *b.strategic[ 0 ].best );
}

TEST_CASE( "recall mode" )
{
    std::mt19937_64 rng( 7 );
    for ( int trial = 0; trial < 20; ++trial )
    {
        const auto m = random_model( rng, { 4, 2, 2, 1, 2 } );
        const auto phi = parse_formula( "<<a0>>[k<=2,b<=2](p U q)" );
        auto cfg = rules_config();
        const auto mem = check( m, phi, cfg );
        cfg.mode = strategy_mode::recall;
        cfg.lifted_recall = true;
        const auto rec = check( m, phi, cfg );
        CHECK( mem.verdict == rec.verdict );
        CHECK( rec.stats.max_unfolding_depth <= cfg.depth_cap );
    }
}

TEST_CASE( "recall objective true at the root" )
{
    const auto m = one_state( 1.0 );
    check_config cfg = rules_config();
    cfg.mode = strategy_mode::recall;
    const auto r = check( m, parse_formula( "<<a>>[k<=2,b<=0](false U p)" ), cfg );
    CHECK( r.verdict );
}

TEST_CASE( "unknown coalition member" )
{
    const auto m = one_state( 1.0 );
    try
    {
        (void)check( m, parse_formula( "<<zz>>[k<=1,b<=0] X p" ), {} );
        FAIL( "expected an error" );
    }
    catch ( const error& e )
    {
        CHECK( e.kind() == error_kind::dangling_reference );
    }
}

TEST_CASE( "degrees are monotone in k and b" )
{
    std::mt19937_64 rng( 13 );
    for ( int trial = 0; trial < 20; ++trial )
    {
        const auto m = random_model( rng, { 4, 2, 2, 2, 3 } );
        double last_k = 0.0;
        for ( int k = 0; k <= 3; ++k )
        {
            const auto d = check( m, parse_formula( "<<a0>>[k<=" + std::to_string( k ) + ",b<=3](p U q)" ), rules_config() )
                                   .degree_initial;
            CHECK( d >= last_k );
            last_k = d;
        }
        double last_b = 0.0;
        for ( int b = 0; b <= 4; ++b )
        {
            const auto d = check( m, parse_formula( "<<a0>>[k<=2,b<=" + std::to_string( b ) + "](p U q)" ), rules_config() )
                                   .degree_initial;
            CHECK( d >= last_b );
            last_b = d;
        }
    }
}
