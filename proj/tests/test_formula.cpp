#include "hatl/error.hpp"
#include "hatl/formula.hpp"
#include "hatl/guard.hpp"
#include "hatl/model.hpp"

#include <doctest.h>

#include <array>
#include <functional>

using namespace hatl;

namespace
{

error_kind kind_of( const std::function<void()>& f )
{
    try
    {
        f();
    }
    catch ( const error& e )
    {
        return e.kind();
    }
    FAIL( "no error" );
    return error_kind::schema;
}

rfcgs one_state( double dist, double p )
{
    rfcgs m;
    m.agents = { agent_def{ "a", { { "x", 0 } }, 0 } };
    m.atoms = { "dist", "p" };
    m.states = { "s" };
    m.labels = { { dist, p } };
    m.availability = { { { 0 } } };
    m.transitions = { { { 0, 0 } } };
    return m;
}

} // namespace

TEST_CASE( "drone formula parses to a strategic until" )
{
    const auto f = parse_formula( "<<carrier>>[k<=2,b<=5]( !(dist<0.5) U safe )" );
    REQUIRE( f.is_strategic() );
    CHECK( f.coalition == std::vector<std::string>{ "carrier" } );
    CHECK( f.k_bound == 2 );
    CHECK( f.b_bound == 5 );
    CHECK( f.path == path_op::until );
    REQUIRE( f.children.size() == 2 );
    CHECK( f.children[ 0 ].node_kind == formula::kind::apply );
    CHECK( f.children[ 0 ].fn == connective::neg );
    CHECK( f.children[ 0 ].children[ 0 ].node_kind == formula::kind::compare );
    CHECK( f.children[ 1 ].atom == "safe" );
}

TEST_CASE( "connective tree depth" )
{
    const auto f = parse_formula( "min(p, max(q, not(r)))" );
    CHECK( f.fn == connective::min );
    CHECK( f.children[ 1 ].fn == connective::max );
    CHECK( f.children[ 1 ].children[ 1 ].fn == connective::neg );
    CHECK( f.children[ 1 ].children[ 1 ].children[ 0 ].atom == "r" );
    CHECK( f.strategic_depth() == 0 );
}

TEST_CASE( "G and F are stored as release and until" )
{
    const auto g = parse_formula( "<<a>>[k<=1,b<=0] G p" );
    CHECK( g.path == path_op::release );
    CHECK( g.children[ 0 ].node_kind == formula::kind::constant );
    CHECK( g.children[ 0 ].value == 0.0 );
    const auto f = parse_formula( "<<a>>[k<=1,b<=0] F p" );
    CHECK( f.path == path_op::until );
    CHECK( f.children[ 0 ].value == 1.0 );
    const auto x = parse_formula( "<<a,b,a>>[k<=1,b<=2] X <<b>>[k<=1,b<=0] X p" );
    CHECK( x.coalition.size() == 2 );
    CHECK( x.strategic_depth() == 2 );
}

TEST_CASE( "parse errors" )
{
    CHECK( kind_of( [] { (void)parse_formula( "<<a>>[k<=-1,b<=0] X p" ); } ) == error_kind::negative_bound );
    CHECK( kind_of( [] { (void)parse_formula( "<<a>>[k<=1,b<=0.5] X p" ); } ) == error_kind::parse );
    CHECK( kind_of( [] { (void)parse_formula( "frob(p)" ); } ) == error_kind::unknown_connective );
    CHECK( kind_of( [] { (void)parse_formula( "not(p, q)" ); } ) == error_kind::arity );
    CHECK( kind_of( [] { (void)parse_formula( "min(p" ); } ) == error_kind::parse );
    CHECK( kind_of( [] { (void)parse_formula( "p q" ); } ) == error_kind::parse );
}

TEST_CASE( "printing round-trips" )
{
    for ( const char* text : { "<<carrier>>[k<=2,b<=5](!(dist<0.5) U safe)", "min(p, max(q, not(r)))",
                               "<<a,b>>[k<=3,b<=1](p R avg(q, 0.5, r))", "<<a>>[k<=1,b<=0] X impl(p, q>=0.2)" } )
    {
        const auto f = parse_formula( text );
        CHECK( parse_formula( f.to_string() ).to_string() == f.to_string() );
    }
}

TEST_CASE( "connectives" )
{
    const std::array<degree, 2> a{ 0.3, 0.7 };
    CHECK( eval_connective( "max", a ) == 0.7 );
    CHECK( eval_connective( "min", a ) == 0.3 );
    const std::array<degree, 1> x{ 0.3 };
    CHECK( eval_connective( "neg", x ) == doctest::Approx( 0.7 ) );
    const std::array<degree, 2> i{ 0.8, 0.3 };
    CHECK( eval_connective( "impl", i ) == 0.3 );
    const std::array<degree, 3> v{ 0.2, 0.4, 0.9 };
    CHECK( eval_connective( "avg", v ) == doctest::Approx( 0.5 ) );
    CHECK( kind_of( [ & ] { (void)eval_connective( "neg", a ); } ) == error_kind::arity );
    const std::array<degree, 2> bad{ 0.3, 1.5 };
    CHECK( kind_of( [ & ] { (void)eval_connective( "max", bad ); } ) == error_kind::degree_range );
}

TEST_CASE( "guard evaluation" )
{
    const auto m = one_state( 0.7, 0.5 );
    CHECK( eval_guard( m, 0, parse_guard( "!(dist<0.5)" ), 0.5 ) );
    CHECK( eval_guard( m, 0, guard_expr::truth(), 0.5 ) );
    // bare atom reads as p >= tau_guard, inclusive
    CHECK( eval_guard( m, 0, parse_guard( "p" ), 0.5 ) );
    CHECK_FALSE( eval_guard( m, 0, parse_guard( "p" ), 0.6 ) );
    CHECK_FALSE( eval_guard( m, 0, parse_guard( "dist<0.5|p<0.5" ), 0.5 ) );
    CHECK( kind_of( [ & ] { (void)eval_guard( m, 0, parse_guard( "zz>0.1" ), 0.5 ); } ) == error_kind::unknown_atom );
}

TEST_CASE( "guard symbol counts" )
{
    CHECK( guard_expr::truth().symbol_count() == 1 );
    CHECK( parse_guard( "!(dist<0.5)" ).symbol_count() == 2 );
    CHECK( parse_guard( "(p & q) | !r" ).symbol_count() == 6 );
    CHECK( parse_guard( "x>=0.3&y<0.3" ).symbol_count() == 3 );
}
