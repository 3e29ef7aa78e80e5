#include "hatl/error.hpp"
#include "hatl/guard.hpp"
#include "hatl/model.hpp"
#include "hatl/regex.hpp"
#include "regex_oracle.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace hatl;
using namespace hatl::testing;

namespace
{

// s0: p, s1: q, s2: neither; dist 0.3 / 0.7 / 0.9
rfcgs three_states()
{
    return load_model( R"({
      "agents": [{"name": "a", "actions": ["x"], "resource": 0}],
      "atoms": ["p", "q", "dist"],
      "states": [{"name": "s0", "labels": {"p": 1, "dist": 0.3}},
                 {"name": "s1", "labels": {"q": 1, "dist": 0.7}},
                 {"name": "s2", "labels": {"dist": 0.9}}],
      "initial": "s0",
      "transitions": [{"from": "s0", "default_to": "s1"}, {"from": "s1", "default_to": "s2"},
                      {"from": "s2", "default_to": "s0"}]
    })" );
}

guard_regex lit( const char* g ) { return guard_regex::literal( parse_guard( g ) ); }

} // namespace

TEST_CASE( "literal automaton" )
{
    const auto r = lit( "p" );
    const auto a = regex_to_nfa( r );
    CHECK( a.state_count() == 2 );
    const std::vector<letter> one{ 1 }, zero{ 0 }, two{ 1, 1 };
    CHECK( nfa_accepts( a, one ) );
    CHECK_FALSE( nfa_accepts( a, zero ) );
    CHECK_FALSE( nfa_accepts( a, two ) );
    CHECK_FALSE( nfa_accepts( a, {} ) );
    // init, accept, dead
    const auto d = nfa_to_dfa( a );
    CHECK( d.state_count() == 3 );
}

TEST_CASE( "star of true accepts everything with one state" )
{
    const auto r = guard_regex::star( guard_regex::literal( guard_expr::truth() ) );
    const auto d = compile_regex( r );
    CHECK( d.state_count() == 1 );
    CHECK( d.accepting[ 0 ] );
    CHECK( d.step( 0, 0 ) == 0 );
    CHECK( nfa_accepts( regex_to_nfa( r ), {} ) );
}

TEST_CASE( "concat and union against the reference matcher" )
{
    for ( const auto& r : { guard_regex::concat( lit( "p" ), lit( "q" ) ), guard_regex::alt( lit( "p" ), lit( "q" ) ),
                            guard_regex::star( guard_regex::concat( lit( "p" ), guard_regex::alt( lit( "q" ), lit( "p" ) ) ) ),
                            guard_regex::lift( parse_guard( "q" ) ) } )
    {
        const auto a = regex_to_nfa( r );
        const auto d = nfa_to_dfa( a );
        REQUIRE( d.literals.size() == regex_literals( r ).size() );
        for ( const auto& w : all_words( d.literals.size(), 4 ) )
        {
            const bool expected = ref_match( r, d.literals, w );
            CHECK( nfa_accepts( a, w ) == expected );
            CHECK( dfa_accepts( d, w ) == expected );
        }
    }
}

TEST_CASE( "dfa step on model states" )
{
    const auto m = three_states();
    const auto d = compile_regex( lit( "dist<0.5" ) );
    const auto q = dfa_step( m, d, static_cast<std::uint32_t>( d.initial ), 0, 0.5 );
    CHECK( d.accepting[ q ] );
    const auto dead = dfa_step( m, d, static_cast<std::uint32_t>( d.initial ), 1, 0.5 );
    CHECK_FALSE( d.accepting[ dead ] );
    CHECK( dfa_step( m, d, dead, 0, 0.5 ) == dead );
}

TEST_CASE( "history matching" )
{
    const auto m = three_states();
    const auto pq = guard_regex::concat( lit( "p" ), lit( "q" ) );
    const std::vector<state_id> h01{ 0, 1 }, h0{ 0 }, h10{ 1, 0 };
    CHECK( history_matches( m, pq, h01, 0.5 ) );
    CHECK_FALSE( history_matches( m, pq, h0, 0.5 ) );
    CHECK_FALSE( history_matches( m, pq, h10, 0.5 ) );
    CHECK( history_matches( m, guard_regex::literal( guard_expr::truth() ), h0, 0.5 ) );
}

TEST_CASE( "random regexes and histories against the word oracle" )
{
    const auto m = three_states();
    std::mt19937_64 rng( 11 );
    const auto pool = all_regexes( { guard_expr::truth(), parse_guard( "p" ), parse_guard( "q" ) }, 4 );
    for ( int trial = 0; trial < 300; ++trial )
    {
        const auto& r = pool[ pick( rng, 0, pool.size() - 1 ) ];
        const auto lits = regex_literals( r );
        std::vector<state_id> h( pick( rng, 1, 4 ) );
        for ( auto& s : h )
            s = pick( rng, 0, 2 );
        std::vector<letter> w;
        for ( auto s : h )
            w.push_back( letter_of( m, lits, s, 0.5 ) );
        CHECK( history_matches( m, r, h, 0.5 ) == ref_match( r, lits, w ) );
    }
}

TEST_CASE( "regex parse and print" )
{
    const auto r = parse_regex( "{true}*.{p>=0.5}" );
    CHECK( r == guard_regex::lift( parse_guard( "p>=0.5" ) ) );
    CHECK( parse_regex( r.to_string() ) == r );
    CHECK( r.size() == 4 );
    CHECK_THROWS_AS( (void)parse_regex( "{p" ), error );
}
