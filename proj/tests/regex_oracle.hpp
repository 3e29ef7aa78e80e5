#pragma once

// Reference regex semantics by direct recursion over word splits, and an
// exhaustive regex generator.

#include "hatl/regex.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hatl::testing
{

// Words are letters: bit i set means literals[i] holds.
inline bool ref_match( const guard_regex& r, const std::vector<guard_expr>& literals, const std::vector<letter>& w,
                       std::size_t i, std::size_t j )
{
    switch ( r.node_kind() )
    {
    case guard_regex::kind::literal:
    {
        if ( j != i + 1 )
            return false;
        if ( r.guard().is_true() )
            return true;
        for ( std::size_t b = 0; b < literals.size(); ++b )
            if ( literals[ b ].to_string() == r.guard().to_string() )
                return ( w[ i ] >> b ) & 1u;
        return false;
    }
    case guard_regex::kind::concat:
        for ( std::size_t k = i; k <= j; ++k )
            if ( ref_match( r.lhs(), literals, w, i, k ) && ref_match( r.rhs(), literals, w, k, j ) )
                return true;
        return false;
    case guard_regex::kind::alt:
        return ref_match( r.lhs(), literals, w, i, j ) || ref_match( r.rhs(), literals, w, i, j );
    case guard_regex::kind::star:
        if ( i == j )
            return true;
        for ( std::size_t k = i + 1; k <= j; ++k )
            if ( ref_match( r.lhs(), literals, w, i, k ) && ref_match( r, literals, w, k, j ) )
                return true;
        return false;
    }
    return false;
}

inline bool ref_match( const guard_regex& r, const std::vector<guard_expr>& literals, const std::vector<letter>& w )
{
    return ref_match( r, literals, w, 0, w.size() );
}

// Every regex with size <= max_size over the given literal guards.
inline std::vector<guard_regex> all_regexes( const std::vector<guard_expr>& guards, std::size_t max_size )
{
    std::vector<std::vector<guard_regex>> by_size( max_size + 1 );
    for ( const auto& g : guards )
        if ( g.symbol_count() <= max_size )
            by_size[ g.symbol_count() ].push_back( guard_regex::literal( g ) );
    for ( std::size_t s = 2; s <= max_size; ++s )
    {
        for ( const auto& r : by_size[ s - 1 ] )
            by_size[ s ].push_back( guard_regex::star( r ) );
        for ( std::size_t a = 1; a + 1 < s; ++a )
            for ( const auto& x : by_size[ a ] )
                for ( const auto& y : by_size[ s - 1 - a ] )
                {
                    by_size[ s ].push_back( guard_regex::concat( x, y ) );
                    by_size[ s ].push_back( guard_regex::alt( x, y ) );
                }
    }
    std::vector<guard_regex> out;
    for ( auto& v : by_size )
        out.insert( out.end(), v.begin(), v.end() );
    return out;
}

// All words of length <= max_len over 2^bits letters.
inline std::vector<std::vector<letter>> all_words( std::size_t bits, std::size_t max_len )
{
    const letter letters = letter{ 1 } << bits;
    std::vector<std::vector<letter>> out{ {} };
    std::vector<std::vector<letter>> layer{ {} };
    for ( std::size_t len = 1; len <= max_len; ++len )
    {
        std::vector<std::vector<letter>> next;
        for ( const auto& w : layer )
            for ( letter l = 0; l < letters; ++l )
            {
                auto v = w;
                v.push_back( l );
                next.push_back( std::move( v ) );
            }
        out.insert( out.end(), next.begin(), next.end() );
        layer = std::move( next );
    }
    return out;
}

inline bool dfa_accepts( const guard_dfa& d, const std::vector<letter>& w )
{
    std::uint32_t q = static_cast<std::uint32_t>( d.initial );
    for ( auto l : w )
        q = d.step( q, l );
    return d.accepting[ q ];
}

} // namespace hatl::testing
