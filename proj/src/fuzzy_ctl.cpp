#include "hatl/fuzzy_ctl.hpp"

#include "hatl/error.hpp"

#include <algorithm>

namespace hatl
{

degree_map ex_map( const fuzzy_kripke& k, const degree_map& phi )
{
    degree_map out( k.size(), 0.0 );
    for ( std::size_t s = 0; s < k.size(); ++s )
        for ( const auto& e : k.succ[ s ] )
            out[ s ] = std::max( out[ s ], std::min( e.r, phi[ e.to ] ) );
    return out;
}

degree_map ax_map( const fuzzy_kripke& k, const degree_map& phi )
{
    degree_map out( k.size(), 1.0 );
    for ( std::size_t s = 0; s < k.size(); ++s )
        for ( const auto& e : k.succ[ s ] )
            out[ s ] = std::min( out[ s ], std::max( 1.0 - e.r, phi[ e.to ] ) );
    return out;
}

namespace
{

// Every iterate is a min/max combination of these values, so the number of
// strict changes is bounded by |S| times their count.
std::size_t value_set_size( const fuzzy_kripke& k, const degree_map& phi1, const degree_map& phi2 )
{
    std::vector<degree> values{ 0.0, 1.0 };
    values.insert( values.end(), phi1.begin(), phi1.end() );
    values.insert( values.end(), phi2.begin(), phi2.end() );
    for ( const auto& out : k.succ )
        for ( const auto& e : out )
        {
            values.push_back( e.r );
            values.push_back( 1.0 - e.r );
        }
    std::sort( values.begin(), values.end() );
    return static_cast<std::size_t>( std::unique( values.begin(), values.end() ) - values.begin() );
}

template <typename Step>
degree_map iterate( const fuzzy_kripke& k, degree start, const degree_map& phi1, const degree_map& phi2, Step step,
                    fixpoint_stats* stats )
{
    const std::size_t limit = k.size() * value_set_size( k, phi1, phi2 ) + 1;
    degree_map z( k.size(), start );
    for ( std::size_t round = 1;; ++round )
    {
        auto next = step( z );
        if ( stats )
            ++stats->iterations;
        if ( next == z )
            return z;
        if ( round > limit )
            throw error( error_kind::non_convergence, "fixpoint did not stabilize" );
        z = std::move( next );
    }
}

} // namespace

degree_map lfp_until( const fuzzy_kripke& k, quantifier q, const degree_map& phi1, const degree_map& phi2,
                      fixpoint_stats* stats )
{
    auto step = [ & ]( const degree_map& z ) {
        auto next = q == quantifier::exists ? ex_map( k, z ) : ax_map( k, z );
        for ( std::size_t s = 0; s < k.size(); ++s )
            next[ s ] = std::max( phi2[ s ], std::min( phi1[ s ], next[ s ] ) );
        return next;
    };
    return iterate( k, 0.0, phi1, phi2, step, stats );
}

degree_map gfp_release( const fuzzy_kripke& k, quantifier q, const degree_map& phi1, const degree_map& phi2,
                        fixpoint_stats* stats )
{
    auto step = [ & ]( const degree_map& z ) {
        auto next = q == quantifier::exists ? ex_map( k, z ) : ax_map( k, z );
        for ( std::size_t s = 0; s < k.size(); ++s )
            next[ s ] = std::min( phi2[ s ], std::max( phi1[ s ], next[ s ] ) );
        return next;
    };
    return iterate( k, 1.0, phi1, phi2, step, stats );
}

std::vector<std::size_t> meta_truth( const degree_map& map, degree tau )
{
    std::vector<std::size_t> out;
    for ( std::size_t s = 0; s < map.size(); ++s )
        if ( map[ s ] >= tau )
            out.push_back( s );
    return out;
}

} // namespace hatl
