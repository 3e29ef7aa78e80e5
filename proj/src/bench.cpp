#include "hatl/bench.hpp"

#include "hatl/error.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <random>
#include <sstream>

namespace hatl
{

std::string_view to_string( bench_density d )
{
    return d == bench_density::sparse ? "sparse" : "dense";
}

rfcgs generate_benchmark( const bench_spec& spec )
{
    if ( spec.states == 0 || spec.agents == 0 || spec.actions == 0 )
        throw error( error_kind::schema, "benchmark needs states, agents and actions" );
    std::mt19937_64 rng( spec.seed );
    auto uniform = [ & ]( std::uint64_t lo, std::uint64_t hi ) {
        return std::uniform_int_distribution<std::uint64_t>( lo, hi )( rng );
    };

    rfcgs m;
    for ( std::size_t a = 0; a < spec.agents; ++a )
    {
        agent_def ag{ "a" + std::to_string( a ), {}, 4 };
        for ( std::size_t i = 0; i < spec.actions; ++i )
            ag.actions.push_back( { "c" + std::to_string( i ), uniform( 1, 2 ) } );
        m.agents.push_back( std::move( ag ) );
    }
    m.atoms = { "p0", "p1" };
    m.guard_pool = { guard_atom{ "p0", comparator::ge, 0.5 }, guard_atom{ "p1", comparator::ge, 0.5 } };
    const std::size_t n = spec.states;
    for ( std::size_t s = 0; s < n; ++s )
    {
        m.states.push_back( "s" + std::to_string( s ) );
        m.labels.push_back( { static_cast<double>( uniform( 0, 10 ) ) / 10.0,
                              static_cast<double>( uniform( 0, 10 ) ) / 10.0 } );
    }
    std::vector<action_id> all( spec.actions );
    for ( std::size_t i = 0; i < spec.actions; ++i )
        all[ i ] = i;
    m.availability.assign( spec.agents, std::vector<std::vector<action_id>>( n, all ) );
    m.transitions.assign( n, {} );

    const auto joint_count = m.joint_action_count();
    std::vector<state_id> order( n );
    for ( std::size_t s = 0; s < n; ++s )
        order[ s ] = s;
    for ( state_id s = 0; s < n; ++s )
    {
        if ( spec.density == bench_density::sparse )
        {
            // each a0 action has two targets; the opponents pick between them
            std::vector<std::array<state_id, 2>> targets( spec.actions );
            for ( auto& t : targets )
                t = { uniform( 0, n - 1 ), uniform( 0, n - 1 ) };
            const auto rest = joint_count / spec.actions;
            for ( std::uint64_t code = 0; code < joint_count; ++code )
                m.transitions[ s ].emplace( code, targets[ code / rest ][ ( code % rest ) % 2 ] );
        }
        else
        {
            std::shuffle( order.begin(), order.end(), rng );
            const auto distinct = std::min<std::uint64_t>( joint_count, n );
            for ( std::uint64_t code = 0; code < joint_count; ++code )
                m.transitions[ s ].emplace( code, order[ code % distinct ] );
        }
    }
    m.initial = 0;
    if ( const auto problems = validate( m ); !problems.empty() )
        throw error( error_kind::schema, "benchmark model: " + problems.front().detail );
    return m;
}

std::string benchmark_formula( const bench_spec& spec )
{
    return "<<a0>>[k<=" + std::to_string( spec.k ) + ",b<=" + std::to_string( spec.b ) + "](p0 U p1)";
}

bench_row run_benchmark( const bench_spec& spec, std::size_t trials, const check_config& cfg )
{
    bench_row row{ spec, cfg.mode, 0.0, {}, 0, false };
    const auto phi = parse_formula( benchmark_formula( spec ) );
    for ( std::size_t t = 0; t < std::max<std::size_t>( trials, 1 ); ++t )
    {
        auto trial = spec;
        trial.seed = spec.seed + t;
        const auto m = generate_benchmark( trial );
        const auto start = std::chrono::steady_clock::now();
        const auto r = check( m, phi, cfg );
        const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
        row.trial_ms.push_back( took.count() );
        row.candidates = r.stats.candidates;
        row.verdict = r.verdict;
    }
    auto sorted = row.trial_ms;
    std::sort( sorted.begin(), sorted.end() );
    const auto mid = sorted.size() / 2;
    row.median_ms = sorted.size() % 2 ? sorted[ mid ] : ( sorted[ mid - 1 ] + sorted[ mid ] ) / 2.0;
    return row;
}

std::string bench_header()
{
    return "states,agents,k,b,density,mode,median_ms,candidates,verdict";
}

std::string to_string( const bench_row& row )
{
    std::ostringstream out;
    out << row.spec.states << ',' << row.spec.agents << ',' << row.spec.k << ',' << row.spec.b << ','
        << to_string( row.spec.density ) << ',' << ( row.mode == strategy_mode::memoryless ? "memoryless" : "recall" )
        << ',' << row.median_ms << ',' << row.candidates << ',' << ( row.verdict ? "true" : "false" );
    return out.str();
}

} // namespace hatl
