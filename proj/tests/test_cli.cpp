#include "cli.hpp"
#include "hatl/bench.hpp"
#include "hatl/demos.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace hatl;

namespace
{

struct run_result
{
    int code;
    std::string out;
    std::string err;
};

run_result run( const std::vector<std::string>& args )
{
    std::ostringstream out, err;
    const int code = cli::run( args, out, err );
    return { code, out.str(), err.str() };
}

std::filesystem::path scratch()
{
    auto dir = std::filesystem::temp_directory_path() / "hatl_cli_test";
    std::filesystem::create_directories( dir );
    return dir;
}

std::string write( const std::string& name, const std::string& text )
{
    const auto path = ( scratch() / name ).string();
    std::ofstream( path ) << text;
    return path;
}

} // namespace

TEST_CASE( "check exit codes on the drone model" )
{
    const auto model = write( "drone.json", serialize_model( drone_demo().model ) );
    const auto out = ( scratch() / "result.json" ).string();
    auto r = run( { "check", "--model", model, "--formula", "<<carrier>>[k<=2,b<=5](!(dist<0.5) U safe)", "--metric",
                    "rules", "--transitions", "crisp", "--output", out } );
    CHECK( r.code == 0 );
    std::ifstream in( out );
    const auto j = nlohmann::json::parse( in );
    CHECK( j[ "verdict" ] == true );
    CHECK( j[ "degree_initial" ] == 1.0 );
    CHECK( j[ "degrees" ].size() == 256 );

    r = run( { "check", "--model", model, "--formula", "<<carrier>>[k<=2,b<=1](!(dist<0.5) U safe)", "--metric",
               "rules" } );
    CHECK( r.code == 1 );
}

TEST_CASE( "synthesize reports the strategy" )
{
    const auto model = write( "drone.json", serialize_model( drone_demo().model ) );
    const auto out = ( scratch() / "synth.json" ).string();
    const auto r = run( { "synthesize", "--model", model, "--formula", "<<carrier>>[k<=2,b<=5](!(dist<0.5) U safe)",
                          "--metric", "rules", "--output", out } );
    CHECK( r.code == 0 );
    CHECK( r.out.find( "(!(dist<0.5), right), (true, ascend)" ) != std::string::npos );
    std::ifstream in( out );
    const auto j = nlohmann::json::parse( in );
    const auto& s = j[ "strategic" ][ 0 ];
    CHECK( s[ "static_cost" ] == 5 );
    CHECK( s[ "strategy" ][ "carrier" ].size() == 2 );
}

TEST_CASE( "usage and input errors" )
{
    const auto model = write( "drone.json", serialize_model( drone_demo().model ) );
    CHECK( run( { "check", "--model", model } ).code == 64 );
    CHECK( run( {} ).code == 64 );
    CHECK( run( { "check", "--model", model, "--formula", "p", "--metric", "words" } ).code == 64 );
    CHECK( run( { "demo", "unknown" } ).code == 64 );
    const auto bad = write( "bad.json", "{ nope" );
    CHECK( run( { "check", "--model", bad, "--formula", "p" } ).code == 65 );
    CHECK( run( { "check", "--model", model, "--formula", "<<carrier>>[k<=-1,b<=0] X safe" } ).code == 65 );
    CHECK( run( { "check", "--model", model, "--formula", "<<nobody>>[k<=1,b<=0] X safe" } ).code == 65 );
    CHECK( run( { "check", "--model", ( scratch() / "missing.json" ).string(), "--formula", "p" } ).code == 65 );
}

TEST_CASE( "demos" )
{
    const auto dir = ( scratch() / "demo" ).string();
    auto r = run( { "demo", "drone", "--output", dir } );
    CHECK( r.code == 0 );
    CHECK( std::filesystem::exists( std::filesystem::path( dir ) / "drone.model.json" ) );
    CHECK( std::filesystem::exists( std::filesystem::path( dir ) / "drone.result.json" ) );
    r = run( { "demo", "coalition", "--output", dir } );
    CHECK( r.code == 0 );
    std::ifstream in( std::filesystem::path( dir ) / "coalition.result.json" );
    const auto j = nlohmann::json::parse( in );
    CHECK( j[ "strategic" ][ 0 ][ "goal_cost" ] == 5 );
}

TEST_CASE( "benchmark generation" )
{
    const bench_spec spec{ 10, 3, 4, 2, 4, bench_density::sparse, 7 };
    CHECK( serialize_model( generate_benchmark( spec ) ) == serialize_model( generate_benchmark( spec ) ) );

    auto dense = spec;
    dense.density = bench_density::dense;
    const auto m = generate_benchmark( dense );
    double total = 0;
    for ( state_id s = 0; s < m.state_count(); ++s )
    {
        std::set<state_id> targets;
        for ( const auto& [ code, t ] : m.transitions[ s ] )
            targets.insert( t );
        total += static_cast<double>( targets.size() );
    }
    CHECK( total / static_cast<double>( m.state_count() ) >= 5.0 );

    // sparse: at most two targets per (state, a0 action)
    const auto sp = generate_benchmark( spec );
    for ( state_id s = 0; s < sp.state_count(); ++s )
    {
        std::map<action_id, std::set<state_id>> by_action;
        for ( const auto& [ code, t ] : sp.transitions[ s ] )
            by_action[ sp.decode_joint( code )[ 0 ] ].insert( t );
        for ( const auto& [ a, ts ] : by_action )
            CHECK( ts.size() <= 2 );
    }

    auto one = spec;
    one.states = 1;
    const auto single = generate_benchmark( one );
    CHECK( single.state_count() == 1 );
    for ( const auto& [ code, t ] : single.transitions[ 0 ] )
        CHECK( t == 0 );
}

TEST_CASE( "bench writes a CSV" )
{
    const auto csv = ( scratch() / "bench.csv" ).string();
    const auto r = run( { "bench", "--states", "5,10", "--trials", "1", "--csv", csv } );
    CHECK( r.code == 0 );
    std::ifstream in( csv );
    std::string line;
    std::getline( in, line );
    CHECK( line == "states,agents,k,b,density,mode,median_ms,candidates,verdict" );
    int rows = 0;
    while ( std::getline( in, line ) )
        ++rows;
    CHECK( rows == 4 );
}
