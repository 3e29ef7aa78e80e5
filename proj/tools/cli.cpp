#include "cli.hpp"

#include "hatl/bench.hpp"
#include "hatl/demos.hpp"
#include "hatl/error.hpp"
#include "hatl/result_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

namespace hatl::cli
{

namespace
{

struct check_flags
{
    std::string model;
    std::string formula;
    std::string mode = "memoryless";
    std::string metric = "symbols";
    std::string transitions = "crisp";
    double tau_guard = default_tau_guard;
    double tau_true = default_tau_true;
    std::uint64_t depth_cap = 5;
    std::size_t workers = 1;
    std::uint64_t seed = 1;
    bool synthesize = false;
    std::string output;
};

void add_engine_flags( CLI::App& cmd, check_flags& f )
{
    cmd.add_option( "--mode", f.mode )->check( CLI::IsMember( { "memoryless", "recall" } ) );
    cmd.add_option( "--metric", f.metric )->check( CLI::IsMember( { "symbols", "rules" } ) );
    cmd.add_option( "--transitions", f.transitions )->check( CLI::IsMember( { "crisp", "labelled" } ) );
    cmd.add_option( "--tau-guard", f.tau_guard )->check( CLI::Range( 0.0, 1.0 ) );
    cmd.add_option( "--tau-true", f.tau_true )->check( CLI::Range( 0.0, 1.0 ) );
    cmd.add_option( "--depth-cap", f.depth_cap )->check( CLI::PositiveNumber );
    cmd.add_option( "--workers", f.workers, "0 uses every hardware thread" );
    cmd.add_option( "--seed", f.seed );
}

check_config to_config( const check_flags& f )
{
    check_config cfg;
    cfg.mode = f.mode == "recall" ? strategy_mode::recall : strategy_mode::memoryless;
    cfg.metric = f.metric == "rules" ? complexity_metric::rules : complexity_metric::symbols;
    cfg.transitions = f.transitions == "labelled" ? transition_mode::labelled : transition_mode::crisp;
    cfg.tau_guard = f.tau_guard;
    cfg.tau_true = f.tau_true;
    cfg.depth_cap = f.depth_cap;
    cfg.workers = f.workers;
    // plain checks may stop at the first winning strategy
    cfg.verdict_only = !f.synthesize;
    return cfg;
}

bool input_error( error_kind k )
{
    switch ( k )
    {
    case error_kind::schema:
    case error_kind::dangling_reference:
    case error_kind::partial_transition:
    case error_kind::degree_range:
    case error_kind::parse:
    case error_kind::unknown_connective:
    case error_kind::negative_bound:
    case error_kind::arity:
    case error_kind::unknown_atom:
        return true;
    default:
        return false;
    }
}

void write_file( const std::string& path, const std::string& text )
{
    std::ofstream file( path );
    if ( !file )
        throw error( error_kind::limit_exceeded, "cannot write " + path );
    file << text;
}

// Runs one check and reports it; returns the exit code.
int run_check( const rfcgs& m, const std::string& text, const check_config& cfg, const std::string& output,
               std::ostream& out, std::ostream& err )
{
    formula phi;
    try
    {
        phi = parse_formula( text );
    }
    catch ( const error& e )
    {
        err << e.what() << "\n";
        return exit_input;
    }
    try
    {
        const auto r = check( m, phi, cfg );
        out << summarize( m, r );
        if ( !output.empty() )
            write_file( output, result_to_json( m, r ).dump( 2 ) + "\n" );
        return r.verdict ? exit_true : exit_false;
    }
    catch ( const error& e )
    {
        err << e.what() << "\n";
        return input_error( e.kind() ) ? exit_input : exit_error;
    }
}

std::vector<std::size_t> parse_list( const std::string& text )
{
    std::vector<std::size_t> out;
    std::stringstream in( text );
    std::string item;
    while ( std::getline( in, item, ',' ) )
        out.push_back( std::stoul( item ) );
    return out;
}

} // namespace

int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Strategy-complexity model checker for fuzzy resource-bounded games", "hatl" };
    app.require_subcommand( 1 );

    check_flags cf;
    auto* check_cmd = app.add_subcommand( "check", "Check a formula on a model" );
    check_cmd->add_option( "--model", cf.model )->required();
    check_cmd->add_option( "--formula", cf.formula )->required();
    check_cmd->add_flag( "--synthesize", cf.synthesize, "search for the best strategy, not just a winning one" );
    check_cmd->add_option( "--output", cf.output, "result JSON" );
    add_engine_flags( *check_cmd, cf );

    auto* synth_cmd = app.add_subcommand( "synthesize", "Check and report the best strategy" );
    synth_cmd->add_option( "--model", cf.model )->required();
    synth_cmd->add_option( "--formula", cf.formula )->required();
    synth_cmd->add_option( "--output", cf.output, "result JSON" );
    add_engine_flags( *synth_cmd, cf );

    check_flags bf;
    std::string states = "25,50,100";
    std::size_t agents = 3, actions = 4, trials = 5;
    std::uint64_t k = 2, b = 4;
    std::string density = "both", csv;
    auto* bench_cmd = app.add_subcommand( "bench", "Time checks on generated models" );
    bench_cmd->add_option( "--states", states, "comma-separated state counts" );
    bench_cmd->add_option( "--agents", agents )->check( CLI::PositiveNumber );
    bench_cmd->add_option( "--actions", actions )->check( CLI::PositiveNumber );
    bench_cmd->add_option( "--k", k );
    bench_cmd->add_option( "--b", b );
    bench_cmd->add_option( "--density", density )->check( CLI::IsMember( { "sparse", "dense", "both" } ) );
    bench_cmd->add_option( "--trials", trials )->check( CLI::PositiveNumber );
    bench_cmd->add_option( "--csv", csv );
    add_engine_flags( *bench_cmd, bf );

    std::string demo_name, demo_dir;
    std::uint64_t demo_budget = 5;
    auto* demo_cmd = app.add_subcommand( "demo", "Run a built-in scenario (drone, coalition)" );
    demo_cmd->add_option( "name", demo_name )->required();
    demo_cmd->add_option( "--output", demo_dir, "directory for model, formula and result" );
    demo_cmd->add_option( "--budget", demo_budget );

    // CLI11 consumes the vector from the back
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    try
    {
        app.parse( reversed );
    }
    catch ( const CLI::CallForHelp& )
    {
        out << app.help();
        return 0;
    }
    catch ( const CLI::ParseError& e )
    {
        err << e.what() << "\n";
        return exit_usage;
    }

    try
    {
        if ( *check_cmd || *synth_cmd )
        {
            if ( *synth_cmd )
                cf.synthesize = true;
            rfcgs m;
            try
            {
                m = load_model_file( cf.model );
            }
            catch ( const error& e )
            {
                err << e.what() << "\n";
                return exit_input;
            }
            return run_check( m, cf.formula, to_config( cf ), cf.output, out, err );
        }

        if ( *bench_cmd )
        {
            auto cfg = to_config( bf );
            cfg.metric = complexity_metric::rules;
            cfg.verdict_only = false;
            std::vector<bench_density> densities;
            if ( density != "dense" )
                densities.push_back( bench_density::sparse );
            if ( density != "sparse" )
                densities.push_back( bench_density::dense );
            std::string report = bench_header() + "\n";
            out << bench_header() << "\n";
            for ( auto n : parse_list( states ) )
                for ( auto d : densities )
                {
                    const bench_spec spec{ n, agents, actions, k, b, d, bf.seed };
                    const auto line = to_string( run_benchmark( spec, trials, cfg ) );
                    out << line << "\n";
                    report += line + "\n";
                }
            if ( !csv.empty() )
                write_file( csv, report );
            return 0;
        }

        // demo
        demo d;
        if ( demo_name == "drone" )
            d = drone_demo( demo_budget );
        else if ( demo_name == "coalition" )
            d = coalition_demo( demo_budget );
        else
        {
            err << "unknown demo '" << demo_name << "' (expected drone or coalition)\n";
            return exit_usage;
        }
        auto cfg = d.config;
        cfg.verdict_only = false;
        std::string result_path;
        if ( !demo_dir.empty() )
        {
            std::filesystem::create_directories( demo_dir );
            const auto base = std::filesystem::path( demo_dir ) / d.name;
            write_file( base.string() + ".model.json", serialize_model( d.model ) );
            write_file( base.string() + ".formula.txt", d.formula + "\n" );
            result_path = base.string() + ".result.json";
        }
        out << d.formula << "\n";
        return run_check( d.model, d.formula, cfg, result_path, out, err );
    }
    catch ( const std::exception& e )
    {
        err << e.what() << "\n";
        return exit_error;
    }
}

} // namespace hatl::cli
