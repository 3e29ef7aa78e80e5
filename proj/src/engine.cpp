#include "hatl/engine.hpp"

#include "hatl/error.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <thread>

namespace hatl
{

std::vector<agent_id> resolve_coalition( const rfcgs& m, const formula& node )
{
    std::vector<agent_id> out;
    for ( const auto& name : node.coalition )
    {
        const auto a = m.find_agent( name );
        if ( !a )
            throw error( error_kind::dangling_reference, "unknown agent " + name );
        out.push_back( *a );
    }
    std::sort( out.begin(), out.end() );
    out.erase( std::unique( out.begin(), out.end() ), out.end() );
    return out;
}

degree_map leaf_map( const rfcgs& m, const formula& leaf )
{
    degree_map out( m.state_count(), 0.0 );
    switch ( leaf.node_kind )
    {
    case formula::kind::constant: std::fill( out.begin(), out.end(), leaf.value ); return out;
    case formula::kind::atom:
    case formula::kind::compare:
    {
        const auto p = m.find_atom( leaf.atom );
        if ( !p )
            throw error( error_kind::unknown_atom, leaf.atom );
        for ( state_id s = 0; s < m.state_count(); ++s )
        {
            const auto v = m.labels[ s ][ *p ];
            out[ s ] = leaf.node_kind == formula::kind::atom ? v : ( compare( v, leaf.op, leaf.threshold ) ? 1.0 : 0.0 );
        }
        return out;
    }
    default: throw error( error_kind::schema, "not a leaf formula" );
    }
}

namespace
{

// Operand maps of one strategic node over model states.
struct node_context
{
    const rfcgs& m;
    const formula& node;
    const check_config& cfg;
    std::vector<agent_id> coalition;
    degree_map phi1;
    degree_map phi2;
};

struct outcome
{
    degree_map model_map;
    check_stats stats;
};

degree_map project( const arena& a, const degree_map& config_map )
{
    degree_map out( a.initial.size() );
    for ( std::size_t s = 0; s < a.initial.size(); ++s )
        out[ s ] = config_map[ a.initial[ s ] ];
    return out;
}

degree_map solve_graph( const node_context& ctx, const fuzzy_kripke& k, check_stats& stats )
{
    fixpoint_stats fs;
    degree_map result;
    switch ( ctx.node.path )
    {
    case path_op::next: result = ax_map( k, pull_back( k, ctx.phi2 ) ); break;
    case path_op::until:
        result = lfp_until( k, quantifier::forall, pull_back( k, ctx.phi1 ), pull_back( k, ctx.phi2 ), &fs );
        break;
    case path_op::release:
        result = gfp_release( k, quantifier::forall, pull_back( k, ctx.phi1 ), pull_back( k, ctx.phi2 ), &fs );
        break;
    }
    stats.fixpoint_iterations += fs.iterations;
    return result;
}

outcome evaluate_one( const node_context& ctx, const collective_memoryless& sigma )
{
    outcome out;
    const auto a = build_arena_memoryless( ctx.m, sigma, ctx.node.b_bound, ctx.cfg.tau_guard );
    const auto k = to_fuzzy_kripke( ctx.m, a, ctx.cfg.transitions );
    out.stats.arenas = 1;
    out.stats.arena_configs = a.config_count();
    out.model_map = project( a, solve_graph( ctx, k, out.stats ) );
    return out;
}

constexpr std::size_t unfolding_node_limit = 50'000'000;

// Depth-first walk of the unfolding tree. A configuration repeated on the
// current branch closes it (0 for U, 1 for R: the loop adds nothing), the
// exhausted sink is 0, and a branch still open at depth D continues as 1.
struct unfolding
{
    const fuzzy_kripke& k;
    const degree_map& phi1;
    const degree_map& phi2;
    bool until;
    std::uint64_t depth_limit;
    check_stats& stats;
    bool truncated = false;
    std::vector<bool> on_branch;

    degree visit( std::size_t c, std::uint64_t depth )
    {
        if ( ++stats.unfolding_nodes > unfolding_node_limit )
            throw error( error_kind::limit_exceeded, "recall unfolding exceeds node limit" );
        stats.max_unfolding_depth = std::max( stats.max_unfolding_depth, depth );
        if ( c == arena::sink )
            return 0.0;
        const auto a1 = phi1[ c ];
        const auto a2 = phi2[ c ];
        // the local operands already decide the value
        if ( until ? a1 <= a2 : a1 >= a2 )
            return a2;
        if ( depth >= depth_limit )
        {
            truncated = true;
            return until ? std::max( a1, a2 ) : a2;
        }
        on_branch[ c ] = true;
        degree acc = 1.0;
        for ( const auto& e : k.succ[ c ] )
        {
            degree v;
            if ( on_branch[ e.to ] )
            {
                ++stats.unfolding_nodes;
                stats.max_unfolding_depth = std::max( stats.max_unfolding_depth, depth + 1 );
                v = until ? 0.0 : 1.0;
            }
            else
                v = visit( e.to, depth + 1 );
            acc = std::min( acc, std::max( 1.0 - e.r, v ) );
            // early exit: nothing below can change the result
            if ( until ? acc <= a2 : acc <= a1 )
                break;
        }
        on_branch[ c ] = false;
        return until ? std::max( a2, std::min( a1, acc ) ) : std::min( a2, std::max( a1, acc ) );
    }
};

outcome evaluate_one( const node_context& ctx, const collective_recall& sigma )
{
    outcome out;
    const auto dfas = compile_strategy( sigma );
    const auto a = build_arena_recall( ctx.m, sigma, dfas, ctx.node.b_bound, ctx.cfg.tau_guard );
    const auto k = to_fuzzy_kripke( ctx.m, a, ctx.cfg.transitions );
    out.stats.arenas = 1;
    out.stats.arena_configs = a.config_count();

    std::vector<std::uint64_t> resources;
    for ( auto ag : ctx.coalition )
        resources.push_back( ctx.m.agents[ ag ].resource );
    const auto bound = depth_bound( ctx.m.state_count(), complexity( sigma, complexity_metric::symbols ), resources );
    const auto depth = std::max<std::uint64_t>( 1, std::min( bound.value, ctx.cfg.depth_cap ) );
    out.stats.effective_depth = depth;

    if ( ctx.node.path == path_op::next )
    {
        out.stats.max_unfolding_depth = 1;
        out.model_map = project( a, solve_graph( ctx, k, out.stats ) );
        return out;
    }

    // With no more non-sink configurations than levels, no branch can reach
    // the depth limit without repeating, so the unfolding equals the
    // fixpoint on the product graph.
    const std::uint64_t configs = a.config_count() - 1;
    if ( configs <= depth )
    {
        out.stats.max_unfolding_depth = configs;
        out.model_map = project( a, solve_graph( ctx, k, out.stats ) );
        return out;
    }

    const auto p1 = pull_back( k, ctx.phi1 );
    const auto p2 = pull_back( k, ctx.phi2 );
    unfolding walk{ k, p1, p2, ctx.node.path == path_op::until, depth, out.stats, false,
                    std::vector<bool>( k.size(), false ) };
    out.model_map.resize( ctx.m.state_count() );
    for ( state_id s = 0; s < ctx.m.state_count(); ++s )
        out.model_map[ s ] = walk.visit( a.initial[ s ], 0 );
    out.stats.depth_cap_hit = walk.truncated && ctx.cfg.depth_cap < bound.value;
    return out;
}

void accumulate( check_stats& into, const check_stats& from )
{
    into.candidates += from.candidates;
    into.arenas += from.arenas;
    into.arena_configs += from.arena_configs;
    into.fixpoint_iterations += from.fixpoint_iterations;
    into.unfolding_nodes += from.unfolding_nodes;
    into.max_unfolding_depth = std::max( into.max_unfolding_depth, from.max_unfolding_depth );
    if ( from.effective_depth != 0 )
        into.effective_depth = into.effective_depth == 0 ? from.effective_depth
                                                        : std::min( into.effective_depth, from.effective_depth );
    into.depth_cap_hit = into.depth_cap_hit || from.depth_cap_hit;
}

template <typename Collective>
arena witness_arena( const node_context& ctx, const Collective& sigma )
{
    if constexpr ( std::is_same_v<Collective, collective_memoryless> )
        return build_arena_memoryless( ctx.m, sigma, ctx.node.b_bound, ctx.cfg.tau_guard );
    else
        return build_arena_recall( ctx.m, sigma, compile_strategy( sigma ), ctx.node.b_bound, ctx.cfg.tau_guard );
}

template <typename Collective>
void witness_costs( const node_context& ctx, const Collective& sigma, strategic_result& r )
{
    const auto a = witness_arena( ctx, sigma );
    const auto b = ctx.node.b_bound;
    const auto root = a.initial[ ctx.m.initial ];
    std::vector<bool> seen( a.config_count(), false );
    std::vector<std::size_t> queue{ root };
    seen[ root ] = true;
    const bool until = ctx.node.path == path_op::until;
    for ( std::size_t i = 0; i < queue.size(); ++i )
    {
        const auto c = queue[ i ];
        const auto spent = b - a.configs[ c ].budget;
        if ( until && ctx.phi2[ a.configs[ c ].state ] >= ctx.cfg.tau_true )
        {
            r.goal_cost = std::max( r.goal_cost.value_or( 0 ), spent );
            // the objective is met here; later spending is not part of the goal
            continue;
        }
        for ( const auto& e : a.edges[ c ] )
            if ( e.target != arena::sink && !seen[ e.target ] )
            {
                seen[ e.target ] = true;
                queue.push_back( e.target );
            }
    }
    // max_spent covers every reachable play, not only the goal prefix
    std::fill( seen.begin(), seen.end(), false );
    queue.assign( 1, root );
    seen[ root ] = true;
    for ( std::size_t i = 0; i < queue.size(); ++i )
    {
        const auto c = queue[ i ];
        r.max_spent = std::max( r.max_spent, b - a.configs[ c ].budget );
        for ( const auto& e : a.edges[ c ] )
            if ( e.target != arena::sink && !seen[ e.target ] )
            {
                seen[ e.target ] = true;
                queue.push_back( e.target );
            }
    }
}

template <typename Collective>
strategic_result solve_candidates( const node_context& ctx, const std::vector<Collective>& candidates,
                                   check_stats& stats )
{
    strategic_result r;
    r.formula = ctx.node.to_string();
    r.degrees.assign( ctx.m.state_count(), 0.0 );
    std::optional<std::size_t> best;
    const auto init = ctx.m.initial;

    const std::size_t workers =
            ctx.cfg.workers == 0 ? std::max( 1u, std::thread::hardware_concurrency() ) : ctx.cfg.workers;
    const std::size_t batch = workers * 4;
    bool stop = false;
    for ( std::size_t start = 0; start < candidates.size() && !stop; start += batch )
    {
        const std::size_t end = std::min( candidates.size(), start + batch );
        std::vector<outcome> outcomes( end - start );
        if ( workers == 1 )
            for ( std::size_t i = start; i < end; ++i )
                outcomes[ i - start ] = evaluate_one( ctx, candidates[ i ] );
        else
        {
            std::vector<std::future<void>> jobs;
            for ( std::size_t w = 0; w < workers; ++w )
                jobs.push_back( std::async( std::launch::async, [ &, w ] {
                    for ( std::size_t i = start + w; i < end; i += workers )
                        outcomes[ i - start ] = evaluate_one( ctx, candidates[ i ] );
                } ) );
            for ( auto& j : jobs )
                j.get();
        }
        // reduction in canonical order keeps results independent of width
        for ( std::size_t i = start; i < end; ++i )
        {
            const auto& o = outcomes[ i - start ];
            accumulate( stats, o.stats );
            ++stats.candidates;
            for ( state_id s = 0; s < ctx.m.state_count(); ++s )
                r.degrees[ s ] = std::max( r.degrees[ s ], o.model_map[ s ] );
            if ( !best || o.model_map[ init ] > r.best_degree )
            {
                best = i;
                r.best_degree = o.model_map[ init ];
            }
            const bool saturated = std::all_of( r.degrees.begin(), r.degrees.end(), []( degree d ) { return d >= 1.0; } );
            if ( saturated || ( ctx.cfg.verdict_only && r.degrees[ init ] >= ctx.cfg.tau_true ) )
            {
                stop = true;
                break;
            }
        }
    }
    if ( best )
    {
        const auto& sigma = candidates[ *best ];
        r.best = collective_strategy{ sigma };
        r.static_cost = static_cost( ctx.m, *r.best );
        witness_costs( ctx, sigma, r );
    }
    return r;
}

struct evaluator
{
    const rfcgs& m;
    const check_config& cfg;
    check_result& result;

    degree_map operator()( const formula& f )
    {
        switch ( f.node_kind )
        {
        case formula::kind::constant:
        case formula::kind::atom:
        case formula::kind::compare: return leaf_map( m, f );
        case formula::kind::apply:
        {
            std::vector<degree_map> args;
            for ( const auto& c : f.children )
                args.push_back( ( *this )( c ) );
            degree_map out( m.state_count() );
            std::vector<degree> at( args.size() );
            for ( state_id s = 0; s < m.state_count(); ++s )
            {
                for ( std::size_t i = 0; i < args.size(); ++i )
                    at[ i ] = args[ i ][ s ];
                out[ s ] = eval_connective( f.fn, at );
            }
            return out;
        }
        case formula::kind::strategic:
        {
            auto ctx = context( f );
            enumeration_options opts{ cfg.metric, cfg.tau_guard, cfg.max_guard_symbols, cfg.max_regex_size };
            strategic_result r;
            if ( cfg.mode == strategy_mode::memoryless )
                r = solve_candidates( ctx, enumerate_memoryless( m, ctx.coalition, f.k_bound, f.b_bound, opts ),
                                      result.stats );
            else if ( cfg.lifted_recall )
                r = solve_candidates( ctx, enumerate_lifted( m, ctx.coalition, f.k_bound, f.b_bound, opts ),
                                      result.stats );
            else
                r = solve_candidates( ctx, enumerate_recall( m, ctx.coalition, f.k_bound, f.b_bound, opts ),
                                      result.stats );
            auto degrees = r.degrees;
            result.strategic.push_back( std::move( r ) );
            return degrees;
        }
        }
        return {};
    }

    node_context context( const formula& f )
    {
        node_context ctx{ m, f, cfg, resolve_coalition( m, f ), {}, {} };
        if ( f.path == path_op::next )
        {
            ctx.phi2 = ( *this )( f.children.at( 0 ) );
            ctx.phi1.assign( m.state_count(), 0.0 );
        }
        else
        {
            ctx.phi1 = ( *this )( f.children.at( 0 ) );
            ctx.phi2 = ( *this )( f.children.at( 1 ) );
        }
        return ctx;
    }
};

void check_config_ranges( const check_config& cfg )
{
    if ( !( cfg.tau_guard >= 0.0 && cfg.tau_guard <= 1.0 ) || !( cfg.tau_true >= 0.0 && cfg.tau_true <= 1.0 ) )
        throw error( error_kind::degree_range, "thresholds must lie in [0,1]" );
    if ( cfg.depth_cap < 1 )
        throw error( error_kind::schema, "depth cap must be at least 1" );
}

} // namespace

check_result check( const rfcgs& m, const formula& phi, const check_config& cfg )
{
    check_config_ranges( cfg );
    const auto started = std::chrono::steady_clock::now();
    check_result result;
    evaluator eval{ m, cfg, result };
    result.degrees = eval( phi );
    result.degree_initial = result.degrees[ m.initial ];
    result.verdict = result.degree_initial >= cfg.tau_true;
    result.stats.wall_ms =
            std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - started ).count();
    return result;
}

namespace
{

node_context strategy_context( const rfcgs& m, const formula& node, const collective_strategy& sigma,
                               const check_config& cfg, check_result& scratch )
{
    check_config_ranges( cfg );
    if ( !node.is_strategic() )
        throw error( error_kind::invalid_strategy, "formula is not a strategic modality" );
    evaluator eval{ m, cfg, scratch };
    auto ctx = eval.context( node );
    const auto agents = std::visit(
            []( const auto& members ) {
                std::vector<agent_id> out;
                for ( const auto& s : members )
                    out.push_back( s.agent );
                return out;
            },
            sigma );
    if ( agents != ctx.coalition )
        throw error( error_kind::invalid_strategy, "strategy members do not match the coalition" );
    return ctx;
}

} // namespace

degree_map evaluate_strategy( const rfcgs& m, const formula& node, const collective_strategy& sigma,
                              const check_config& cfg )
{
    check_result scratch;
    const auto ctx = strategy_context( m, node, sigma, cfg, scratch );
    return std::visit( [ & ]( const auto& members ) { return evaluate_one( ctx, members ).model_map; }, sigma );
}

strategic_result inspect_strategy( const rfcgs& m, const formula& node, const collective_strategy& sigma,
                                   const check_config& cfg )
{
    check_result scratch;
    const auto ctx = strategy_context( m, node, sigma, cfg, scratch );
    strategic_result r;
    r.formula = node.to_string();
    r.best = sigma;
    r.static_cost = static_cost( m, sigma );
    std::visit(
            [ & ]( const auto& members ) {
                r.degrees = evaluate_one( ctx, members ).model_map;
                witness_costs( ctx, members, r );
            },
            sigma );
    r.best_degree = r.degrees[ m.initial ];
    return r;
}

} // namespace hatl
