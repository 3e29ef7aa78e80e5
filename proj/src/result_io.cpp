#include "hatl/result_io.hpp"

#include <sstream>

namespace hatl
{

namespace
{

nlohmann::json degrees_to_json( const rfcgs& m, const degree_map& d )
{
    nlohmann::json out = nlohmann::json::object();
    for ( state_id s = 0; s < d.size() && s < m.state_count(); ++s )
        out[ m.states[ s ] ] = d[ s ];
    return out;
}

std::string describe( const rfcgs& m, const collective_strategy& sigma )
{
    std::string out;
    std::visit(
            [ & ]( const auto& members ) {
                for ( const auto& s : members )
                    out += ( out.empty() ? "" : " " ) + m.agents[ s.agent ].name + "=" + to_string( m, s );
            },
            sigma );
    return out;
}

} // namespace

nlohmann::json strategic_to_json( const rfcgs& m, const strategic_result& r )
{
    nlohmann::json j;
    j[ "formula" ] = r.formula;
    j[ "degree" ] = r.best_degree;
    j[ "degrees" ] = degrees_to_json( m, r.degrees );
    j[ "strategy" ] = r.best ? strategy_to_json( m, *r.best ) : nlohmann::json();
    j[ "static_cost" ] = r.static_cost;
    j[ "max_spent" ] = r.max_spent;
    j[ "goal_cost" ] = r.goal_cost ? nlohmann::json( *r.goal_cost ) : nlohmann::json();
    return j;
}

nlohmann::json result_to_json( const rfcgs& m, const check_result& r )
{
    nlohmann::json j;
    j[ "verdict" ] = r.verdict;
    j[ "degree_initial" ] = r.degree_initial;
    j[ "initial" ] = m.states.at( m.initial );
    j[ "degrees" ] = degrees_to_json( m, r.degrees );
    j[ "strategic" ] = nlohmann::json::array();
    for ( const auto& s : r.strategic )
        j[ "strategic" ].push_back( strategic_to_json( m, s ) );
    const auto& st = r.stats;
    j[ "stats" ] = { { "candidates", st.candidates },
                     { "arenas", st.arenas },
                     { "arena_configs", st.arena_configs },
                     { "fixpoint_iterations", st.fixpoint_iterations },
                     { "unfolding_nodes", st.unfolding_nodes },
                     { "max_unfolding_depth", st.max_unfolding_depth },
                     { "effective_depth", st.effective_depth },
                     { "depth_cap_hit", st.depth_cap_hit },
                     { "wall_ms", st.wall_ms } };
    return j;
}

std::string summarize( const rfcgs& m, const check_result& r )
{
    std::ostringstream out;
    out << "verdict: " << ( r.verdict ? "true" : "false" ) << "\n";
    out << "degree at " << m.states.at( m.initial ) << ": " << r.degree_initial << "\n";
    for ( const auto& s : r.strategic )
    {
        out << s.formula << "\n  degree " << s.best_degree;
        if ( s.best )
            out << ", strategy " << describe( m, *s.best ) << ", cost " << s.static_cost << ", max spent "
                << s.max_spent;
        if ( s.goal_cost )
            out << ", goal cost " << *s.goal_cost;
        out << "\n";
    }
    out << "candidates " << r.stats.candidates << ", " << r.stats.wall_ms << " ms\n";
    return out.str();
}

} // namespace hatl
