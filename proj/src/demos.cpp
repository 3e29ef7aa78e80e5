#include "hatl/demos.hpp"

#include "hatl/error.hpp"
#include "hatl/guard.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace hatl
{

namespace
{

constexpr std::array<double, 4> grid{ 0.0, 0.3, 0.6, 1.0 };

double round2( double x ) { return std::round( x * 100.0 ) / 100.0; }

std::string cell( std::size_t x, std::size_t y ) { return std::to_string( x ) + std::to_string( y ); }

} // namespace

demo drone_demo( std::uint64_t budget )
{
    rfcgs m;
    m.agents = {
            agent_def{ "carrier", { { "right", 3 }, { "ascend", 2 } }, 5 },
            agent_def{ "villain", { { "idle", 1 }, { "descend", 2 } }, 5 },
    };
    m.atoms = { "dist", "safe" };
    m.guard_pool = { guard_atom{ "dist", comparator::lt, 0.5 }, guard_atom{ "safe", comparator::ge, 0.5 } };

    // state index = ((cx*4 + cy)*4 + vx)*4 + vy
    auto index = []( std::size_t cx, std::size_t cy, std::size_t vx, std::size_t vy ) {
        return ( ( cx * 4 + cy ) * 4 + vx ) * 4 + vy;
    };
    m.states.resize( 256 );
    m.labels.resize( 256 );
    m.availability.assign( 2, std::vector<std::vector<action_id>>( 256 ) );
    m.transitions.assign( 256, {} );
    constexpr action_id right = 0, ascend = 1, idle = 0, descend = 1;
    for ( std::size_t cx = 0; cx < 4; ++cx )
        for ( std::size_t cy = 0; cy < 4; ++cy )
            for ( std::size_t vx = 0; vx < 4; ++vx )
                for ( std::size_t vy = 0; vy < 4; ++vy )
                {
                    const auto s = index( cx, cy, vx, vy );
                    m.states[ s ] = "c" + cell( cx, cy ) + "v" + cell( vx, vy );
                    const double dist = round2(
                            std::max( std::abs( grid[ cx ] - grid[ vx ] ), std::abs( grid[ cy ] - grid[ vy ] ) ) );
                    const bool safe = cx >= 1 && cx <= 2 && cy >= 1 && cy <= 2;
                    m.labels[ s ] = { dist, safe ? 1.0 : 0.0 };
                    // right stops at the east edge, descend at the floor
                    m.availability[ 0 ][ s ] = cx < 3 ? std::vector<action_id>{ right, ascend }
                                                      : std::vector<action_id>{ ascend };
                    m.availability[ 1 ][ s ] = vy > 0 ? std::vector<action_id>{ idle, descend }
                                                      : std::vector<action_id>{ idle };
                    for ( auto c : m.availability[ 0 ][ s ] )
                        for ( auto v : m.availability[ 1 ][ s ] )
                        {
                            const auto ncx = c == right ? cx + 1 : cx;
                            const auto ncy = c == ascend ? std::min<std::size_t>( cy + 1, 3 ) : cy;
                            const auto nvy = v == descend ? vy - 1 : vy;
                            const std::array<action_id, 2> joint{ c, v };
                            m.transitions[ s ].emplace( m.joint_code( joint ), index( ncx, ncy, vx, nvy ) );
                        }
                }
    m.initial = index( 0, 1, 2, 3 );
    if ( const auto problems = validate( m ); !problems.empty() )
        throw error( error_kind::schema, "drone model: " + problems.front().detail );

    check_config cfg;
    cfg.metric = complexity_metric::rules;
    cfg.transitions = transition_mode::crisp;
    return demo{ "drone", std::move( m ),
                 "<<carrier>>[k<=2,b<=" + std::to_string( budget ) + "](!(dist<0.5) U safe)", cfg };
}

demo coalition_demo( std::uint64_t budget )
{
    // s0 -(right,right)-> s1 -(ascend,right)-> s2 -(right,hover)-> goal costs 2+2+1;
    // s0 -(right,right)-> s1 -(right,right)-> n2 -(ascend,ascend)-> goal costs 2+2+2.
    static const char* text = R"({
  "agents": [
    {"name": "carrier", "actions": [{"name": "right", "cost": 1}, {"name": "ascend", "cost": 1}, {"name": "hover", "cost": 0}], "resource": 5},
    {"name": "drone", "actions": [{"name": "right", "cost": 1}, {"name": "ascend", "cost": 1}, {"name": "hover", "cost": 0}], "resource": 5},
    {"name": "villain", "actions": [{"name": "idle", "cost": 0}], "resource": 0}
  ],
  "atoms": ["x", "y", "p", "q"],
  "guard_atoms": [
    {"atom": "x", "op": ">=", "threshold": 0.3},
    {"atom": "y", "op": ">=", "threshold": 0.3},
    {"atom": "y", "op": "<", "threshold": 0.3},
    {"atom": "x", "op": ">=", "threshold": 0.6}
  ],
  "states": [
    {"name": "s0", "labels": {"x": 0, "y": 0}},
    {"name": "s1", "labels": {"x": 0.3, "y": 0}},
    {"name": "s2", "labels": {"x": 0.3, "y": 0.3}},
    {"name": "n2", "labels": {"x": 0.6, "y": 0}},
    {"name": "goal", "labels": {"x": 0.6, "y": 0.3, "p": 1}}
  ],
  "initial": "s0",
  "transitions": [
    {"from": "s0", "actions": {"carrier": "right", "drone": "right"}, "to": "s1"},
    {"from": "s0", "default_to": "s0"},
    {"from": "s1", "actions": {"carrier": "ascend", "drone": "right"}, "to": "s2"},
    {"from": "s1", "actions": {"carrier": "right", "drone": "right"}, "to": "n2"},
    {"from": "s1", "default_to": "s1"},
    {"from": "s2", "actions": {"carrier": "right", "drone": "hover"}, "to": "goal"},
    {"from": "s2", "default_to": "s2"},
    {"from": "n2", "actions": {"carrier": "ascend", "drone": "ascend"}, "to": "goal"},
    {"from": "n2", "default_to": "n2"},
    {"from": "goal", "default_to": "goal"}
  ]
})";
    check_config cfg;
    cfg.metric = complexity_metric::rules;
    cfg.transitions = transition_mode::crisp;
    return demo{ "coalition", load_model( text ),
                 "<<carrier,drone>>[k<=4,b<=" + std::to_string( budget ) + "](!q U p)", cfg };
}

namespace
{

memoryless_strategy two_rules( const rfcgs& m, const char* agent, const char* guard, const char* action,
                               const char* fallback )
{
    const auto a = *m.find_agent( agent );
    return memoryless_strategy{ a,
                                { { parse_guard( guard ), *m.find_action( a, action ) },
                                  { guard_expr::truth(), *m.find_action( a, fallback ) } } };
}

} // namespace

collective_memoryless coalition_witness( const rfcgs& m )
{
    return { two_rules( m, "carrier", "x>=0.3&y<0.3", "ascend", "right" ),
             two_rules( m, "drone", "y>=0.3", "hover", "right" ) };
}

collective_memoryless coalition_naive( const rfcgs& m )
{
    return { two_rules( m, "carrier", "x>=0.6", "ascend", "right" ), two_rules( m, "drone", "x>=0.6", "ascend", "right" ) };
}

} // namespace hatl
