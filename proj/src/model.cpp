#include "hatl/model.hpp"

#include "hatl/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hatl
{

using json = nlohmann::json;

std::string_view to_string( error_kind kind )
{
    switch ( kind )
    {
    case error_kind::schema: return "SchemaError";
    case error_kind::dangling_reference: return "DanglingReference";
    case error_kind::partial_transition: return "PartialTransition";
    case error_kind::degree_range: return "DegreeRange";
    case error_kind::unavailable_action: return "UnavailableAction";
    case error_kind::parse: return "ParseError";
    case error_kind::unknown_connective: return "UnknownConnective";
    case error_kind::negative_bound: return "NegativeBound";
    case error_kind::arity: return "ArityError";
    case error_kind::unknown_atom: return "UnknownAtom";
    case error_kind::no_match: return "NoMatch";
    case error_kind::state_blowup: return "StateBlowup";
    case error_kind::invalid_strategy: return "InvalidStrategy";
    case error_kind::non_convergence: return "NonConvergence";
    case error_kind::limit_exceeded: return "LimitExceeded";
    }
    return "Error";
}

std::string_view to_string( comparator cmp )
{
    switch ( cmp )
    {
    case comparator::lt: return "<";
    case comparator::le: return "<=";
    case comparator::gt: return ">";
    case comparator::ge: return ">=";
    case comparator::eq: return "=";
    }
    return "?";
}

std::optional<comparator> parse_comparator( std::string_view text )
{
    if ( text == "<" ) return comparator::lt;
    if ( text == "<=" ) return comparator::le;
    if ( text == ">" ) return comparator::gt;
    if ( text == ">=" ) return comparator::ge;
    if ( text == "=" || text == "==" ) return comparator::eq;
    return std::nullopt;
}

bool compare( degree value, comparator cmp, degree threshold )
{
    switch ( cmp )
    {
    case comparator::lt: return value < threshold;
    case comparator::le: return value <= threshold;
    case comparator::gt: return value > threshold;
    case comparator::ge: return value >= threshold;
    case comparator::eq: return value == threshold;
    }
    return false;
}

std::string_view to_string( violation_kind kind )
{
    switch ( kind )
    {
    case violation_kind::no_agents: return "NoAgents";
    case violation_kind::no_states: return "NoStates";
    case violation_kind::empty_actions: return "EmptyActions";
    case violation_kind::initial_state: return "InitialState";
    case violation_kind::label_shape: return "LabelShape";
    case violation_kind::degree_range: return "DegreeRange";
    case violation_kind::empty_availability: return "EmptyAvailability";
    case violation_kind::unknown_action: return "UnknownAction";
    case violation_kind::partial_transition: return "PartialTransition";
    case violation_kind::extra_transition: return "ExtraTransition";
    case violation_kind::dangling_target: return "DanglingTarget";
    case violation_kind::guard_atom: return "GuardAtom";
    case violation_kind::duplicate_name: return "DuplicateName";
    }
    return "Violation";
}

namespace
{

template <typename Range, typename Name>
std::optional<std::size_t> index_of( const Range& range, std::string_view name, Name name_of )
{
    for ( std::size_t i = 0; i < range.size(); ++i )
        if ( name_of( range[ i ] ) == name )
            return i;
    return std::nullopt;
}

bool in_unit( degree d ) { return d >= 0.0 && d <= 1.0; }

} // namespace

std::optional<agent_id> rfcgs::find_agent( std::string_view name ) const
{
    return index_of( agents, name, []( const agent_def& a ) -> const std::string& { return a.name; } );
}

std::optional<atom_id> rfcgs::find_atom( std::string_view name ) const
{
    return index_of( atoms, name, []( const std::string& s ) -> const std::string& { return s; } );
}

std::optional<state_id> rfcgs::find_state( std::string_view name ) const
{
    return index_of( states, name, []( const std::string& s ) -> const std::string& { return s; } );
}

std::optional<action_id> rfcgs::find_action( agent_id a, std::string_view name ) const
{
    return index_of( agents[ a ].actions, name, []( const action_def& d ) -> const std::string& { return d.name; } );
}

bool rfcgs::is_available( agent_id a, state_id s, action_id act ) const
{
    const auto& av = availability[ a ][ s ];
    return std::binary_search( av.begin(), av.end(), act );
}

std::uint64_t rfcgs::joint_code( std::span<const action_id> joint ) const
{
    std::uint64_t code = 0;
    for ( std::size_t a = 0; a < agents.size(); ++a )
        code = code * agents[ a ].actions.size() + joint[ a ];
    return code;
}

joint_action rfcgs::decode_joint( std::uint64_t code ) const
{
    joint_action joint( agents.size() );
    for ( std::size_t a = agents.size(); a-- > 0; )
    {
        const auto radix = agents[ a ].actions.size();
        joint[ a ] = code % radix;
        code /= radix;
    }
    return joint;
}

std::uint64_t rfcgs::joint_action_count() const
{
    std::uint64_t n = 1;
    for ( const auto& a : agents )
        n *= a.actions.size();
    return n;
}

std::vector<joint_action> available_joint_actions( const rfcgs& m, state_id s )
{
    std::vector<joint_action> out;
    const auto n = m.agent_count();
    for ( std::size_t a = 0; a < n; ++a )
        if ( m.availability[ a ][ s ].empty() )
            return out;
    joint_action digits( n, 0 );
    while ( true )
    {
        joint_action joint( n );
        for ( std::size_t a = 0; a < n; ++a )
            joint[ a ] = m.availability[ a ][ s ][ digits[ a ] ];
        out.push_back( std::move( joint ) );
        std::size_t a = n;
        while ( a > 0 )
        {
            --a;
            if ( ++digits[ a ] < m.availability[ a ][ s ].size() )
                break;
            digits[ a ] = 0;
            if ( a == 0 )
                return out;
        }
        if ( n == 0 )
            return out;
    }
}

state_id successor( const rfcgs& m, state_id s, std::span<const action_id> joint )
{
    if ( joint.size() != m.agent_count() )
        throw error( error_kind::unavailable_action, "joint action has wrong arity" );
    for ( agent_id a = 0; a < m.agent_count(); ++a )
        if ( joint[ a ] >= m.agents[ a ].actions.size() || !m.is_available( a, s, joint[ a ] ) )
            throw error( error_kind::unavailable_action,
                         "agent " + m.agents[ a ].name + " cannot act at state " + m.states[ s ] );
    const auto it = m.transitions[ s ].find( m.joint_code( joint ) );
    if ( it == m.transitions[ s ].end() )
        throw error( error_kind::partial_transition, "no transition at state " + m.states[ s ] );
    return it->second;
}

std::vector<violation> validate( const rfcgs& m )
{
    std::vector<violation> out;
    auto report = [ &out ]( violation_kind kind, std::string detail ) {
        out.push_back( violation{ kind, std::move( detail ) } );
    };

    if ( m.agents.empty() )
        report( violation_kind::no_agents, "model has no agents" );
    if ( m.states.empty() )
        report( violation_kind::no_states, "model has no states" );

    auto check_unique = [ & ]( const auto& names, const char* what ) {
        std::set<std::string> seen;
        for ( const auto& n : names )
            if ( !seen.insert( n ).second )
                report( violation_kind::duplicate_name, std::string( what ) + " " + n );
    };
    check_unique( m.states, "state" );
    check_unique( m.atoms, "atom" );
    {
        std::vector<std::string> agent_names;
        for ( const auto& a : m.agents )
        {
            agent_names.push_back( a.name );
            if ( a.actions.empty() )
                report( violation_kind::empty_actions, a.name );
            std::vector<std::string> action_names;
            for ( const auto& act : a.actions )
                action_names.push_back( act.name );
            check_unique( action_names, ( "action of " + a.name ).c_str() );
        }
        check_unique( agent_names, "agent" );
    }

    if ( !m.states.empty() && m.initial >= m.states.size() )
        report( violation_kind::initial_state, "initial state index out of range" );

    if ( m.labels.size() != m.states.size() )
        report( violation_kind::label_shape, "labels must have one row per state" );
    for ( std::size_t s = 0; s < m.labels.size(); ++s )
    {
        if ( m.labels[ s ].size() != m.atoms.size() )
        {
            report( violation_kind::label_shape, "label row of state " + std::to_string( s ) );
            continue;
        }
        for ( std::size_t p = 0; p < m.atoms.size(); ++p )
            if ( !in_unit( m.labels[ s ][ p ] ) )
                report( violation_kind::degree_range,
                        "(" + ( s < m.states.size() ? m.states[ s ] : std::to_string( s ) ) + "," + m.atoms[ p ] + ")" );
    }

    {
        std::set<std::tuple<std::string, int, double>> seen;
        for ( const auto& g : m.guard_pool )
        {
            if ( !m.find_atom( g.atom ) )
                report( violation_kind::guard_atom, "unknown atom " + g.atom );
            if ( !in_unit( g.threshold ) )
                report( violation_kind::guard_atom, "threshold out of [0,1] for " + g.atom );
            if ( !seen.emplace( g.atom, static_cast<int>( g.op ), g.threshold ).second )
                report( violation_kind::guard_atom, "duplicate guard atom " + g.atom );
        }
    }

    bool shape_ok = m.availability.size() == m.agents.size();
    if ( !shape_ok )
        report( violation_kind::empty_availability, "availability must have one row per agent" );
    for ( std::size_t a = 0; shape_ok && a < m.agents.size(); ++a )
    {
        if ( m.availability[ a ].size() != m.states.size() )
        {
            report( violation_kind::empty_availability, "availability row of " + m.agents[ a ].name );
            shape_ok = false;
            break;
        }
        for ( std::size_t s = 0; s < m.states.size(); ++s )
        {
            const auto& av = m.availability[ a ][ s ];
            if ( av.empty() )
                report( violation_kind::empty_availability, "(" + m.agents[ a ].name + "," + m.states[ s ] + ")" );
            for ( auto act : av )
                if ( act >= m.agents[ a ].actions.size() )
                {
                    report( violation_kind::unknown_action, "(" + m.agents[ a ].name + "," + m.states[ s ] + ")" );
                    shape_ok = false;
                }
            if ( !std::is_sorted( av.begin(), av.end() ) || std::adjacent_find( av.begin(), av.end() ) != av.end() )
                report( violation_kind::unknown_action,
                        "availability not strictly sorted at (" + m.agents[ a ].name + "," + m.states[ s ] + ")" );
        }
    }

    if ( m.transitions.size() != m.states.size() )
    {
        report( violation_kind::partial_transition, "transitions must have one table per state" );
        shape_ok = false;
    }
    if ( !shape_ok )
        return out;

    for ( state_id s = 0; s < m.states.size(); ++s )
    {
        const auto joints = available_joint_actions( m, s );
        std::set<std::uint64_t> expected;
        for ( const auto& j : joints )
        {
            const auto code = m.joint_code( j );
            expected.insert( code );
            const auto it = m.transitions[ s ].find( code );
            if ( it == m.transitions[ s ].end() )
            {
                std::string desc;
                for ( std::size_t a = 0; a < j.size(); ++a )
                    desc += ( a ? "," : "" ) + m.agents[ a ].actions[ j[ a ] ].name;
                report( violation_kind::partial_transition, m.states[ s ] + " (" + desc + ")" );
            }
        }
        for ( const auto& [ code, target ] : m.transitions[ s ] )
        {
            if ( !expected.contains( code ) )
                report( violation_kind::extra_transition, m.states[ s ] + " code " + std::to_string( code ) );
            if ( target >= m.states.size() )
                report( violation_kind::dangling_target, m.states[ s ] + " -> " + std::to_string( target ) );
        }
    }
    return out;
}

namespace
{

[[noreturn]] void schema_fail( const std::string& what ) { throw error( error_kind::schema, what ); }

const json& require( const json& obj, const char* key )
{
    if ( !obj.is_object() || !obj.contains( key ) )
        schema_fail( std::string( "missing key '" ) + key + "'" );
    return obj.at( key );
}

std::uint64_t read_natural( const json& v, const std::string& what )
{
    if ( !v.is_number_integer() || v.get<std::int64_t>() < 0 )
        schema_fail( what + " must be a non-negative integer" );
    return v.get<std::uint64_t>();
}

degree read_degree( const json& v, const std::string& what )
{
    if ( !v.is_number() )
        schema_fail( what + " must be a number" );
    return v.get<double>();
}

struct transition_entry
{
    // agent -> required action; absent agents are wildcards
    std::map<agent_id, action_id> actions;
    state_id target;
    bool is_default;
};

rfcgs parse_model( const json& doc )
{
    if ( !doc.is_object() )
        schema_fail( "model must be a JSON object" );
    rfcgs m;

    for ( const auto& a : require( doc, "agents" ) )
    {
        agent_def agent;
        agent.name = require( a, "name" ).get<std::string>();
        for ( const auto& act : require( a, "actions" ) )
        {
            action_def def;
            if ( act.is_string() )
                def.name = act.get<std::string>();
            else
            {
                def.name = require( act, "name" ).get<std::string>();
                if ( act.contains( "cost" ) )
                    def.cost = read_natural( act.at( "cost" ), "cost of " + def.name );
            }
            agent.actions.push_back( std::move( def ) );
        }
        if ( a.contains( "resource" ) )
            agent.resource = read_natural( a.at( "resource" ), "resource of " + agent.name );
        m.agents.push_back( std::move( agent ) );
    }

    for ( const auto& p : require( doc, "atoms" ) )
        m.atoms.push_back( p.get<std::string>() );

    if ( doc.contains( "guard_atoms" ) )
        for ( const auto& g : doc.at( "guard_atoms" ) )
        {
            guard_atom ga;
            ga.atom = require( g, "atom" ).get<std::string>();
            if ( !m.find_atom( ga.atom ) )
                throw error( error_kind::dangling_reference, "guard atom " + ga.atom );
            const auto op = parse_comparator( require( g, "op" ).get<std::string>() );
            if ( !op )
                schema_fail( "bad comparator in guard_atoms" );
            ga.op = *op;
            ga.threshold = read_degree( require( g, "threshold" ), "threshold" );
            m.guard_pool.push_back( ga );
        }

    for ( const auto& st : require( doc, "states" ) )
    {
        std::string name;
        const json* labels = nullptr;
        if ( st.is_string() )
            name = st.get<std::string>();
        else
        {
            name = require( st, "name" ).get<std::string>();
            if ( st.contains( "labels" ) )
                labels = &st.at( "labels" );
        }
        std::vector<degree> row( m.atoms.size(), 0.0 );
        if ( labels )
            for ( const auto& [ atom, value ] : labels->items() )
            {
                const auto p = m.find_atom( atom );
                if ( !p )
                    throw error( error_kind::dangling_reference, "label atom " + atom + " in state " + name );
                row[ *p ] = read_degree( value, "label" );
            }
        m.states.push_back( std::move( name ) );
        m.labels.push_back( std::move( row ) );
    }

    auto state_ref = [ &m ]( const json& v ) {
        const auto name = v.get<std::string>();
        const auto s = m.find_state( name );
        if ( !s )
            throw error( error_kind::dangling_reference, "state " + name );
        return *s;
    };
    auto agent_ref = [ &m ]( const std::string& name ) {
        const auto a = m.find_agent( name );
        if ( !a )
            throw error( error_kind::dangling_reference, "agent " + name );
        return *a;
    };
    auto action_ref = [ &m ]( agent_id a, const std::string& name ) {
        const auto act = m.find_action( a, name );
        if ( !act )
            throw error( error_kind::dangling_reference, "action " + name + " of agent " + m.agents[ a ].name );
        return *act;
    };

    m.initial = state_ref( require( doc, "initial" ) );

    m.availability.assign( m.agents.size(), std::vector<std::vector<action_id>>( m.states.size() ) );
    for ( agent_id a = 0; a < m.agents.size(); ++a )
        for ( state_id s = 0; s < m.states.size(); ++s )
            for ( action_id act = 0; act < m.agents[ a ].actions.size(); ++act )
                m.availability[ a ][ s ].push_back( act );
    if ( doc.contains( "availability" ) )
        for ( const auto& [ state_name, per_agent ] : doc.at( "availability" ).items() )
        {
            const auto s = state_ref( json( state_name ) );
            for ( const auto& [ agent_name, list ] : per_agent.items() )
            {
                const auto a = agent_ref( agent_name );
                std::vector<action_id> av;
                for ( const auto& act : list )
                    av.push_back( action_ref( a, act.get<std::string>() ) );
                std::sort( av.begin(), av.end() );
                av.erase( std::unique( av.begin(), av.end() ), av.end() );
                m.availability[ a ][ s ] = std::move( av );
            }
        }

    std::vector<std::vector<transition_entry>> entries( m.states.size() );
    for ( const auto& t : require( doc, "transitions" ) )
    {
        const auto from = state_ref( require( t, "from" ) );
        transition_entry e;
        if ( t.contains( "default_to" ) )
        {
            e.target = state_ref( t.at( "default_to" ) );
            e.is_default = true;
        }
        else
        {
            e.target = state_ref( require( t, "to" ) );
            e.is_default = false;
            for ( const auto& [ agent_name, act ] : require( t, "actions" ).items() )
            {
                const auto a = agent_ref( agent_name );
                const auto id = action_ref( a, act.get<std::string>() );
                if ( !m.is_available( a, from, id ) )
                    schema_fail( "transition from " + m.states[ from ] + " uses unavailable action " +
                                 act.get<std::string>() );
                e.actions[ a ] = id;
            }
        }
        entries[ from ].push_back( std::move( e ) );
    }

    // A joint action with an empty availability set cannot be enumerated; let
    // validate() report that instead of a partial transition.
    for ( agent_id a = 0; a < m.agents.size(); ++a )
        for ( state_id s = 0; s < m.states.size(); ++s )
            if ( m.availability[ a ][ s ].empty() )
                schema_fail( "EmptyAvailability(" + m.agents[ a ].name + "," + m.states[ s ] + ")" );

    m.transitions.assign( m.states.size(), {} );
    for ( state_id s = 0; s < m.states.size(); ++s )
        for ( const auto& joint : available_joint_actions( m, s ) )
        {
            std::optional<state_id> target;
            for ( const auto& e : entries[ s ] )
            {
                if ( e.is_default )
                    continue;
                const bool hit = std::all_of( e.actions.begin(), e.actions.end(),
                                              [ &joint ]( const auto& kv ) { return joint[ kv.first ] == kv.second; } );
                if ( hit )
                {
                    target = e.target;
                    break;
                }
            }
            if ( !target )
                for ( const auto& e : entries[ s ] )
                    if ( e.is_default )
                    {
                        target = e.target;
                        break;
                    }
            if ( !target )
            {
                std::string desc;
                for ( std::size_t a = 0; a < joint.size(); ++a )
                    desc += ( a ? "," : "" ) + m.agents[ a ].actions[ joint[ a ] ].name;
                throw error( error_kind::partial_transition, m.states[ s ] + " (" + desc + ")" );
            }
            m.transitions[ s ].emplace( m.joint_code( joint ), *target );
        }
    return m;
}

} // namespace

rfcgs load_model( std::string_view text )
{
    json doc;
    try
    {
        doc = json::parse( text );
    }
    catch ( const json::exception& e )
    {
        throw error( error_kind::schema, e.what() );
    }

    rfcgs m;
    try
    {
        m = parse_model( doc );
    }
    catch ( const json::exception& e )
    {
        throw error( error_kind::schema, e.what() );
    }

    const auto problems = validate( m );
    if ( !problems.empty() )
    {
        const auto& v = problems.front();
        const auto detail = std::string( to_string( v.kind ) ) + " " + v.detail;
        switch ( v.kind )
        {
        case violation_kind::degree_range: throw error( error_kind::degree_range, detail );
        case violation_kind::partial_transition: throw error( error_kind::partial_transition, detail );
        case violation_kind::dangling_target:
        case violation_kind::guard_atom: throw error( error_kind::dangling_reference, detail );
        default: throw error( error_kind::schema, detail );
        }
    }
    return m;
}

rfcgs load_model_file( const std::string& path )
{
    std::ifstream in( path );
    if ( !in )
        throw error( error_kind::schema, "cannot open " + path );
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_model( buffer.str() );
}

std::string serialize_model( const rfcgs& m )
{
    json doc;
    doc[ "agents" ] = json::array();
    for ( const auto& a : m.agents )
    {
        json actions = json::array();
        for ( const auto& act : a.actions )
            actions.push_back( { { "name", act.name }, { "cost", act.cost } } );
        doc[ "agents" ].push_back( { { "name", a.name }, { "actions", actions }, { "resource", a.resource } } );
    }
    doc[ "atoms" ] = m.atoms;
    doc[ "guard_atoms" ] = json::array();
    for ( const auto& g : m.guard_pool )
        doc[ "guard_atoms" ].push_back(
                { { "atom", g.atom }, { "op", std::string( to_string( g.op ) ) }, { "threshold", g.threshold } } );
    doc[ "states" ] = json::array();
    for ( state_id s = 0; s < m.states.size(); ++s )
    {
        json labels = json::object();
        for ( atom_id p = 0; p < m.atoms.size(); ++p )
            labels[ m.atoms[ p ] ] = m.labels[ s ][ p ];
        doc[ "states" ].push_back( { { "name", m.states[ s ] }, { "labels", labels } } );
    }
    doc[ "initial" ] = m.states[ m.initial ];

    json availability = json::object();
    for ( state_id s = 0; s < m.states.size(); ++s )
    {
        json per_agent = json::object();
        for ( agent_id a = 0; a < m.agents.size(); ++a )
        {
            json list = json::array();
            for ( auto act : m.availability[ a ][ s ] )
                list.push_back( m.agents[ a ].actions[ act ].name );
            per_agent[ m.agents[ a ].name ] = list;
        }
        availability[ m.states[ s ] ] = per_agent;
    }
    doc[ "availability" ] = availability;

    doc[ "transitions" ] = json::array();
    for ( state_id s = 0; s < m.states.size(); ++s )
    {
        std::vector<std::pair<std::uint64_t, state_id>> sorted( m.transitions[ s ].begin(), m.transitions[ s ].end() );
        std::sort( sorted.begin(), sorted.end() );
        for ( const auto& [ code, target ] : sorted )
        {
            const auto joint = m.decode_joint( code );
            json actions = json::object();
            for ( agent_id a = 0; a < m.agents.size(); ++a )
                actions[ m.agents[ a ].name ] = m.agents[ a ].actions[ joint[ a ] ].name;
            doc[ "transitions" ].push_back( { { "from", m.states[ s ] }, { "actions", actions }, { "to", m.states[ target ] } } );
        }
    }
    return doc.dump( 1 );
}

} // namespace hatl
