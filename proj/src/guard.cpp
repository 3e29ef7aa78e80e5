#include "hatl/guard.hpp"

#include "guard_parser.hpp"
#include "lexer.hpp"

#include <charconv>
#include <cmath>

namespace hatl
{

struct guard_expr::node
{
    kind k;
    std::string atom;
    comparator op = comparator::ge;
    degree threshold = 0.0;
    std::vector<guard_expr> children;
};

namespace
{

std::shared_ptr<const guard_expr::node> make_node( guard_expr::node n )
{
    return std::make_shared<const guard_expr::node>( std::move( n ) );
}

} // namespace

guard_expr guard_expr::truth()
{
    static const auto shared = make_node( node{ kind::truth, {}, comparator::ge, 0.0, {} } );
    return guard_expr( shared );
}

guard_expr guard_expr::compare( std::string atom, comparator op, degree threshold )
{
    return guard_expr( make_node( node{ kind::compare, std::move( atom ), op, threshold, {} } ) );
}

guard_expr guard_expr::atom( std::string atom )
{
    return guard_expr( make_node( node{ kind::atom, std::move( atom ), comparator::ge, 0.0, {} } ) );
}

guard_expr guard_expr::negate( guard_expr operand )
{
    return guard_expr( make_node( node{ kind::negation, {}, comparator::ge, 0.0, { std::move( operand ) } } ) );
}

guard_expr guard_expr::conjoin( guard_expr lhs, guard_expr rhs )
{
    return guard_expr(
            make_node( node{ kind::conjunction, {}, comparator::ge, 0.0, { std::move( lhs ), std::move( rhs ) } } ) );
}

guard_expr guard_expr::disjoin( guard_expr lhs, guard_expr rhs )
{
    return guard_expr(
            make_node( node{ kind::disjunction, {}, comparator::ge, 0.0, { std::move( lhs ), std::move( rhs ) } } ) );
}

guard_expr::kind guard_expr::node_kind() const { return _node->k; }
const std::string& guard_expr::atom_name() const { return _node->atom; }
comparator guard_expr::op() const { return _node->op; }
degree guard_expr::threshold() const { return _node->threshold; }

const guard_expr& guard_expr::lhs() const { return _node->children.at( 0 ); }
const guard_expr& guard_expr::rhs() const { return _node->children.at( 1 ); }

std::size_t guard_expr::symbol_count() const
{
    switch ( node_kind() )
    {
    case kind::truth:
    case kind::compare:
    case kind::atom: return 1;
    case kind::negation: return 1 + lhs().symbol_count();
    case kind::conjunction:
    case kind::disjunction: return 1 + lhs().symbol_count() + rhs().symbol_count();
    }
    return 0;
}

std::string format_degree( double value )
{
    char buf[ 64 ];
    const auto res = std::to_chars( buf, buf + sizeof buf, value );
    return std::string( buf, res.ptr );
}

namespace
{

int precedence( guard_expr::kind k )
{
    switch ( k )
    {
    case guard_expr::kind::disjunction: return 1;
    case guard_expr::kind::conjunction: return 2;
    default: return 3;
    }
}

void print( const guard_expr& g, std::string& out )
{
    using kind = guard_expr::kind;
    switch ( g.node_kind() )
    {
    case kind::truth: out += "true"; return;
    case kind::atom: out += g.atom_name(); return;
    case kind::compare:
        out += g.atom_name();
        out += to_string( g.op() );
        out += format_degree( g.threshold() );
        return;
    case kind::negation:
        out += '!';
        if ( g.lhs().node_kind() == kind::truth || g.lhs().node_kind() == kind::atom ||
             g.lhs().node_kind() == kind::negation )
            print( g.lhs(), out );
        else
        {
            out += '(';
            print( g.lhs(), out );
            out += ')';
        }
        return;
    case kind::conjunction:
    case kind::disjunction:
    {
        const int mine = precedence( g.node_kind() );
        // left-associative: equal precedence on the right needs parentheses
        const bool wrap_l = precedence( g.lhs().node_kind() ) < mine;
        const bool wrap_r = precedence( g.rhs().node_kind() ) <= mine;
        if ( wrap_l ) out += '(';
        print( g.lhs(), out );
        if ( wrap_l ) out += ')';
        out += g.node_kind() == kind::conjunction ? '&' : '|';
        if ( wrap_r ) out += '(';
        print( g.rhs(), out );
        if ( wrap_r ) out += ')';
        return;
    }
    }
}

} // namespace

std::string guard_expr::to_string() const
{
    std::string out;
    print( *this, out );
    return out;
}

bool guard_expr::operator==( const guard_expr& other ) const
{
    if ( _node == other._node )
        return true;
    if ( node_kind() != other.node_kind() )
        return false;
    switch ( node_kind() )
    {
    case kind::truth: return true;
    case kind::atom: return atom_name() == other.atom_name();
    case kind::compare:
        return atom_name() == other.atom_name() && op() == other.op() && threshold() == other.threshold();
    case kind::negation: return lhs() == other.lhs();
    case kind::conjunction:
    case kind::disjunction: return lhs() == other.lhs() && rhs() == other.rhs();
    }
    return false;
}

namespace detail
{

double parse_number( const token& t )
{
    double value = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    // from_chars rejects a leading '.' or '+'
    std::string padded;
    if ( !t.text.empty() && ( t.text[ 0 ] == '.' || ( t.text.size() > 1 && t.text[ 0 ] == '-' && t.text[ 1 ] == '.' ) ) )
    {
        padded = t.text;
        padded.insert( t.text[ 0 ] == '-' ? 1 : 0, "0" );
        first = padded.data();
        last = first + padded.size();
    }
    const auto res = std::from_chars( first, last, value );
    if ( res.ec != std::errc{} || res.ptr != last )
        throw error( error_kind::parse, "bad number '" + t.text + "' at position " + std::to_string( t.pos ) );
    return value;
}

namespace
{

guard_expr parse_unary( token_stream& ts );

guard_expr parse_and( token_stream& ts )
{
    auto lhs = parse_unary( ts );
    while ( ts.accept( tok::amp ) )
        lhs = guard_expr::conjoin( std::move( lhs ), parse_unary( ts ) );
    return lhs;
}

guard_expr parse_unary( token_stream& ts )
{
    if ( ts.accept( tok::bang ) )
        return guard_expr::negate( parse_unary( ts ) );
    if ( ts.accept( tok::lparen ) )
    {
        auto inner = parse_guard_tokens( ts );
        ts.expect( tok::rparen, "')'" );
        return inner;
    }
    if ( ts.peek().kind != tok::ident )
        ts.fail( "expected guard" );
    const auto name = ts.next().text;
    if ( name == "true" )
        return guard_expr::truth();
    if ( ts.peek().kind == tok::cmp )
    {
        const auto op = parse_comparator( ts.next().text );
        const auto& num = ts.expect( tok::number, "threshold" );
        const auto value = parse_number( num );
        if ( !( value >= 0.0 && value <= 1.0 ) )
            throw error( error_kind::degree_range, "guard threshold " + num.text + " outside [0,1]" );
        return guard_expr::compare( name, *op, value );
    }
    return guard_expr::atom( name );
}

} // namespace

guard_expr parse_guard_tokens( token_stream& ts )
{
    auto lhs = parse_and( ts );
    while ( ts.accept( tok::bar ) )
        lhs = guard_expr::disjoin( std::move( lhs ), parse_and( ts ) );
    return lhs;
}

} // namespace detail

guard_expr parse_guard( std::string_view text )
{
    detail::token_stream ts( text );
    auto g = detail::parse_guard_tokens( ts );
    if ( ts.peek().kind != detail::tok::end )
        ts.fail( "trailing input" );
    return g;
}

bool eval_guard( const rfcgs& m, state_id s, const guard_expr& g, degree tau_guard )
{
    using kind = guard_expr::kind;
    switch ( g.node_kind() )
    {
    case kind::truth: return true;
    case kind::compare:
    case kind::atom:
    {
        const auto p = m.find_atom( g.atom_name() );
        if ( !p )
            throw error( error_kind::unknown_atom, g.atom_name() );
        const auto value = m.labels[ s ][ *p ];
        return g.node_kind() == kind::atom ? value >= tau_guard : compare( value, g.op(), g.threshold() );
    }
    case kind::negation: return !eval_guard( m, s, g.lhs(), tau_guard );
    case kind::conjunction: return eval_guard( m, s, g.lhs(), tau_guard ) && eval_guard( m, s, g.rhs(), tau_guard );
    case kind::disjunction: return eval_guard( m, s, g.lhs(), tau_guard ) || eval_guard( m, s, g.rhs(), tau_guard );
    }
    return false;
}

std::vector<bool> guard_truth_table( const rfcgs& m, const guard_expr& g, degree tau_guard )
{
    std::vector<bool> table( m.state_count() );
    for ( state_id s = 0; s < m.state_count(); ++s )
        table[ s ] = eval_guard( m, s, g, tau_guard );
    return table;
}

guard_expr guard_from_pool( const guard_atom& ga ) { return guard_expr::compare( ga.atom, ga.op, ga.threshold ); }

} // namespace hatl
