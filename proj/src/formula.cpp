#include "hatl/formula.hpp"

#include "hatl/error.hpp"
#include "hatl/guard.hpp"
#include "lexer.hpp"

#include <algorithm>
#include <numeric>

namespace hatl
{

std::string_view to_string( connective fn )
{
    switch ( fn )
    {
    case connective::min: return "min";
    case connective::max: return "max";
    case connective::neg: return "not";
    case connective::impl: return "impl";
    case connective::avg: return "avg";
    }
    return "?";
}

connective connective_from_name( std::string_view name )
{
    if ( name == "min" ) return connective::min;
    if ( name == "max" ) return connective::max;
    if ( name == "not" || name == "neg" ) return connective::neg;
    if ( name == "impl" ) return connective::impl;
    if ( name == "avg" ) return connective::avg;
    throw error( error_kind::unknown_connective, std::string( name ) );
}

namespace
{

void check_arity( connective fn, std::size_t n )
{
    const bool ok = fn == connective::neg ? n == 1 : fn == connective::avg ? n >= 1 : n == 2;
    if ( !ok )
        throw error( error_kind::arity, std::string( to_string( fn ) ) + " applied to " + std::to_string( n ) + " arguments" );
}

} // namespace

degree eval_connective( connective fn, std::span<const degree> args )
{
    check_arity( fn, args.size() );
    for ( auto x : args )
        if ( !( x >= 0.0 && x <= 1.0 ) )
            throw error( error_kind::degree_range, "connective argument " + format_degree( x ) );
    switch ( fn )
    {
    case connective::min: return std::min( args[ 0 ], args[ 1 ] );
    case connective::max: return std::max( args[ 0 ], args[ 1 ] );
    case connective::neg: return 1.0 - args[ 0 ];
    case connective::impl: return std::max( args[ 1 ], 1.0 - args[ 0 ] );
    case connective::avg: return std::accumulate( args.begin(), args.end(), 0.0 ) / static_cast<double>( args.size() );
    }
    return 0.0;
}

degree eval_connective( std::string_view name, std::span<const degree> args )
{
    return eval_connective( connective_from_name( name ), args );
}

formula formula::constant( degree v )
{
    formula f;
    f.node_kind = kind::constant;
    f.value = v;
    return f;
}

formula formula::make_atom( std::string name )
{
    formula f;
    f.node_kind = kind::atom;
    f.atom = std::move( name );
    return f;
}

formula formula::make_compare( std::string name, comparator op, degree threshold )
{
    formula f;
    f.node_kind = kind::compare;
    f.atom = std::move( name );
    f.op = op;
    f.threshold = threshold;
    return f;
}

formula formula::make_apply( connective fn, std::vector<formula> args )
{
    check_arity( fn, args.size() );
    formula f;
    f.node_kind = kind::apply;
    f.fn = fn;
    f.children = std::move( args );
    return f;
}

formula formula::make_strategic( std::vector<std::string> coalition, std::uint64_t k, std::uint64_t b, path_op path,
                                 std::vector<formula> operands )
{
    formula f;
    f.node_kind = kind::strategic;
    std::vector<std::string> unique;
    for ( auto& a : coalition )
        if ( std::find( unique.begin(), unique.end(), a ) == unique.end() )
            unique.push_back( std::move( a ) );
    f.coalition = std::move( unique );
    f.k_bound = k;
    f.b_bound = b;
    f.path = path;
    f.children = std::move( operands );
    return f;
}

std::size_t formula::strategic_depth() const
{
    std::size_t inner = 0;
    for ( const auto& c : children )
        inner = std::max( inner, c.strategic_depth() );
    return inner + ( is_strategic() ? 1 : 0 );
}

std::string formula::to_string() const
{
    switch ( node_kind )
    {
    case kind::constant:
        if ( value == 1.0 ) return "true";
        if ( value == 0.0 ) return "false";
        return format_degree( value );
    case kind::atom: return atom;
    case kind::compare: return atom + std::string( hatl::to_string( op ) ) + format_degree( threshold );
    case kind::apply:
    {
        std::string out( hatl::to_string( fn ) );
        out += '(';
        for ( std::size_t i = 0; i < children.size(); ++i )
            out += ( i ? ", " : "" ) + children[ i ].to_string();
        return out + ')';
    }
    case kind::strategic:
    {
        std::string out = "<<";
        for ( std::size_t i = 0; i < coalition.size(); ++i )
            out += ( i ? "," : "" ) + coalition[ i ];
        out += ">>[k<=" + std::to_string( k_bound ) + ",b<=" + std::to_string( b_bound ) + "]";
        switch ( path )
        {
        case path_op::next: return out + "X " + children[ 0 ].to_string();
        case path_op::until: return out + "(" + children[ 0 ].to_string() + " U " + children[ 1 ].to_string() + ")";
        case path_op::release: return out + "(" + children[ 0 ].to_string() + " R " + children[ 1 ].to_string() + ")";
        }
    }
    }
    return {};
}

namespace
{

using detail::tok;
using detail::token_stream;

bool is_path_keyword( const std::string& s ) { return s == "X" || s == "U" || s == "R" || s == "G" || s == "F"; }

formula parse_phi( token_stream& ts );

std::uint64_t parse_bound( token_stream& ts, const char* name )
{
    const auto& id = ts.expect( tok::ident, name );
    if ( id.text != name )
        ts.fail( std::string( "expected bound '" ) + name + "'" );
    const auto& cmp = ts.expect( tok::cmp, "'<='" );
    if ( cmp.text != "<=" )
        ts.fail( "expected '<='" );
    const auto& num = ts.expect( tok::number, "integer bound" );
    if ( !num.text.empty() && num.text[ 0 ] == '-' )
        throw error( error_kind::negative_bound, std::string( name ) + "<=" + num.text );
    if ( num.text.find( '.' ) != std::string::npos )
        throw error( error_kind::parse, "bound must be an integer at position " + std::to_string( num.pos ) );
    return std::stoull( num.text );
}

formula parse_strategic( token_stream& ts )
{
    std::vector<std::string> coalition;
    coalition.push_back( ts.expect( tok::ident, "agent name" ).text );
    while ( ts.accept( tok::comma ) )
        coalition.push_back( ts.expect( tok::ident, "agent name" ).text );
    ts.expect( tok::coal_close, "'>>'" );
    ts.expect( tok::lbrack, "'['" );
    const auto k = parse_bound( ts, "k" );
    ts.expect( tok::comma, "','" );
    const auto b = parse_bound( ts, "b" );
    ts.expect( tok::rbrack, "']'" );

    if ( ts.accept( tok::lparen ) )
    {
        auto lhs = parse_phi( ts );
        const auto& op = ts.expect( tok::ident, "'U' or 'R'" );
        if ( op.text != "U" && op.text != "R" )
            ts.fail( "expected 'U' or 'R'" );
        auto rhs = parse_phi( ts );
        ts.expect( tok::rparen, "')'" );
        return formula::make_strategic( std::move( coalition ), k, b, op.text == "U" ? path_op::until : path_op::release,
                                        { std::move( lhs ), std::move( rhs ) } );
    }
    const auto& op = ts.expect( tok::ident, "temporal operator" );
    auto operand = parse_phi( ts );
    if ( op.text == "X" )
        return formula::make_strategic( std::move( coalition ), k, b, path_op::next, { std::move( operand ) } );
    if ( op.text == "G" )
        return formula::make_strategic( std::move( coalition ), k, b, path_op::release,
                                        { formula::constant( 0.0 ), std::move( operand ) } );
    if ( op.text == "F" )
        return formula::make_strategic( std::move( coalition ), k, b, path_op::until,
                                        { formula::constant( 1.0 ), std::move( operand ) } );
    throw error( error_kind::parse, "unknown temporal operator '" + op.text + "'" );
}

formula parse_phi( token_stream& ts )
{
    if ( ts.accept( tok::coal_open ) )
        return parse_strategic( ts );
    if ( ts.accept( tok::bang ) )
        return formula::make_apply( connective::neg, { parse_phi( ts ) } );
    if ( ts.accept( tok::lparen ) )
    {
        auto inner = parse_phi( ts );
        ts.expect( tok::rparen, "')'" );
        return inner;
    }
    if ( ts.peek().kind == tok::number )
    {
        // constant degree
        const auto& num = ts.next();
        const auto value = detail::parse_number( num );
        if ( !( value >= 0.0 && value <= 1.0 ) )
            throw error( error_kind::degree_range, "constant " + num.text );
        return formula::constant( value );
    }
    if ( ts.peek().kind != tok::ident )
        ts.fail( "expected formula" );
    if ( is_path_keyword( ts.peek().text ) )
        ts.fail( "temporal operator outside a strategic modality" );
    const auto name = ts.next().text;
    if ( name == "true" )
        return formula::constant( 1.0 );
    if ( name == "false" )
        return formula::constant( 0.0 );
    if ( ts.accept( tok::lparen ) )
    {
        const auto fn = connective_from_name( name );
        std::vector<formula> args;
        args.push_back( parse_phi( ts ) );
        while ( ts.accept( tok::comma ) )
            args.push_back( parse_phi( ts ) );
        ts.expect( tok::rparen, "')'" );
        return formula::make_apply( fn, std::move( args ) );
    }
    if ( ts.peek().kind == tok::cmp )
    {
        const auto op = parse_comparator( ts.next().text );
        const auto& num = ts.expect( tok::number, "threshold" );
        const auto value = detail::parse_number( num );
        if ( !( value >= 0.0 && value <= 1.0 ) )
            throw error( error_kind::degree_range, "threshold " + num.text );
        return formula::make_compare( name, *op, value );
    }
    return formula::make_atom( name );
}

} // namespace

formula parse_formula( std::string_view text )
{
    token_stream ts( text );
    auto f = parse_phi( ts );
    if ( ts.peek().kind != tok::end )
        ts.fail( "trailing input" );
    return f;
}

} // namespace hatl
