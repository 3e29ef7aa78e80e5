#include "hatl/regex.hpp"

#include "guard_parser.hpp"
#include "lexer.hpp"

#include <algorithm>
#include <map>

namespace hatl
{

struct guard_regex::node
{
    kind k;
    std::vector<guard_expr> guard; // one element for literals
    std::vector<guard_regex> children;
};

namespace
{

std::shared_ptr<const guard_regex::node> make_node( guard_regex::node n )
{
    return std::make_shared<const guard_regex::node>( std::move( n ) );
}

} // namespace

guard_regex guard_regex::literal( guard_expr g ) { return guard_regex( make_node( { kind::literal, { std::move( g ) }, {} } ) ); }

guard_regex guard_regex::concat( guard_regex lhs, guard_regex rhs )
{
    return guard_regex( make_node( { kind::concat, {}, { std::move( lhs ), std::move( rhs ) } } ) );
}

guard_regex guard_regex::alt( guard_regex lhs, guard_regex rhs )
{
    return guard_regex( make_node( { kind::alt, {}, { std::move( lhs ), std::move( rhs ) } } ) );
}

guard_regex guard_regex::star( guard_regex operand )
{
    return guard_regex( make_node( { kind::star, {}, { std::move( operand ) } } ) );
}

guard_regex guard_regex::lift( guard_expr g ) { return concat( star( literal( guard_expr::truth() ) ), literal( std::move( g ) ) ); }

guard_regex guard_regex::any_history() { return lift( guard_expr::truth() ); }

guard_regex::kind guard_regex::node_kind() const { return _node->k; }
const guard_expr& guard_regex::guard() const { return _node->guard.at( 0 ); }
const guard_regex& guard_regex::lhs() const { return _node->children.at( 0 ); }
const guard_regex& guard_regex::rhs() const { return _node->children.at( 1 ); }

std::size_t guard_regex::size() const
{
    switch ( node_kind() )
    {
    case kind::literal: return guard().symbol_count();
    case kind::star: return 1 + lhs().size();
    case kind::concat:
    case kind::alt: return 1 + lhs().size() + rhs().size();
    }
    return 0;
}

namespace
{

int precedence( guard_regex::kind k )
{
    switch ( k )
    {
    case guard_regex::kind::alt: return 1;
    case guard_regex::kind::concat: return 2;
    case guard_regex::kind::star: return 3;
    case guard_regex::kind::literal: return 4;
    }
    return 4;
}

void print( const guard_regex& r, std::string& out )
{
    using kind = guard_regex::kind;
    auto child = [ &out ]( const guard_regex& c, bool wrap ) {
        if ( wrap ) out += '(';
        print( c, out );
        if ( wrap ) out += ')';
    };
    switch ( r.node_kind() )
    {
    case kind::literal:
        out += '{';
        out += r.guard().to_string();
        out += '}';
        return;
    case kind::star:
        child( r.lhs(), precedence( r.lhs().node_kind() ) < 3 );
        out += '*';
        return;
    case kind::concat:
    case kind::alt:
    {
        const int mine = precedence( r.node_kind() );
        child( r.lhs(), precedence( r.lhs().node_kind() ) < mine );
        out += r.node_kind() == kind::concat ? '.' : '|';
        child( r.rhs(), precedence( r.rhs().node_kind() ) <= mine );
        return;
    }
    }
}

} // namespace

std::string guard_regex::to_string() const
{
    std::string out;
    print( *this, out );
    return out;
}

bool guard_regex::operator==( const guard_regex& other ) const
{
    if ( _node == other._node )
        return true;
    if ( node_kind() != other.node_kind() )
        return false;
    switch ( node_kind() )
    {
    case kind::literal: return guard() == other.guard();
    case kind::star: return lhs() == other.lhs();
    case kind::concat:
    case kind::alt: return lhs() == other.lhs() && rhs() == other.rhs();
    }
    return false;
}

namespace
{

using detail::tok;
using detail::token_stream;

guard_regex parse_alt( token_stream& ts );

guard_regex parse_postfix( token_stream& ts )
{
    guard_regex r = [ & ] {
        if ( ts.accept( tok::lbrace ) )
        {
            auto g = detail::parse_guard_tokens( ts );
            ts.expect( tok::rbrace, "'}'" );
            return guard_regex::literal( std::move( g ) );
        }
        if ( ts.accept( tok::lparen ) )
        {
            auto inner = parse_alt( ts );
            ts.expect( tok::rparen, "')'" );
            return inner;
        }
        ts.fail( "expected '{' or '('" );
    }();
    while ( ts.accept( tok::star ) )
        r = guard_regex::star( std::move( r ) );
    return r;
}

guard_regex parse_concat( token_stream& ts )
{
    auto lhs = parse_postfix( ts );
    while ( ts.accept( tok::dot ) )
        lhs = guard_regex::concat( std::move( lhs ), parse_postfix( ts ) );
    return lhs;
}

guard_regex parse_alt( token_stream& ts )
{
    auto lhs = parse_concat( ts );
    while ( ts.accept( tok::bar ) )
        lhs = guard_regex::alt( std::move( lhs ), parse_concat( ts ) );
    return lhs;
}

void collect_literals( const guard_regex& r, std::vector<guard_expr>& out, std::vector<std::string>& seen )
{
    switch ( r.node_kind() )
    {
    case guard_regex::kind::literal:
    {
        if ( r.guard().is_true() )
            return;
        auto text = r.guard().to_string();
        if ( std::find( seen.begin(), seen.end(), text ) == seen.end() )
        {
            seen.push_back( std::move( text ) );
            out.push_back( r.guard() );
        }
        return;
    }
    case guard_regex::kind::star: collect_literals( r.lhs(), out, seen ); return;
    case guard_regex::kind::concat:
    case guard_regex::kind::alt:
        collect_literals( r.lhs(), out, seen );
        collect_literals( r.rhs(), out, seen );
        return;
    }
}

struct fragment
{
    std::size_t start;
    std::size_t accept;
};

struct thompson
{
    nfa& out;
    const std::vector<std::string>& names;

    std::size_t fresh()
    {
        out.edges.emplace_back();
        return out.edges.size() - 1;
    }
    void link( std::size_t from, std::size_t to, int literal ) { out.edges[ from ].push_back( { to, literal } ); }

    fragment build( const guard_regex& r )
    {
        switch ( r.node_kind() )
        {
        case guard_regex::kind::literal:
        {
            const auto s = fresh();
            const auto a = fresh();
            int lit = nfa::literal_true;
            if ( !r.guard().is_true() )
            {
                const auto it = std::find( names.begin(), names.end(), r.guard().to_string() );
                lit = static_cast<int>( it - names.begin() );
            }
            link( s, a, lit );
            return { s, a };
        }
        case guard_regex::kind::concat:
        {
            const auto l = build( r.lhs() );
            const auto rr = build( r.rhs() );
            link( l.accept, rr.start, nfa::epsilon );
            return { l.start, rr.accept };
        }
        case guard_regex::kind::alt:
        {
            const auto s = fresh();
            const auto l = build( r.lhs() );
            const auto rr = build( r.rhs() );
            const auto a = fresh();
            link( s, l.start, nfa::epsilon );
            link( s, rr.start, nfa::epsilon );
            link( l.accept, a, nfa::epsilon );
            link( rr.accept, a, nfa::epsilon );
            return { s, a };
        }
        case guard_regex::kind::star:
        {
            const auto s = fresh();
            const auto inner = build( r.lhs() );
            const auto a = fresh();
            link( s, inner.start, nfa::epsilon );
            link( s, a, nfa::epsilon );
            link( inner.accept, inner.start, nfa::epsilon );
            link( inner.accept, a, nfa::epsilon );
            return { s, a };
        }
        }
        return { 0, 0 };
    }
};

constexpr std::size_t max_literals = 16;

bool fires( int literal, letter l ) { return literal == nfa::literal_true || ( literal >= 0 && ( ( l >> literal ) & 1u ) ); }

std::vector<bool> closure( const nfa& a, const std::vector<std::size_t>& seeds )
{
    std::vector<bool> in( a.state_count(), false );
    std::vector<std::size_t> stack = seeds;
    for ( auto s : seeds )
        in[ s ] = true;
    while ( !stack.empty() )
    {
        const auto q = stack.back();
        stack.pop_back();
        for ( const auto& e : a.edges[ q ] )
            if ( e.literal == nfa::epsilon && !in[ e.to ] )
            {
                in[ e.to ] = true;
                stack.push_back( e.to );
            }
    }
    return in;
}

} // namespace

guard_regex parse_regex( std::string_view text )
{
    token_stream ts( text );
    auto r = parse_alt( ts );
    if ( ts.peek().kind != tok::end )
        ts.fail( "trailing input" );
    return r;
}

std::vector<guard_expr> regex_literals( const guard_regex& r )
{
    std::vector<guard_expr> out;
    std::vector<std::string> seen;
    collect_literals( r, out, seen );
    return out;
}

nfa regex_to_nfa( const guard_regex& r )
{
    nfa out;
    out.literals = regex_literals( r );
    if ( out.literals.size() > max_literals )
        throw error( error_kind::state_blowup, "regex has more than 16 distinct literals" );
    std::vector<std::string> names;
    for ( const auto& g : out.literals )
        names.push_back( g.to_string() );
    thompson t{ out, names };
    const auto f = t.build( r );
    out.start = f.start;
    out.accept = f.accept;
    out.regex_size = r.size();
    return out;
}

bool nfa_accepts( const nfa& a, std::span<const letter> word )
{
    auto current = closure( a, { a.start } );
    for ( const auto l : word )
    {
        std::vector<std::size_t> next;
        for ( std::size_t q = 0; q < a.state_count(); ++q )
            if ( current[ q ] )
                for ( const auto& e : a.edges[ q ] )
                    if ( fires( e.literal, l ) )
                        next.push_back( e.to );
        current = closure( a, next );
    }
    return current[ a.accept ];
}

guard_dfa nfa_to_dfa( const nfa& a )
{
    // A subset is identified by its states with literal edges plus whether it
    // contains the accept state; epsilon-only states carry no information.
    using key = std::pair<std::vector<std::size_t>, bool>;
    auto make_key = [ & ]( const std::vector<bool>& set ) {
        key k{ {}, set[ a.accept ] };
        for ( std::size_t q = 0; q < a.state_count(); ++q )
            if ( set[ q ] && std::any_of( a.edges[ q ].begin(), a.edges[ q ].end(),
                                          []( const nfa::edge& e ) { return e.literal != nfa::epsilon; } ) )
                k.first.push_back( q );
        return k;
    };

    guard_dfa d;
    d.literals = a.literals;
    const std::size_t letters = d.letter_count();
    const std::size_t ceiling = 2 * a.regex_size < 63 ? std::size_t{ 1 } << ( 2 * a.regex_size ) : SIZE_MAX;

    std::map<key, std::uint32_t> ids;
    std::vector<key> pending;
    auto intern = [ & ]( key k ) {
        const auto [ it, inserted ] = ids.emplace( k, static_cast<std::uint32_t>( d.delta.size() ) );
        if ( inserted )
        {
            if ( d.delta.size() + 1 > ceiling )
                throw error( error_kind::state_blowup, "DFA exceeds 2^(2*" + std::to_string( a.regex_size ) + ") states" );
            d.accepting.push_back( k.second );
            d.delta.emplace_back( letters, 0 );
            pending.push_back( std::move( k ) );
        }
        return it->second;
    };

    d.initial = intern( make_key( closure( a, { a.start } ) ) );
    for ( std::size_t done = 0; done < pending.size(); ++done )
    {
        const key current = pending[ done ];
        for ( letter l = 0; l < letters; ++l )
        {
            std::vector<std::size_t> next;
            for ( auto q : current.first )
                for ( const auto& e : a.edges[ q ] )
                    if ( fires( e.literal, l ) )
                        next.push_back( e.to );
            const auto target = intern( make_key( closure( a, next ) ) );
            d.delta[ done ][ l ] = target;
        }
    }
    return d;
}

letter letter_of( const rfcgs& m, std::span<const guard_expr> literals, state_id s, degree tau_guard )
{
    letter l = 0;
    for ( std::size_t i = 0; i < literals.size(); ++i )
        if ( eval_guard( m, s, literals[ i ], tau_guard ) )
            l |= letter{ 1 } << i;
    return l;
}

std::uint32_t dfa_step( const rfcgs& m, const guard_dfa& d, std::uint32_t q, state_id s, degree tau_guard )
{
    return d.step( q, letter_of( m, d.literals, s, tau_guard ) );
}

bool history_matches( const rfcgs& m, const guard_regex& r, std::span<const state_id> h, degree tau_guard )
{
    const auto d = compile_regex( r );
    auto q = static_cast<std::uint32_t>( d.initial );
    for ( auto s : h )
        q = dfa_step( m, d, q, s, tau_guard );
    return d.accepting[ q ];
}

} // namespace hatl
