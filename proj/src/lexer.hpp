#pragma once

// Tokenizer shared by the guard, regex, and formula parsers.

#include "hatl/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace hatl::detail
{

enum class tok
{
    ident,
    number,
    cmp,
    lparen,
    rparen,
    lbrack,
    rbrack,
    lbrace,
    rbrace,
    comma,
    coal_open,
    coal_close,
    bang,
    amp,
    bar,
    dot,
    star,
    end,
};

struct token
{
    tok kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<token> tokenize( std::string_view src )
{
    std::vector<token> out;
    std::size_t i = 0;
    auto push = [ & ]( tok k, std::size_t len ) {
        out.push_back( token{ k, std::string( src.substr( i, len ) ), i } );
        i += len;
    };
    while ( i < src.size() )
    {
        const char c = src[ i ];
        if ( std::isspace( static_cast<unsigned char>( c ) ) )
        {
            ++i;
            continue;
        }
        if ( std::isalpha( static_cast<unsigned char>( c ) ) || c == '_' )
        {
            std::size_t j = i;
            while ( j < src.size() && ( std::isalnum( static_cast<unsigned char>( src[ j ] ) ) || src[ j ] == '_' ) )
                ++j;
            push( tok::ident, j - i );
            continue;
        }
        const bool signed_number = c == '-' && i + 1 < src.size() &&
                                   ( std::isdigit( static_cast<unsigned char>( src[ i + 1 ] ) ) || src[ i + 1 ] == '.' );
        if ( std::isdigit( static_cast<unsigned char>( c ) ) || c == '.' || signed_number )
        {
            std::size_t j = i + ( signed_number ? 1 : 0 );
            while ( j < src.size() && ( std::isdigit( static_cast<unsigned char>( src[ j ] ) ) || src[ j ] == '.' ) )
                ++j;
            if ( c == '.' && j == i + 1 )
            {
                push( tok::dot, 1 );
                continue;
            }
            push( tok::number, j - i );
            continue;
        }
        const auto rest = src.substr( i );
        if ( rest.starts_with( "<<" ) ) { push( tok::coal_open, 2 ); continue; }
        if ( rest.starts_with( ">>" ) ) { push( tok::coal_close, 2 ); continue; }
        if ( rest.starts_with( "<=" ) || rest.starts_with( ">=" ) || rest.starts_with( "==" ) ) { push( tok::cmp, 2 ); continue; }
        switch ( c )
        {
        case '<':
        case '>':
        case '=': push( tok::cmp, 1 ); continue;
        case '(': push( tok::lparen, 1 ); continue;
        case ')': push( tok::rparen, 1 ); continue;
        case '[': push( tok::lbrack, 1 ); continue;
        case ']': push( tok::rbrack, 1 ); continue;
        case '{': push( tok::lbrace, 1 ); continue;
        case '}': push( tok::rbrace, 1 ); continue;
        case ',': push( tok::comma, 1 ); continue;
        case '!': push( tok::bang, 1 ); continue;
        case '&': push( tok::amp, 1 ); continue;
        case '|': push( tok::bar, 1 ); continue;
        case '*': push( tok::star, 1 ); continue;
        default:
            throw error( error_kind::parse, "unexpected character '" + std::string( 1, c ) + "' at " + std::to_string( i ) );
        }
    }
    out.push_back( token{ tok::end, "", src.size() } );
    return out;
}

class token_stream
{
    std::vector<token> _tokens;
    std::size_t _at = 0;

public:
    explicit token_stream( std::string_view src ) : _tokens{ tokenize( src ) } {}

    [[nodiscard]] const token& peek( std::size_t ahead = 0 ) const
    {
        const auto idx = std::min( _at + ahead, _tokens.size() - 1 );
        return _tokens[ idx ];
    }
    const token& next() { return _tokens[ _at < _tokens.size() - 1 ? _at++ : _at ]; }
    bool accept( tok k )
    {
        if ( peek().kind != k )
            return false;
        next();
        return true;
    }
    const token& expect( tok k, const char* what )
    {
        if ( peek().kind != k )
            fail( std::string( "expected " ) + what );
        return next();
    }
    [[noreturn]] void fail( const std::string& what ) const
    {
        const auto& t = peek();
        throw error( error_kind::parse, what + " at position " + std::to_string( t.pos ) +
                                                ( t.kind == tok::end ? " (end of input)" : " near '" + t.text + "'" ) );
    }
};

double parse_number( const token& t );

} // namespace hatl::detail
