#pragma once

#include "hatl/guard.hpp"
#include "lexer.hpp"

namespace hatl::detail
{

// g := g '|' g | g '&' g | '!' g | '(' g ')' | true | IDENT [CMP NUMBER]
guard_expr parse_guard_tokens( token_stream& ts );

} // namespace hatl::detail
