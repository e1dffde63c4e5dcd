#pragma once

#include "mob/affine.hpp"
#include "mob/lexer.hpp"

namespace mob {

// aff := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
// unary := '-' unary | number | identifier | '(' aff ')'.
// Products need a constant side and divisors must be nonzero constants;
// otherwise Error(not_affine).
AffineForm parse_affine(TokenCursor& cursor);

// Exponent after '^': an optional '-', then a number, identifier or
// parenthesized affine expression.
AffineForm parse_exponent(TokenCursor& cursor);

// Monomial in parameters with rational exponents, as printed by
// ParamMonomial::str(): ['-'] f (('*'|'/') f)* ; f := number | ident ['^' exp].
ParamMonomial parse_param_monomial(TokenCursor& cursor);

Rational parse_number_token(const Token& token, const TokenCursor& cursor);

}  // namespace mob
