#include "mob/affine_parse.hpp"

namespace mob {

Rational parse_number_token(const Token& token, const TokenCursor& cursor) {
  auto r = parse_rational(token.text);
  if (!r) cursor.fail_at(token, ErrorKind::bad_value, "malformed number '" + token.text + "'");
  return *r;
}

namespace {

AffineForm parse_unary(TokenCursor& cursor);

AffineForm parse_term(TokenCursor& cursor) {
  AffineForm acc = parse_unary(cursor);
  while (cursor.peek().is('*') || cursor.peek().is('/')) {
    const Token op = cursor.next();
    AffineForm rhs = parse_unary(cursor);
    if (op.is('*')) {
      if (rhs.is_constant()) {
        acc *= rhs.constant();
      } else if (acc.is_constant()) {
        rhs *= acc.constant();
        acc = rhs;
      } else {
        cursor.fail_at(op, ErrorKind::not_affine, "product of two non-constant terms is not affine");
      }
    } else {
      if (!rhs.is_constant()) cursor.fail_at(op, ErrorKind::not_affine, "division by a non-constant term");
      if (rhs.constant() == 0) cursor.fail_at(op, ErrorKind::bad_value, "division by zero");
      acc /= rhs.constant();
    }
  }
  return acc;
}

AffineForm parse_unary(TokenCursor& cursor) {
  if (cursor.accept('-')) return -parse_unary(cursor);
  if (cursor.accept('+')) return parse_unary(cursor);
  const Token& t = cursor.peek();
  if (t.type == TokenType::number) {
    cursor.next();
    return AffineForm(parse_number_token(t, cursor));
  }
  if (t.type == TokenType::identifier) {
    cursor.next();
    return AffineForm::symbol(t.text);
  }
  if (cursor.accept('(')) {
    AffineForm inner = parse_affine(cursor);
    cursor.expect(')', "to close affine expression");
    return inner;
  }
  cursor.fail("expected affine expression");
}

}  // namespace

AffineForm parse_affine(TokenCursor& cursor) {
  AffineForm acc = parse_term(cursor);
  while (cursor.peek().is('+') || cursor.peek().is('-')) {
    bool minus = cursor.next().is('-');
    AffineForm rhs = parse_term(cursor);
    if (minus) {
      acc -= rhs;
    } else {
      acc += rhs;
    }
  }
  return acc;
}

AffineForm parse_exponent(TokenCursor& cursor) {
  bool minus = cursor.accept('-');
  const Token& t = cursor.peek();
  AffineForm e;
  if (t.type == TokenType::number) {
    cursor.next();
    e = AffineForm(parse_number_token(t, cursor));
  } else if (t.type == TokenType::identifier) {
    cursor.next();
    e = AffineForm::symbol(t.text);
  } else if (cursor.accept('(')) {
    e = parse_affine(cursor);
    cursor.expect(')', "to close exponent");
  } else {
    cursor.fail("expected exponent");
  }
  return minus ? -e : e;
}

namespace {

ParamMonomial parse_monomial_factor(TokenCursor& cursor) {
  const Token& t = cursor.peek();
  if (t.type == TokenType::number) {
    cursor.next();
    return ParamMonomial(parse_number_token(t, cursor));
  }
  if (t.type == TokenType::identifier) {
    cursor.next();
    Rational e(1);
    if (cursor.accept('^')) {
      AffineForm ef = parse_exponent(cursor);
      if (!ef.is_constant()) cursor.fail_at(t, ErrorKind::not_affine, "monomial exponent must be a rational constant");
      e = ef.constant();
    }
    return ParamMonomial::symbol(t.text, e);
  }
  cursor.fail("expected monomial factor");
}

}  // namespace

ParamMonomial parse_param_monomial(TokenCursor& cursor) {
  bool neg = cursor.accept('-');
  ParamMonomial m = parse_monomial_factor(cursor);
  while (cursor.peek().is('*') || cursor.peek().is('/')) {
    bool div = cursor.next().is('/');
    ParamMonomial f = parse_monomial_factor(cursor);
    if (div) {
      if (f.coefficient() == 0) cursor.fail("division by zero in monomial");
      m *= f.inverse();
    } else {
      m *= f;
    }
  }
  if (neg) m *= ParamMonomial(Rational(-1));
  return m;
}

}  // namespace mob
