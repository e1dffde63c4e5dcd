#include "mob/lexer.hpp"

#include <cctype>

namespace mob {

std::vector<Token> tokenize(std::string_view text, const std::string& module) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t start = i;
      while (i < text.size() && is_ident_char(text[i])) ++i;
      out.push_back({TokenType::identifier, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
      std::size_t start = i;
      while (i < text.size() && is_digit(text[i])) ++i;
      if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && is_digit(text[i])) ++i;
      }
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t save = i;
        ++i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        if (i < text.size() && is_digit(text[i])) {
          while (i < text.size() && is_digit(text[i])) ++i;
        } else {
          i = save;
        }
      }
      out.push_back({TokenType::number, std::string(text.substr(start, i - start)), start});
      continue;
    }
    static constexpr std::string_view kPunct = "()[]<>*/^+-,=";
    if (kPunct.find(c) != std::string_view::npos) {
      out.push_back({TokenType::punct, std::string(1, c), i});
      ++i;
      continue;
    }
    throw Error(module, ErrorKind::lexical, std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({TokenType::end, "", text.size()});
  return out;
}

const Token& TokenCursor::peek(std::size_t ahead) const {
  std::size_t idx = pos_ + ahead;
  if (idx >= tokens_.size()) return tokens_.back();
  return tokens_[idx];
}

const Token& TokenCursor::next() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenCursor::accept(char c) {
  if (peek().is(c)) {
    next();
    return true;
  }
  return false;
}

void TokenCursor::expect(char c, const char* what) {
  if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
}

std::string TokenCursor::expect_identifier(const char* what) {
  if (peek().type != TokenType::identifier) fail(std::string("expected identifier ") + what);
  return next().text;
}

void TokenCursor::fail(const std::string& message) const {
  const Token& t = peek();
  std::string found = t.type == TokenType::end ? "end of input" : "'" + t.text + "'";
  throw Error(module_, ErrorKind::syntax, message + ", found " + found, t.position);
}

void TokenCursor::fail_at(const Token& token, ErrorKind kind, const std::string& message) const {
  throw Error(module_, kind, message, token.position);
}

}  // namespace mob
