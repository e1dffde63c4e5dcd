#pragma once

#include "mob/error.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mob {

enum class TokenType { identifier, number, punct, end };

struct Token {
  TokenType type = TokenType::end;
  std::string text;
  std::size_t position = 0;

  bool is(char c) const { return type == TokenType::punct && text.size() == 1 && text[0] == c; }
  bool is_word(std::string_view w) const { return type == TokenType::identifier && text == w; }
};

// Shared tokenizer for the integrand language, assignment lists and the
// canonical bracket-series text. `#` starts a comment running to end of line.
// Throws Error(lexical) on characters outside the alphabet.
std::vector<Token> tokenize(std::string_view text, const std::string& module);

class TokenCursor {
 public:
  TokenCursor(std::vector<Token> tokens, std::string module)
      : tokens_(std::move(tokens)), module_(std::move(module)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool accept(char c);
  void expect(char c, const char* what);
  std::string expect_identifier(const char* what);
  bool at_end() const { return peek().type == TokenType::end; }

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const Token& token, ErrorKind kind, const std::string& message) const;
  const std::string& module() const { return module_; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string module_;
};

}  // namespace mob
