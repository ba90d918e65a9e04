// Hand-written lexer and recursive-descent parser for the grammar in
// lang.hpp. Fails on the first error; well-formedness (scoping, constant
// bounds, distinct parameters) is checked during the same pass so every
// Program this file returns is safe to execute.

#include <algorithm>
#include <cctype>
#include <sstream>

#include "travcheck/lang.hpp"

namespace travcheck {

ParseError::ParseError(const std::string& message, int line, int column,
                       std::vector<std::string> expected)
    : std::runtime_error(message),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
  KwTrav,
  KwFor,
  KwIn,
  KwDo,
  Ident,
  IntLit,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Bang,
  Plus,
  Minus,
  End,
};

const char* tokenName(Tok t) {
  switch (t) {
    case Tok::KwTrav: return "'trav'";
    case Tok::KwFor: return "'for'";
    case Tok::KwIn: return "'in'";
    case Tok::KwDo: return "'do'";
    case Tok::Ident: return "identifier";
    case Tok::IntLit: return "integer literal";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Bang: return "'!'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = column;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      tok.text.assign(src.substr(i, j - i));
      if (tok.text == "trav") tok.kind = Tok::KwTrav;
      else if (tok.text == "for") tok.kind = Tok::KwFor;
      else if (tok.text == "in") tok.kind = Tok::KwIn;
      else if (tok.text == "do") tok.kind = Tok::KwDo;
      else tok.kind = Tok::Ident;
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::uint64_t value = 0;
      bool tooBig = false;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        value = value * 10 + static_cast<std::uint64_t>(src[j] - '0');
        if (value > static_cast<std::uint64_t>(kMaxConstMagnitude)) tooBig = true;
        ++j;
      }
      if (tooBig) {
        std::ostringstream msg;
        msg << "integer constant exceeds the magnitude bound " << kMaxConstMagnitude;
        throw ParseError(msg.str(), line, column, {});
      }
      tok.kind = Tok::IntLit;
      tok.text.assign(src.substr(i, j - i));
      tok.value = static_cast<std::int64_t>(value);
      advance(j - i);
    } else {
      switch (c) {
        case '(': tok.kind = Tok::LParen; break;
        case ')': tok.kind = Tok::RParen; break;
        case '{': tok.kind = Tok::LBrace; break;
        case '}': tok.kind = Tok::RBrace; break;
        case '[': tok.kind = Tok::LBracket; break;
        case ']': tok.kind = Tok::RBracket; break;
        case ',': tok.kind = Tok::Comma; break;
        case ':': tok.kind = Tok::Colon; break;
        case '!': tok.kind = Tok::Bang; break;
        case '+': tok.kind = Tok::Plus; break;
        case '-': tok.kind = Tok::Minus; break;
        default: {
          std::ostringstream msg;
          if (std::isprint(static_cast<unsigned char>(c))) {
            msg << "unexpected character '" << c << "'";
          } else {
            msg << "unexpected byte 0x" << std::hex
                << static_cast<int>(static_cast<unsigned char>(c));
          }
          throw ParseError(msg.str(), line, column, {});
        }
      }
      tok.text = c;
      advance(1);
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = column;
  out.push_back(std::move(end));
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(lex(src)) {}

  Program parseProgram() {
    expect(Tok::KwTrav);
    expect(Tok::LParen);
    arrayParam_ = expect(Tok::Ident).text;
    expect(Tok::Comma);
    const Token sizeTok = expect(Tok::Ident);
    sizeParam_ = sizeTok.text;
    if (sizeParam_ == arrayParam_) {
      fail("array and size parameters must be distinct", sizeTok, {});
    }
    expect(Tok::RParen);
    expect(Tok::LBrace);
    StmtPtr stmt = parseStmt();
    expect(Tok::RBrace);
    expect(Tok::End);
    Program p;
    p.arrayParam = arrayParam_;
    p.sizeParam = sizeParam_;
    p.body.push_back(std::move(stmt));
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  Token expect(Tok kind) {
    if (peek().kind != kind) {
      std::ostringstream msg;
      msg << "expected " << tokenName(kind) << ", found " << describe(peek());
      fail(msg.str(), peek(), {tokenName(kind)});
    }
    return tokens_[pos_++];
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at,
                         std::vector<std::string> expected) const {
    throw ParseError(msg, at.line, at.column, std::move(expected));
  }

  StmtPtr parseStmt() {
    if (peek().kind == Tok::KwFor) {
      ++pos_;
      const Token varTok = expect(Tok::Ident);
      checkFreshLoopVar(varTok);
      expect(Tok::KwIn);
      expect(Tok::LBracket);
      ExprPtr lo = parseExpr();
      expect(Tok::Colon);
      ExprPtr hi = parseExpr();
      expect(Tok::RBracket);
      expect(Tok::KwDo);
      loopVars_.push_back(varTok.text);
      StmtPtr body = parseStmt();
      loopVars_.pop_back();
      std::vector<StmtPtr> bodyList;
      bodyList.push_back(std::move(body));
      return makeForRange(varTok.text, std::move(lo), std::move(hi), std::move(bodyList));
    }
    if (peek().kind == Tok::Bang) {
      ++pos_;
      const Token arrTok = expect(Tok::Ident);
      if (arrTok.text != arrayParam_) {
        fail("only the array parameter '" + arrayParam_ + "' may be dereferenced",
             arrTok, {});
      }
      expect(Tok::LBracket);
      ExprPtr index = parseExpr();
      expect(Tok::RBracket);
      return makeHeapRead(arrTok.text, std::move(index));
    }
    std::ostringstream msg;
    msg << "expected a statement ('for' or '!'), found " << describe(peek());
    fail(msg.str(), peek(), {"'for'", "'!'"});
  }

  void checkFreshLoopVar(const Token& varTok) const {
    const std::string& name = varTok.text;
    if (name == arrayParam_ || name == sizeParam_ ||
        std::find(loopVars_.begin(), loopVars_.end(), name) != loopVars_.end()) {
      fail("loop variable '" + name + "' shadows an existing name", varTok, {});
    }
  }

  ExprPtr parseExpr() {
    ExprPtr lhs = parseTerm();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool plus = peek().kind == Tok::Plus;
      ++pos_;
      ExprPtr rhs = parseTerm();
      lhs = plus ? makeAdd(std::move(lhs), std::move(rhs))
                 : makeSub(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  // term := intlit | ident, where intlit may carry its own leading minus.
  ExprPtr parseTerm() {
    if (peek().kind == Tok::Minus && tokens_[pos_ + 1].kind == Tok::IntLit) {
      ++pos_;
      const Token lit = tokens_[pos_++];
      return makeInt(-lit.value);
    }
    if (peek().kind == Tok::IntLit) {
      return makeInt(tokens_[pos_++].value);
    }
    if (peek().kind == Tok::Ident) {
      const Token varTok = tokens_[pos_++];
      checkExprVar(varTok);
      return makeVar(varTok.text);
    }
    std::ostringstream msg;
    msg << "expected integer literal or identifier, found " << describe(peek());
    fail(msg.str(), peek(), {"integer literal", "identifier"});
  }

  void checkExprVar(const Token& varTok) const {
    const std::string& name = varTok.text;
    if (name == arrayParam_) {
      fail("array parameter '" + name + "' may not appear in an integer expression",
           varTok, {});
    }
    if (name != sizeParam_ &&
        std::find(loopVars_.begin(), loopVars_.end(), name) == loopVars_.end()) {
      fail("unknown variable '" + name + "'", varTok, {});
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string arrayParam_;
  std::string sizeParam_;
  std::vector<std::string> loopVars_;
};

}  // namespace

Program parse(std::string_view source) { return Parser(source).parseProgram(); }

}  // namespace travcheck
