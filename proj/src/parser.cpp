#include "fiplus/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "fiplus/subst.hpp"

namespace fiplus {

std::string ParseError::message() const {
  std::ostringstream os;
  os << "expected ";
  size_t i = 0;
  for (const auto& e : expected) {
    if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
    os << e;
    ++i;
  }
  os << ", found " << found;
  return os.str();
}

std::string ParseError::render(const std::string& path) const {
  std::ostringstream os;
  os << path << ':' << span.line << ':' << span.col << ": " << message();
  return os.str();
}

namespace {

enum class Tok {
  Eof,
  Int,
  Str,
  Ident,
  KwForall,
  KwFix,
  KwLet,
  KwTop,
  KwBot,
  KwInt,
  KwBool,
  KwString,
  KwTrue,
  KwFalse,
  Lambda,     // '\'
  TLambda,    // '/\'
  Dot,
  Colon,
  MergeOp,    // ',,'
  Semi,
  Equals,
  Arrow,      // '->'
  Amp,
  Star,
  At,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Error,
};

struct Token {
  Tok tok;
  std::string text;
  long long intVal = 0;
  Span span;
};

const char* tokDesc(Tok t) {
  switch (t) {
    case Tok::Eof: return "end of input";
    case Tok::Int: return "integer literal";
    case Tok::Str: return "string literal";
    case Tok::Ident: return "identifier";
    case Tok::KwForall: return "'forall'";
    case Tok::KwFix: return "'fix'";
    case Tok::KwLet: return "'let'";
    case Tok::KwTop: return "'Top'";
    case Tok::KwBot: return "'Bot'";
    case Tok::KwInt: return "'Int'";
    case Tok::KwBool: return "'Bool'";
    case Tok::KwString: return "'String'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::Lambda: return "'\\'";
    case Tok::TLambda: return "'/\\'";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::MergeOp: return "',,'";
    case Tok::Semi: return "';'";
    case Tok::Equals: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::Amp: return "'&'";
    case Tok::Star: return "'*'";
    case Tok::At: return "'@'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Error: return "invalid token";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run(ParseError* err) {
    std::vector<Token> out;
    for (;;) {
      skipTrivia();
      Span here{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::Eof, "", 0, here});
        return out;
      }
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          digits += take();
        out.push_back({Tok::Int, digits, std::stoll(digits), here});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos_ < src_.size() && identTail(src_[pos_])) word += take();
        out.push_back({keyword(word), word, 0, here});
        continue;
      }
      if (c == '"') {
        take();
        std::string s;
        bool closed = false;
        while (pos_ < src_.size()) {
          char d = take();
          if (d == '"') {
            closed = true;
            break;
          }
          if (d == '\\' && pos_ < src_.size()) {
            char esc = take();
            switch (esc) {
              case 'n': s += '\n'; break;
              case 't': s += '\t'; break;
              case '"': s += '"'; break;
              case '\\': s += '\\'; break;
              default: s += esc; break;
            }
          } else {
            s += d;
          }
        }
        if (!closed) {
          *err = ParseError{here, {"closing '\"'"}, "end of input"};
          out.push_back({Tok::Error, "", 0, here});
          return out;
        }
        out.push_back({Tok::Str, s, 0, here});
        continue;
      }
      switch (c) {
        case '\\': take(); out.push_back({Tok::Lambda, "\\", 0, here}); continue;
        case '/':
          if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '\\') {
            take(); take();
            out.push_back({Tok::TLambda, "/\\", 0, here});
            continue;
          }
          break;
        case '.': take(); out.push_back({Tok::Dot, ".", 0, here}); continue;
        case ':': take(); out.push_back({Tok::Colon, ":", 0, here}); continue;
        case ',':
          if (pos_ + 1 < src_.size() && src_[pos_ + 1] == ',') {
            take(); take();
            out.push_back({Tok::MergeOp, ",,", 0, here});
            continue;
          }
          break;
        case ';': take(); out.push_back({Tok::Semi, ";", 0, here}); continue;
        case '=': take(); out.push_back({Tok::Equals, "=", 0, here}); continue;
        case '-':
          if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            take(); take();
            out.push_back({Tok::Arrow, "->", 0, here});
            continue;
          }
          break;
        case '&': take(); out.push_back({Tok::Amp, "&", 0, here}); continue;
        case '*': take(); out.push_back({Tok::Star, "*", 0, here}); continue;
        case '@': take(); out.push_back({Tok::At, "@", 0, here}); continue;
        case '(': take(); out.push_back({Tok::LParen, "(", 0, here}); continue;
        case ')': take(); out.push_back({Tok::RParen, ")", 0, here}); continue;
        case '{': take(); out.push_back({Tok::LBrace, "{", 0, here}); continue;
        case '}': take(); out.push_back({Tok::RBrace, "}", 0, here}); continue;
        default: break;
      }
      *err = ParseError{here, {"a token"}, std::string("'") + c + "'"};
      out.push_back({Tok::Error, std::string(1, c), 0, here});
      return out;
    }
  }

 private:
  static bool identTail(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'';
  }

  static Tok keyword(const std::string& w) {
    if (w == "forall") return Tok::KwForall;
    if (w == "fix") return Tok::KwFix;
    if (w == "let") return Tok::KwLet;
    if (w == "Top") return Tok::KwTop;
    if (w == "Bot") return Tok::KwBot;
    if (w == "Int") return Tok::KwInt;
    if (w == "Bool") return Tok::KwBool;
    if (w == "String") return Tok::KwString;
    if (w == "true") return Tok::KwTrue;
    if (w == "false") return Tok::KwFalse;
    return Tok::Ident;
  }

  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skipTrivia() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_])))
        take();
      if (pos_ + 1 < src_.size() && src_[pos_] == '-' &&
          src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
        continue;
      }
      return;
    }
  }

  const std::string& src_;
  size_t pos_ = 0;
  uint32_t line_ = 1;
  uint32_t col_ = 1;
};

// Thrown internally; converted to the ParseError return value at the API
// boundary.
struct ParseFailure {
  ParseError error;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  TypeRef typeOnly() {
    TypeRef t = type();
    expect(Tok::Eof);
    return t;
  }

  ExprRef exprOnly() {
    ExprRef e = expr();
    expect(Tok::Eof);
    return e;
  }

  ExprRef program() {
    struct Binding {
      std::string name;
      TypeRef ty;
      ExprRef value;
    };
    std::vector<Binding> lets;
    while (at(Tok::KwLet)) {
      next();
      std::string name = expect(Tok::Ident).text;
      expect(Tok::Colon);
      TypeRef ty = type();
      expect(Tok::Equals);
      ExprRef value = expr();
      expect(Tok::Semi);
      lets.push_back({std::move(name), std::move(ty), std::move(value)});
    }
    ExprRef body = expr();
    expect(Tok::Eof);
    for (auto it = lets.rbegin(); it != lets.rend(); ++it)
      body = substExpr(body, it->name, eAnno(it->value, it->ty));
    return body;
  }

 private:
  // ---- types ----

  TypeRef type() {
    Span here = peek().span;
    if (at(Tok::KwForall)) {
      next();
      std::string binder = expect(Tok::Ident).text;
      expect(Tok::Star);
      TypeRef bound = type();
      expect(Tok::Dot);
      TypeRef body = type();
      return withSpan(tForall(binder, bound, body), here);
    }
    TypeRef lhs = interType();
    if (at(Tok::Arrow)) {
      next();
      return withSpan(tArrow(lhs, type()), here);
    }
    return lhs;
  }

  TypeRef interType() {
    Span here = peek().span;
    TypeRef t = atomType();
    while (at(Tok::Amp)) {
      next();
      t = withSpan(tInter(t, atomType()), here);
    }
    return t;
  }

  TypeRef atomType() {
    Token tok = peek();
    switch (tok.tok) {
      case Tok::KwInt: next(); return withSpan(tInt(), tok.span);
      case Tok::KwBool: next(); return withSpan(tBool(), tok.span);
      case Tok::KwString: next(); return withSpan(tString(), tok.span);
      case Tok::KwTop: next(); return withSpan(tTop(), tok.span);
      case Tok::KwBot: next(); return withSpan(tBot(), tok.span);
      case Tok::Ident: next(); return withSpan(tVar(tok.text), tok.span);
      case Tok::LParen: {
        next();
        TypeRef t = type();
        expect(Tok::RParen);
        return t;
      }
      case Tok::LBrace: {
        next();
        TypeRef t = rcdTypeField();
        while (at(Tok::Semi)) {
          next();
          t = tInter(t, rcdTypeField());
        }
        expect(Tok::RBrace);
        return withSpan(t, tok.span);
      }
      default:
        fail({"a type"});
    }
    return nullptr;  // unreachable
  }

  TypeRef rcdTypeField() {
    Span here = peek().span;
    std::string label = expect(Tok::Ident).text;
    expect(Tok::Colon);
    return withSpan(tRcd(std::move(label), type()), here);
  }

  // ---- expressions ----

  ExprRef expr() {
    Span here = peek().span;
    ExprRef e = annoExpr();
    while (at(Tok::MergeOp)) {
      next();
      e = withSpan(eMerge(e, annoExpr()), here);
    }
    return e;
  }

  ExprRef annoExpr() {
    Span here = peek().span;
    if (at(Tok::Lambda)) {
      next();
      std::string param = expect(Tok::Ident).text;
      expect(Tok::Colon);
      TypeRef ty = type();
      expect(Tok::Dot);
      return withSpan(eLam(std::move(param), std::move(ty), expr()), here);
    }
    if (at(Tok::TLambda)) {
      next();
      std::string binder = expect(Tok::Ident).text;
      if (at(Tok::Star)) {
        next();
        TypeRef bound = type();
        expect(Tok::Dot);
        ExprRef body = expr();
        if (body->tag != ExprTag::Anno)
          throw ParseFailure{ParseError{
              here,
              {"an annotated body after '/\\" + binder + " * ...'"},
              "unannotated expression"}};
        TypeRef full = tForall(binder, bound, body->type);
        return withSpan(eAnno(eTLam(std::move(binder), body), full), here);
      }
      expect(Tok::Dot);
      return withSpan(eTLam(std::move(binder), expr()), here);
    }
    if (at(Tok::KwFix)) {
      next();
      std::string self = expect(Tok::Ident).text;
      expect(Tok::Colon);
      TypeRef ty = type();
      expect(Tok::Dot);
      return withSpan(eFix(std::move(self), std::move(ty), expr()), here);
    }
    ExprRef e = appExpr();
    while (at(Tok::Colon)) {
      next();
      e = withSpan(eAnno(e, type()), here);
    }
    return e;
  }

  ExprRef appExpr() {
    Span here = peek().span;
    ExprRef e = postfix();
    for (;;) {
      if (at(Tok::At)) {
        next();
        e = withSpan(eTApp(e, atomType()), here);
        continue;
      }
      if (at(Tok::Dot)) {
        next();
        e = withSpan(eProj(e, expect(Tok::Ident).text), here);
        continue;
      }
      if (startsAtom(peek().tok)) {
        e = withSpan(eApp(e, postfix()), here);
        continue;
      }
      return e;
    }
  }

  static bool startsAtom(Tok t) {
    switch (t) {
      case Tok::Int:
      case Tok::Str:
      case Tok::Ident:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::LParen:
      case Tok::LBrace:
        return true;
      default:
        return false;
    }
  }

  ExprRef postfix() {
    ExprRef e = atom();
    while (at(Tok::Dot)) {
      next();
      e = eProj(e, expect(Tok::Ident).text);
    }
    return e;
  }

  ExprRef atom() {
    Token tok = peek();
    switch (tok.tok) {
      case Tok::Int:
        next();
        return withSpan(eInt(tok.intVal), tok.span);
      case Tok::Str:
        next();
        return withSpan(eStr(tok.text), tok.span);
      case Tok::KwTrue:
        next();
        return withSpan(eBool(true), tok.span);
      case Tok::KwFalse:
        next();
        return withSpan(eBool(false), tok.span);
      case Tok::Ident:
        next();
        return withSpan(eVar(tok.text), tok.span);
      case Tok::LParen: {
        next();
        if (at(Tok::RParen)) {
          next();
          return withSpan(eTop(), tok.span);
        }
        ExprRef e = expr();
        expect(Tok::RParen);
        return e;
      }
      case Tok::LBrace: {
        next();
        ExprRef e = rcdField();
        while (at(Tok::Semi)) {
          next();
          e = eMerge(e, rcdField());
        }
        expect(Tok::RBrace);
        return withSpan(e, tok.span);
      }
      default:
        fail({"an expression"});
    }
    return nullptr;  // unreachable
  }

  ExprRef rcdField() {
    Span here = peek().span;
    std::string label = expect(Tok::Ident).text;
    expect(Tok::Equals);
    return withSpan(eRcd(std::move(label), expr()), here);
  }

  // ---- plumbing ----

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok t) const { return peek().tok == t; }
  void next() { if (pos_ + 1 < toks_.size()) ++pos_; }

  Token expect(Tok t) {
    if (!at(t)) fail({tokDesc(t)});
    Token tok = peek();
    next();
    return tok;
  }

  [[noreturn]] void fail(std::set<std::string> expected) {
    const Token& tok = peek();
    std::string found = tok.tok == Tok::Eof
                            ? "end of input"
                            : (tok.tok == Tok::Int || tok.tok == Tok::Ident
                                   ? "'" + tok.text + "'"
                                   : tokDesc(tok.tok));
    throw ParseFailure{ParseError{tok.span, std::move(expected), found}};
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

template <typename T, typename Fn>
std::variant<T, ParseError> runParse(const std::string& text, Fn fn) {
  ParseError lexError{};
  Lexer lexer(text);
  std::vector<Token> toks = lexer.run(&lexError);
  if (!toks.empty() && toks.back().tok == Tok::Error) return lexError;
  Parser p(std::move(toks));
  try {
    return fn(p);
  } catch (const ParseFailure& f) {
    return f.error;
  }
}

}  // namespace

std::variant<TypeRef, ParseError> parseType(const std::string& text) {
  return runParse<TypeRef>(text, [](Parser& p) { return p.typeOnly(); });
}

std::variant<ExprRef, ParseError> parseExpr(const std::string& text) {
  return runParse<ExprRef>(text, [](Parser& p) { return p.exprOnly(); });
}

std::variant<ExprRef, ParseError> parseProgram(const SourceFile& file) {
  return runParse<ExprRef>(file.contents,
                           [](Parser& p) { return p.program(); });
}

}  // namespace fiplus
