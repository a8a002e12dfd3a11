#include "nf/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace nf {

namespace {

enum class Tok {
  ident,
  kw_forall,
  kw_exists,
  kw_in,
  kw_notin,
  kw_and,
  kw_or,
  kw_not,
  kw_iff,
  lparen,
  rparen,
  dot,
  comma,
  bang,
  eq,
  neq,
  arrow,   // ->
  dbl_arrow,  // <->
  end,
};

struct Token {
  Tok type;
  std::string text;
  int line;
  int col;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  Lexer(const std::string& text, std::string file)
      : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        advance();
        ++line_;
        col_ = 1;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      int line = line_, col = col_;
      if (ident_char(c)) {
        std::string word;
        while (pos_ < text_.size() && ident_char(text_[pos_])) {
          word += text_[pos_];
          advance();
        }
        out.push_back({keyword_of(word), word, line, col});
        continue;
      }
      switch (c) {
        case '(':
          advance();
          out.push_back({Tok::lparen, "(", line, col});
          break;
        case ')':
          advance();
          out.push_back({Tok::rparen, ")", line, col});
          break;
        case '.':
          advance();
          out.push_back({Tok::dot, ".", line, col});
          break;
        case ',':
          advance();
          out.push_back({Tok::comma, ",", line, col});
          break;
        case '=':
          advance();
          out.push_back({Tok::eq, "=", line, col});
          break;
        case '!':
          advance();
          if (pos_ < text_.size() && text_[pos_] == '=') {
            advance();
            out.push_back({Tok::neq, "!=", line, col});
          } else {
            out.push_back({Tok::bang, "!", line, col});
          }
          break;
        case '-':
          advance();
          if (pos_ < text_.size() && text_[pos_] == '>') {
            advance();
            out.push_back({Tok::arrow, "->", line, col});
          } else {
            throw ParseError("unbound token '-'", line, col, file_);
          }
          break;
        case '<':
          advance();
          if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
            advance();
            advance();
            out.push_back({Tok::dbl_arrow, "<->", line, col});
          } else {
            throw ParseError("unbound token '<'", line, col, file_);
          }
          break;
        default:
          throw ParseError(std::string("unbound token '") + c + "'", line, col, file_);
      }
    }
    out.push_back({Tok::end, "", line_, col_});
    return out;
  }

 private:
  static Tok keyword_of(const std::string& word) {
    if (word == "forall") return Tok::kw_forall;
    if (word == "exists") return Tok::kw_exists;
    if (word == "in") return Tok::kw_in;
    if (word == "notin") return Tok::kw_notin;
    if (word == "and") return Tok::kw_and;
    if (word == "or") return Tok::kw_or;
    if (word == "not") return Tok::kw_not;
    if (word == "iff") return Tok::kw_iff;
    return Tok::ident;
  }

  void advance() {
    ++pos_;
    ++col_;
  }

  const std::string& text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file)
      : tokens_(std::move(tokens)), file_(std::move(file)) {}

  FormulaPtr run() {
    FormulaPtr f = formula();
    if (peek().type != Tok::end)
      fail("unexpected trailing input '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg, t.line, t.col, file_);
  }

  SourceLoc loc() const { return {peek().line, peek().col}; }

  FormulaPtr formula() { return iff(); }

  FormulaPtr iff() {
    FormulaPtr lhs = imp();
    while (peek().type == Tok::dbl_arrow || peek().type == Tok::kw_iff) {
      SourceLoc at = loc();
      take();
      lhs = make_bin(BinOp::iff, lhs, imp(), at);
    }
    return lhs;
  }

  FormulaPtr imp() {
    FormulaPtr lhs = disj();
    if (peek().type == Tok::arrow) {
      SourceLoc at = loc();
      take();
      return make_bin(BinOp::implies, lhs, imp(), at);
    }
    return lhs;
  }

  FormulaPtr disj() {
    FormulaPtr lhs = conj();
    while (peek().type == Tok::kw_or) {
      SourceLoc at = loc();
      take();
      lhs = make_bin(BinOp::disj, lhs, conj(), at);
    }
    return lhs;
  }

  FormulaPtr conj() {
    FormulaPtr lhs = unary();
    while (peek().type == Tok::kw_and) {
      SourceLoc at = loc();
      take();
      lhs = make_bin(BinOp::conj, lhs, unary(), at);
    }
    return lhs;
  }

  FormulaPtr unary() {
    switch (peek().type) {
      case Tok::kw_not: {
        SourceLoc at = loc();
        take();
        return make_not(unary(), at);
      }
      case Tok::kw_forall:
      case Tok::kw_exists:
        return quant();
      case Tok::lparen: {
        take();
        FormulaPtr f = formula();
        if (peek().type != Tok::rparen) fail("expected ')'");
        take();
        return f;
      }
      case Tok::ident:
        return atomchain();
      default:
        fail("expected a formula, got '" + peek().text + "'");
    }
  }

  FormulaPtr quant() {
    SourceLoc at = loc();
    Quant q;
    if (take().type == Tok::kw_forall) {
      q = Quant::forall;
    } else {
      q = Quant::exists;
      if (peek().type == Tok::bang) {
        take();
        q = Quant::exists_unique;
      }
    }
    std::vector<VarName> vars;
    while (true) {
      // "in" ends the binder list; any other keyword or symbol does too.
      if (peek().type == Tok::ident) {
        vars.push_back(take().text);
        if (peek().type == Tok::comma) take();
        continue;
      }
      break;
    }
    if (vars.empty()) fail("expected a bound variable");
    std::optional<VarName> bound;
    if (peek().type == Tok::kw_in) {
      take();
      if (peek().type != Tok::ident) fail("expected a bounding set name");
      bound = take().text;
      if (vars.size() > 1)
        throw ParseError("a bounded quantifier takes a single variable", at.line,
                         at.col, file_);
    }
    if (peek().type == Tok::dot) take();
    // Quantifier scope extends as far right as possible.
    FormulaPtr body = formula();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      bool innermost = it == vars.rbegin();
      body = make_quant(q, *it, body, innermost ? bound : std::nullopt, at);
    }
    return body;
  }

  FormulaPtr atomchain() {
    SourceLoc at = loc();
    std::vector<VarName> vars{take().text};
    std::vector<ChainRel> rels;
    while (true) {
      ChainRel rel;
      switch (peek().type) {
        case Tok::kw_in:
          rel = ChainRel::member;
          break;
        case Tok::kw_notin:
          rel = ChainRel::not_member;
          break;
        case Tok::eq:
          rel = ChainRel::equal;
          break;
        case Tok::neq:
          rel = ChainRel::not_equal;
          break;
        default:
          if (rels.empty()) fail("expected 'in', 'notin', '=' or '!=' after variable");
          if (rels.size() == 1 && rels[0] == ChainRel::member)
            return make_atom(vars[0], Rel::member, vars[1], at);
          if (rels.size() == 1 && rels[0] == ChainRel::equal)
            return make_atom(vars[0], Rel::equal, vars[1], at);
          return make_chain(std::move(vars), std::move(rels), at);
      }
      take();
      if (peek().type != Tok::ident) fail("expected a variable after relation");
      vars.push_back(take().text);
      rels.push_back(rel);
    }
  }

  std::vector<Token> tokens_;
  std::string file_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

FormulaPtr parse(const std::string& text, const std::string& file) {
  Lexer lexer(text, file);
  Parser parser(lexer.run(), file);
  return parser.run();
}

FormulaFile parse_formula_file(const std::string& text, const std::string& file) {
  FormulaFile out;
  std::istringstream in(text);
  std::string line;
  std::string formula_text;
  int line_no = 0;
  int formula_line = 0;
  bool in_formula = false;
  bool saw_params = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (!in_formula) {
      if (t.empty() || t[0] == '#') continue;
      if (t.rfind("params:", 0) == 0) {
        if (saw_params)
          throw ParseError("duplicate params directive", line_no, 1, file);
        saw_params = true;
        std::string rest = t.substr(7);
        std::string name;
        auto flush = [&] {
          if (!name.empty()) {
            out.params.push_back(name);
            name.clear();
          }
        };
        for (char c : rest) {
          if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
          } else if (ident_char(c)) {
            name += c;
          } else {
            throw ParseError(std::string("bad character '") + c + "' in params",
                             line_no, 1, file);
          }
        }
        flush();
        continue;
      }
      if (t.rfind("target:", 0) == 0) {
        if (out.target)
          throw ParseError("duplicate target directive", line_no, 1, file);
        std::string name = trim(t.substr(7));
        for (char c : name)
          if (!ident_char(c))
            throw ParseError("bad target name '" + name + "'", line_no, 1, file);
        if (name.empty()) throw ParseError("empty target directive", line_no, 1, file);
        out.target = name;
        continue;
      }
      in_formula = true;
      formula_line = line_no;
    }
    formula_text += line;
    formula_text += '\n';
  }
  if (trim(formula_text).empty())
    throw ParseError("no formula in file", line_no, 1, file);
  // Pad so token positions refer to the original file lines.
  std::string padded(static_cast<std::size_t>(formula_line - 1), '\n');
  out.formula = parse(padded + formula_text, file);
  return out;
}

FormulaFile load_formula_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_formula_file(buf.str(), path);
}

}  // namespace nf
