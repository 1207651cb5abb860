#include <cctype>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "tropcert/error.hpp"
#include "tropcert/polynomial.hpp"

namespace tropcert {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text; // ident name, number literal, or single punct char
  int line, col;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(int l, int c, const std::string& msg) const {
    throw Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg);
  }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  Token next() {
    for (;;) {
      while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r' ||
                                  src[pos] == '\n'))
        advance();
      if (pos < src.size() && src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      break;
    }
    if (pos >= src.size()) return {Tok::End, "", line, col};
    int l = line, c = col;
    unsigned char ch = (unsigned char)src[pos];
    // U+2212 (minus sign) is accepted as '-'
    if (ch == 0xE2 && pos + 2 < src.size() && (unsigned char)src[pos + 1] == 0x88 &&
        (unsigned char)src[pos + 2] == 0x92) {
      advance();
      advance();
      advance();
      return {Tok::Punct, "-", l, c};
    }
    if (std::isalpha(ch) || ch == '_') {
      std::string name;
      while (pos < src.size() &&
             (std::isalnum((unsigned char)src[pos]) || src[pos] == '_')) {
        name += src[pos];
        advance();
      }
      return {Tok::Ident, name, l, c};
    }
    if (std::isdigit(ch) || (ch == '.' && pos + 1 < src.size() &&
                             std::isdigit((unsigned char)src[pos + 1]))) {
      std::string num;
      while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
        num += src[pos];
        advance();
      }
      if (pos < src.size() && src[pos] == '.') {
        num += '.';
        advance();
        while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
          num += src[pos];
          advance();
        }
      }
      if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
        size_t save = pos;
        int sl = line, sc = col;
        std::string ex;
        ex += src[pos];
        advance();
        if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) {
          ex += src[pos];
          advance();
        }
        if (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
          while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
            ex += src[pos];
            advance();
          }
          num += ex;
        } else {
          pos = save;
          line = sl;
          col = sc;
        }
      }
      return {Tok::Number, num, l, c};
    }
    static const std::string puncts = "+-*^/();:";
    if (puncts.find((char)ch) != std::string::npos) {
      advance();
      return {Tok::Punct, std::string(1, (char)ch), l, c};
    }
    fail(l, c, std::string("unexpected character '") + (char)ch + "'");
  }
};

Rat rat_from_number(const std::string& s) {
  auto epos = s.find_first_of("eE");
  std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
  long ex = epos == std::string::npos ? 0 : std::strtol(s.c_str() + epos + 1, nullptr, 10);
  auto dot = mant.find('.');
  std::string digits = mant;
  long frac = 0;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    frac = (long)(mant.size() - dot - 1);
  }
  if (digits.empty()) digits = "0";
  Int num(digits, 10);
  long shift = ex - frac;
  Rat r(num);
  Int ten = 10;
  if (shift > 0) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), (unsigned long)shift);
    r *= Rat(p);
  } else if (shift < 0) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), (unsigned long)(-shift));
    r /= Rat(p);
  }
  r.canonicalize();
  return r;
}

struct RawFactor {
  std::string name;
  Int exp;
  int line, col;
};

struct RawTerm {
  Coeff c;
  std::vector<RawFactor> factors;
};

struct RawPoly {
  std::vector<RawTerm> terms;
  int line, col; // statement start
};

struct Parser {
  Lexer lex;
  Token tok;

  explicit Parser(const std::string& s) : lex(s) { tok = lex.next(); }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw Error("line " + std::to_string(at.line) + ", column " + std::to_string(at.col) +
                ": " + msg);
  }

  void bump() { tok = lex.next(); }

  bool is_punct(const char* p) const { return tok.kind == Tok::Punct && tok.text == p; }

  void expect_punct(const char* p, const std::string& what) {
    if (!is_punct(p)) fail(tok, "expected '" + std::string(p) + "' " + what);
    bump();
  }

  // unsigned rational: NUMBER ['/' NUMBER]
  Rat rational() {
    if (tok.kind != Tok::Number) fail(tok, "expected a number");
    Rat r = rat_from_number(tok.text);
    bump();
    if (is_punct("/")) {
      bump();
      if (tok.kind != Tok::Number) fail(tok, "expected denominator after '/'");
      Rat d = rat_from_number(tok.text);
      if (d == 0) fail(tok, "zero denominator");
      bump();
      r /= d;
      r.canonicalize();
    }
    return r;
  }

  Rat signed_rational() {
    bool neg = false;
    if (is_punct("-")) {
      neg = true;
      bump();
    } else if (is_punct("+")) {
      bump();
    }
    Rat r = rational();
    return neg ? Rat(-r) : r;
  }

  // '(' a ('+'|'-') b '*' 'i' ')'
  Coeff complex_literal() {
    expect_punct("(", "to open a complex coefficient");
    Rat a = signed_rational();
    bool bneg;
    if (is_punct("+"))
      bneg = false;
    else if (is_punct("-"))
      bneg = true;
    else
      fail(tok, "expected '+' or '-' inside complex coefficient");
    bump();
    Rat b = rational();
    expect_punct("*", "before 'i' in complex coefficient");
    if (tok.kind != Tok::Ident || tok.text != "i")
      fail(tok, "expected 'i' in complex coefficient");
    bump();
    expect_punct(")", "to close complex coefficient");
    return Coeff::rational(a, bneg ? Rat(-b) : b);
  }

  RawFactor factor() {
    if (tok.kind != Tok::Ident) fail(tok, "expected a variable name");
    RawFactor f{tok.text, Int(1), tok.line, tok.col};
    bump();
    if (is_punct("^")) {
      bump();
      bool neg = false;
      if (is_punct("-")) {
        neg = true;
        bump();
      }
      if (tok.kind != Tok::Number || tok.text.find('.') != std::string::npos ||
          tok.text.find_first_of("eE") != std::string::npos)
        fail(tok, "expected an integer exponent after '^'");
      f.exp = Int(tok.text, 10);
      if (neg) f.exp = -f.exp;
      bump();
    }
    return f;
  }

  RawTerm term(int sign) {
    RawTerm t;
    bool have_coeff = false;
    if (tok.kind == Tok::Number) {
      t.c = Coeff::rational(rational());
      have_coeff = true;
    } else if (is_punct("(")) {
      t.c = complex_literal();
      have_coeff = true;
    } else {
      t.c = Coeff::integer(1);
    }
    if (have_coeff) {
      if (is_punct("*")) {
        bump();
        t.factors.push_back(factor());
        while (is_punct("*")) {
          bump();
          t.factors.push_back(factor());
        }
      }
      // bare coefficient is a constant term
    } else {
      t.factors.push_back(factor());
      while (is_punct("*")) {
        bump();
        t.factors.push_back(factor());
      }
    }
    if (sign < 0) t.c = -t.c;
    return t;
  }

  RawPoly polynomial() {
    RawPoly p;
    p.line = tok.line;
    p.col = tok.col;
    int sign = 1;
    if (is_punct("-")) {
      sign = -1;
      bump();
    } else if (is_punct("+")) {
      bump();
    }
    if (is_punct(";")) fail(tok, "empty statement");
    p.terms.push_back(term(sign));
    for (;;) {
      if (is_punct("+"))
        sign = 1;
      else if (is_punct("-"))
        sign = -1;
      else
        break;
      bump();
      p.terms.push_back(term(sign));
    }
    return p;
  }
};

bool is_positional_name(const std::string& s, long& idx) {
  if (s.size() < 2 || s[0] != 'x') return false;
  if (s[1] == '0') return false;
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit((unsigned char)s[i])) return false;
  idx = std::strtol(s.c_str() + 1, nullptr, 10);
  return idx >= 1;
}

} // namespace

LaurentSystem parse_system(const std::string& text) {
  Parser p(text);

  std::vector<std::string> header;
  bool have_header = false;
  if (p.tok.kind == Tok::Ident && p.tok.text == "vars") {
    int hline = p.tok.line;
    p.bump();
    if (p.is_punct(":")) {
      have_header = true;
      p.bump();
      while (p.tok.kind == Tok::Ident && p.tok.line == hline) {
        header.push_back(p.tok.text);
        p.bump();
      }
      if (header.empty()) p.fail(p.tok, "empty vars header");
      if (p.is_punct(";") && p.tok.line == hline) p.bump();
    } else {
      p.fail(p.tok, "expected ':' after 'vars'");
    }
  }

  std::vector<RawPoly> raws;
  while (p.tok.kind != Tok::End) {
    RawPoly rp = p.polynomial();
    if (!p.is_punct(";")) p.fail(p.tok, "expected ';' at end of equation");
    p.bump();
    raws.push_back(std::move(rp));
  }
  if (raws.empty()) throw Error("line 1, column 1: no equations in input");

  LaurentSystem sys;
  std::map<std::string, int> index;
  if (have_header) {
    sys.names = header;
    for (size_t i = 0; i < header.size(); ++i) {
      if (index.count(header[i]))
        throw Error("duplicate variable '" + header[i] + "' in vars header");
      index[header[i]] = (int)i;
    }
  } else {
    bool all_positional = true;
    long max_idx = 0;
    for (const auto& rp : raws)
      for (const auto& t : rp.terms)
        for (const auto& f : t.factors) {
          long k;
          if (is_positional_name(f.name, k))
            max_idx = std::max(max_idx, k);
          else
            all_positional = false;
        }
    if (all_positional && max_idx > 0) {
      for (long i = 1; i <= max_idx; ++i) sys.names.push_back("x" + std::to_string(i));
    } else {
      for (const auto& rp : raws)
        for (const auto& t : rp.terms)
          for (const auto& f : t.factors)
            if (!index.count(f.name)) {
              index[f.name] = (int)sys.names.size();
              sys.names.push_back(f.name);
            }
    }
    for (size_t i = 0; i < sys.names.size(); ++i) index[sys.names[i]] = (int)i;
  }
  sys.nvars = (int)sys.names.size();

  for (const auto& rp : raws) {
    LaurentPoly f(sys.nvars);
    for (const auto& t : rp.terms) {
      IntVector e(sys.nvars, Int(0));
      for (const auto& fct : t.factors) {
        auto it = index.find(fct.name);
        if (it == index.end())
          throw Error("line " + std::to_string(fct.line) + ", column " +
                      std::to_string(fct.col) + ": unknown variable '" + fct.name + "'");
        e[it->second] += fct.exp;
      }
      f.add_term(e, t.c);
    }
    if (f.terms.empty())
      throw Error("line " + std::to_string(rp.line) + ", column " + std::to_string(rp.col) +
                  ": identically zero equation");
    sys.polys.push_back(std::move(f));
  }
  return sys;
}

} // namespace tropcert
