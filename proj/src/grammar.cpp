// Copyright 2026 The whbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "whbench/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <vector>

namespace whbench {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at offset " + std::to_string(position)), position(position) {}

namespace {

enum class Tok { ident, keyword, number, string, symbol, end };

struct Token {
  Tok type;
  std::string text;  // keywords upper-cased; strings unescaped
  std::size_t pos;
};

const std::set<std::string> kKeywords = {"SELECT", "FROM",  "WHERE",  "AND",    "OR",
                                         "GROUP",  "BY",    "CUBE",   "ROLLUP", "HAVING",
                                         "SUM",    "AS",    "IN",     "NOT",    "ORDER",
                                         "UNION",  "COUNT", "AVG",    "MIN",    "MAX"};

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < n && text[i + 1] == '-') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_ident_start(c)) {
      while (i < n && is_ident(text[i])) ++i;
      auto word = text.substr(start, i - start);
      auto up = upper(word);
      if (kKeywords.count(up)) {
        out.push_back({Tok::keyword, up, start});
      } else {
        out.push_back({Tok::ident, std::string(word), start});
      }
      continue;
    }
    if (is_digit(c) || (c == '-' && i + 1 < n && (is_digit(text[i + 1]) || text[i + 1] == '.')) ||
        (c == '.' && i + 1 < n && is_digit(text[i + 1]))) {
      ++i;
      while (i < n && (is_digit(text[i]) || text[i] == '.')) ++i;
      out.push_back({Tok::number, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (c == '\'') {
      std::string value;
      ++i;
      for (;;) {
        if (i >= n) throw ParseError("unterminated string literal", start);
        if (text[i] == '\'') {
          if (i + 1 < n && text[i + 1] == '\'') {
            value += '\'';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        value += text[i++];
      }
      out.push_back({Tok::string, std::move(value), start});
      continue;
    }
    if ((c == '<' || c == '>' || c == '!') && i + 1 < n &&
        (text[i + 1] == '=' || (c == '<' && text[i + 1] == '>'))) {
      out.push_back({Tok::symbol, std::string(text.substr(i, 2)), start});
      i += 2;
      continue;
    }
    if (std::string_view(",.();=<>*").find(c) != std::string_view::npos) {
      out.push_back({Tok::symbol, std::string(1, c), start});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::end, "", n});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  QueryAst parse() {
    QueryAst q;
    expect_keyword("SELECT");
    parse_select_list(q);
    expect_keyword("FROM");
    parse_from(q);
    if (accept_keyword("WHERE")) parse_where(q);
    if (accept_keyword("GROUP")) {
      group_pos_ = previous().pos;
      expect_keyword("BY");
      parse_group_by(q);
    }
    if (accept_keyword("HAVING")) {
      having_pos_ = previous().pos;
      parse_having(q);
    }
    accept_symbol(";");
    if (peek().type != Tok::end) {
      if (peek().type == Tok::keyword && peek().text == "OR") {
        fail("only AND-connected conditions are supported");
      }
      fail("unexpected '" + peek().text + "' after end of query");
    }
    q.kind = q.group_by ? QueryKind::olap : QueryKind::extraction;
    validate(q);
    return q;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(index_ + ahead, tokens_.size() - 1)];
  }
  const Token& previous() const { return tokens_[index_ - 1]; }
  const Token& advance() { return tokens_[index_ < tokens_.size() - 1 ? index_++ : index_]; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, peek().pos); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t pos) const {
    throw ParseError(message, pos);
  }

  bool accept_keyword(std::string_view kw) {
    if (peek().type == Tok::keyword && peek().text == kw) {
      advance();
      return true;
    }
    return false;
  }
  bool accept_symbol(std::string_view sym) {
    if (peek().type == Tok::symbol && peek().text == sym) {
      advance();
      return true;
    }
    return false;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail("expected " + std::string(kw));
  }
  void expect_symbol(std::string_view sym) {
    if (!accept_symbol(sym)) fail("expected '" + std::string(sym) + "'");
  }
  void reject_nested() const {
    if (peek().type == Tok::symbol && peek().text == "(" && peek(1).type == Tok::keyword &&
        peek(1).text == "SELECT") {
      fail("nested queries are not supported");
    }
  }

  std::string expect_identifier(const char* what) {
    reject_nested();
    if (peek().type != Tok::ident) fail(std::string("expected ") + what);
    return advance().text;
  }

  ColumnRef parse_column() {
    const auto pos = peek().pos;
    ColumnRef ref;
    std::string first = expect_identifier("attribute name");
    if (accept_symbol(".")) {
      ref.table = std::move(first);
      ref.column = expect_identifier("attribute name");
    } else {
      ref.column = std::move(first);
    }
    if (peek().type == Tok::symbol && peek().text == "(") {
      fail_at("unsupported function; SUM is the only aggregate", pos);
    }
    columns_.push_back({ref, pos});
    return ref;
  }

  Aggregate parse_sum() {
    expect_symbol("(");
    reject_nested();
    Aggregate agg;
    agg.measure = parse_column();
    expect_symbol(")");
    return agg;
  }

  void parse_select_list(QueryAst& q) {
    do {
      if (peek().type == Tok::symbol && peek().text == "*") {
        fail("star projection is not part of the grammar");
      }
      if (peek().type == Tok::keyword &&
          (peek().text == "COUNT" || peek().text == "AVG" || peek().text == "MIN" ||
           peek().text == "MAX")) {
        fail("unsupported aggregate " + peek().text + "; SUM is the only aggregate");
      }
      if (accept_keyword("SUM")) {
        const auto pos = previous().pos;
        auto agg = parse_sum();
        if (accept_keyword("AS")) agg.alias = expect_identifier("alias");
        aggregate_pos_.push_back(pos);
        q.aggregates.push_back(std::move(agg));
      } else {
        if (!q.aggregates.empty()) {
          fail("attributes must precede aggregates in the select list");
        }
        q.select_attributes.push_back(parse_column());
      }
    } while (accept_symbol(","));
  }

  void parse_from(QueryAst& q) {
    std::set<std::string> seen;
    do {
      const auto pos = peek().pos;
      auto table = expect_identifier("table name");
      if (!seen.insert(table).second) fail_at("table " + table + " listed twice", pos);
      q.from_tables.push_back(std::move(table));
    } while (accept_symbol(","));
  }

  CompareOp parse_op() {
    if (peek().type == Tok::symbol) {
      const auto& s = peek().text;
      CompareOp op;
      if (s == "=") op = CompareOp::eq;
      else if (s == "<>" || s == "!=") op = CompareOp::ne;
      else if (s == "<") op = CompareOp::lt;
      else if (s == "<=") op = CompareOp::le;
      else if (s == ">") op = CompareOp::gt;
      else if (s == ">=") op = CompareOp::ge;
      else fail("expected comparison operator");
      advance();
      return op;
    }
    if (peek().type == Tok::keyword && (peek().text == "IN" || peek().text == "NOT")) {
      fail("only comparison operators are supported in conditions");
    }
    fail("expected comparison operator");
  }

  double parse_number() {
    if (peek().type != Tok::number) fail("expected numeric value");
    const auto& tok = advance();
    double value = 0;
    const char* begin = tok.text.data();
    const char* end = begin + tok.text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) fail_at("malformed number " + tok.text, tok.pos);
    return value;
  }

  void parse_where(QueryAst& q) {
    do {
      reject_nested();
      const auto lhs_pos = peek().pos;
      auto lhs = parse_column();
      const auto op = parse_op();
      reject_nested();
      if (peek().type == Tok::ident) {
        auto rhs = parse_column();
        if (op != CompareOp::eq) fail_at("attribute comparisons must be equality joins", lhs_pos);
        q.joins.push_back({std::move(lhs), std::move(rhs)});
      } else if (peek().type == Tok::string) {
        q.restrictions.push_back({std::move(lhs), op, advance().text});
      } else if (peek().type == Tok::number) {
        q.restrictions.push_back({std::move(lhs), op, parse_number()});
      } else {
        fail("expected attribute or value");
      }
    } while (accept_keyword("AND"));
    if (peek().type == Tok::keyword && peek().text == "OR") {
      fail("only AND-connected conditions are supported");
    }
  }

  void parse_group_by(QueryAst& q) {
    GroupBy g;
    if (accept_keyword("CUBE")) {
      g.op = GroupOperator::cube;
    } else if (accept_keyword("ROLLUP")) {
      g.op = GroupOperator::rollup;
    }
    const bool parenthesized = g.op != GroupOperator::plain;
    if (parenthesized) expect_symbol("(");
    do {
      g.attributes.push_back(parse_column());
    } while (accept_symbol(","));
    if (parenthesized) expect_symbol(")");
    q.group_by = std::move(g);
  }

  void parse_having(QueryAst& q) {
    Having h;
    if (accept_keyword("SUM")) {
      h.target = parse_sum().measure;
    } else {
      h.target = expect_identifier("alias or SUM(attribute)");
    }
    h.op = parse_op();
    h.threshold = parse_number();
    q.having = std::move(h);
  }

  void validate(const QueryAst& q) const {
    const std::set<std::string> from(q.from_tables.begin(), q.from_tables.end());
    for (const auto& [ref, pos] : columns_) {
      if (!ref.table.empty() && !from.count(ref.table)) {
        fail_at("table " + ref.table + " is not in the FROM list", pos);
      }
    }
    std::set<std::string> aliases;
    for (std::size_t i = 0; i < q.aggregates.size(); ++i) {
      const auto& alias = q.aggregates[i].alias;
      if (!alias.empty() && !aliases.insert(alias).second) {
        fail_at("duplicate alias " + alias, aggregate_pos_[i]);
      }
    }
    if (q.group_by && q.aggregates.empty()) {
      fail_at("GROUP BY requires at least one aggregate", group_pos_);
    }
    if (q.having && !q.group_by) fail_at("HAVING requires GROUP BY", having_pos_);
    if (!q.aggregates.empty() && !q.select_attributes.empty()) {
      if (!q.group_by) fail_at("attributes mixed with aggregates require GROUP BY", 0);
      for (const auto& a : q.select_attributes) {
        if (std::find(q.group_by->attributes.begin(), q.group_by->attributes.end(), a) ==
            q.group_by->attributes.end()) {
          fail_at("select attribute " + render_column(a) + " is not grouped", group_pos_);
        }
      }
    }
    if (q.having) {
      if (const auto* alias = std::get_if<std::string>(&q.having->target)) {
        if (!aliases.count(*alias)) {
          fail_at("HAVING names unknown alias " + *alias, having_pos_);
        }
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  std::vector<std::pair<ColumnRef, std::size_t>> columns_;
  std::vector<std::size_t> aggregate_pos_;
  std::size_t group_pos_ = 0;
  std::size_t having_pos_ = 0;
};

}  // namespace

QueryAst parse_query(std::string_view text) { return Parser(tokenize(text)).parse(); }

GrammarCheck check_grammar(std::string_view text) {
  GrammarCheck result;
  try {
    result.query = parse_query(text);
  } catch (const ParseError& e) {
    result.message = e.what();
    result.position = e.position;
  }
  return result;
}

}  // namespace whbench
