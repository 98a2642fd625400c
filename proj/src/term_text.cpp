#include <cctype>
#include <limits>

#include "lamcount/term.hpp"

namespace lamcount {

namespace {

constexpr std::string_view kLambdaUtf8 = "\xCE\xBB";

void print_into(const Term& t, std::string_view lambda, std::string& out) {
  switch (t.kind()) {
    case TermKind::Index:
      out += std::to_string(t.index_value());
      return;
    case TermKind::Abs:
      out += lambda;
      if (t.body().is_app()) {
        out += '(';
        print_into(t.body(), lambda, out);
        out += ')';
      } else {
        print_into(t.body(), lambda, out);
      }
      return;
    case TermKind::App: {
      const bool wrap_left = t.left().is_abs();
      const bool wrap_right = !t.right().is_index();
      if (wrap_left) out += '(';
      print_into(t.left(), lambda, out);
      if (wrap_left) out += ')';
      if (!(out.back() == ')' && wrap_right)) out += ' ';
      if (wrap_right) out += '(';
      print_into(t.right(), lambda, out);
      if (wrap_right) out += ')';
      return;
    }
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse_all() {
    Term t = parse_term();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_lambda() const {
    if (pos_ < text_.size() && text_[pos_] == '\\') return true;
    return text_.substr(pos_, kLambdaUtf8.size()) == kLambdaUtf8;
  }

  void consume_lambda() {
    pos_ += text_[pos_] == '\\' ? 1 : kLambdaUtf8.size();
  }

  Term parse_term() {
    skip_space();
    if (at_lambda()) {
      consume_lambda();
      return Term::abs(parse_term());
    }
    return parse_application();
  }

  Term parse_application() {
    Term acc = parse_atom();
    for (;;) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ')') return acc;
      if (at_lambda()) {
        // A trailing abstraction swallows the rest of the group.
        consume_lambda();
        return Term::app(std::move(acc), Term::abs(parse_term()));
      }
      acc = Term::app(std::move(acc), parse_atom());
    }
  }

  Term parse_atom() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term inner = parse_term();
      skip_space();
      if (pos_ == text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '-') fail("negative de Bruijn index");
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail(std::string("unexpected character '") + c + "'");
    }
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
        fail("index too large");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    if (value == 0) throw ParseError("de Bruijn index 0 (indices start at 1)", start);
    return Term::index(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " +
                         message),
      position_(position) {}

std::string print_term(const Term& t, TextStyle style) {
  std::string out;
  print_into(t, style == TextStyle::Unicode ? kLambdaUtf8 : "\\", out);
  return out;
}

Term parse_term(std::string_view text) { return Parser(text).parse_all(); }

nlohmann::json term_to_json(const Term& t) {
  switch (t.kind()) {
    case TermKind::Index:
      return {{"ix", t.index_value()}};
    case TermKind::Abs:
      return {{"abs", term_to_json(t.body())}};
    case TermKind::App:
      return {{"app", nlohmann::json::array(
                          {term_to_json(t.left()), term_to_json(t.right())})}};
  }
  return nullptr;
}

Term term_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw ParseError("JSON term must be an object with a single key", 0);
  }
  if (auto it = j.find("ix"); it != j.end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 1) {
      throw ParseError("\"ix\" must be a positive integer", 0);
    }
    return Term::index(it->get<std::uint64_t>());
  }
  if (auto it = j.find("abs"); it != j.end()) {
    return Term::abs(term_from_json(*it));
  }
  if (auto it = j.find("app"); it != j.end()) {
    if (!it->is_array() || it->size() != 2) {
      throw ParseError("\"app\" must be a two-element array", 0);
    }
    return Term::app(term_from_json((*it)[0]), term_from_json((*it)[1]));
  }
  throw ParseError("unknown JSON term key", 0);
}

Term parse_term_any(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what(), e.byte);
    }
    return term_from_json(j);
  }
  return parse_term(text);
}

}  // namespace lamcount
