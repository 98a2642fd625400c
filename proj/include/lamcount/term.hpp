#ifndef LAMCOUNT_TERM_HPP_
#define LAMCOUNT_TERM_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lamcount {

/// Raised for well-formed requests that fall outside a function's domain:
/// ranks out of range, open terms where closed ones are required, empty
/// families, terms that are not normal forms.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TermKind : std::uint8_t { Index, Abs, App };

/// Lambda term in de Bruijn notation with 1-based indices.
///
/// Terms are immutable values. Subterms are shared, so copying a term is
/// O(1) and structural equality is tree equality.
class Term {
 public:
  static Term index(std::uint64_t i);
  static Term abs(Term body);
  static Term app(Term left, Term right);

  TermKind kind() const;
  bool is_index() const { return kind() == TermKind::Index; }
  bool is_abs() const { return kind() == TermKind::Abs; }
  bool is_app() const { return kind() == TermKind::App; }

  /// Index value; only meaningful for Index nodes.
  std::uint64_t index_value() const;
  /// Body of an abstraction.
  const Term& body() const;
  const Term& left() const;
  const Term& right() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind;
  std::uint64_t index = 0;
  // Abs uses `first` only.
  std::optional<Term> first;
  std::optional<Term> second;
};

inline TermKind Term::kind() const { return node_->kind; }
inline std::uint64_t Term::index_value() const { return node_->index; }

/// Number of abstraction and application nodes. Indices weigh nothing.
std::size_t size_of(const Term& t);

/// Minimal number of outer lambdas needed to close `t`.
std::uint64_t openness_of(const Term& t);

/// For every index occurrence, left to right, the number of Abs and App
/// nodes strictly above it.
std::vector<std::size_t> variable_depths(const Term& t);

/// Length of the leading abstraction chain.
std::size_t head_lambdas(const Term& t);

/// No subterm of the form (λs) u.
bool is_beta_normal(const Term& t);

// -- text and JSON forms ----------------------------------------------------

enum class TextStyle { Unicode, Ascii };

/// Canonical text. Application is left-associative juxtaposition, the body
/// of an abstraction extends as far right as possible, and any non-index
/// argument or abstraction in function position is parenthesized.
std::string print_term(const Term& t, TextStyle style = TextStyle::Unicode);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Accepts both 'λ' and '\' for abstraction. Whitespace is insignificant
/// except as a separator between adjacent indices.
Term parse_term(std::string_view text);

/// {"ix": i} | {"abs": t} | {"app": [t, u]}
nlohmann::json term_to_json(const Term& t);
Term term_from_json(const nlohmann::json& j);

/// Reads either the JSON or the text form, deciding on the first
/// non-blank character.
Term parse_term_any(std::string_view text);

}  // namespace lamcount

#endif  // LAMCOUNT_TERM_HPP_
