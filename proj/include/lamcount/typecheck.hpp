#ifndef LAMCOUNT_TYPECHECK_HPP_
#define LAMCOUNT_TYPECHECK_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lamcount/term.hpp"

namespace lamcount {

using TypeVarId = std::uint32_t;

/// Simple type: a type variable or an arrow. Immutable and shared like Term.
class SimpleType {
 public:
  static SimpleType var(TypeVarId id);
  static SimpleType arrow(SimpleType from, SimpleType to);

  bool is_var() const;
  bool is_arrow() const { return !is_var(); }
  TypeVarId var_id() const;
  const SimpleType& from() const;
  const SimpleType& to() const;

  bool same_node(const SimpleType& other) const { return node_ == other.node_; }
  friend bool operator==(const SimpleType& a, const SimpleType& b);

 private:
  struct Node;
  explicit SimpleType(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct SimpleType::Node {
  bool is_var = true;
  TypeVarId id = 0;
  std::vector<SimpleType> parts;  // empty for variables, {from, to} for arrows
};

inline bool SimpleType::is_var() const { return node_->is_var; }
inline TypeVarId SimpleType::var_id() const { return node_->id; }

struct Equation {
  SimpleType left;
  SimpleType right;
  friend bool operator==(const Equation&, const Equation&) = default;
};

struct ConstraintResult {
  SimpleType candidate;
  std::vector<Equation> equations;
  TypeVarId next_cursor = 0;
};

/// Walks a closed term allocating fresh type variables from a cursor.
/// An index under d binders allocates d context variables; an application
/// equates the function type with (argument -> fresh) and pairs up the two
/// contexts. Throws DomainError for open terms.
ConstraintResult build_constraint(const Term& t);

/// Splits arrow = arrow pointwise and flips arrow = var into var = arrow.
std::vector<Equation> decompose(const Equation& e);

/// Strict occurrence: `v` occurs inside `ty` and `ty` is an arrow.
bool occurs_in(TypeVarId v, const SimpleType& ty);

/// Replaces every occurrence of variable `v` in `ty` by `replacement`.
SimpleType substitute(const SimpleType& ty, TypeVarId v, const SimpleType& replacement);

struct SolveResult {
  /// Bindings var = type in solving order. Each binding was applied to the
  /// equations still pending when it was found, never to earlier bindings.
  std::vector<Equation> solved;
  bool ok = false;
};

/// Transformation-rule unification with occurs check.
SolveResult solve(std::vector<Equation> equations);

/// Applies a solved list (as returned by `solve`) to a type, closing it
/// under all bindings.
SimpleType apply_solution(const SimpleType& ty, const std::vector<Equation>& solved);

bool is_typable(const Term& t);

/// Most general type of a typable closed term. Throws DomainError when the
/// term is open or untypable.
SimpleType principal_type(const Term& t);

enum class TypeStyle { Unicode, Ascii };

/// Arrows associate to the right; variables are renamed α, β, γ, ... (or
/// a, b, c, ...) in order of first occurrence.
std::string print_type(const SimpleType& ty, TypeStyle style = TypeStyle::Unicode);

/// Parses the printed form. Any identifier (Greek letter or ASCII word) is
/// a variable; "→" and "->" are arrows.
SimpleType parse_type(std::string_view text);

/// Equal up to a consistent bijective renaming of variables.
bool alpha_equivalent(const SimpleType& a, const SimpleType& b);

}  // namespace lamcount

#endif  // LAMCOUNT_TYPECHECK_HPP_
