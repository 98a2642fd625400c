#include "lamcount/typecheck.hpp"

#include <deque>
#include <map>
#include <unordered_map>

namespace lamcount {

SimpleType SimpleType::var(TypeVarId id) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->id = id;
  return SimpleType(std::move(node));
}

SimpleType SimpleType::arrow(SimpleType from, SimpleType to) {
  auto node = std::make_shared<Node>();
  node->is_var = false;
  node->parts.reserve(2);
  node->parts.push_back(std::move(from));
  node->parts.push_back(std::move(to));
  return SimpleType(std::move(node));
}

const SimpleType& SimpleType::from() const {
  if (is_var()) throw std::logic_error("from() on a type variable");
  return node_->parts[0];
}

const SimpleType& SimpleType::to() const {
  if (is_var()) throw std::logic_error("to() on a type variable");
  return node_->parts[1];
}

bool operator==(const SimpleType& a, const SimpleType& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.var_id() == b.var_id();
  return a.from() == b.from() && a.to() == b.to();
}

// -- constraint generation ----------------------------------------------------

namespace {

struct Built {
  SimpleType type;
  // Context with the innermost binder (index 1) at the back.
  std::vector<SimpleType> context;
  std::vector<Equation> equations;
};

Built build(const Term& t, TypeVarId depth, TypeVarId& cursor) {
  switch (t.kind()) {
    case TermKind::Index: {
      const auto i = static_cast<TypeVarId>(t.index_value());
      Built out{SimpleType::var(cursor + i - 1), {}, {}};
      out.context.reserve(depth);
      for (TypeVarId j = depth; j > 0; --j) out.context.push_back(SimpleType::var(cursor + j - 1));
      cursor += depth;
      return out;
    }
    case TermKind::Abs: {
      Built inner = build(t.body(), depth + 1, cursor);
      SimpleType bound = std::move(inner.context.back());
      inner.context.pop_back();
      inner.type = SimpleType::arrow(std::move(bound), std::move(inner.type));
      return inner;
    }
    case TermKind::App: {
      Built fun = build(t.left(), depth, cursor);
      Built arg = build(t.right(), depth, cursor);
      SimpleType result = SimpleType::var(cursor++);
      Built out{result, std::move(fun.context), {}};
      out.equations.reserve(1 + depth + fun.equations.size() + arg.equations.size());
      out.equations.push_back({std::move(fun.type), SimpleType::arrow(std::move(arg.type), result)});
      for (std::size_t k = out.context.size(); k > 0; --k) {
        out.equations.push_back({out.context[k - 1], arg.context[k - 1]});
      }
      for (auto& e : fun.equations) out.equations.push_back(std::move(e));
      for (auto& e : arg.equations) out.equations.push_back(std::move(e));
      return out;
    }
  }
  throw std::logic_error("unreachable term kind");
}

bool non_trivial(const Equation& e) {
  return !(e.left.is_var() && e.right.is_var() && e.left.var_id() == e.right.var_id());
}

bool occurs_weak(TypeVarId v, const SimpleType& ty) {
  if (ty.is_var()) return ty.var_id() == v;
  return occurs_weak(v, ty.from()) || occurs_weak(v, ty.to());
}

}  // namespace

ConstraintResult build_constraint(const Term& t) {
  const auto openness = openness_of(t);
  if (openness != 0) {
    throw DomainError("type reconstruction needs a closed term (openness " +
                      std::to_string(openness) + ")");
  }
  TypeVarId cursor = 0;
  Built root = build(t, 0, cursor);
  return {std::move(root.type), std::move(root.equations), cursor};
}

// -- unification --------------------------------------------------------------

std::vector<Equation> decompose(const Equation& e) {
  if (e.left.is_arrow() && e.right.is_arrow()) {
    std::vector<Equation> out = decompose({e.left.from(), e.right.from()});
    for (auto& sub : decompose({e.left.to(), e.right.to()})) out.push_back(std::move(sub));
    return out;
  }
  if (e.left.is_arrow() && e.right.is_var()) return {{e.right, e.left}};
  return {e};
}

bool occurs_in(TypeVarId v, const SimpleType& ty) {
  if (ty.is_var()) return false;
  return occurs_weak(v, ty.from()) || occurs_weak(v, ty.to());
}

SimpleType substitute(const SimpleType& ty, TypeVarId v, const SimpleType& replacement) {
  if (ty.is_var()) return ty.var_id() == v ? replacement : ty;
  SimpleType from = substitute(ty.from(), v, replacement);
  SimpleType to = substitute(ty.to(), v, replacement);
  if (from.same_node(ty.from()) && to.same_node(ty.to())) return ty;
  return SimpleType::arrow(std::move(from), std::move(to));
}

SolveResult solve(std::vector<Equation> equations) {
  std::deque<Equation> pending(std::make_move_iterator(equations.begin()),
                               std::make_move_iterator(equations.end()));
  SolveResult result;
  while (!pending.empty()) {
    Equation eq = std::move(pending.front());
    pending.pop_front();
    if (eq.left.is_var()) {
      const TypeVarId v = eq.left.var_id();
      if (occurs_in(v, eq.right)) return result;  // cycle
      for (auto& other : pending) {
        other.left = substitute(other.left, v, eq.right);
        other.right = substitute(other.right, v, eq.right);
      }
      result.solved.push_back(std::move(eq));
      continue;
    }
    auto parts = decompose(eq);
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      if (non_trivial(*it)) pending.push_front(std::move(*it));
    }
  }
  result.ok = true;
  return result;
}

SimpleType apply_solution(const SimpleType& ty, const std::vector<Equation>& solved) {
  SimpleType out = ty;
  for (const auto& binding : solved) out = substitute(out, binding.left.var_id(), binding.right);
  return out;
}

bool is_typable(const Term& t) { return solve(build_constraint(t).equations).ok; }

SimpleType principal_type(const Term& t) {
  ConstraintResult built = build_constraint(t);
  SolveResult solution = solve(std::move(built.equations));
  if (!solution.ok) throw DomainError("term is not simply typable");
  return apply_solution(built.candidate, solution.solved);
}

// -- printing and parsing -----------------------------------------------------

namespace {

std::string variable_name(std::size_t ordinal, TypeStyle style) {
  static const char* const kGreek[] = {"α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ",
                                       "μ", "ν", "ξ", "π", "ρ", "σ", "τ", "υ", "φ", "χ",
                                       "ψ", "ω"};
  constexpr std::size_t kGreekCount = sizeof(kGreek) / sizeof(kGreek[0]);
  const std::size_t alphabet = style == TypeStyle::Unicode ? kGreekCount : 26;
  std::string name = style == TypeStyle::Unicode
                         ? std::string(kGreek[ordinal % alphabet])
                         : std::string(1, static_cast<char>('a' + ordinal % alphabet));
  if (ordinal >= alphabet) name += std::to_string(ordinal / alphabet);
  return name;
}

void print_into(const SimpleType& ty, TypeStyle style,
                std::unordered_map<TypeVarId, std::size_t>& names, std::string& out) {
  if (ty.is_var()) {
    auto [it, inserted] = names.try_emplace(ty.var_id(), names.size());
    out += variable_name(it->second, style);
    return;
  }
  const bool wrap = ty.from().is_arrow();
  if (wrap) out += '(';
  print_into(ty.from(), style, names, out);
  if (wrap) out += ')';
  out += style == TypeStyle::Unicode ? "→" : "->";
  print_into(ty.to(), style, names, out);
}

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  SimpleType parse_all() {
    SimpleType ty = parse_type();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input in type", pos_);
    return ty;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_arrow() const {
    return text_.substr(pos_, 3) == "→" || text_.substr(pos_, 2) == "->";
  }

  SimpleType parse_type() {
    SimpleType from = parse_atom();
    skip_space();
    if (pos_ < text_.size() && at_arrow()) {
      pos_ += text_[pos_] == '-' ? 2 : 3;
      return SimpleType::arrow(std::move(from), parse_type());
    }
    return from;
  }

  SimpleType parse_atom() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("unexpected end of type", pos_);
    if (text_[pos_] == '(') {
      ++pos_;
      SimpleType inner = parse_type();
      skip_space();
      if (pos_ == text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '(' &&
           text_[pos_] != ')' && !at_arrow()) {
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a type variable", pos_);
    const std::string name(text_.substr(start, pos_ - start));
    auto [it, inserted] = ids_.try_emplace(name, static_cast<TypeVarId>(ids_.size()));
    return SimpleType::var(it->second);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, TypeVarId> ids_;
};

bool alpha_walk(const SimpleType& a, const SimpleType& b,
                std::unordered_map<TypeVarId, TypeVarId>& forward,
                std::unordered_map<TypeVarId, TypeVarId>& backward) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) {
    auto [f, f_new] = forward.try_emplace(a.var_id(), b.var_id());
    auto [g, g_new] = backward.try_emplace(b.var_id(), a.var_id());
    return f->second == b.var_id() && g->second == a.var_id();
  }
  return alpha_walk(a.from(), b.from(), forward, backward) &&
         alpha_walk(a.to(), b.to(), forward, backward);
}

}  // namespace

std::string print_type(const SimpleType& ty, TypeStyle style) {
  std::unordered_map<TypeVarId, std::size_t> names;
  std::string out;
  print_into(ty, style, names, out);
  return out;
}

SimpleType parse_type(std::string_view text) { return TypeParser(text).parse_all(); }

bool alpha_equivalent(const SimpleType& a, const SimpleType& b) {
  std::unordered_map<TypeVarId, TypeVarId> forward;
  std::unordered_map<TypeVarId, TypeVarId> backward;
  return alpha_walk(a, b, forward, backward);
}

}  // namespace lamcount
