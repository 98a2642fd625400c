#include "lamcount/term.hpp"

#include <algorithm>

namespace lamcount {

Term Term::index(std::uint64_t i) {
  if (i == 0) throw DomainError("de Bruijn indices start at 1");
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Index;
  node->index = i;
  return Term(std::move(node));
}

Term Term::abs(Term body) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Abs;
  node->first.emplace(std::move(body));
  return Term(std::move(node));
}

Term Term::app(Term left, Term right) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::App;
  node->first.emplace(std::move(left));
  node->second.emplace(std::move(right));
  return Term(std::move(node));
}

const Term& Term::body() const {
  if (!is_abs()) throw std::logic_error("body() on a non-abstraction");
  return *node_->first;
}

const Term& Term::left() const {
  if (!is_app()) throw std::logic_error("left() on a non-application");
  return *node_->first;
}

const Term& Term::right() const {
  if (!is_app()) throw std::logic_error("right() on a non-application");
  return *node_->second;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Index:
      return a.index_value() == b.index_value();
    case TermKind::Abs:
      return a.body() == b.body();
    case TermKind::App:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

std::size_t size_of(const Term& t) {
  switch (t.kind()) {
    case TermKind::Index:
      return 0;
    case TermKind::Abs:
      return size_of(t.body()) + 1;
    case TermKind::App:
      return size_of(t.left()) + size_of(t.right()) + 1;
  }
  return 0;
}

namespace {

std::uint64_t openness_at(const Term& t, std::uint64_t binders) {
  switch (t.kind()) {
    case TermKind::Index:
      return t.index_value() > binders ? t.index_value() - binders : 0;
    case TermKind::Abs:
      return openness_at(t.body(), binders + 1);
    case TermKind::App:
      return std::max(openness_at(t.left(), binders),
                      openness_at(t.right(), binders));
  }
  return 0;
}

void collect_depths(const Term& t, std::size_t depth,
                    std::vector<std::size_t>& out) {
  switch (t.kind()) {
    case TermKind::Index:
      out.push_back(depth);
      return;
    case TermKind::Abs:
      collect_depths(t.body(), depth + 1, out);
      return;
    case TermKind::App:
      collect_depths(t.left(), depth + 1, out);
      collect_depths(t.right(), depth + 1, out);
      return;
  }
}

}  // namespace

std::uint64_t openness_of(const Term& t) { return openness_at(t, 0); }

std::vector<std::size_t> variable_depths(const Term& t) {
  std::vector<std::size_t> depths;
  collect_depths(t, 0, depths);
  return depths;
}

std::size_t head_lambdas(const Term& t) {
  std::size_t count = 0;
  const Term* cur = &t;
  while (cur->is_abs()) {
    ++count;
    cur = &cur->body();
  }
  return count;
}

bool is_beta_normal(const Term& t) {
  switch (t.kind()) {
    case TermKind::Index:
      return true;
    case TermKind::Abs:
      return is_beta_normal(t.body());
    case TermKind::App:
      return !t.left().is_abs() && is_beta_normal(t.left()) &&
             is_beta_normal(t.right());
  }
  return true;
}

}  // namespace lamcount
