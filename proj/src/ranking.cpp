#include "lamcount/ranking.hpp"

#include <unordered_set>
#include <utility>
#include <vector>

namespace lamcount {

namespace {

using Visit = std::function<void(const Term&)>;

void check_rank(const BigInt& rank, const BigInt& total, Size n, Size m) {
  if (total == 0) {
    throw DomainError("empty domain: no member of size " + std::to_string(n) +
                      " with at most " + std::to_string(m) + " free indices");
  }
  if (rank < 1 || rank > total) {
    throw DomainError("rank " + rank.str() + " out of range [1.." + total.str() +
                      "]");
  }
}

std::uint64_t small_rank(const BigInt& rank) {
  return rank.convert_to<std::uint64_t>();
}

// -- terms --------------------------------------------------------------------

Term unrank_term_unchecked(Size n, Size m, BigInt k) {
  if (n == 0) return Term::index(small_rank(k));
  const BigInt abstractions = count_terms(n - 1, m + 1);
  if (k <= abstractions) return Term::abs(unrank_term_unchecked(n - 1, m + 1, k));
  BigInt h = k - abstractions;
  for (Size j = 0; j < n; ++j) {
    const BigInt right_count = count_terms(n - 1 - j, m);
    const BigInt block = count_terms(j, m) * right_count;
    if (h <= block) {
      BigInt quotient;
      BigInt remainder;
      boost::multiprecision::divide_qr(BigInt(h - 1), right_count, quotient, remainder);
      return Term::app(unrank_term_unchecked(j, m, quotient + 1),
                       unrank_term_unchecked(n - 1 - j, m, remainder + 1));
    }
    h -= block;
  }
  throw std::logic_error("unrank_term: rank escaped every application block");
}

// Returns (rank, size).
std::pair<BigInt, Size> rank_term_sized(const Term& t, Size m) {
  switch (t.kind()) {
    case TermKind::Index:
      return {BigInt(t.index_value()), 0};
    case TermKind::Abs: {
      auto [r, s] = rank_term_sized(t.body(), m + 1);
      return {std::move(r), s + 1};
    }
    case TermKind::App: {
      auto [left_rank, j] = rank_term_sized(t.left(), m);
      auto [right_rank, rs] = rank_term_sized(t.right(), m);
      const Size n = j + rs + 1;
      BigInt offset = count_terms(n - 1, m + 1);
      for (Size i = 0; i < j; ++i) offset += count_terms(i, m) * count_terms(n - 1 - i, m);
      return {offset + (left_rank - 1) * count_terms(n - 1 - j, m) + right_rank, n};
    }
  }
  return {BigInt(0), 0};
}

// -- normal forms -------------------------------------------------------------

Term unrank_ng_unchecked(Size n, Size m, BigInt k);

Term unrank_nf_unchecked(Size n, Size m, BigInt k) {
  if (n == 0) return Term::index(small_rank(k));
  const BigInt abstractions = count_nf(n - 1, m + 1);
  if (k <= abstractions) return Term::abs(unrank_nf_unchecked(n - 1, m + 1, k));
  return unrank_ng_unchecked(n, m, k - abstractions);
}

Term unrank_ng_unchecked(Size n, Size m, BigInt h) {
  if (n == 0) return Term::index(small_rank(h));
  for (Size j = 0; j < n; ++j) {
    const BigInt right_count = count_nf(n - 1 - j, m);
    const BigInt block = count_neutral(j, m) * right_count;
    if (h <= block) {
      BigInt quotient;
      BigInt remainder;
      boost::multiprecision::divide_qr(BigInt(h - 1), right_count, quotient, remainder);
      return Term::app(unrank_ng_unchecked(j, m, quotient + 1),
                       unrank_nf_unchecked(n - 1 - j, m, remainder + 1));
    }
    h -= block;
  }
  throw std::logic_error("unrank_nf: rank escaped every application block");
}

std::pair<BigInt, Size> rank_ng_sized(const Term& t, Size m);

std::pair<BigInt, Size> rank_nf_sized(const Term& t, Size m) {
  switch (t.kind()) {
    case TermKind::Index:
      return {BigInt(t.index_value()), 0};
    case TermKind::Abs: {
      auto [r, s] = rank_nf_sized(t.body(), m + 1);
      return {std::move(r), s + 1};
    }
    case TermKind::App: {
      auto [r, n] = rank_ng_sized(t, m);
      return {count_nf(n - 1, m + 1) + r, n};
    }
  }
  return {BigInt(0), 0};
}

std::pair<BigInt, Size> rank_ng_sized(const Term& t, Size m) {
  if (t.is_index()) return {BigInt(t.index_value()), 0};
  auto [left_rank, j] = rank_ng_sized(t.left(), m);
  auto [right_rank, rs] = rank_nf_sized(t.right(), m);
  const Size n = j + rs + 1;
  BigInt offset = 0;
  for (Size i = 0; i < j; ++i) offset += count_neutral(i, m) * count_nf(n - 1 - i, m);
  return {offset + (left_rank - 1) * count_nf(n - 1 - j, m) + right_rank, n};
}

// -- windowed enumeration -----------------------------------------------------

// Both families share one shape: a leaf row of indices, an abstraction block,
// then application blocks indexed by the size of the function part. The
// generator below is parameterized by the counting functions of each part.
struct Shape {
  BigInt (*count_whole)(Size, Size);
  BigInt (*count_head)(Size, Size);  // function-position family
  bool head_is_neutral;
};

void visit_indices(const BigInt& lo, const BigInt& hi, const Visit& visit) {
  for (std::uint64_t i = small_rank(lo), end = small_rank(hi); i <= end; ++i) {
    visit(Term::index(i));
  }
}

void generate(const Shape& shape, Size n, Size m, const BigInt& lo, const BigInt& hi,
              const Visit& visit);
void generate_neutral(Size n, Size m, const BigInt& lo, const BigInt& hi,
                      const Visit& visit);

// Application blocks of size n. The function part is drawn from the head
// family (terms, or neutral terms for normal forms), the argument from the
// whole family. `lo` and `hi` are 1-based inside the application region.
void generate_apps(const Shape& shape, Size n, Size m, const BigInt& lo,
                   const BigInt& hi, const Visit& visit) {
  BigInt base = 0;
  for (Size j = 0; j < n && base < hi; ++j) {
    const BigInt right_count = shape.count_whole(n - 1 - j, m);
    const BigInt block = shape.count_head(j, m) * right_count;
    if (block == 0 || lo > base + block) {
      base += block;
      continue;
    }
    const BigInt first = (lo > base ? lo : base + 1) - base;
    const BigInt last = (hi < base + block ? hi : base + block) - base;
    const BigInt left_first = (first - 1) / right_count + 1;
    const BigInt left_last = (last - 1) / right_count + 1;
    const BigInt right_first = (first - 1) % right_count + 1;
    const BigInt right_last = (last - 1) % right_count + 1;

    BigInt left_rank = left_first;
    auto on_left = [&](const Term& left) {
      const BigInt r_lo = left_rank == left_first ? right_first : BigInt(1);
      const BigInt r_hi = left_rank == left_last ? right_last : right_count;
      generate(shape, n - 1 - j, m, r_lo, r_hi,
               [&](const Term& right) { visit(Term::app(left, right)); });
      ++left_rank;
    };
    if (shape.head_is_neutral) {
      generate_neutral(j, m, left_first, left_last, on_left);
    } else {
      generate(shape, j, m, left_first, left_last, on_left);
    }
    base += block;
  }
}

const Shape kTermShape{&count_terms, &count_terms, false};
const Shape kNfShape{&count_nf, &count_neutral, true};

void generate(const Shape& shape, Size n, Size m, const BigInt& lo, const BigInt& hi,
              const Visit& visit) {
  if (lo > hi) return;
  if (n == 0) {
    visit_indices(lo, hi, visit);
    return;
  }
  const BigInt abstractions = shape.count_whole(n - 1, m + 1);
  if (lo <= abstractions) {
    generate(shape, n - 1, m + 1, lo, hi < abstractions ? hi : abstractions,
             [&](const Term& body) { visit(Term::abs(body)); });
  }
  if (hi > abstractions) {
    const BigInt app_lo = lo > abstractions ? BigInt(lo - abstractions) : BigInt(1);
    generate_apps(shape, n, m, app_lo, hi - abstractions, visit);
  }
}

void generate_neutral(Size n, Size m, const BigInt& lo, const BigInt& hi,
                      const Visit& visit) {
  if (lo > hi) return;
  if (n == 0) {
    visit_indices(lo, hi, visit);
    return;
  }
  generate_apps(kNfShape, n, m, lo, hi, visit);
}

}  // namespace

std::string to_string(Family family) {
  return family == Family::Terms ? "terms" : "nf";
}

Family family_from_string(const std::string& name) {
  if (name == "terms") return Family::Terms;
  if (name == "nf") return Family::Nf;
  throw std::invalid_argument("unknown family '" + name + "' (expected terms or nf)");
}

BigInt family_count(Family family, Size n, Size m) {
  return family == Family::Terms ? count_terms(n, m) : count_nf(n, m);
}

Term unrank_term(Size n, Size m, const BigInt& rank) {
  check_rank(rank, count_terms(n, m), n, m);
  return unrank_term_unchecked(n, m, rank);
}

BigInt rank_term(const Term& t, Size m) {
  const auto openness = openness_of(t);
  if (openness > m) {
    throw DomainError("term has openness " + std::to_string(openness) +
                      ", more than the budget " + std::to_string(m));
  }
  return rank_term_sized(t, m).first;
}

Term unrank_nf(Size n, Size m, const BigInt& rank) {
  check_rank(rank, count_nf(n, m), n, m);
  return unrank_nf_unchecked(n, m, rank);
}

BigInt rank_nf(const Term& t, Size m) {
  if (!is_beta_normal(t)) throw DomainError("term is not a beta-normal form");
  const auto openness = openness_of(t);
  if (openness > m) {
    throw DomainError("term has openness " + std::to_string(openness) +
                      ", more than the budget " + std::to_string(m));
  }
  return rank_nf_sized(t, m).first;
}

Term unrank(Family family, Size n, Size m, const BigInt& rank) {
  return family == Family::Terms ? unrank_term(n, m, rank) : unrank_nf(n, m, rank);
}

BigInt rank(Family family, const Term& t, Size m) {
  return family == Family::Terms ? rank_term(t, m) : rank_nf(t, m);
}

Enumeration::Enumeration(Family family, Size n, Size m)
    : family_(family), n_(n), m_(m), total_(family_count(family, n, m)) {}

std::optional<Term> Enumeration::next() {
  if (next_rank_ > total_) return std::nullopt;
  Term t = family_ == Family::Terms ? unrank_term_unchecked(n_, m_, next_rank_)
                                    : unrank_nf_unchecked(n_, m_, next_rank_);
  ++next_rank_;
  return t;
}

void for_each_in_range(Family family, Size n, Size m, const BigInt& first,
                       const BigInt& last, const Visit& visit) {
  const BigInt total = family_count(family, n, m);
  const BigInt lo = first < 1 ? BigInt(1) : first;
  const BigInt hi = last > total ? total : last;
  if (lo > hi) return;
  generate(family == Family::Terms ? kTermShape : kNfShape, n, m, lo, hi, visit);
}

void for_each_term(Family family, Size n, Size m, const Visit& visit) {
  for_each_in_range(family, n, m, 1, family_count(family, n, m), visit);
}

BijectionReport check_bijection(Family family, Size n, Size m) {
  BijectionReport report;
  report.family = family;
  report.n = n;
  report.m = m;
  std::unordered_set<std::string> seen;
  std::vector<Term> ordered;
  for_each_term(family, n, m, [&](const Term& t) { ordered.push_back(t); });
  const BigInt total = family_count(family, n, m);
  if (BigInt(ordered.size()) != total) {
    report.failure = "recursive enumeration produced " + std::to_string(ordered.size()) +
                     " members, expected " + total.str();
    return report;
  }
  for (BigInt k = 1; k <= total; ++k) {
    const Term t = unrank(family, n, m, k);
    const std::string text = print_term(t);
    auto fail = [&](const std::string& what) {
      report.failure = "rank " + k.str() + " (" + text + "): " + what;
    };
    if (size_of(t) != n) {
      fail("wrong size");
    } else if (openness_of(t) > m) {
      fail("openness above budget");
    } else if (family == Family::Nf && !is_beta_normal(t)) {
      fail("not a normal form");
    } else if (!seen.insert(text).second) {
      fail("duplicate");
    } else if (rank(family, t, m) != k) {
      fail("rank does not invert unrank");
    } else if (!(ordered[k.convert_to<std::size_t>() - 1] == t)) {
      fail("recursive enumeration disagrees with unranking order");
    }
    if (!report.ok()) return report;
    ++report.checked;
  }
  return report;
}

}  // namespace lamcount
