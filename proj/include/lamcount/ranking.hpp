#ifndef LAMCOUNT_RANKING_HPP_
#define LAMCOUNT_RANKING_HPP_

#include <functional>
#include <optional>
#include <string>

#include "lamcount/counting.hpp"
#include "lamcount/term.hpp"

namespace lamcount {

/// Families that have a canonical order.
enum class Family { Terms, Nf };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

/// |family(n, m)|.
BigInt family_count(Family family, Size n, Size m);

// Canonical order for terms of size n with at most m free indices (ranks are
// 1-based):
//   n = 0     indices 1..m
//   n > 0     first the abstractions, ranked like their bodies in (n-1, m+1);
//             then applications grouped by left size j = 0..n-1, and inside a
//             group by (left rank, right rank) in row-major order.
// Normal forms follow the same scheme with the application part restricted to
// neutral heads applied to normal forms.

Term unrank_term(Size n, Size m, const BigInt& rank);
BigInt rank_term(const Term& t, Size m);

Term unrank_nf(Size n, Size m, const BigInt& rank);
BigInt rank_nf(const Term& t, Size m);

Term unrank(Family family, Size n, Size m, const BigInt& rank);
BigInt rank(Family family, const Term& t, Size m);

/// Lazy stream over unrank(family, n, m, k) for k = 1..count.
class Enumeration {
 public:
  Enumeration(Family family, Size n, Size m);

  std::optional<Term> next();
  const BigInt& total() const { return total_; }

 private:
  Family family_;
  Size n_;
  Size m_;
  BigInt total_;
  BigInt next_rank_ = 1;
};

/// Visits every member with rank in [first, last] in rank order by recursive
/// descent, without unranking each one separately. Ranks outside
/// [1, count] are clipped.
void for_each_in_range(Family family, Size n, Size m, const BigInt& first,
                       const BigInt& last,
                       const std::function<void(const Term&)>& visit);

/// Whole family, in rank order.
void for_each_term(Family family, Size n, Size m,
                   const std::function<void(const Term&)>& visit);

struct BijectionReport {
  Family family = Family::Terms;
  Size n = 0;
  Size m = 0;
  BigInt checked = 0;
  /// First problem found, empty when every check passed.
  std::string failure;

  bool ok() const { return failure.empty(); }
};

/// Unranks every member of (n, m) and checks size, openness, normality (for
/// normal forms), pairwise distinctness, rank(unrank(k)) = k, and agreement
/// with the recursive enumeration order.
BijectionReport check_bijection(Family family, Size n, Size m);

}  // namespace lamcount

#endif  // LAMCOUNT_RANKING_HPP_
