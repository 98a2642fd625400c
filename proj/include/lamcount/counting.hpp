#ifndef LAMCOUNT_COUNTING_HPP_
#define LAMCOUNT_COUNTING_HPP_

#include <cstddef>
#include <mutex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lamcount {

using BigInt = boost::multiprecision::cpp_int;

// Sizes and free-variable budgets are plain machine integers; counts are not.
using Size = std::size_t;

/// Which recursively defined family a table counts.
///   Terms   : T(n,m), terms of size n with at most m free indices
///   Nf      : F(n,m), beta-normal forms
///   Neutral : G(n,m), neutral normal forms (an index applied to normal forms)
enum class CountFamily { Terms, Nf, Neutral };

/// Lazily grown memo of exact counts indexed by (size, free-variable budget).
///
/// Row n is kept wide enough that every entry it depends on is present:
/// T(n,m) needs T(n-1,m+1), so growing to (n,m) widens every row k <= n up to
/// column m + n - k. Reads and growth are serialized on an internal mutex.
class CountTable {
 public:
  explicit CountTable(CountFamily family) : family_(family) {}

  CountFamily family() const { return family_; }
  BigInt at(Size n, Size m) const;

 private:
  void ensure(Size n, Size m) const;

  CountFamily family_;
  mutable std::mutex mutex_;
  // Terms and Nf families keep their own rows in `primary_`; the Nf table
  // also fills `neutral_` since F and G are defined jointly.
  mutable std::vector<std::vector<BigInt>> primary_;
  mutable std::vector<std::vector<BigInt>> neutral_;
};

BigInt count_terms(Size n, Size m);
BigInt count_nf(Size n, Size m);
BigInt count_neutral(Size n, Size m);

/// Terms of size n with exactly m distinct free variables, by binomial
/// inversion of T.
BigInt count_exact_free(Size n, Size m);
/// Same quantity through the triple-sum recurrence. Much slower; kept as an
/// independent second route.
BigInt count_exact_free_by_recurrence(Size n, Size m);

/// c(n,i): closed terms of size n with i linear, anonymous holes.
BigInt count_contexts(Size n, Size i);
/// d(n,i): i-nf-contexts.
BigInt count_nf_contexts(Size n, Size i);
/// g(n,i): i-nf-pre-contexts.
BigInt count_nf_pre_contexts(Size n, Size i);

/// Surjections from an i-set onto an m-set,
/// sum_{j=0}^{m} C(m,j) (-1)^j (m-j)^i.
BigInt surjections(Size i, Size m);

BigInt binomial(Size n, Size k);

/// Coefficients of a polynomial in m, constant term first.
struct CoeffVector {
  Size n = 0;
  std::vector<BigInt> coeffs;

  BigInt evaluate(Size m) const;
  Size degree() const;
  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;
};

/// P_n(m) = sum_i c(n,i) m^i, which evaluates to T(n,m).
CoeffVector term_polynomial(Size n);
/// sum_i d(n,i) m^i, which evaluates to F(n,m).
CoeffVector nf_polynomial(Size n);
/// sum_i g(n,i) m^i, which evaluates to G(n,m).
CoeffVector neutral_polynomial(Size n);

struct RelationViolation {
  Size n = 0;
  Size m = 0;
  std::string relation;
  BigInt lhs;
  BigInt rhs;
};

struct RelationReport {
  Size n_max = 0;
  Size m_max = 0;
  std::size_t checks = 0;
  std::vector<RelationViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks, for every n <= n_max and m <= m_max:
///   T(n,m) = sum_i C(m,i) f(n,i)
///   T(n,m) = sum_i c(n,i) m^i
///   f(n,m) = sum_i (-1)^(m+i) C(m,i) T(n,i)
///   f(n,m) = sum_i c(n,i) R(i,m)
/// where f on the left-hand side comes from the recurrence.
RelationReport validate_relations(Size n_max, Size m_max);

std::string family_name(CountFamily family);

}  // namespace lamcount

#endif  // LAMCOUNT_COUNTING_HPP_
