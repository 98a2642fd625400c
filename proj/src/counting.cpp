#include "lamcount/counting.hpp"

#include <algorithm>

namespace lamcount {

// -- T, F, G ------------------------------------------------------------------

BigInt CountTable::at(Size n, Size m) const {
  std::lock_guard lock(mutex_);
  ensure(n, m);
  return family_ == CountFamily::Neutral ? neutral_[n][m] : primary_[n][m];
}

void CountTable::ensure(Size n, Size m) const {
  if (primary_.size() <= n) {
    primary_.resize(n + 1);
    neutral_.resize(n + 1);
  }
  const bool nf = family_ != CountFamily::Terms;
  for (Size k = 0; k <= n; ++k) {
    const Size width = m + (n - k) + 1;
    auto& row = primary_[k];
    auto& nrow = neutral_[k];
    for (Size j = row.size(); j < width; ++j) {
      if (k == 0) {
        row.emplace_back(j);
        if (nf) nrow.emplace_back(j);
        continue;
      }
      BigInt conv = 0;
      if (nf) {
        // G(k,j) = sum_i G(k-1-i, j) F(i, j)
        for (Size i = 0; i < k; ++i) conv += neutral_[k - 1 - i][j] * primary_[i][j];
        nrow.push_back(conv);
      } else {
        // sum_i T(i,j) T(k-1-i,j)
        for (Size i = 0; i < k; ++i) conv += primary_[i][j] * primary_[k - 1 - i][j];
      }
      row.push_back(primary_[k - 1][j + 1] + conv);
    }
  }
}

namespace {

const CountTable& terms_table() {
  static const CountTable table(CountFamily::Terms);
  return table;
}

const CountTable& nf_table() {
  static const CountTable table(CountFamily::Nf);
  return table;
}

const CountTable& neutral_table() {
  static const CountTable table(CountFamily::Neutral);
  return table;
}

// -- binomials ----------------------------------------------------------------

class BinomialTable {
 public:
  BigInt at(Size n, Size k) {
    if (k > n) return 0;
    std::lock_guard lock(mutex_);
    while (rows_.size() <= n) {
      const Size r = rows_.size();
      std::vector<BigInt> row(r + 1, BigInt(1));
      for (Size i = 1; i < r; ++i) row[i] = rows_[r - 1][i - 1] + rows_[r - 1][i];
      rows_.push_back(std::move(row));
    }
    return rows_[n][k];
  }

 private:
  std::mutex mutex_;
  std::vector<std::vector<BigInt>> rows_;
};

BinomialTable& binomials() {
  static BinomialTable table;
  return table;
}

// -- contexts -----------------------------------------------------------------

// Row n holds entries for i = 0..n+1; everything beyond is zero.
class ContextTable {
 public:
  enum class Kind { Terms, Nf, NfPre };
  explicit ContextTable(Kind kind) : kind_(kind) {}

  BigInt at(Size n, Size i) {
    if (i > n + 1) return 0;
    std::lock_guard lock(mutex_);
    grow(n);
    return kind_ == Kind::NfPre ? pre_[n][i] : main_[n][i];
  }

 private:
  static BigInt get(const std::vector<std::vector<BigInt>>& rows, Size n, Size i) {
    return i <= n + 1 ? rows[n][i] : BigInt(0);
  }

  void grow(Size n) {
    const bool nf = kind_ != Kind::Terms;
    while (main_.size() <= n) {
      const Size r = main_.size();
      std::vector<BigInt> row(r + 2, BigInt(0));
      std::vector<BigInt> pre_row;
      if (r == 0) {
        row[1] = 1;
        main_.push_back(row);
        if (nf) pre_.push_back(row);
        continue;
      }
      const Size prev = r - 1;
      if (nf) pre_row.assign(r + 2, BigInt(0));
      for (Size i = 0; i <= r + 1; ++i) {
        // Abstraction: choose which of the j holes become the new variable.
        BigInt by_abs = 0;
        for (Size j = i; j <= prev + 1; ++j) {
          by_abs += binomials().at(j, i) * main_[prev][j];
        }
        // Application: split the holes and the size between both sides.
        BigInt by_app = 0;
        for (Size j = 0; j <= i; ++j) {
          for (Size k = 0; k <= prev; ++k) {
            if (nf) {
              by_app += get(pre_, k, j) * get(main_, prev - k, i - j);
            } else {
              by_app += get(main_, k, j) * get(main_, prev - k, i - j);
            }
          }
        }
        row[i] = by_abs + by_app;
        if (nf) pre_row[i] = by_app;
      }
      main_.push_back(std::move(row));
      if (nf) pre_.push_back(std::move(pre_row));
    }
  }

  Kind kind_;
  std::mutex mutex_;
  std::vector<std::vector<BigInt>> main_;
  std::vector<std::vector<BigInt>> pre_;
};

ContextTable& context_table() {
  static ContextTable table(ContextTable::Kind::Terms);
  return table;
}

ContextTable& nf_context_table() {
  static ContextTable table(ContextTable::Kind::Nf);
  return table;
}

// -- exact free variables, recurrence route -----------------------------------

class ExactFreeTable {
 public:
  BigInt at(Size n, Size m) {
    if (m > n + 1) return 0;
    std::lock_guard lock(mutex_);
    while (rows_.size() <= n) grow();
    return rows_[n][m];
  }

 private:
  BigInt get(Size n, Size m) const {
    return m <= n + 1 ? rows_[n][m] : BigInt(0);
  }

  void grow() {
    const Size r = rows_.size();
    std::vector<BigInt> row(r + 2, BigInt(0));
    if (r == 0) {
      row[1] = 1;
      rows_.push_back(std::move(row));
      return;
    }
    const Size n = r - 1;
    for (Size m = 0; m <= r + 1; ++m) {
      BigInt acc = get(n, m) + get(n, m + 1);
      for (Size p = 0; p <= n; ++p) {
        for (Size c = 0; c <= m; ++c) {
          const BigInt choose_common = binomials().at(m, c);
          for (Size k = 0; k <= m - c; ++k) {
            const BigInt left = get(p, k + c);
            if (left == 0) continue;
            const BigInt right = get(n - p, m - k);
            if (right == 0) continue;
            acc += choose_common * binomials().at(m - c, k) * left * right;
          }
        }
      }
      row[m] = std::move(acc);
    }
    rows_.push_back(std::move(row));
  }

  std::mutex mutex_;
  std::vector<std::vector<BigInt>> rows_;
};

ExactFreeTable& exact_free_table() {
  static ExactFreeTable table;
  return table;
}

BigInt power(Size base, Size exponent) {
  BigInt result = 1;
  const BigInt b = base;
  for (Size e = 0; e < exponent; ++e) result *= b;
  return result;
}

CoeffVector polynomial_from(Size n, BigInt (*coeff)(Size, Size)) {
  CoeffVector v;
  v.n = n;
  v.coeffs.reserve(n + 2);
  for (Size i = 0; i <= n + 1; ++i) v.coeffs.push_back(coeff(n, i));
  return v;
}

}  // namespace

BigInt count_terms(Size n, Size m) { return terms_table().at(n, m); }
BigInt count_nf(Size n, Size m) { return nf_table().at(n, m); }
BigInt count_neutral(Size n, Size m) { return neutral_table().at(n, m); }

BigInt count_exact_free(Size n, Size m) {
  if (m > n + 1) return 0;
  BigInt acc = 0;
  for (Size i = 0; i <= m; ++i) {
    BigInt term = binomials().at(m, i) * count_terms(n, i);
    if ((m + i) % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

BigInt count_exact_free_by_recurrence(Size n, Size m) {
  return exact_free_table().at(n, m);
}

BigInt count_contexts(Size n, Size i) { return context_table().at(n, i); }
BigInt count_nf_contexts(Size n, Size i) { return nf_context_table().at(n, i); }

BigInt count_nf_pre_contexts(Size n, Size i) {
  static ContextTable table(ContextTable::Kind::NfPre);
  return table.at(n, i);
}

BigInt surjections(Size i, Size m) {
  BigInt acc = 0;
  for (Size j = 0; j <= m; ++j) {
    BigInt term = binomials().at(m, j) * power(m - j, i);
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

BigInt binomial(Size n, Size k) { return binomials().at(n, k); }

BigInt CoeffVector::evaluate(Size m) const {
  // Horner, highest coefficient first.
  BigInt acc = 0;
  const BigInt x = m;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Size CoeffVector::degree() const {
  for (Size i = coeffs.size(); i > 0; --i) {
    if (coeffs[i - 1] != 0) return i - 1;
  }
  return 0;
}

CoeffVector term_polynomial(Size n) { return polynomial_from(n, &count_contexts); }
CoeffVector nf_polynomial(Size n) { return polynomial_from(n, &count_nf_contexts); }
CoeffVector neutral_polynomial(Size n) {
  return polynomial_from(n, &count_nf_pre_contexts);
}

RelationReport validate_relations(Size n_max, Size m_max) {
  RelationReport report;
  report.n_max = n_max;
  report.m_max = m_max;
  auto check = [&](Size n, Size m, const char* name, const BigInt& lhs,
                   const BigInt& rhs) {
    ++report.checks;
    if (lhs != rhs) report.violations.push_back({n, m, name, lhs, rhs});
  };
  for (Size n = 0; n <= n_max; ++n) {
    for (Size m = 0; m <= m_max; ++m) {
      const BigInt t = count_terms(n, m);
      const BigInt f = count_exact_free_by_recurrence(n, m);

      BigInt binomial_sum = 0;
      for (Size i = 0; i <= m; ++i) {
        binomial_sum += binomial(m, i) * count_exact_free_by_recurrence(n, i);
      }
      check(n, m, "T = sum C(m,i) f(n,i)", t, binomial_sum);

      BigInt context_sum = 0;
      BigInt surjection_sum = 0;
      for (Size i = 0; i <= n + 1; ++i) {
        const BigInt c = count_contexts(n, i);
        context_sum += c * power(m, i);
        surjection_sum += c * surjections(i, m);
      }
      check(n, m, "T = sum c(n,i) m^i", t, context_sum);
      check(n, m, "f = sum (-1)^(m+i) C(m,i) T(n,i)", f, count_exact_free(n, m));
      check(n, m, "f = sum c(n,i) R(i,m)", f, surjection_sum);
    }
  }
  return report;
}

std::string family_name(CountFamily family) {
  switch (family) {
    case CountFamily::Terms:
      return "T";
    case CountFamily::Nf:
      return "F";
    case CountFamily::Neutral:
      return "G";
  }
  return "?";
}

}  // namespace lamcount
