#pragma once

// Truncated formal power series in q^(1/delta) with unbounded integer
// coefficients, the q-Pochhammer expansions, lattice enumeration under a
// quadratic-form cutoff, and the partition q-series sum.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qloop/mutation_loop.hpp"
#include "qloop/scalar.hpp"
#include "qloop/variable_system.hpp"

namespace qloop {

/// Sum of c_e q^(e/delta) over 0 <= e/delta <= cutoff. Exponents are stored
/// as integer numerators e; zero coefficients are never stored.
class QSeries {
 public:
  /// The zero series.
  QSeries(std::int64_t delta, Rational cutoff);

  static QSeries one(std::int64_t delta, Rational cutoff);

  std::int64_t delta() const { return delta_; }
  const Rational& cutoff() const { return cutoff_; }
  /// Largest exponent numerator kept: floor(cutoff * delta).
  std::int64_t max_numerator() const { return max_numerator_; }

  const std::map<std::int64_t, Integer>& terms() const { return coeffs_; }
  Integer coefficient(std::int64_t numerator) const;
  /// Coefficient of q^exponent; zero when exponent is not on the grid.
  Integer coefficient_at(const Rational& exponent) const;

  /// Adds c q^(numerator/delta); silently drops terms above the cutoff.
  void add_term(std::int64_t numerator, const Integer& c);

  /// Same series on the finer grid q^(1/new_delta); new_delta must be a multiple.
  QSeries regraded(std::int64_t new_delta) const;
  /// Drops the terms above a smaller cutoff.
  QSeries truncated(const Rational& new_cutoff) const;

  bool is_zero() const { return coeffs_.empty(); }

  friend bool operator==(const QSeries& a, const QSeries& b);

 private:
  std::int64_t delta_;
  Rational cutoff_;
  std::int64_t max_numerator_;
  std::map<std::int64_t, Integer> coeffs_;
};

/// Both operands are regraded to the lcm of their deltas; the result keeps
/// the smaller cutoff.
QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries series_mul(const QSeries& a, const QSeries& b);
inline QSeries operator*(const QSeries& a, const QSeries& b) { return series_mul(a, b); }

/// Equality after regrading to a common delta and truncating to the smaller cutoff.
bool agree(const QSeries& a, const QSeries& b);

/// (q)_n = prod_{k=1..n} (1 - q^k).
QSeries pochhammer(std::int64_t n, const Rational& cutoff, std::int64_t delta = 1);
/// 1 / (q)_n.
QSeries inv_pochhammer(std::int64_t n, const Rational& cutoff, std::int64_t delta = 1);

/// Coefficients of 1/(q)_n in integer powers of q, indices 0..max_power.
std::vector<Integer> inv_pochhammer_coefficients(std::int64_t n, std::int64_t max_power);

enum class EnumerationStrategy { Auto, PdRecursive, SimplexBound };

/// Emits {k in N^T : F(k) <= cutoff} exactly once each, in lexicographic
/// order. Throws NotPositiveError if the form's certificate is Failed.
class LatticeEnumerator {
 public:
  using Visitor = std::function<void(std::span<const std::int64_t> k, std::int64_t f_numerator)>;

  LatticeEnumerator(const ExponentForm& form, Rational cutoff,
                    EnumerationStrategy strategy = EnumerationStrategy::Auto);

  EnumerationStrategy strategy() const { return strategy_; }

  /// Admissible values of the first coordinate, ascending.
  std::vector<std::int64_t> first_coordinates() const;

  /// Visits every point; `first` restricts k_1 to a single value.
  /// f_numerator is delta * F(k).
  void for_each(const Visitor& visit, std::optional<std::int64_t> first = std::nullopt) const;

  std::vector<std::vector<std::int64_t>> collect() const;

 private:
  void recurse_pd(std::vector<std::int64_t>& k, Eigen::Index level, const Rational& budget,
                  const Visitor& visit, std::optional<std::int64_t> first) const;
  void recurse_simplex(std::vector<std::int64_t>& k, Eigen::Index level, std::int64_t remaining,
                       const Visitor& visit, std::optional<std::int64_t> first) const;
  std::int64_t f_numerator(std::span<const std::int64_t> k) const;
  std::pair<std::int64_t, std::int64_t> pd_range(Eigen::Index level, std::span<const std::int64_t> k,
                                                 const Rational& budget, Rational& shift) const;

  Eigen::Index dim_;
  Rational cutoff_;
  std::int64_t max_numerator_;
  EnumerationStrategy strategy_;
  // delta * G_ii and 2 * delta * G_ij (i < j), all integers.
  Matrix<std::int64_t> scaled_;
  // Reversed-index L D L^T so that k_1 is the outermost coordinate:
  // F(k) = sum_i pivots_i * (k_i + sum_{j < i} coupling_(i, j) k_j)^2.
  RationalMatrix coupling_;
  RationalVector pivots_;
  std::int64_t simplex_limit_ = 0;
};

std::vector<std::vector<std::int64_t>> enumerate_lattice(const ExponentForm& form, const Rational& cutoff,
                                                         EnumerationStrategy strategy = EnumerationStrategy::Auto);

struct SumOptions {
  EnumerationStrategy strategy = EnumerationStrategy::Auto;
  unsigned jobs = 1;
  std::uint64_t max_terms = 10'000'000;
};

/// sum over F(k) <= cutoff of q^F(k) / prod_t (q)_{k_t}, truncated at cutoff.
QSeries sum_form(const ExponentForm& form, const Rational& cutoff, const SumOptions& options = {});

/// Partition q-series of a loop. Throws DegenerateLoopError or NotPositiveError.
QSeries sum_loop(const MutationLoop& loop, const Rational& cutoff, const SumOptions& options = {});

/// 1/((q)_m (q)_n) == sum_{r+s=m, s+t=n} q^(rt) / ((q)_r (q)_s (q)_t) up to cutoff.
bool q_pentagon_check(std::int64_t m, std::int64_t n, const Rational& cutoff);

}  // namespace qloop
