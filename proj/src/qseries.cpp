#include "qloop/qseries.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <tuple>

#include "qloop/errors.hpp"
#include "qloop/exact_linalg.hpp"

namespace qloop {

namespace {

std::int64_t max_numerator_for(const Rational& cutoff, std::int64_t delta) {
  if (delta <= 0) throw InvalidArgument("series grading delta must be positive");
  if (cutoff < 0) throw InvalidArgument("series cutoff must be nonnegative");
  return to_int64(floor(cutoff * delta));
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return to_int64(lcm(Integer(a), Integer(b))); }

}  // namespace

QSeries::QSeries(std::int64_t delta, Rational cutoff)
    : delta_(delta), cutoff_(std::move(cutoff)), max_numerator_(max_numerator_for(cutoff_, delta)) {}

QSeries QSeries::one(std::int64_t delta, Rational cutoff) {
  QSeries s(delta, std::move(cutoff));
  s.add_term(0, Integer(1));
  return s;
}

Integer QSeries::coefficient(std::int64_t numerator) const {
  const auto it = coeffs_.find(numerator);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

Integer QSeries::coefficient_at(const Rational& exponent) const {
  const Rational scaled = exponent * delta_;
  if (denominator(scaled) != 1) return Integer(0);
  return coefficient(to_int64(numerator(scaled)));
}

void QSeries::add_term(std::int64_t numerator, const Integer& c) {
  if (numerator < 0) throw InvalidArgument("negative exponent in q-series");
  if (numerator > max_numerator_ || c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(numerator, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

QSeries QSeries::regraded(std::int64_t new_delta) const {
  if (new_delta % delta_ != 0) throw InvalidArgument("regrading needs a multiple of delta");
  const std::int64_t factor = new_delta / delta_;
  QSeries out(new_delta, cutoff_);
  for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e * factor, c);
  return out;
}

QSeries QSeries::truncated(const Rational& new_cutoff) const {
  QSeries out(delta_, std::min(new_cutoff, cutoff_));
  for (const auto& [e, c] : coeffs_) out.add_term(e, c);
  return out;
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.delta_ == b.delta_ && a.cutoff_ == b.cutoff_ && a.coeffs_ == b.coeffs_;
}

namespace {

std::pair<QSeries, QSeries> common_grid(const QSeries& a, const QSeries& b) {
  const std::int64_t d = lcm64(a.delta(), b.delta());
  const Rational c = std::min(a.cutoff(), b.cutoff());
  return {a.regraded(d).truncated(c), b.regraded(d).truncated(c)};
}

}  // namespace

QSeries operator+(const QSeries& a, const QSeries& b) {
  auto [x, y] = common_grid(a, b);
  for (const auto& [e, c] : y.terms()) x.add_term(e, c);
  return x;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  auto [x, y] = common_grid(a, b);
  for (const auto& [e, c] : y.terms()) x.add_term(e, -c);
  return x;
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
  const auto [x, y] = common_grid(a, b);
  QSeries out(x.delta(), x.cutoff());
  const std::int64_t limit = out.max_numerator();
  for (const auto& [ea, ca] : x.terms()) {
    if (ea > limit) break;
    for (const auto& [eb, cb] : y.terms()) {
      if (ea + eb > limit) break;
      out.add_term(ea + eb, ca * cb);
    }
  }
  return out;
}

bool agree(const QSeries& a, const QSeries& b) {
  const auto [x, y] = common_grid(a, b);
  return x.terms() == y.terms();
}

std::vector<Integer> inv_pochhammer_coefficients(std::int64_t n, std::int64_t max_power) {
  if (n < 0) throw InvalidArgument("q-Pochhammer index must be nonnegative");
  // Partitions into parts of size at most n.
  std::vector<Integer> p(static_cast<std::size_t>(std::max<std::int64_t>(max_power, 0) + 1), Integer(0));
  p[0] = 1;
  for (std::int64_t part = 1; part <= std::min(n, max_power); ++part)
    for (std::int64_t j = part; j <= max_power; ++j)
      p[static_cast<std::size_t>(j)] += p[static_cast<std::size_t>(j - part)];
  return p;
}

QSeries pochhammer(std::int64_t n, const Rational& cutoff, std::int64_t delta) {
  if (n < 0) throw InvalidArgument("q-Pochhammer index must be nonnegative");
  QSeries out(delta, cutoff);
  const std::int64_t max_power = out.max_numerator() / delta;
  std::vector<Integer> p(static_cast<std::size_t>(max_power + 1), Integer(0));
  p[0] = 1;
  for (std::int64_t k = 1; k <= std::min(n, max_power); ++k)
    for (std::int64_t j = max_power; j >= k; --j) p[static_cast<std::size_t>(j)] -= p[static_cast<std::size_t>(j - k)];
  for (std::int64_t j = 0; j <= max_power; ++j) out.add_term(j * delta, p[static_cast<std::size_t>(j)]);
  return out;
}

QSeries inv_pochhammer(std::int64_t n, const Rational& cutoff, std::int64_t delta) {
  QSeries out(delta, cutoff);
  const std::int64_t max_power = out.max_numerator() / delta;
  const auto p = inv_pochhammer_coefficients(n, max_power);
  for (std::int64_t j = 0; j <= max_power; ++j) out.add_term(j * delta, p[static_cast<std::size_t>(j)]);
  return out;
}

// ---------------------------------------------------------------------------
// Lattice enumeration

LatticeEnumerator::LatticeEnumerator(const ExponentForm& form, Rational cutoff, EnumerationStrategy strategy)
    : dim_(form.dimension()), cutoff_(std::move(cutoff)), strategy_(strategy) {
  if (form.positivity.kind == Positivity::Failed)
    throw NotPositiveError("exponent form is not positive: " + form.positivity.note);
  max_numerator_ = max_numerator_for(cutoff_, form.delta);

  scaled_ = Matrix<std::int64_t>::Zero(dim_, dim_);
  for (Eigen::Index i = 0; i < dim_; ++i)
    for (Eigen::Index j = i; j < dim_; ++j) {
      const Rational c = (i == j ? Rational(1) : Rational(2)) * form.gram(i, j) * form.delta;
      if (denominator(c) != 1) throw InvalidArgument("grading delta does not clear the Gram matrix");
      scaled_(i, j) = to_int64(numerator(c));
    }

  const bool pd = form.positivity.kind == Positivity::PositiveDefinite;
  if (strategy_ == EnumerationStrategy::Auto)
    strategy_ = pd ? EnumerationStrategy::PdRecursive : EnumerationStrategy::SimplexBound;
  if (strategy_ == EnumerationStrategy::PdRecursive && !pd)
    throw InvalidArgument("pd-recursive enumeration needs a positive definite Gram matrix");

  if (strategy_ == EnumerationStrategy::PdRecursive) {
    // G = M^T P M with M unit lower triangular, read off the L D L^T of the
    // index-reversed matrix.
    RationalMatrix reversed = form.gram.colwise().reverse().rowwise().reverse();
    const auto f = exact_ldlt(reversed);
    coupling_ = RationalMatrix::Zero(dim_, dim_);
    pivots_ = RationalVector::Zero(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
      pivots_(i) = f.pivots(dim_ - 1 - i);
      for (Eigen::Index j = 0; j < i; ++j) coupling_(i, j) = f.lower(dim_ - 1 - j, dim_ - 1 - i);
    }
  } else if (dim_ > 0) {
    const Rational m = form.positivity.kind == Positivity::CopositiveCertified ? form.positivity.bound
                                                                              : simplex_minimum(form.gram);
    // Largest S with m * S^2 <= cutoff.
    std::int64_t s = static_cast<std::int64_t>(std::sqrt((cutoff_ / m).convert_to<double>()));
    while (m * Rational((s + 1) * (s + 1)) <= cutoff_) ++s;
    while (s > 0 && m * Rational(s * s) > cutoff_) --s;
    simplex_limit_ = s;
  }
}

std::int64_t LatticeEnumerator::f_numerator(std::span<const std::int64_t> k) const {
  std::int64_t total = 0;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    const std::int64_t ki = k[static_cast<std::size_t>(i)];
    if (ki == 0) continue;
    for (Eigen::Index j = i; j < dim_; ++j) total += scaled_(i, j) * ki * k[static_cast<std::size_t>(j)];
  }
  return total;
}

std::pair<std::int64_t, std::int64_t> LatticeEnumerator::pd_range(Eigen::Index level, std::span<const std::int64_t> k,
                                                                  const Rational& budget, Rational& shift) const {
  shift = 0;
  for (Eigen::Index j = 0; j < level; ++j)
    if (k[static_cast<std::size_t>(j)] != 0) shift += coupling_(level, j) * k[static_cast<std::size_t>(j)];
  const Rational& p = pivots_(level);
  auto fits = [&](std::int64_t x) {
    const Rational y = shift + x;
    return p * y * y <= budget;
  };
  const double center = -shift.convert_to<double>();
  const double half = std::sqrt(std::max(0.0, (budget / p).convert_to<double>()));
  std::int64_t lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(center - half)) - 1);
  std::int64_t hi = static_cast<std::int64_t>(std::floor(center + half)) + 1;
  while (lo <= hi && !fits(lo)) ++lo;
  while (hi >= lo && !fits(hi)) --hi;
  if (lo > hi) return {1, 0};
  while (lo > 0 && fits(lo - 1)) --lo;
  while (fits(hi + 1)) ++hi;
  return {lo, hi};
}

void LatticeEnumerator::recurse_pd(std::vector<std::int64_t>& k, Eigen::Index level, const Rational& budget,
                                   const Visitor& visit, std::optional<std::int64_t> first) const {
  if (level == dim_) {
    visit(k, f_numerator(k));
    return;
  }
  Rational shift;
  auto [lo, hi] = pd_range(level, k, budget, shift);
  if (level == 0 && first) {
    if (*first < lo || *first > hi) return;
    lo = hi = *first;
  }
  for (std::int64_t x = lo; x <= hi; ++x) {
    k[static_cast<std::size_t>(level)] = x;
    const Rational y = shift + x;
    recurse_pd(k, level + 1, budget - pivots_(level) * y * y, visit, first);
  }
  k[static_cast<std::size_t>(level)] = 0;
}

void LatticeEnumerator::recurse_simplex(std::vector<std::int64_t>& k, Eigen::Index level, std::int64_t remaining,
                                        const Visitor& visit, std::optional<std::int64_t> first) const {
  if (level == dim_) {
    const std::int64_t f = f_numerator(k);
    if (f <= max_numerator_) visit(k, f);
    return;
  }
  std::int64_t lo = 0, hi = remaining;
  if (level == 0 && first) {
    if (*first > remaining) return;
    lo = hi = *first;
  }
  for (std::int64_t x = lo; x <= hi; ++x) {
    k[static_cast<std::size_t>(level)] = x;
    recurse_simplex(k, level + 1, remaining - x, visit, first);
  }
  k[static_cast<std::size_t>(level)] = 0;
}

void LatticeEnumerator::for_each(const Visitor& visit, std::optional<std::int64_t> first) const {
  std::vector<std::int64_t> k(static_cast<std::size_t>(dim_), 0);
  if (dim_ == 0) {
    if (!first) visit(k, 0);
    return;
  }
  if (strategy_ == EnumerationStrategy::PdRecursive)
    recurse_pd(k, 0, cutoff_, visit, first);
  else
    recurse_simplex(k, 0, simplex_limit_, visit, first);
}

std::vector<std::int64_t> LatticeEnumerator::first_coordinates() const {
  if (dim_ == 0) return {};
  std::int64_t lo = 0, hi = simplex_limit_;
  if (strategy_ == EnumerationStrategy::PdRecursive) {
    std::vector<std::int64_t> k(static_cast<std::size_t>(dim_), 0);
    Rational shift;
    std::tie(lo, hi) = pd_range(0, k, cutoff_, shift);
  }
  std::vector<std::int64_t> out;
  for (std::int64_t x = lo; x <= hi; ++x) out.push_back(x);
  return out;
}

std::vector<std::vector<std::int64_t>> LatticeEnumerator::collect() const {
  std::vector<std::vector<std::int64_t>> out;
  for_each([&](std::span<const std::int64_t> k, std::int64_t) { out.emplace_back(k.begin(), k.end()); });
  return out;
}

std::vector<std::vector<std::int64_t>> enumerate_lattice(const ExponentForm& form, const Rational& cutoff,
                                                         EnumerationStrategy strategy) {
  return LatticeEnumerator(form, cutoff, strategy).collect();
}

// ---------------------------------------------------------------------------
// Partition q-series

namespace {

// Accumulates q^F(k) prod_t 1/(q)_{k_t} on the integer-power grid. Products
// are cached by the sorted multiset of nonzero k_t, capped at the largest
// power that can survive the cutoff.
class WeightAccumulator {
 public:
  WeightAccumulator(std::int64_t delta, std::int64_t max_numerator)
      : delta_(delta), max_numerator_(max_numerator), max_power_(max_numerator / delta),
        coeffs_(static_cast<std::size_t>(max_numerator + 1), Integer(0)) {}

  void add(std::span<const std::int64_t> k, std::int64_t f) {
    key_.clear();
    for (std::int64_t v : k)
      if (v != 0) key_.push_back(std::min(v, max_power_));
    std::sort(key_.begin(), key_.end());
    const auto& product = product_for(key_);
    const std::int64_t budget = (max_numerator_ - f) / delta_;
    for (std::int64_t j = 0; j <= budget; ++j) {
      const Integer& c = product[static_cast<std::size_t>(j)];
      if (c != 0) coeffs_[static_cast<std::size_t>(f + j * delta_)] += c;
    }
  }

  const std::vector<Integer>& coefficients() const { return coeffs_; }

 private:
  const std::vector<Integer>& inverse_for(std::int64_t n) {
    auto it = inverse_.find(n);
    if (it == inverse_.end()) it = inverse_.emplace(n, inv_pochhammer_coefficients(n, max_power_)).first;
    return it->second;
  }

  const std::vector<Integer>& product_for(const std::vector<std::int64_t>& key) {
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
    std::vector<Integer> acc(static_cast<std::size_t>(max_power_ + 1), Integer(0));
    acc[0] = 1;
    for (std::int64_t n : key) {
      const auto& f = inverse_for(n);
      std::vector<Integer> next(acc.size(), Integer(0));
      for (std::int64_t a = 0; a <= max_power_; ++a) {
        if (acc[static_cast<std::size_t>(a)] == 0) continue;
        for (std::int64_t b = 0; a + b <= max_power_; ++b)
          next[static_cast<std::size_t>(a + b)] += acc[static_cast<std::size_t>(a)] * f[static_cast<std::size_t>(b)];
      }
      acc = std::move(next);
    }
    return products_.emplace(key, std::move(acc)).first->second;
  }

  std::int64_t delta_;
  std::int64_t max_numerator_;
  std::int64_t max_power_;
  std::vector<Integer> coeffs_;
  std::vector<std::int64_t> key_;
  std::map<std::int64_t, std::vector<Integer>> inverse_;
  std::map<std::vector<std::int64_t>, std::vector<Integer>> products_;
};

}  // namespace

QSeries sum_form(const ExponentForm& form, const Rational& cutoff, const SumOptions& options) {
  const LatticeEnumerator enumerator(form, cutoff, options.strategy);
  QSeries out(form.delta, cutoff);
  const std::int64_t max_numerator = out.max_numerator();

  std::atomic<std::uint64_t> visited{0};
  std::atomic<bool> over_limit{false};
  auto run = [&](WeightAccumulator& acc, std::optional<std::int64_t> first) {
    enumerator.for_each(
        [&](std::span<const std::int64_t> k, std::int64_t f) {
          if (over_limit.load(std::memory_order_relaxed)) return;
          if (visited.fetch_add(1, std::memory_order_relaxed) + 1 > options.max_terms) {
            over_limit = true;
            return;
          }
          acc.add(k, f);
        },
        first);
  };

  std::vector<WeightAccumulator> partials;
  const auto firsts = enumerator.first_coordinates();
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(firsts.size())));
  if (jobs <= 1) {
    partials.emplace_back(form.delta, max_numerator);
    run(partials.back(), std::nullopt);
  } else {
    for (unsigned j = 0; j < jobs; ++j) partials.emplace_back(form.delta, max_numerator);
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j)
      workers.emplace_back([&, j] {
        for (std::size_t i = j; i < firsts.size(); i += jobs) run(partials[j], firsts[i]);
      });
    for (auto& w : workers) w.join();
  }
  if (over_limit)
    throw EnumerationLimitError("lattice enumeration exceeded " + std::to_string(options.max_terms) + " points");

  for (const auto& p : partials) {
    const auto& c = p.coefficients();
    for (std::int64_t e = 0; e <= max_numerator; ++e)
      if (c[static_cast<std::size_t>(e)] != 0) out.add_term(e, c[static_cast<std::size_t>(e)]);
  }
  return out;
}

QSeries sum_loop(const MutationLoop& loop, const Rational& cutoff, const SumOptions& options) {
  const ExponentForm form = exponent_form(loop);
  if (form.positivity.kind == Positivity::Failed)
    throw NotPositiveError("loop is not positive: " + form.positivity.note);
  return sum_form(form, cutoff, options);
}

bool q_pentagon_check(std::int64_t m, std::int64_t n, const Rational& cutoff) {
  const QSeries lhs = inv_pochhammer(m, cutoff) * inv_pochhammer(n, cutoff);
  QSeries rhs(1, cutoff);
  for (std::int64_t s = 0; s <= std::min(m, n); ++s) {
    const std::int64_t r = m - s;
    const std::int64_t t = n - s;
    QSeries shift(1, cutoff);
    shift.add_term(r * t, Integer(1));
    rhs = rhs + shift * inv_pochhammer(r, cutoff) * inv_pochhammer(s, cutoff) * inv_pochhammer(t, cutoff);
  }
  return lhs == rhs;
}

}  // namespace qloop
