#pragma once

// Test-only helpers: literal matrices, an independent brute-force q-series
// oracle, and seeded generators for quivers and mutation loops.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qloop/errors.hpp"
#include "qloop/mutation_loop.hpp"
#include "qloop/qseries.hpp"
#include "qloop/quiver.hpp"
#include "qloop/variable_system.hpp"

namespace qloop::test {

inline Rational R(const char* text) { return parse_rational(text); }

inline RationalMatrix rational_matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
  RationalMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const char* x : row) m(i, j++) = parse_rational(x);
    ++i;
  }
  return m;
}

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (std::int64_t x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

// Coefficients of 1/(q)_n up to q^max_power, built as a product of geometric
// series 1/(1 - q^j) rather than by counting partitions.
inline std::vector<Integer> oracle_inverse_pochhammer(std::int64_t n, std::int64_t max_power) {
  std::vector<Integer> c(static_cast<std::size_t>(max_power + 1), Integer(0));
  c[0] = 1;
  for (std::int64_t j = 1; j <= n; ++j)
    for (std::int64_t i = j; i <= max_power; ++i) c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - j)];
  return c;
}

// Sum over the box 0 <= k_t <= box of q^(k^T gram k) / prod (q)_{k_t}, on
// the grid q^(1/delta). The caller chooses a box that contains every k with
// F(k) <= cutoff.
inline QSeries oracle_sum(const RationalMatrix& gram, std::int64_t delta, const Rational& cutoff, std::int64_t box) {
  QSeries out(delta, cutoff);
  const auto t = static_cast<std::size_t>(gram.rows());
  const std::int64_t max_power = to_int64(floor(cutoff));
  std::vector<std::int64_t> k(t, 0);
  while (true) {
    Rational f = 0;
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j)
        f += gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * k[i] * k[j];
    if (f <= cutoff) {
      std::vector<Integer> prod(static_cast<std::size_t>(max_power + 1), Integer(0));
      prod[0] = 1;
      for (std::int64_t kt : k) {
        const auto inv = oracle_inverse_pochhammer(kt, max_power);
        std::vector<Integer> next(prod.size(), Integer(0));
        for (std::size_t a = 0; a < prod.size(); ++a)
          for (std::size_t b = 0; a + b < prod.size(); ++b) next[a + b] += prod[a] * inv[b];
        prod = std::move(next);
      }
      const Rational scaled = f * delta;
      if (denominator(scaled) != 1) throw std::logic_error("oracle: delta does not clear F");
      const std::int64_t base = to_int64(numerator(scaled));
      for (std::size_t j = 0; j < prod.size(); ++j) out.add_term(base + static_cast<std::int64_t>(j) * delta, prod[j]);
    }
    std::size_t i = 0;
    while (i < t && k[i] == box) k[i++] = 0;
    if (i == t) break;
    ++k[i];
  }
  return out;
}

inline Quiver random_quiver(std::mt19937_64& rng, int n, int max_entry) {
  std::uniform_int_distribution<int> entry(-max_entry, max_entry);
  IntMatrix b = IntMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      b(i, j) = entry(rng);
      b(j, i) = -b(i, j);
    }
  return Quiver(std::move(b));
}

// The boundary permutation closing (q; mutations), found by trying all of S_n.
inline std::optional<Permutation> closing_permutation(const Quiver& q, const std::vector<int>& mutations) {
  Quiver end = q;
  for (int v : mutations) end = mutate(end, v);
  std::vector<int> images(static_cast<std::size_t>(q.size()));
  std::iota(images.begin(), images.end(), 1);
  do {
    Permutation phi(images);
    if (relabel(end, phi) == q) return phi;
  } while (std::next_permutation(images.begin(), images.end()));
  return std::nullopt;
}

inline bool is_positive_loop(const MutationLoop& loop) {
  try {
    return exponent_form(loop).positivity.kind != Positivity::Failed;
  } catch (const DegenerateLoopError&) {
    return false;
  }
}

struct PentagonCase {
  MutationLoop loop;
  std::size_t position;
};

// Seeded search for positive loops (rank min_rank..max_rank, at most
// max_length mutations, no mutation repeated back to back) with a pentagon
// position whose expansion is positive too.
inline std::vector<PentagonCase> random_pentagon_cases(std::uint64_t seed, std::size_t count, int min_rank,
                                                       int max_rank, int max_length) {
  std::mt19937_64 rng(seed);
  std::vector<PentagonCase> found;
  std::vector<NormalForm> seen;
  while (found.size() < count) {
    const int n = std::uniform_int_distribution<int>(min_rank, max_rank)(rng);
    const Quiver q = random_quiver(rng, n, 1);
    const int length = std::uniform_int_distribution<int>(2, max_length)(rng);
    std::vector<int> m(static_cast<std::size_t>(length));
    for (std::size_t i = 0; i < m.size(); ++i) {
      do m[i] = std::uniform_int_distribution<int>(1, n)(rng);
      while (i > 0 && m[i] == m[i - 1]);
    }
    const auto phi = closing_permutation(q, m);
    if (!phi) continue;
    const MutationLoop loop = make_loop(q, m, *phi);
    if (!is_positive_loop(loop)) continue;
    if (std::find(seen.begin(), seen.end(), loop.normal_form()) != seen.end()) continue;
    const auto positions = pentagon_positions(loop);
    if (positions.empty()) continue;
    const std::size_t pos = positions[std::uniform_int_distribution<std::size_t>(0, positions.size() - 1)(rng)];
    if (!is_positive_loop(pentagon_expand(loop, pos))) continue;
    seen.push_back(loop.normal_form());
    found.push_back({loop, pos});
  }
  return found;
}

}  // namespace qloop::test
