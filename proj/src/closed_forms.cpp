#include "qloop/closed_forms.hpp"

#include <cctype>
#include <charconv>

#include "qloop/errors.hpp"
#include "qloop/exact_linalg.hpp"

namespace qloop {

DynkinType::DynkinType(DynkinFamily f, int n) : family(f), rank(n) {
  const bool ok = (f == DynkinFamily::A && n >= 1) || (f == DynkinFamily::D && n >= 4) ||
                  (f == DynkinFamily::E && n >= 6 && n <= 8);
  if (!ok) throw InvalidArgument("invalid Dynkin type " + name());
}

DynkinType DynkinType::parse(std::string_view text) {
  if (text.size() < 2) throw ParseError("invalid Dynkin type '" + std::string(text) + "'");
  DynkinFamily f;
  switch (std::toupper(static_cast<unsigned char>(text[0]))) {
    case 'A':
      f = DynkinFamily::A;
      break;
    case 'D':
      f = DynkinFamily::D;
      break;
    case 'E':
      f = DynkinFamily::E;
      break;
    default:
      throw ParseError("invalid Dynkin type '" + std::string(text) + "'");
  }
  int n = 0;
  const auto digits = text.substr(1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw ParseError("invalid Dynkin type '" + std::string(text) + "'");
  try {
    return DynkinType(f, n);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string DynkinType::name() const {
  const char letter = family == DynkinFamily::A ? 'A' : family == DynkinFamily::D ? 'D' : 'E';
  return std::string(1, letter) + std::to_string(rank);
}

namespace {

std::vector<std::pair<int, int>> dynkin_edges(const DynkinType& t) {
  std::vector<std::pair<int, int>> edges;
  const int n = t.rank;
  switch (t.family) {
    case DynkinFamily::A:
      for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case DynkinFamily::D:
      for (int i = 1; i < n - 2; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(n - 2, n - 1);
      edges.emplace_back(n - 2, n);
      break;
    case DynkinFamily::E:
      for (int i = 1; i < n - 1; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(3, n);
      break;
  }
  return edges;
}

// Bipartition by distance parity from vertex 1 (+1 on the side of vertex 1).
std::vector<int> bipartition(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> side(static_cast<std::size_t>(n), 0);
  side[0] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [a, b] : edges) {
      int& sa = side[static_cast<std::size_t>(a - 1)];
      int& sb = side[static_cast<std::size_t>(b - 1)];
      if (sa != 0 && sb == 0) {
        sb = -sa;
        changed = true;
      } else if (sb != 0 && sa == 0) {
        sa = -sb;
        changed = true;
      }
    }
  }
  return side;
}

std::vector<int> vertices_with_sign(const std::vector<int>& signs, int sign) {
  std::vector<int> out;
  for (std::size_t i = 0; i < signs.size(); ++i)
    if (signs[i] == sign) out.push_back(static_cast<int>(i + 1));
  return out;
}

}  // namespace

CartanData cartan_data(const DynkinType& type) {
  const int n = type.rank;
  CartanData data;
  data.cartan = IntMatrix::Identity(n, n) * 2;
  for (auto [a, b] : dynkin_edges(type)) {
    data.cartan(a - 1, b - 1) = -1;
    data.cartan(b - 1, a - 1) = -1;
  }
  data.inverse = *exact_inverse(matrix_cast<Rational>(data.cartan));
  return data;
}

AlternatingQuiver alternating_dynkin(const DynkinType& type) {
  const auto edges = dynkin_edges(type);
  const auto side = bipartition(type.rank, edges);
  std::vector<std::pair<int, int>> arrows;
  for (auto [a, b] : edges) {
    if (side[static_cast<std::size_t>(a - 1)] > 0)
      arrows.emplace_back(a, b);
    else
      arrows.emplace_back(b, a);
  }
  return {Quiver::from_arrows(type.rank, arrows), side};
}

MutationLoop dynkin_loop(const DynkinType& type) {
  auto [q, s] = alternating_dynkin(type);
  auto m = vertices_with_sign(s, -1);
  const auto plus = vertices_with_sign(s, 1);
  m.insert(m.end(), plus.begin(), plus.end());
  return make_loop(std::move(q), m);
}

ExponentForm dynkin_form(const DynkinType& type) { return make_exponent_form(cartan_data(type).inverse); }

QSeries dynkin_closed_form(const DynkinType& type, const Rational& cutoff, const SumOptions& options) {
  return sum_form(dynkin_form(type), cutoff, options);
}

namespace {

void require_square_factor(const DynkinType& t) {
  if (t.rank < 2) throw InvalidArgument("square product factors need at least one arrow, got " + t.name());
}

}  // namespace

Quiver square_quiver(const DynkinType& t, const DynkinType& tp) {
  require_square_factor(t);
  require_square_factor(tp);
  return square_product(alternating_dynkin(t).quiver, alternating_dynkin(tp).quiver);
}

MutationLoop square_loop(const DynkinType& t, const DynkinType& tp, SquareOrder order) {
  Quiver sq = square_quiver(t, tp);
  const auto classes = sign_classes(alternating_dynkin(t).quiver, alternating_dynkin(tp).quiver);
  std::vector<int> m = order == SquareOrder::PlusFirst ? classes.plus : classes.minus;
  const auto& rest = order == SquareOrder::PlusFirst ? classes.minus : classes.plus;
  m.insert(m.end(), rest.begin(), rest.end());
  return make_loop(std::move(sq), m);
}

ExponentForm square_form(const DynkinType& t, const DynkinType& tp, SquareOrder order) {
  require_square_factor(t);
  require_square_factor(tp);
  const CartanData c = cartan_data(t);
  const CartanData cp = cartan_data(tp);
  const RationalMatrix gram = order == SquareOrder::PlusFirst
                                  ? RationalMatrix(kronecker(matrix_cast<Rational>(c.cartan), cp.inverse))
                                  : RationalMatrix(kronecker(c.inverse, matrix_cast<Rational>(cp.cartan)));
  return make_exponent_form(gram / Rational(2));
}

QSeries square_closed_form(const DynkinType& t, const DynkinType& tp, SquareOrder order, const Rational& cutoff,
                           const SumOptions& options) {
  return sum_form(square_form(t, tp, order), cutoff, options);
}

QSeries a3_theta_series(const Rational& cutoff) {
  QSeries theta(4, cutoff);
  // 3 n^2 / 4 <= cutoff  <=>  3 n^2 <= max_numerator.
  for (std::int64_t n = 0; 3 * n * n <= theta.max_numerator(); ++n) theta.add_term(3 * n * n, Integer(n == 0 ? 1 : 2));
  return theta;
}

bool theta_check_a3(const Rational& cutoff, const SumOptions& options) {
  const QSeries z = sum_loop(dynkin_loop(DynkinType(DynkinFamily::A, 3)), cutoff, options);
  // (q)_M agrees with (q)_infinity below q^(M+1).
  const std::int64_t m = to_int64(floor(cutoff)) + 1;
  return agree(z * pochhammer(m, cutoff, 4), a3_theta_series(cutoff));
}

}  // namespace qloop
