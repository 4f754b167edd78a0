#include "qloop/variable_system.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qloop/errors.hpp"
#include "qloop/exact_linalg.hpp"

namespace qloop {

namespace {

class SlotUnion {
 public:
  int add() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
};

struct RowTerms {
  int vertex;
  std::vector<std::pair<int, std::int64_t>> k_terms;     // (slot, coefficient)
  std::vector<std::pair<int, std::int64_t>> kvee_terms;
};

}  // namespace

VariableSystem build_system(const MutationLoop& loop) {
  const int n = loop.vertex_count();
  SlotUnion slots;
  std::vector<int> current(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) current[static_cast<std::size_t>(v)] = slots.add();

  std::vector<RowTerms> rows;
  Quiver q = loop.initial();
  for (const Step& step : loop.steps()) {
    if (const auto* r = std::get_if<Relabel>(&step)) {
      std::vector<int> moved(current.size());
      for (int i = 1; i <= n; ++i)
        moved[static_cast<std::size_t>(r->sigma(i) - 1)] = current[static_cast<std::size_t>(i - 1)];
      current = std::move(moved);
      q = relabel(q, r->sigma);
      continue;
    }
    const int v = std::get<Mutate>(step).vertex;
    const int fresh = slots.add();
    RowTerms row{v, {}, {}};
    const int old_slot = current[static_cast<std::size_t>(v - 1)];
    row.k_terms = {{old_slot, 1}, {fresh, 1}};
    row.kvee_terms = row.k_terms;
    for (int u = 1; u <= n; ++u) {
      const std::int64_t b = q.arrows(u, v);
      if (b > 0) row.k_terms.emplace_back(current[static_cast<std::size_t>(u - 1)], -b);
      if (b < 0) row.kvee_terms.emplace_back(current[static_cast<std::size_t>(u - 1)], b);
    }
    rows.push_back(std::move(row));
    current[static_cast<std::size_t>(v - 1)] = fresh;
    q = mutate(q, v);
  }
  // The loop returns to the labeled initial quiver, so final slot of v meets
  // initial slot of v.
  for (int v = 0; v < n; ++v) slots.merge(current[static_cast<std::size_t>(v)], v);

  std::map<int, Eigen::Index> column;
  for (int s = 0; s < slots.size(); ++s) {
    const int root = slots.find(s);
    if (!column.count(root)) column.emplace(root, static_cast<Eigen::Index>(column.size()));
  }

  VariableSystem sys;
  const auto T = static_cast<Eigen::Index>(rows.size());
  const auto S = static_cast<Eigen::Index>(column.size());
  sys.k_of_s = RationalMatrix::Zero(T, S);
  sys.kvee_of_s = RationalMatrix::Zero(T, S);
  for (Eigen::Index t = 0; t < T; ++t) {
    const auto& row = rows[static_cast<std::size_t>(t)];
    sys.mutated_vertices.push_back(row.vertex);
    for (auto [slot, c] : row.k_terms) sys.k_of_s(t, column.at(slots.find(slot))) += Rational(c);
    for (auto [slot, c] : row.kvee_terms) sys.kvee_of_s(t, column.at(slots.find(slot))) += Rational(c);
  }
  return sys;
}

std::optional<RationalMatrix> solve_for_s(const VariableSystem& sys) {
  if (sys.k_of_s.rows() != sys.k_of_s.cols()) return std::nullopt;
  return exact_inverse(sys.k_of_s);
}

bool is_nondegenerate(const VariableSystem& sys) { return solve_for_s(sys).has_value(); }

std::string to_string(Positivity p) {
  switch (p) {
    case Positivity::PositiveDefinite:
      return "positive-definite";
    case Positivity::CopositiveCertified:
      return "copositive-certified";
    case Positivity::Failed:
      break;
  }
  return "failed";
}

namespace {

// Critical point of F on the relative interior of the face spanned by
// `support`: G_SS x = mu 1, 1^T x = 1, x > 0. Returns F(x) = mu.
std::optional<Rational> face_critical_value(const RationalMatrix& gram, const std::vector<Eigen::Index>& support) {
  const auto s = static_cast<Eigen::Index>(support.size());
  RationalMatrix kkt = RationalMatrix::Zero(s + 1, s + 1);
  for (Eigen::Index i = 0; i < s; ++i) {
    for (Eigen::Index j = 0; j < s; ++j) kkt(i, j) = gram(support[static_cast<std::size_t>(i)], support[static_cast<std::size_t>(j)]);
    kkt(i, s) = Rational(-1);
    kkt(s, i) = Rational(1);
  }
  RationalVector rhs = RationalVector::Zero(s + 1);
  rhs(s) = Rational(1);
  // A singular system means F is constant along a line of critical points
  // that leaves the face, so a smaller face attains the same value.
  const auto sol = exact_solve(kkt, rhs);
  if (!sol) return std::nullopt;
  for (Eigen::Index i = 0; i < s; ++i)
    if ((*sol)(i) <= 0) return std::nullopt;
  return (*sol)(s);
}

}  // namespace

Rational simplex_minimum(const RationalMatrix& gram) {
  const auto T = gram.rows();
  if (T == 0) throw InvalidArgument("simplex_minimum of an empty form");
  if (T > kMaxCopositiveDimension) throw InvalidArgument("simplex search dimension too large");
  std::optional<Rational> best;
  const std::uint64_t faces = std::uint64_t{1} << T;
  std::vector<Eigen::Index> support;
  for (std::uint64_t mask = 1; mask < faces; ++mask) {
    support.clear();
    for (Eigen::Index i = 0; i < T; ++i)
      if (mask & (std::uint64_t{1} << i)) support.push_back(i);
    if (auto value = face_critical_value(gram, support); value && (!best || *value < *best)) best = value;
  }
  return *best;
}

PositivityCertificate certify_positive(const RationalMatrix& gram) {
  PositivityCertificate cert;
  const auto ldlt = exact_ldlt(gram);
  if (ldlt.complete && ldlt.positive_definite) {
    cert.kind = Positivity::PositiveDefinite;
    return cert;
  }
  const auto T = gram.rows();
  if (T > kMaxCopositiveDimension) {
    cert.kind = Positivity::Failed;
    cert.note = "Gram matrix is not positive definite and dimension " + std::to_string(T) +
                " exceeds the copositivity search limit " + std::to_string(kMaxCopositiveDimension);
    for (Eigen::Index i = 0; i < ldlt.pivots.size(); ++i)
      if (ldlt.pivots(i) <= 0) {
        cert.bound = ldlt.pivots(i);
        break;
      }
    return cert;
  }
  const Rational best = simplex_minimum(gram);
  cert.bound = best;
  if (best > 0) {
    cert.kind = Positivity::CopositiveCertified;
  } else {
    cert.kind = Positivity::Failed;
    cert.note = "F attains " + to_fraction_string(best) + " on the standard simplex";
  }
  return cert;
}

Rational ExponentForm::evaluate(std::span<const std::int64_t> k) const {
  Rational total = 0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = 0; j < gram.cols(); ++j)
      if (k[static_cast<std::size_t>(i)] != 0 && k[static_cast<std::size_t>(j)] != 0)
        total += gram(i, j) * k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(j)];
  return total;
}

std::int64_t grading_denominator(const RationalMatrix& gram) {
  Integer delta = 1;
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = i; j < gram.cols(); ++j) {
      const Rational c = i == j ? gram(i, j) : Rational(2) * gram(i, j);
      delta = lcm(delta, denominator(c));
    }
  return to_int64(delta);
}

ExponentForm make_exponent_form(const RationalMatrix& gram) {
  if (gram.rows() != gram.cols()) throw InvalidArgument("Gram matrix must be square");
  ExponentForm form;
  form.gram = symmetric_part(gram);
  form.delta = grading_denominator(form.gram);
  form.positivity = certify_positive(form.gram);
  return form;
}

ExponentForm exponent_form(const MutationLoop& loop) {
  const VariableSystem sys = build_system(loop);
  const auto inv = solve_for_s(sys);
  if (!inv)
    throw DegenerateLoopError("degenerate loop: k = A s with A of size " + std::to_string(sys.k_of_s.rows()) + "x" +
                              std::to_string(sys.k_of_s.cols()) + " is not invertible");
  // H(s) = 1/2 sum_t (A_t s)(B_t s) = s^T [(A^T B + B^T A) / 4] s.
  const RationalMatrix cross = sys.k_of_s.transpose() * sys.kvee_of_s;
  const RationalMatrix h = symmetric_part(cross) / Rational(2);
  const RationalMatrix g = inv->transpose() * h * (*inv);
  return make_exponent_form(g);
}

ExponentForm reorder(const ExponentForm& form, std::span<const int> order) {
  const auto n = static_cast<Eigen::Index>(order.size());
  if (n != form.gram.rows()) throw InvalidArgument("reorder: size mismatch");
  ExponentForm out = form;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out.gram(i, j) = form.gram(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  return out;
}

std::vector<int> vertex_order(const MutationLoop& loop) {
  const auto& m = loop.normal_form().mutations;
  if (m.size() != static_cast<std::size_t>(loop.vertex_count())) return {};
  std::vector<int> order(m.size(), -1);
  for (std::size_t t = 0; t < m.size(); ++t) {
    auto& slot = order[static_cast<std::size_t>(m[t] - 1)];
    if (slot != -1) return {};
    slot = static_cast<int>(t);
  }
  return order;
}

}  // namespace qloop
