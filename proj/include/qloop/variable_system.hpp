#pragma once

// The s/k-variable linear system of a mutation loop and the quadratic
// exponent F(k) = k^T G k of its weight.
//
// Every mutation at v contributes one row to each of
//   k   = s_v + s'_v - sum over arrows a->v of s_a
//   k^v = s_v + s'_v - sum over arrows v->b of s_b
// with arrow multiplicities read from the quiver just before the mutation.
// Slots are merged by the boundary identification, leaving one column per
// independent s-variable.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qloop/mutation_loop.hpp"
#include "qloop/scalar.hpp"

namespace qloop {

struct VariableSystem {
  RationalMatrix k_of_s;     ///< T x S, k = k_of_s * s
  RationalMatrix kvee_of_s;  ///< T x S, k^v = kvee_of_s * s
  std::vector<int> mutated_vertices;  ///< row t comes from a mutation at this vertex

  Eigen::Index mutation_count() const { return k_of_s.rows(); }
  Eigen::Index s_count() const { return k_of_s.cols(); }
};

VariableSystem build_system(const MutationLoop& loop);

/// s = result * k, when k_of_s is square and invertible over Q.
std::optional<RationalMatrix> solve_for_s(const VariableSystem& sys);

bool is_nondegenerate(const VariableSystem& sys);

enum class Positivity { PositiveDefinite, CopositiveCertified, Failed };

std::string to_string(Positivity p);

struct PositivityCertificate {
  Positivity kind = Positivity::Failed;
  /// For CopositiveCertified: F(k) >= bound * (sum k)^2 on k >= 0.
  /// For Failed: the least value of F on the standard simplex that was found
  /// (or the first non-positive pivot when no simplex search ran).
  Rational bound;
  std::string note;
};

/// Largest vertex count for which the 2^T - 1 face search runs.
inline constexpr int kMaxCopositiveDimension = 20;

/// Exact LDL^T first; otherwise a KKT search over every face of the standard
/// simplex, valid for T <= kMaxCopositiveDimension.
PositivityCertificate certify_positive(const RationalMatrix& gram);

/// Exact minimum of k^T G k over the standard simplex {k >= 0, sum k = 1},
/// found from the KKT points of all 2^T - 1 faces.
Rational simplex_minimum(const RationalMatrix& gram);

/// F(k) = k^T gram k with grading denominator delta, the least positive
/// integer making delta * F integral on Z^T.
struct ExponentForm {
  RationalMatrix gram;
  std::int64_t delta = 1;
  PositivityCertificate positivity;

  Eigen::Index dimension() const { return gram.rows(); }
  Rational evaluate(std::span<const std::int64_t> k) const;
};

/// lcm of the denominators of {G_ii} and {2 G_ij, i != j}.
std::int64_t grading_denominator(const RationalMatrix& gram);

/// Symmetrizes, computes delta and runs certify_positive.
ExponentForm make_exponent_form(const RationalMatrix& gram);

/// Throws DegenerateLoopError when k = A s is not invertible.
ExponentForm exponent_form(const MutationLoop& loop);

/// Reindexes the variables: result.gram(i, j) = form.gram(order[i], order[j])
/// with 0-based indices.
ExponentForm reorder(const ExponentForm& form, std::span<const int> order);

/// Variable order that sorts mutation-indexed k-variables by vertex, for
/// loops that mutate each vertex exactly once. Empty otherwise.
std::vector<int> vertex_order(const MutationLoop& loop);

}  // namespace qloop
