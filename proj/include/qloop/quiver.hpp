#pragma once

// Quivers without loops or 2-cycles, stored as skew-symmetric exchange
// matrices. Vertices are labeled 1..n in the public API; the matrix itself is
// 0-based, so arrows(i, j) == matrix()(i - 1, j - 1).

#include <cstdint>
#include <utility>
#include <vector>

#include "qloop/scalar.hpp"

namespace qloop {

/// Bijection on {1..n} in one-line notation: images()[i - 1] == sigma(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation transposition(int n, int a, int b);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// (outer o inner)(i) == outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);

class Quiver {
 public:
  Quiver() = default;
  /// Throws InvalidArgument unless b is square, skew-symmetric, zero diagonal.
  explicit Quiver(IntMatrix b);

  /// Builds b from signed arrow counts. Arrows i->i and opposing arrows
  /// between the same pair (a 2-cycle) are rejected.
  static Quiver from_arrows(int n, const std::vector<std::pair<int, int>>& arrows);

  int size() const { return static_cast<int>(b_.rows()); }
  const IntMatrix& matrix() const { return b_; }

  /// Signed arrow count: #(i->j) - #(j->i).
  std::int64_t arrows(int i, int j) const { return b_(i - 1, j - 1); }

  /// Arrow list with multiplicity, sorted lexicographically.
  std::vector<std::pair<int, int>> arrow_list() const;

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.b_.rows() == b.b_.rows() && a.b_ == b.b_;
  }

 private:
  IntMatrix b_;
};

/// Matrix mutation at vertex k (1-based). Throws InvalidArgument if k is out of range.
Quiver mutate(const Quiver& q, int k);

/// b'[sigma(i)][sigma(j)] = b[i][j].
Quiver relabel(const Quiver& q, const Permutation& sigma);

Quiver opposite(const Quiver& q);

bool is_source(const Quiver& q, int v);
bool is_sink(const Quiver& q, int v);

/// +1 for sources (isolated vertices included), -1 for sinks, 0 when the
/// vertex is neither.
std::vector<int> vertex_signs(const Quiver& q);

/// Same as vertex_signs but throws NotAlternatingError unless every vertex
/// is a source or a sink.
std::vector<int> signs(const Quiver& q);

bool is_alternating(const Quiver& q);
bool has_oriented_cycle(const Quiver& q);

/// B(Q) (x) I + I (x) B(Q'); vertex (i, i') is (i - 1) * n' + i'.
/// Throws OrientedCycleError if either factor has an oriented cycle.
Quiver tensor_product(const Quiver& q, const Quiver& qp);

/// Q (x) Q' with the arrows in {i} x Q' reversed for each source i of Q, and
/// in Q x {i'} reversed for each sink i' of Q'. Throws NotAlternatingError.
Quiver square_product(const Quiver& q, const Quiver& qp);

/// Product vertices split by sgn(i) * sgn(i'), each list ascending.
struct SignClasses {
  std::vector<int> plus;
  std::vector<int> minus;
};

SignClasses sign_classes(const Quiver& q, const Quiver& qp);

}  // namespace qloop
