#include "qloop/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qloop/errors.hpp"
#include "qloop/exact_linalg.hpp"

namespace qloop {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
      throw InvalidArgument("not a permutation of 1.." + std::to_string(n));
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto images = identity(n).images_;
  if (a < 1 || a > n || b < 1 || b > n) throw InvalidArgument("transposition vertex out of range");
  std::swap(images[static_cast<std::size_t>(a - 1)], images[static_cast<std::size_t>(b - 1)]);
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 1; i <= size(); ++i) inv[static_cast<std::size_t>((*this)(i) - 1)] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= size(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw InvalidArgument("permutation size mismatch");
  std::vector<int> images(static_cast<std::size_t>(inner.size()));
  for (int i = 1; i <= inner.size(); ++i) images[static_cast<std::size_t>(i - 1)] = outer(inner(i));
  return Permutation(std::move(images));
}

Quiver::Quiver(IntMatrix b) : b_(std::move(b)) {
  if (b_.rows() != b_.cols()) throw InvalidArgument("exchange matrix must be square");
  for (Eigen::Index i = 0; i < b_.rows(); ++i) {
    if (b_(i, i) != 0) throw InvalidArgument("exchange matrix has a loop at vertex " + std::to_string(i + 1));
    for (Eigen::Index j = i + 1; j < b_.cols(); ++j)
      if (b_(i, j) != -b_(j, i))
        throw InvalidArgument("exchange matrix is not skew-symmetric at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
  }
}

Quiver Quiver::from_arrows(int n, const std::vector<std::pair<int, int>>& arrows) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  IntMatrix forward = IntMatrix::Zero(n, n);
  for (auto [i, j] : arrows) {
    if (i < 1 || i > n || j < 1 || j > n) throw InvalidArgument("arrow endpoint out of range");
    if (i == j) throw InvalidArgument("loop at vertex " + std::to_string(i));
    forward(i - 1, j - 1) += 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (forward(i, j) > 0 && forward(j, i) > 0)
        throw InvalidArgument("2-cycle between vertices " + std::to_string(i + 1) + " and " + std::to_string(j + 1));
  IntMatrix b = forward - IntMatrix(forward.transpose());
  return Quiver(std::move(b));
}

std::vector<std::pair<int, int>> Quiver::arrow_list() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= size(); ++i)
    for (int j = 1; j <= size(); ++j)
      for (std::int64_t c = 0; c < arrows(i, j); ++c) out.emplace_back(i, j);
  return out;
}

namespace {

void check_vertex(const Quiver& q, int v) {
  if (v < 1 || v > q.size())
    throw InvalidArgument("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(q.size()));
}

std::int64_t sign_of(std::int64_t x) { return (x > 0) - (x < 0); }

}  // namespace

Quiver mutate(const Quiver& q, int k) {
  check_vertex(q, k);
  const IntMatrix& b = q.matrix();
  const Eigen::Index kk = k - 1;
  IntMatrix out = b;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      if (i == kk || j == kk)
        out(i, j) = -b(i, j);
      else
        out(i, j) = b(i, j) + sign_of(b(i, kk)) * std::max<std::int64_t>(b(i, kk) * b(kk, j), 0);
    }
  }
  return Quiver(std::move(out));
}

Quiver relabel(const Quiver& q, const Permutation& sigma) {
  if (sigma.size() != q.size()) throw InvalidArgument("permutation size does not match quiver");
  IntMatrix out(q.size(), q.size());
  for (int i = 1; i <= q.size(); ++i)
    for (int j = 1; j <= q.size(); ++j) out(sigma(i) - 1, sigma(j) - 1) = q.arrows(i, j);
  return Quiver(std::move(out));
}

Quiver opposite(const Quiver& q) { return Quiver(IntMatrix(-q.matrix())); }

bool is_source(const Quiver& q, int v) {
  check_vertex(q, v);
  for (int u = 1; u <= q.size(); ++u)
    if (q.arrows(u, v) > 0) return false;
  return true;
}

bool is_sink(const Quiver& q, int v) {
  check_vertex(q, v);
  for (int u = 1; u <= q.size(); ++u)
    if (q.arrows(v, u) > 0) return false;
  return true;
}

std::vector<int> vertex_signs(const Quiver& q) {
  std::vector<int> out(static_cast<std::size_t>(q.size()), 0);
  for (int v = 1; v <= q.size(); ++v) {
    // An isolated vertex is both; it counts as a source.
    if (is_source(q, v))
      out[static_cast<std::size_t>(v - 1)] = 1;
    else if (is_sink(q, v))
      out[static_cast<std::size_t>(v - 1)] = -1;
  }
  return out;
}

std::vector<int> signs(const Quiver& q) {
  auto out = vertex_signs(q);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] == 0)
      throw NotAlternatingError("vertex " + std::to_string(i + 1) + " is neither a source nor a sink");
  return out;
}

bool is_alternating(const Quiver& q) {
  const auto s = vertex_signs(q);
  return std::none_of(s.begin(), s.end(), [](int x) { return x == 0; });
}

bool has_oriented_cycle(const Quiver& q) {
  enum class Mark { Fresh, Open, Done };
  const int n = q.size();
  std::vector<Mark> mark(static_cast<std::size_t>(n), Mark::Fresh);
  // Iterative DFS; a back edge to an Open vertex closes a cycle.
  for (int root = 1; root <= n; ++root) {
    if (mark[static_cast<std::size_t>(root - 1)] != Mark::Fresh) continue;
    std::vector<std::pair<int, int>> stack{{root, 1}};
    mark[static_cast<std::size_t>(root - 1)] = Mark::Open;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next > n) {
        mark[static_cast<std::size_t>(v - 1)] = Mark::Done;
        stack.pop_back();
        continue;
      }
      const int w = next++;
      if (q.arrows(v, w) <= 0) continue;
      const Mark m = mark[static_cast<std::size_t>(w - 1)];
      if (m == Mark::Open) return true;
      if (m == Mark::Fresh) {
        mark[static_cast<std::size_t>(w - 1)] = Mark::Open;
        stack.emplace_back(w, 1);
      }
    }
  }
  return false;
}

Quiver tensor_product(const Quiver& q, const Quiver& qp) {
  if (has_oriented_cycle(q) || has_oriented_cycle(qp))
    throw OrientedCycleError("tensor product needs quivers without oriented cycles");
  const IntMatrix id = IntMatrix::Identity(q.size(), q.size());
  const IntMatrix idp = IntMatrix::Identity(qp.size(), qp.size());
  return Quiver(IntMatrix(kronecker(q.matrix(), idp) + kronecker(id, qp.matrix())));
}

Quiver square_product(const Quiver& q, const Quiver& qp) {
  const auto sq = signs(q);
  const auto sqp = signs(qp);
  IntMatrix b = tensor_product(q, qp).matrix();
  const int np = qp.size();
  auto index = [np](int i, int ip) { return static_cast<Eigen::Index>((i - 1) * np + (ip - 1)); };
  for (int i = 1; i <= q.size(); ++i) {
    if (sq[static_cast<std::size_t>(i - 1)] != 1) continue;
    for (int ip = 1; ip <= np; ++ip)
      for (int jp = 1; jp <= np; ++jp) b(index(i, ip), index(i, jp)) = -b(index(i, ip), index(i, jp));
  }
  for (int ip = 1; ip <= np; ++ip) {
    if (sqp[static_cast<std::size_t>(ip - 1)] != -1) continue;
    for (int i = 1; i <= q.size(); ++i)
      for (int j = 1; j <= q.size(); ++j) b(index(i, ip), index(j, ip)) = -b(index(i, ip), index(j, ip));
  }
  return Quiver(std::move(b));
}

SignClasses sign_classes(const Quiver& q, const Quiver& qp) {
  const auto sq = signs(q);
  const auto sqp = signs(qp);
  SignClasses out;
  for (int i = 1; i <= q.size(); ++i)
    for (int ip = 1; ip <= qp.size(); ++ip) {
      const int v = (i - 1) * qp.size() + ip;
      if (sq[static_cast<std::size_t>(i - 1)] * sqp[static_cast<std::size_t>(ip - 1)] > 0)
        out.plus.push_back(v);
      else
        out.minus.push_back(v);
    }
  return out;
}

}  // namespace qloop
