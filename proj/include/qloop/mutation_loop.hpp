#pragma once

// Generalized mutation sequences (mutations interleaved with relabelings),
// their normal form (mutation list followed by one boundary permutation), and
// the pentagon move on mutation loops.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "qloop/quiver.hpp"

namespace qloop {

struct Mutate {
  int vertex;
  friend bool operator==(const Mutate&, const Mutate&) = default;
};

struct Relabel {
  Permutation sigma;
  friend bool operator==(const Relabel&, const Relabel&) = default;
};

using Step = std::variant<Mutate, Relabel>;
using Steps = std::vector<Step>;

/// (mu_{m_1}, ..., mu_{m_T}, phi).
struct NormalForm {
  std::vector<int> mutations;
  Permutation phi;
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Left-to-right application. Throws InvalidArgument on an invalid step.
Quiver apply_steps(const Quiver& q, std::span<const Step> steps);

/// Rewrites the steps to normal form on n vertices by merging adjacent
/// relabelings, moving every relabeling past the mutations that follow it,
/// and dropping identities.
NormalForm normalize(std::span<const Step> steps, int n);

Steps to_steps(const NormalForm& form);

class MutationLoop {
 public:
  const Quiver& initial() const { return initial_; }
  const Steps& steps() const { return steps_; }
  const NormalForm& normal_form() const { return normal_; }
  int vertex_count() const { return initial_.size(); }
  std::size_t mutation_count() const { return normal_.mutations.size(); }

 private:
  MutationLoop(Quiver q, Steps steps, NormalForm normal)
      : initial_(std::move(q)), steps_(std::move(steps)), normal_(std::move(normal)) {}
  friend MutationLoop validate_loop(Quiver q0, Steps steps);

  Quiver initial_;
  Steps steps_;
  NormalForm normal_;
};

/// Throws NotALoopError (carrying the final matrix) unless the steps carry q0
/// back to itself as a labeled quiver.
MutationLoop validate_loop(Quiver q0, Steps steps);

/// Loop (q0; mutations, phi) given in normal form.
MutationLoop make_loop(Quiver q0, const std::vector<int>& mutations, const Permutation& phi);
MutationLoop make_loop(Quiver q0, const std::vector<int>& mutations);

/// Quiver reached after the first `count` normalized mutations.
Quiver quiver_before(const MutationLoop& loop, std::size_t count);

/// Replaces normalized mutations (x, y) at pos, pos + 1 by
/// (y, x, y, (x y)). Requires a single arrow x -> y in the quiver reached
/// before pos; throws PentagonPreconditionError otherwise.
MutationLoop pentagon_expand(const MutationLoop& loop, std::size_t pos);

/// Inverse of pentagon_expand. In normal form the trailing transposition has
/// already been moved to the end, so the pattern is (y, x, y) at pos with a
/// single arrow x -> y before pos; the tail mutations are relabeled back by
/// (x y) and phi becomes phi o (x y).
MutationLoop pentagon_contract(const MutationLoop& loop, std::size_t pos);

/// Positions where pentagon_expand applies.
std::vector<std::size_t> pentagon_positions(const MutationLoop& loop);

}  // namespace qloop
