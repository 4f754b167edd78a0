#include "qloop/mutation_loop.hpp"

#include <sstream>
#include <string>

#include "qloop/errors.hpp"

namespace qloop {

Quiver apply_steps(const Quiver& q, std::span<const Step> steps) {
  Quiver current = q;
  for (const Step& step : steps) {
    if (const auto* m = std::get_if<Mutate>(&step))
      current = mutate(current, m->vertex);
    else
      current = relabel(current, std::get<Relabel>(step).sigma);
  }
  return current;
}

NormalForm normalize(std::span<const Step> steps, int n) {
  // `pending` is the composite of every relabeling seen so far; a mutation
  // mu_j that follows it is rewritten as mu_{pending^-1(j)} in front of it.
  Permutation pending = Permutation::identity(n);
  Permutation pending_inverse = pending;
  NormalForm out;
  for (const Step& step : steps) {
    if (const auto* m = std::get_if<Mutate>(&step)) {
      if (m->vertex < 1 || m->vertex > n) throw InvalidArgument("mutation vertex out of range");
      out.mutations.push_back(pending_inverse(m->vertex));
    } else {
      pending = compose(std::get<Relabel>(step).sigma, pending);
      pending_inverse = pending.inverse();
    }
  }
  out.phi = pending;
  return out;
}

Steps to_steps(const NormalForm& form) {
  Steps out;
  out.reserve(form.mutations.size() + 1);
  for (int v : form.mutations) out.emplace_back(Mutate{v});
  if (!form.phi.is_identity()) out.emplace_back(Relabel{form.phi});
  return out;
}

namespace {

std::string matrix_text(const IntMatrix& b) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (Eigen::Index j = 0; j < b.cols(); ++j) os << (j ? "," : "") << b(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace

MutationLoop validate_loop(Quiver q0, Steps steps) {
  for (const Step& step : steps)
    if (const auto* r = std::get_if<Relabel>(&step); r && r->sigma.size() != q0.size())
      throw InvalidArgument("relabeling size does not match quiver");
  const Quiver final_quiver = apply_steps(q0, steps);
  if (!(final_quiver == q0))
    throw NotALoopError("not a loop: final exchange matrix " + matrix_text(final_quiver.matrix()),
                        final_quiver.matrix());
  NormalForm normal = normalize(steps, q0.size());
  return MutationLoop(std::move(q0), std::move(steps), std::move(normal));
}

MutationLoop make_loop(Quiver q0, const std::vector<int>& mutations, const Permutation& phi) {
  return validate_loop(std::move(q0), to_steps(NormalForm{mutations, phi}));
}

MutationLoop make_loop(Quiver q0, const std::vector<int>& mutations) {
  const int n = q0.size();
  return make_loop(std::move(q0), mutations, Permutation::identity(n));
}

Quiver quiver_before(const MutationLoop& loop, std::size_t count) {
  Quiver q = loop.initial();
  const auto& m = loop.normal_form().mutations;
  for (std::size_t t = 0; t < count && t < m.size(); ++t) q = mutate(q, m[t]);
  return q;
}

MutationLoop pentagon_expand(const MutationLoop& loop, std::size_t pos) {
  const auto& nf = loop.normal_form();
  if (pos + 1 >= nf.mutations.size())
    throw PentagonPreconditionError("pentagon position " + std::to_string(pos) + " needs two mutations", 0);
  const int x = nf.mutations[pos];
  const int y = nf.mutations[pos + 1];
  const std::int64_t b = x == y ? 0 : quiver_before(loop, pos).arrows(x, y);
  if (b != 1)
    throw PentagonPreconditionError("pentagon move needs a single arrow " + std::to_string(x) + "->" +
                                        std::to_string(y) + ", found b=" + std::to_string(b),
                                    b);
  Steps steps;
  for (std::size_t t = 0; t < pos; ++t) steps.emplace_back(Mutate{nf.mutations[t]});
  steps.emplace_back(Mutate{y});
  steps.emplace_back(Mutate{x});
  steps.emplace_back(Mutate{y});
  steps.emplace_back(Relabel{Permutation::transposition(loop.vertex_count(), x, y)});
  for (std::size_t t = pos + 2; t < nf.mutations.size(); ++t) steps.emplace_back(Mutate{nf.mutations[t]});
  if (!nf.phi.is_identity()) steps.emplace_back(Relabel{nf.phi});
  return validate_loop(loop.initial(), std::move(steps));
}

MutationLoop pentagon_contract(const MutationLoop& loop, std::size_t pos) {
  const auto& nf = loop.normal_form();
  if (pos + 2 >= nf.mutations.size() || nf.mutations[pos] != nf.mutations[pos + 2] ||
      nf.mutations[pos] == nf.mutations[pos + 1])
    throw PentagonPreconditionError("no (y, x, y) pattern at position " + std::to_string(pos), 0);
  const int y = nf.mutations[pos];
  const int x = nf.mutations[pos + 1];
  const std::int64_t b = quiver_before(loop, pos).arrows(x, y);
  if (b != 1)
    throw PentagonPreconditionError("pentagon move needs a single arrow " + std::to_string(x) + "->" +
                                        std::to_string(y) + ", found b=" + std::to_string(b),
                                    b);
  const Permutation swap = Permutation::transposition(loop.vertex_count(), x, y);
  NormalForm out;
  out.mutations.assign(nf.mutations.begin(), nf.mutations.begin() + static_cast<std::ptrdiff_t>(pos));
  out.mutations.push_back(x);
  out.mutations.push_back(y);
  for (std::size_t t = pos + 3; t < nf.mutations.size(); ++t) out.mutations.push_back(swap(nf.mutations[t]));
  out.phi = compose(nf.phi, swap);
  return validate_loop(loop.initial(), to_steps(out));
}

std::vector<std::size_t> pentagon_positions(const MutationLoop& loop) {
  std::vector<std::size_t> out;
  const auto& m = loop.normal_form().mutations;
  Quiver q = loop.initial();
  for (std::size_t t = 0; t + 1 < m.size(); ++t) {
    if (m[t] != m[t + 1] && q.arrows(m[t], m[t + 1]) == 1) out.push_back(t);
    q = mutate(q, m[t]);
  }
  return out;
}

}  // namespace qloop
