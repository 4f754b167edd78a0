// qloop: partition q-series of quiver mutation loops.
//
// Exit codes:
//   0  success
//   1  a comparison differed (DIFFER, failed identity)
//   2  parse error or invalid input
//   3  steps do not form a mutation loop
//   4  degenerate loop
//   5  positivity could not be certified
//   6  pentagon precondition violated
//   7  enumeration exceeded --max-terms

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "qloop/closed_forms.hpp"
#include "qloop/errors.hpp"
#include "qloop/io.hpp"
#include "qloop/qseries.hpp"

using namespace qloop;

namespace {

enum class Format { Text, Json };
enum class Mode { Direct, ClosedForm, Both };

struct Common {
  std::string cutoff = "10";
  Format format = Format::Text;
  unsigned jobs = 1;
  bool verbose = false;
  EnumerationStrategy strategy = EnumerationStrategy::Auto;
  std::uint64_t max_terms = 10'000'000;

  Rational parsed_cutoff() const {
    Rational c = parse_rational(cutoff);
    if (c < 0) throw ParseError("cutoff must be nonnegative, got '" + cutoff + "'");
    return c;
  }
  SumOptions sum_options() const { return {strategy, jobs, max_terms}; }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--cutoff", c.cutoff, "Largest exponent kept, p/q or an integer")->capture_default_str();
  app->add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::Text}, {"json", Format::Json}}))
      ->capture_default_str();
  app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_flag("--verbose", c.verbose, "Print the exponent form and certificate to stderr");
  app->add_option("--strategy", c.strategy, "Lattice enumeration strategy")
      ->transform(CLI::CheckedTransformer(std::map<std::string, EnumerationStrategy>{
          {"auto", EnumerationStrategy::Auto},
          {"pd", EnumerationStrategy::PdRecursive},
          {"simplex", EnumerationStrategy::SimplexBound}}));
  app->add_option("--max-terms", c.max_terms, "Abort after this many lattice points")->capture_default_str();
}

void add_mode(CLI::App* app, Mode& mode) {
  auto* g = app->add_option_group("mode");
  g->add_flag_callback("--closed-form", [&mode] { mode = Mode::ClosedForm; }, "Sum the closed-form Gram matrix");
  g->add_flag_callback("--direct", [&mode] { mode = Mode::Direct; }, "Sum the mutation loop (default)");
  g->add_flag_callback("--both", [&mode] { mode = Mode::Both; }, "Compute both and compare");
  g->require_option(0, 1);
}

std::string matrix_text(const RationalMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
    os << "]\n";
  }
  return os.str();
}

std::string positivity_text(const PositivityCertificate& c) {
  std::string out = to_string(c.kind);
  if (c.kind == Positivity::CopositiveCertified) out += " (F >= " + c.bound.str() + " * (sum k)^2)";
  if (!c.note.empty()) out += ": " + c.note;
  return out;
}

void describe_form(std::ostream& os, const ExponentForm& form) {
  os << "delta: " << form.delta << "\n"
     << "gram:\n"
     << matrix_text(form.gram) << "positivity: " << positivity_text(form.positivity) << "\n";
}

void print_series(const Common& c, const QSeries& s) {
  if (c.format == Format::Json)
    std::cout << series_to_json(s).dump() << "\n";
  else
    std::cout << series_to_text(s) << "\n";
}

// Prints two labelled series and the verdict; returns the exit status.
int print_comparison(const Common& c, const char* first_name, const QSeries& a, const char* second_name,
                     const QSeries& b) {
  const bool equal = agree(a, b);
  if (c.format == Format::Json) {
    Json out;
    out[first_name] = series_to_json(a);
    out[second_name] = series_to_json(b);
    out["equal"] = equal;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << first_name << ": " << series_to_text(a) << "\n"
              << second_name << ": " << series_to_text(b) << "\n"
              << (equal ? "EQUAL" : "DIFFER") << "\n";
  }
  return equal ? 0 : 1;
}

MutationLoop read_loop(const std::string& path) { return loop_from_json(read_json_file(path)); }

int cmd_compute(const Common& c, const std::string& path) {
  const Rational cutoff = c.parsed_cutoff();
  const MutationLoop loop = read_loop(path);
  const ExponentForm form = exponent_form(loop);
  if (c.verbose) describe_form(std::cerr, form);
  print_series(c, sum_form(form, cutoff, c.sum_options()));
  return 0;
}

int cmd_verify_pentagon(const Common& c, const std::string& path, std::size_t pos, bool contract) {
  const Rational cutoff = c.parsed_cutoff();
  const MutationLoop before = read_loop(path);
  const MutationLoop after = contract ? pentagon_contract(before, pos) : pentagon_expand(before, pos);
  if (c.verbose) {
    std::cerr << "after: " << normal_form_to_json(after.normal_form()).dump() << "\n";
    describe_form(std::cerr, exponent_form(after));
  }
  return print_comparison(c, "before", sum_loop(before, cutoff, c.sum_options()), "after",
                          sum_loop(after, cutoff, c.sum_options()));
}

int run_modes(const Common& c, Mode mode, const MutationLoop& loop, const ExponentForm& closed) {
  const Rational cutoff = c.parsed_cutoff();
  if (c.verbose) {
    std::cerr << "loop: " << loop_to_json(loop).dump() << "\n";
    describe_form(std::cerr, mode == Mode::ClosedForm ? closed : exponent_form(loop));
  }
  switch (mode) {
    case Mode::Direct:
      print_series(c, sum_loop(loop, cutoff, c.sum_options()));
      return 0;
    case Mode::ClosedForm:
      print_series(c, sum_form(closed, cutoff, c.sum_options()));
      return 0;
    case Mode::Both:
      break;
  }
  return print_comparison(c, "direct", sum_loop(loop, cutoff, c.sum_options()), "closed_form",
                          sum_form(closed, cutoff, c.sum_options()));
}

int cmd_check_identities(const Common& c) {
  const Rational cutoff = c.parsed_cutoff();
  bool all = true;
  Json rows = Json::array();
  auto record = [&](const std::string& name, bool ok) {
    all = all && ok;
    if (c.format == Format::Json)
      rows.push_back(Json{{"check", name}, {"pass", ok}});
    else
      std::cout << (ok ? "PASS  " : "FAIL  ") << name << "\n";
  };
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n)
      record("q-pentagon m=" + std::to_string(m) + " n=" + std::to_string(n), q_pentagon_check(m, n, cutoff));
  record("A3 theta", theta_check_a3(cutoff, c.sum_options()));
  if (c.format == Format::Json)
    std::cout << Json{{"cutoff", to_fraction_string(cutoff)}, {"checks", rows}, {"all_pass", all}}.dump() << "\n";
  return all ? 0 : 1;
}

int cmd_info(const Common& c, const std::string& path) {
  const MutationLoop loop = read_loop(path);
  const ExponentForm form = exponent_form(loop);
  if (c.format == Format::Json) {
    Json out = form_to_json(form);
    out["normal_form"] = normal_form_to_json(loop.normal_form());
    std::cout << out.dump() << "\n";
  } else {
    const NormalForm& nf = loop.normal_form();
    std::cout << "vertices: " << loop.vertex_count() << "\n"
              << "mutations: " << Json(nf.mutations).dump() << "\n"
              << "phi: " << Json(nf.phi.images()).dump() << "\n";
    describe_form(std::cout, form);
  }
  return 0;
}

int report(int code, const std::string& message) {
  std::cerr << "qloop: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition q-series of quiver mutation loops"};
  app.require_subcommand(1);

  Common common;
  std::string path;
  std::size_t pos = 0;
  bool contract = false;
  std::string type_a, type_b;
  Mode mode = Mode::Direct;
  SquareOrder order = SquareOrder::PlusFirst;

  auto* compute = app.add_subcommand("compute", "Partition q-series of a loop file");
  compute->add_option("loop", path, "Loop JSON file")->required();
  add_common(compute, common);

  auto* pentagon = app.add_subcommand("verify-pentagon", "Compare Z before and after a pentagon move");
  pentagon->add_option("loop", path, "Loop JSON file")->required();
  pentagon->add_option("--pos", pos, "0-based position in the normalized mutation sequence")->required();
  pentagon->add_flag("--contract", contract, "Apply the inverse move (y, x, y) -> (x, y)");
  add_common(pentagon, common);

  auto* dynkin = app.add_subcommand("dynkin", "Loop on the alternating Dynkin quiver");
  dynkin->add_option("type", type_a, "A_n, D_n or E_n, e.g. A3")->required();
  add_mode(dynkin, mode);
  add_common(dynkin, common);

  auto* square = app.add_subcommand("square", "Loop on the square product of two Dynkin quivers");
  square->add_option("type", type_a, "First factor")->required();
  square->add_option("type2", type_b, "Second factor")->required();
  square->add_option("--order", order, "Mutate the plus or the minus class first")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, SquareOrder>{{"plus", SquareOrder::PlusFirst}, {"minus", SquareOrder::MinusFirst}}));
  add_mode(square, mode);
  add_common(square, common);

  auto* identities = app.add_subcommand("check-identities", "q-pentagon and A3 theta checks");
  add_common(identities, common);

  auto* info = app.add_subcommand("info", "Normal form, delta, Gram matrix and positivity of a loop");
  info->add_option("loop", path, "Loop JSON file")->required();
  add_common(info, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compute) return cmd_compute(common, path);
    if (*pentagon) return cmd_verify_pentagon(common, path, pos, contract);
    if (*dynkin) {
      const DynkinType t = DynkinType::parse(type_a);
      return run_modes(common, mode, dynkin_loop(t), dynkin_form(t));
    }
    if (*square) {
      const DynkinType t = DynkinType::parse(type_a);
      const DynkinType tp = DynkinType::parse(type_b);
      return run_modes(common, mode, square_loop(t, tp, order), square_form(t, tp, order));
    }
    if (*identities) return cmd_check_identities(common);
    if (*info) return cmd_info(common, path);
  } catch (const NotALoopError& e) {
    return report(3, e.what());
  } catch (const DegenerateLoopError& e) {
    return report(4, e.what());
  } catch (const NotPositiveError& e) {
    return report(5, e.what());
  } catch (const PentagonPreconditionError& e) {
    return report(6, e.what());
  } catch (const EnumerationLimitError& e) {
    return report(7, e.what());
  } catch (const Error& e) {
    return report(2, e.what());
  }
  return 2;
}
