#include "rigidlab/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "rigidlab/bounds.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/io.hpp"
#include "rigidlab/optimizer.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/serialize.hpp"

namespace rigidlab::cli {

namespace {

constexpr const char* kSeedVariable = "RIGIDLAB_SEED";

// Raised for anything that should end in exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::string graph_file;
  std::string config_file;
  int dim = 0;  // 0: take d from the configuration
  std::string json_file;
};

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(std::numeric_limits<double>::max_digits10);
  s << v;
  return s.str();
}

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedVariable);
  if (env == nullptr || *env == '\0') return 1;
  std::uint64_t seed = 0;
  const std::string_view text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError(std::string(kSeedVariable) + " is not an unsigned integer: '" + env + "'");
  return seed;
}

Json manifest(const std::string& command, const std::vector<std::string>& inputs,
              Json parameters) {
  return {{"command", command},
          {"inputs", inputs},
          {"parameters", std::move(parameters)},
          {"version", RIGIDLAB_VERSION}};
}

void emit(const Json& doc, const std::string& summary, const std::string& json_file,
          std::ostream& out) {
  if (json_file.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    std::ofstream file(json_file);
    if (!file) throw UsageError("cannot write '" + json_file + "'");
    file << doc.dump(2) << '\n';
  }
  out << summary << '\n';
}

Framework load_framework(const Inputs& in) {
  Graph g = io::read_graph_file(in.graph_file);
  Configuration c = io::read_configuration_file(in.config_file);
  if (in.dim < 0) throw UsageError("d must be at least 1");
  if (in.dim > 0 && c.dim() != in.dim)
    throw UsageError("configuration has " + std::to_string(c.dim()) + " columns but d = " +
                     std::to_string(in.dim));
  if (c.size() != g.vertex_count())
    throw UsageError("configuration has " + std::to_string(c.size()) + " rows but the graph has " +
                     std::to_string(g.vertex_count()) + " vertices");
  return Framework(std::move(g), std::move(c));
}

Json nullable(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

int cmd_spectrum(const Inputs& in, std::ostream& out) {
  const Framework fw = load_framework(in);
  const Spectrum stiff = eigh(stiffness_matrix(fw));
  const Spectrum lap = eigh(laplacian(fw.graph()));

  std::optional<double> rigidity;
  if (fw.dim() * fw.vertex_count() > fw.trivial_dim()) rigidity = rigidity_eigenvalue(fw, stiff);
  std::optional<double> a1;
  if (fw.vertex_count() >= 2) a1 = algebraic_connectivity(fw.graph()).value;

  Json doc = {
      {"manifest", manifest("spectrum", {in.graph_file, in.config_file},
                            {{"d", fw.dim()},
                             {"affine_tolerance", fw.options().affine_tolerance},
                             {"coincidence_tolerance", fw.options().coincidence_tolerance}})},
      {"d", fw.dim()},
      {"n", fw.vertex_count()},
      {"m", fw.affine_dimension()},
      {"D", fw.trivial_dim()},
      {"stiffness_spectrum", to_json(stiff.values)},
      {"rigidity_eigenvalue", nullable(rigidity)},
      {"infinitesimally_rigid", rigidity ? Json(*rigidity > kRigidityTolerance) : Json(nullptr)},
      {"laplacian_spectrum", to_json(lap.values)},
      {"a_1", nullable(a1)}};

  std::string summary = "m=" + std::to_string(fw.affine_dimension()) +
                        " D=" + std::to_string(fw.trivial_dim()) + " rigidity_eigenvalue=" +
                        (rigidity ? format_double(*rigidity) : "null") +
                        " a_1=" + (a1 ? format_double(*a1) : "null");
  emit(doc, summary, in.json_file, out);
  return kSuccess;
}

std::vector<BoundReport> run_lemma1(const Framework& fw) {
  if (fw.affine_dimension() > 1) {
    BoundReport r = BoundReport::skip(
        "lemma1", "affine dimension " + std::to_string(fw.affine_dimension()) + " exceeds 1");
    r.context["m"] = static_cast<long long>(fw.affine_dimension());
    return {r};
  }
  return lemma1_check(fw);
}

BoundReport run_lemma2(const Framework& fw) {
  const Vector x = fw.line_direction() ? *fw.line_direction() : Vector(Vector::Unit(fw.dim(), 0));
  return lemma2_check(fw, x, algebraic_connectivity(fw.graph()).fiedler);
}

int cmd_check(const Inputs& in, const std::string& which, std::ostream& out) {
  const Framework fw = load_framework(in);
  if (fw.vertex_count() < 2) throw UsageError("check needs a graph with at least 2 vertices");

  const bool all = which == "all";
  std::vector<BoundReport> reports;
  auto append = [&](std::vector<BoundReport> more) {
    for (auto& r : more) reports.push_back(std::move(r));
  };
  if (all || which == "lemma1") append(run_lemma1(fw));
  if (all || which == "lemma2") reports.push_back(run_lemma2(fw));
  if (all || which == "jordan") append(jordan_bound_check(fw));
  if (all || which == "theorem") reports.push_back(theorem_check(fw));
  if (all || which == "witness") append(witness_verify(fw));

  const std::string summary = summary_line(reports);
  Json doc = {{"manifest", manifest("check", {in.graph_file, in.config_file},
                                    {{"d", fw.dim()}, {"which", which}, {"tolerance", 1e-9}})},
              {"reports", to_json(reports)}};
  emit(doc, summary, in.json_file, out);
  return all_hold(reports) ? kSuccess : kCheckFailed;
}

struct EstimateArgs {
  std::string graph_file;
  int dim = 0;
  int restarts = 20;
  std::optional<std::uint64_t> seed;
  int max_iters = 500;
  std::string gradient = "analytic";
  std::string json_file;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  if (a.dim < 1) throw UsageError("d must be at least 1");
  const Graph g = io::read_graph_file(a.graph_file);
  if (g.vertex_count() < 2) throw UsageError("estimate needs a graph with at least 2 vertices");

  OptimizerConfig cfg;
  cfg.restarts = a.restarts;
  cfg.seed = a.seed ? *a.seed : default_seed();
  cfg.max_iters = a.max_iters;
  cfg.gradient = a.gradient == "fd" ? GradientMode::finite_difference : GradientMode::analytic;
  try {
    cfg.validate();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }

  const EstimateResult r = estimate_ad(g, a.dim, cfg);
  Json doc = to_json(r);
  doc["manifest"] = manifest("estimate", {a.graph_file},
                             {{"d", a.dim},
                              {"restarts", cfg.restarts},
                              {"seed", cfg.seed},
                              {"max_iters", cfg.max_iters},
                              {"gradient", a.gradient},
                              {"initial_step", cfg.initial_step},
                              {"min_step", cfg.min_step},
                              {"stall_tolerance", cfg.stall_tolerance}});
  const std::string summary = "a_d_lower=" + format_double(r.best_value) +
                              " a_1=" + format_double(r.algebraic_connectivity) +
                              " margin=" + format_double(r.certificate);
  emit(doc, summary, a.json_file, out);
  return r.violation ? kCheckFailed : kSuccess;
}

struct FuzzArgs {
  int samples = 100;
  int max_n = 10;
  int max_d = 4;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "rigidlab-fuzz-failures";
  std::string json_file;
};

struct FuzzSample {
  Graph graph;
  Configuration config;
  Vector x;
  Vector v;
};

// Random framework: mostly generic Gaussian points, plus collinear
// configurations with repeated points, a forced coincident pair, and points
// confined to a plane.
FuzzSample draw_sample(std::mt19937_64& rng, Index max_n, Index max_d) {
  std::uniform_int_distribution<Index> n_dist(2, max_n);
  std::uniform_int_distribution<Index> d_dist(1, max_d);
  std::uniform_real_distribution<double> prob_dist(0.15, 1.0);
  std::uniform_int_distribution<int> variant_dist(0, 9);
  std::normal_distribution<double> normal;

  const Index n = n_dist(rng);
  const Index d = d_dist(rng);
  Graph g = generate::erdos_renyi(n, prob_dist(rng), rng());

  auto gaussian = [&](Index size) {
    Vector out(size);
    for (Index k = 0; k < size; ++k) out(k) = normal(rng);
    return out;
  };

  Matrix m(n, d);
  const int variant = variant_dist(rng);
  if (variant <= 5) {
    for (Index i = 0; i < n; ++i) m.row(i) = gaussian(d).transpose();
  } else if (variant <= 7) {
    const Vector x = gaussian(d).normalized();
    const Vector c = gaussian(d);
    std::uniform_int_distribution<int> slot(-2, 2);
    for (Index i = 0; i < n; ++i) m.row(i) = (c + static_cast<double>(slot(rng)) * x).transpose();
  } else if (variant == 8) {
    for (Index i = 0; i < n; ++i) m.row(i) = gaussian(d).transpose();
    m.row(1) = m.row(0);
  } else {
    const Vector a = gaussian(d);
    const Vector b = gaussian(d);
    for (Index i = 0; i < n; ++i) m.row(i) = (normal(rng) * a + normal(rng) * b).transpose();
  }

  FuzzSample s{std::move(g), Configuration(std::move(m)), gaussian(d).normalized(), gaussian(n)};
  return s;
}

// Collapses a list of reports into the one with the least slack.
BoundReport tightest(std::string name, const std::vector<BoundReport>& reports) {
  BoundReport worst = reports.front();
  for (const auto& r : reports)
    if (r.margin + r.tol < worst.margin + worst.tol) worst = r;
  worst.context["sub_check"] = worst.name;
  worst.context["sub_checks"] = static_cast<long long>(reports.size());
  worst.name = std::move(name);
  worst.holds = all_hold(reports);
  return worst;
}

BoundReport guarded(const std::string& name, const std::function<BoundReport()>& check) {
  try {
    return check();
  } catch (const std::exception& e) {
    BoundReport r;
    r.name = name;
    r.holds = false;
    r.context["error"] = std::string(e.what());
    return r;
  }
}

int cmd_fuzz(const FuzzArgs& a, std::ostream& out) {
  if (a.samples < 0) throw UsageError("--samples must be non-negative");
  if (a.max_n < 2) throw UsageError("--max-n must be at least 2");
  if (a.max_d < 1) throw UsageError("--max-d must be at least 1");
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();

  std::vector<BoundReport> all;
  Json failures = Json::array();
  for (int s = 0; s < a.samples; ++s) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    const FuzzSample sample = draw_sample(rng, a.max_n, a.max_d);
    const Framework fw(sample.graph, sample.config);

    std::vector<BoundReport> checks{
        guarded("theorem", [&] { return theorem_check(fw); }),
        guarded("jordan", [&] { return tightest("jordan", jordan_bound_check(fw)); }),
        guarded("lemma2", [&] { return lemma2_check(fw, sample.x, sample.v); }),
        guarded("witness", [&] { return tightest("witness", witness_verify(fw)); })};

    for (auto& r : checks) {
      r.context["sample"] = static_cast<long long>(s);
      if (!r.holds) {
        std::filesystem::create_directories(a.out_dir);
        const std::string stem = a.out_dir + "/sample_" + std::to_string(s);
        io::write_graph_file(stem + ".graph", sample.graph);
        io::write_configuration_file(stem + ".csv", sample.config);
        failures.push_back({{"sample", s},
                            {"check", r.name},
                            {"graph_file", stem + ".graph"},
                            {"config_file", stem + ".csv"},
                            {"report", to_json(r)}});
      }
      all.push_back(std::move(r));
    }
  }

  const std::string summary = summary_line(all);
  std::size_t failed = 0;
  for (const auto& r : all) failed += r.holds ? 0 : 1;
  Json doc = {{"manifest", manifest("fuzz", {},
                                    {{"samples", a.samples},
                                     {"max_n", a.max_n},
                                     {"max_d", a.max_d},
                                     {"seed", seed},
                                     {"out_dir", a.out_dir}})},
              {"checked", all.size()},
              {"failed", failed},
              {"failures", failures}};
  emit(doc, summary, a.json_file, out);
  return failed == 0 ? kSuccess : kCheckFailed;
}

void add_inputs(CLI::App* sub, Inputs& in) {
  sub->add_option("graph", in.graph_file, "Graph file ('n <N>' header, one 'i j' edge per line)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("config", in.config_file, "Configuration CSV, one row of d coordinates per vertex")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("-d,--dim", in.dim, "Ambient dimension (default: CSV column count)");
  sub->add_option("--json", in.json_file, "Write JSON here instead of standard output");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigidity spectra, algebraic connectivity bounds and a_d(G) estimation",
               "rigidlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(RIGIDLAB_VERSION));

  Inputs spectrum_in;
  auto* spectrum = app.add_subcommand("spectrum", "Stiffness and Laplacian spectra of a framework");
  add_inputs(spectrum, spectrum_in);

  Inputs check_in;
  std::string which = "all";
  auto* check = app.add_subcommand("check", "Evaluate the bounds on a framework");
  add_inputs(check, check_in);
  check->add_option("--which", which, "Which check to run")
      ->check(CLI::IsMember({"lemma1", "lemma2", "jordan", "theorem", "witness", "all"}));

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Lower-bound a_d(G) by multi-restart ascent");
  estimate->add_option("graph", est.graph_file, "Graph file")->required()->check(CLI::ExistingFile);
  estimate->add_option("-d,--dim", est.dim, "Ambient dimension")->required();
  estimate->add_option("--restarts", est.restarts, "Number of restarts");
  estimate->add_option("--seed", est.seed, "Random seed (default: $RIGIDLAB_SEED or 1)");
  estimate->add_option("--max-iters", est.max_iters, "Iterations per restart");
  estimate->add_option("--gradient", est.gradient, "Gradient mode")
      ->check(CLI::IsMember({"analytic", "fd"}));
  estimate->add_option("--json", est.json_file, "Write JSON here instead of standard output");

  FuzzArgs fz;
  auto* fuzz = app.add_subcommand("fuzz", "Check every bound on random frameworks");
  fuzz->add_option("--samples", fz.samples, "Number of random frameworks");
  fuzz->add_option("--max-n", fz.max_n, "Largest vertex count");
  fuzz->add_option("--max-d", fz.max_d, "Largest dimension");
  fuzz->add_option("--seed", fz.seed, "Random seed (default: $RIGIDLAB_SEED or 1)");
  fuzz->add_option("--out-dir", fz.out_dir, "Where failing samples are written");
  fuzz->add_option("--json", fz.json_file, "Write JSON here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_in, out);
    if (check->parsed()) return cmd_check(check_in, which, out);
    if (estimate->parsed()) return cmd_estimate(est, out);
    if (fuzz->parsed()) return cmd_fuzz(fz, out);
  } catch (const UsageError& e) {
    err << "rigidlab: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "rigidlab: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidInput& e) {
    err << "rigidlab: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "rigidlab: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsageError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"rigidlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rigidlab::cli
