#include "bmtk/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "bmtk/bmgf.hpp"
#include "bmtk/corpus.hpp"
#include "bmtk/errors.hpp"
#include "bmtk/gauge.hpp"
#include "bmtk/kernels.hpp"
#include "bmtk/littlewood_paley.hpp"
#include "bmtk/paraproduct.hpp"
#include "bmtk/wente.hpp"

namespace bmtk {

namespace fs = std::filesystem;

BallFamily RunConfig::balls() const {
  BallFamily b = BallFamily::standard(grid);
  if (exhaustive_balls) b.stride = 1;
  else if (ball_stride > 0) b.stride = ball_stride;
  b.validate(grid);
  return b;
}

Json to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"n", c.grid.dim},
          {"N", c.grid.points},
          {"L", c.grid.length},
          {"family", to_string(c.space.family)},
          {"s", c.space.s},
          {"p", c.space.p},
          {"q", c.space.q},
          {"r", c.space.r},
          {"ball_stride", c.ball_stride},
          {"exhaustive_balls", c.exhaustive_balls},
          {"input", c.input},
          {"input_b", c.input_b},
          {"axes", c.axes},
          {"lambdas", c.lambdas},
          {"sizes", c.sizes},
          {"levels", c.levels},
          {"m", c.m},
          {"epsilon", c.epsilon},
          {"seed", c.seed},
          {"tol", c.tol},
          {"max_iter", c.max_iter},
          {"damping", c.damping},
          {"epsilon_max", c.epsilon_max},
          {"delta", c.delta},
          {"conservation_sizes", c.conservation_sizes},
          {"export_fields", c.export_fields},
          {"out", c.out},
          {"threads", c.threads}};
}

namespace {

template <class T>
T get_as(const Json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const Json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

std::vector<double> number_list(const Json& v, const std::string& key) {
  if (!v.is_array()) throw UsageError("config key '" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(json_number(x));
  return out;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot read " + what + " from '" + text + "'");
  }
}

}  // namespace

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  RunConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const Json& v = it.value();
    if (k == "command") c.command = get_as<std::string>(v, k);
    else if (k == "n") c.grid.dim = get_as<int>(v, k);
    else if (k == "N") c.grid.points = get_as<int>(v, k);
    else if (k == "L") c.grid.length = json_number(v);
    else if (k == "family") c.space.family = family_from_string(get_as<std::string>(v, k));
    else if (k == "s") c.space.s = json_number(v);
    else if (k == "p") c.space.p = json_number(v);
    else if (k == "q") c.space.q = json_number(v);
    else if (k == "r") c.space.r = json_number(v);
    else if (k == "ball_stride") c.ball_stride = get_as<int>(v, k);
    else if (k == "exhaustive_balls") c.exhaustive_balls = get_as<bool>(v, k);
    else if (k == "input") c.input = get_as<std::string>(v, k);
    else if (k == "input_b") c.input_b = get_as<std::string>(v, k);
    else if (k == "axes") c.axes = get_as<std::vector<int>>(v, k);
    else if (k == "lambdas") c.lambdas = number_list(v, k);
    else if (k == "sizes") c.sizes = get_as<std::vector<int>>(v, k);
    else if (k == "levels") c.levels = get_as<std::vector<int>>(v, k);
    else if (k == "m") c.m = get_as<int>(v, k);
    else if (k == "epsilon") c.epsilon = json_number(v);
    else if (k == "seed") c.seed = get_as<std::uint64_t>(v, k);
    else if (k == "tol") c.tol = json_number(v);
    else if (k == "max_iter") c.max_iter = get_as<int>(v, k);
    else if (k == "damping") c.damping = json_number(v);
    else if (k == "epsilon_max") c.epsilon_max = json_number(v);
    else if (k == "delta") c.delta = json_number(v);
    else if (k == "conservation_sizes") c.conservation_sizes = get_as<std::vector<int>>(v, k);
    else if (k == "export_fields") c.export_fields = get_as<bool>(v, k);
    else if (k == "out") c.out = get_as<std::string>(v, k);
    else if (k == "threads") c.threads = get_as<int>(v, k);
    else throw UsageError("unknown config key '" + k + "'");
  }
  return c;
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"decompose", "norm",    "paraproduct", "wente",
                                              "counterexample", "scaling", "gauge", "embed-check"};
  return names;
}

namespace {

bool is_builtin(const std::string& name) {
  for (const auto& b : builtin_names())
    if (b == name) return true;
  return false;
}

GridFunction load_field(const std::string& name, RunConfig& config) {
  if (is_builtin(name)) return builtin_field(name, config.grid);
  if (!fs::exists(name)) throw UsageError("input '" + name + "' is neither a builtin field nor a file");
  GridFunction f = read_bmgf(fs::path(name));
  config.grid = f.spec();
  return f;
}

void write_text(const RunConfig& c, const std::string& file, const std::string& text) {
  if (c.out.empty()) return;
  fs::create_directories(c.out);
  std::ofstream os(fs::path(c.out) / file, std::ios::binary);
  if (!os) throw UsageError("cannot write " + (fs::path(c.out) / file).string());
  os << text;
}

void export_field(const RunConfig& c, const std::string& file, const GridFunction& f) {
  if (c.out.empty()) return;
  fs::create_directories(c.out);
  write_bmgf(fs::path(c.out) / file, f);
}

std::pair<int, int> axes_of(const RunConfig& c) {
  if (c.axes.size() != 2) throw UsageError("axes must list exactly two axes");
  return {c.axes[0], c.axes[1]};
}

double energy(const GridFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return s * f.spec().cell_volume();
}

double relative_max_error(const GridFunction& a, const GridFunction& b) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
  const double scale = b.max_abs();
  return scale > 0.0 ? err / scale : err;
}

Json cmd_decompose(RunConfig& c) {
  const GridFunction f = load_field(c.input, c);
  const PartitionOfUnity part(f.spec());
  const DyadicDecomposition d = decompose(f, part);
  Json energies = Json::array();
  double sum = 0.0;
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    const double e = energy(d.blocks[j]);
    energies.push_back(e);
    sum += e;
    export_field(c, "block_" + std::to_string(j) + ".bmgf", d.blocks[j]);
  }
  return {{"j_max", part.j_max()},
          {"energies", energies},
          {"energy_sum", sum},
          {"total_energy", energy(f)},
          {"reconstruction_error", relative_max_error(reconstruct(d), f)}};
}

Json cmd_norm(RunConfig& c) {
  c.space.validate();
  const GridFunction f = load_field(c.input, c);
  const PartitionOfUnity part(f.spec());
  const NormResult r = evaluate_norm(FieldComponents(&f, 1), c.space, part, c.balls());
  Json out = to_json(r);
  out["space"] = to_json(c.space);
  return out;
}

Json cmd_paraproduct(RunConfig& c) {
  const GridFunction f = load_field(c.input, c);
  const GridFunction g = load_field(c.input_b, c);
  const PartitionOfUnity part(f.spec());
  const auto [i, j] = axes_of(c);
  const ParaproductSplit split = split_product(f, g, part);
  const JacobianSplit js = jacobian_split(f, g, i, j, part);
  const GridFunction product = multiply(f, g);
  Json support = Json::array();
  for (int l : c.levels) {
    support.push_back(to_json(support_check(f, g, l, SupportKind::LowHigh, part)));
    support.push_back(to_json(support_check(f, g, l, SupportKind::Diagonal, part)));
  }
  if (c.export_fields) {
    export_field(c, "pi1.bmgf", split.pi1);
    export_field(c, "pi2.bmgf", split.pi2);
    export_field(c, "pi3.bmgf", split.pi3);
  }
  return {{"split_error", relative_max_error(split.total(), product)},
          {"jacobian_split_error", relative_max_error(js.total(), jacobian(f, g, i, j))},
          {"support", support},
          {"stability", to_json(stability_report(f, g, part, c.balls()))}};
}

Json wente_entry(const GridFunction& a, const GridFunction& b, const RunConfig& c) {
  const auto [i, j] = axes_of(c);
  const BallFamily balls = c.balls();
  const WenteSolution sol = solve_wente(a, b, i, j, balls);
  Json e = to_json(sol.report);
  e["hessian"] = to_json(hessian_report(a, b, i, j, balls));
  return e;
}

Json cmd_wente(RunConfig& c) {
  if (c.input == "corpus") {
    const auto bumps = corpus_bumps(c.grid);
    Json rows = Json::array();
    double u = 0, g = 0, h = 0;
    for (int k = 0; k < kCorpusSize; ++k) {
      Json e = wente_entry(bumps[static_cast<std::size_t>(k)],
                           bumps[static_cast<std::size_t>((k + 1) % kCorpusSize)], c);
      u = std::max(u, e["u_ratio"].get<double>());
      g = std::max(g, e["grad_ratio"].get<double>());
      h = std::max(h, e["hess_ratio"].get<double>());
      rows.push_back(std::move(e));
    }
    return {{"pairs", rows}, {"max_u_ratio", u}, {"max_grad_ratio", g}, {"max_hess_ratio", h}};
  }
  const GridFunction a = load_field(c.input, c);
  const GridFunction b = load_field(c.input_b, c);
  if (c.export_fields) {
    const auto [i, j] = axes_of(c);
    export_field(c, "u.bmgf", solve_wente(a, b, i, j, c.balls()).u);
  }
  return wente_entry(a, b, c);
}

Json cmd_counterexample(RunConfig& c) {
  std::vector<CounterexampleRow> rows;
  Json list = Json::array();
  for (int N : c.sizes) {
    rows.push_back(counterexample_run(N, c.grid.length));
    list.push_back(to_json(rows.back()));
  }
  const std::string csv = counterexample_csv(rows);
  write_text(c, "counterexample.csv", csv);
  return {{"rows", list}, {"csv", csv}};
}

Json cmd_scaling(RunConfig& c) {
  const GridFunction f = load_field(c.input, c);
  return to_json(scaling_check(f, c.space, c.lambdas, c.balls()));
}

Json cmd_gauge(RunConfig& c) {
  GaugeOptions opt{c.tol, c.max_iter, c.damping, c.epsilon_max};
  const FormField omega = random_omega(c.m, c.grid, c.epsilon, c.seed);
  const GaugePair g = construct_gauge(omega, opt);
  Json out = to_json(g);
  out["method"] =
      "torus fixed point A = id + Lap^-1 div(A Omega) (mean id), B = (-Lap)^-1 d(A Omega); "
      "replaces the Coulomb gauge construction";
  out["epsilon"] = c.epsilon;
  out["seed"] = c.seed;
  if (!c.conservation_sizes.empty()) {
    std::vector<ConservationRow> rows;
    Json list = Json::array();
    for (int N : c.conservation_sizes) {
      rows.push_back(conservation_run(c.grid.dim, N, c.delta, c.seed, opt));
      list.push_back(to_json(rows.back()));
    }
    const std::string csv = conservation_csv(rows);
    write_text(c, "conservation.csv", csv);
    out["conservation"] = list;
    out["conservation_csv"] = csv;
  }
  return out;
}

Json embed_entry(const GridFunction& f, const RunConfig& c) {
  const BallFamily balls = c.balls();
  Json e;
  e["embedding"] = to_json(embedding_report(f, c.space.p, c.space.q, c.space.r, balls));
  if (supported_in_half_box(f))
    e["equivalence"] = to_json(norm_equivalence_report(f, c.space.p, c.space.q, c.space.r, balls));
  else
    e["equivalence"] = nullptr;
  return e;
}

Json cmd_embed_check(RunConfig& c) {
  if (c.input == "corpus") {
    Json rows = Json::array();
    double worst = 0.0;
    for (const auto& f : corpus_bumps(c.grid)) {
      Json e = embed_entry(f, c);
      worst = std::max(worst, e["embedding"]["ratio"].get<double>());
      rows.push_back(std::move(e));
    }
    return {{"fields", rows}, {"max_ratio", worst}};
  }
  const GridFunction f = load_field(c.input, c);
  return embed_entry(f, c);
}

}  // namespace

Json execute(const RunConfig& config) {
  RunConfig c = config;
  c.grid.validate();
  kernels::set_thread_count(c.threads);
  Json body;
  if (c.command == "decompose") body = cmd_decompose(c);
  else if (c.command == "norm") body = cmd_norm(c);
  else if (c.command == "paraproduct") body = cmd_paraproduct(c);
  else if (c.command == "wente") body = cmd_wente(c);
  else if (c.command == "counterexample") body = cmd_counterexample(c);
  else if (c.command == "scaling") body = cmd_scaling(c);
  else if (c.command == "gauge") body = cmd_gauge(c);
  else if (c.command == "embed-check") body = cmd_embed_check(c);
  else throw UsageError("unknown subcommand '" + c.command + "'");
  Json out;
  out["config"] = to_json(config);
  out["version"] = kVersion;
  out["result"] = std::move(body);
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    std::ofstream os(fs::path(c.out) / (c.command + ".json"), std::ios::binary);
    os << canonical_dump(out);
  }
  return out;
}

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Littlewood-Paley, Morrey and Besov-Morrey toolkit"};
  std::string command, config_path, out_dir, family, input, input_b, s_text, p_text, q_text, r_text;
  int threads = 0, dim = 0, points = 0, m = 0, max_iter = 0, ball_stride = 0;
  std::uint64_t seed = 0;
  double length = 0, epsilon = 0, tol = 0, damping = 0, epsilon_max = 0, delta = 0;
  std::vector<double> lambdas;
  std::vector<int> sizes, levels, axes, conservation_sizes;
  bool exhaustive = false, export_fields = false;

  auto* o_cmd = app.add_option("command", command, "subcommand: decompose, norm, paraproduct, wente, counterexample, scaling, gauge, embed-check");
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_threads = app.add_option("--threads", threads, "worker thread cap");
  auto* o_seed = app.add_option("--seed", seed, "random seed");
  auto* o_dim = app.add_option("--dim", dim, "spatial dimension n");
  auto* o_points = app.add_option("--points", points, "samples per axis N");
  auto* o_length = app.add_option("--length", length, "box side L");
  auto* o_family = app.add_option("--family", family, "space family");
  auto* o_s = app.add_option("--s", s_text, "smoothness s");
  auto* o_p = app.add_option("--p", p_text, "integrability p");
  auto* o_q = app.add_option("--q", q_text, "local integrability q");
  auto* o_r = app.add_option("--r", r_text, "summability r (inf allowed)");
  auto* o_input = app.add_option("--input", input, "builtin field, BMGF path or corpus");
  auto* o_input_b = app.add_option("--input-b", input_b, "second field");
  auto* o_axes = app.add_option("--axes", axes, "two axes for Jacobians");
  auto* o_lambdas = app.add_option("--lambdas", lambdas, "dilation factors");
  auto* o_sizes = app.add_option("--sizes", sizes, "grid sizes for sweeps");
  auto* o_levels = app.add_option("--levels", levels, "blocks for support checks");
  auto* o_m = app.add_option("--m", m, "matrix size");
  auto* o_eps = app.add_option("--epsilon", epsilon, "gauge epsilon");
  auto* o_tol = app.add_option("--tol", tol, "gauge tolerance");
  auto* o_iter = app.add_option("--max-iter", max_iter, "gauge iteration cap");
  auto* o_damp = app.add_option("--damping", damping, "gauge damping");
  auto* o_emax = app.add_option("--epsilon-max", epsilon_max, "largest admissible epsilon");
  auto* o_delta = app.add_option("--delta", delta, "manufactured perturbation size");
  auto* o_cons = app.add_option("--conservation-sizes", conservation_sizes, "grid sizes for the conservation sweep");
  auto* o_stride = app.add_option("--ball-stride", ball_stride, "ball center stride");
  auto* o_exh = app.add_flag("--exhaustive-balls", exhaustive, "every node as a ball center");
  auto* o_export = app.add_flag("--export", export_fields, "write fields as BMGF under --out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunConfig c;
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      Json j;
      try {
        j = Json::parse(is);
      } catch (const Json::exception& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
      }
      c = config_from_json(j);
    }
    auto set = [](CLI::Option* o) { return o->count() > 0; };
    if (set(o_cmd)) c.command = command;
    if (set(o_out)) c.out = out_dir;
    if (set(o_threads)) c.threads = threads;
    if (set(o_seed)) c.seed = seed;
    if (set(o_dim)) c.grid.dim = dim;
    if (set(o_points)) c.grid.points = points;
    if (set(o_length)) c.grid.length = length;
    if (set(o_family)) c.space.family = family_from_string(family);
    if (set(o_s)) c.space.s = parse_number(s_text, "s");
    if (set(o_p)) c.space.p = parse_number(p_text, "p");
    if (set(o_q)) c.space.q = parse_number(q_text, "q");
    if (set(o_r)) c.space.r = parse_number(r_text, "r");
    if (set(o_input)) c.input = input;
    if (set(o_input_b)) c.input_b = input_b;
    if (set(o_axes)) c.axes = axes;
    if (set(o_lambdas)) c.lambdas = lambdas;
    if (set(o_sizes)) c.sizes = sizes;
    if (set(o_levels)) c.levels = levels;
    if (set(o_m)) c.m = m;
    if (set(o_eps)) c.epsilon = epsilon;
    if (set(o_tol)) c.tol = tol;
    if (set(o_iter)) c.max_iter = max_iter;
    if (set(o_damp)) c.damping = damping;
    if (set(o_emax)) c.epsilon_max = epsilon_max;
    if (set(o_delta)) c.delta = delta;
    if (set(o_cons)) c.conservation_sizes = conservation_sizes;
    if (set(o_stride)) c.ball_stride = ball_stride;
    if (set(o_exh)) c.exhaustive_balls = exhaustive;
    if (set(o_export)) c.export_fields = export_fields;
    if (c.command.empty()) throw UsageError("no subcommand given");

    out << canonical_dump(execute(c));
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bmtk
