#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <conewalk/conewalk.hpp>

#include "io.hpp"

namespace conewalk::cli {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

Window parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("window must be LO,HI");
  Window w;
  try {
    w.lo = std::stoi(text.substr(0, comma));
    w.hi = std::stoi(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("window must be LO,HI, got '" + text + "'");
  }
  return w;
}

MeanderEndpointLaw meander_for(const Cone& cone, std::optional<double> alpha) {
  const double index = cone.meander_index();
  if (alpha && std::abs(*alpha - index) > 1e-6 * index) {
    throw std::invalid_argument("--alpha " + io::num(*alpha) + " does not match the cone index " + io::num(index));
  }
  return MeanderEndpointLaw::from_beta(cone.as_wedge().beta);
}

std::string occupation_json(double mean, double eps) {
  return "{\"statistic\":\"boundary_occupation\",\"value\":" + io::num(mean) + ",\"eps\":" + io::num(eps) + "}";
}

void print_array(std::ostream& out, const std::vector<std::string>& items) {
  out << '[';
  for (std::size_t i = 0; i < items.size(); ++i) out << (i ? "," : "") << items[i];
  out << "]\n";
}

// ---- subcommands

struct TailArgs {
  std::string walk, cone, out, endpoint;
  int nmax = 0;
  double trunc = 0.0;
};

void cmd_tail(const TailArgs& a, unsigned threads, std::ostream& out) {
  const StepDistribution walk = parse_walk(a.walk);
  const Cone cone = parse_cone(a.cone);
  ExactOptions opts;
  opts.truncation = a.trunc;
  opts.threads = threads;
  const TailSeries tail = exact_tail(walk, cone, a.nmax, opts);
  if (a.out.empty()) {
    io::write_tail_csv(out, tail);
  } else {
    auto f = open_out(a.out);
    io::write_tail_csv(f, tail);
  }
  if (!a.endpoint.empty()) {
    auto f = open_out(a.endpoint);
    io::write_endpoint_csv(f, endpoint_law(walk, cone, a.nmax, opts));
  }
}

struct SampleArgs {
  std::string walk, cone, method, out;
  int n = 0;
  int count = 0;
  std::uint64_t seed = 0;
  double exponent = 1.0;
};

void cmd_sample(const SampleArgs& a, unsigned threads, std::ostream& out) {
  const StepDistribution walk = parse_walk(a.walk);
  const Cone cone = parse_cone(a.cone);
  SamplerOptions opts{a.seed, threads};
  const PathEnsemble ens = a.method == "rejection"
                               ? rejection_sample(walk, cone, a.n, a.count, opts)
                               : splitting_sample(walk, cone, a.n, a.count, default_schedule(a.n, a.exponent), opts);
  auto f = open_out(a.out);
  io::write_paths_jsonl(f, ens);
  out << io::ensemble_summary_json(ens) << '\n';
}

struct GofArgs {
  std::string paths, exact, cone;
  std::optional<double> alpha, ess;
  double eps = 0.05;
  double level = 0.01;
  double threshold = kExactDistanceThreshold;
  std::string distance = "ks";
};

void cmd_gof(const GofArgs& a, std::ostream& out) {
  const Cone cone = parse_cone(a.cone);
  const bool half_line = std::holds_alternative<HalfLine1D>(cone.shape());
  std::vector<std::string> reports;
  if (!a.paths.empty()) {
    auto in = open_in(a.paths);
    PathEnsemble ens = io::read_paths_jsonl(in);
    if (a.ess) ens.effective_sample_size = *a.ess;
    if (half_line) {
      reports.push_back(io::to_json(rayleigh_check(ens, cone, a.level)));
    } else {
      const EndpointGof g = endpoint_gof(ens, cone, meander_for(cone, a.alpha), a.level);
      reports.push_back(io::to_json(g.radial));
      reports.push_back(io::to_json(g.angular));
    }
    reports.push_back(occupation_json(boundary_occupation(ens, cone, a.eps).mean, a.eps));
  } else {
    auto in = open_in(a.exact);
    const EndpointLaw law = io::read_endpoint_csv(in);
    if (half_line) {
      reports.push_back(io::to_json(rayleigh_check(law, cone, a.threshold)));
    } else {
      const MeanderEndpointLaw m = meander_for(cone, a.alpha);
      const EndpointGof g = a.distance == "tv" ? endpoint_tv(law, cone, m, a.threshold)
                                               : endpoint_gof(law, cone, m, a.threshold);
      reports.push_back(io::to_json(g.radial));
      reports.push_back(io::to_json(g.angular));
    }
  }
  print_array(out, reports);
}

struct IndexArgs {
  std::string tail, window, method = "loglog";
};

TailSeries load_tail(const std::string& path) {
  auto in = open_in(path);
  return io::read_tail_csv(in);
}

void cmd_index(const IndexArgs& a, std::ostream& out) {
  const TailSeries tail = load_tail(a.tail);
  const Window w = a.window.empty() ? default_window(tail.n_max()) : parse_window(a.window);
  const IndexMethod m = a.method == "ratio" ? IndexMethod::ratio : IndexMethod::loglog_ls;
  out << io::to_json(estimate_index(tail, w, m)) << '\n';
}

struct DomvarArgs {
  std::string tail, window;
  double t = 0.5;
};

void cmd_domvar(const DomvarArgs& a, std::ostream& out) {
  const TailSeries tail = load_tail(a.tail);
  const Window w = a.window.empty() ? default_window(tail.n_max()) : parse_window(a.window);
  const double stat = dominated_variation_stat(tail, a.t, w);
  out << "{\"statistic\":\"dominated_variation\",\"t\":" << io::num(a.t) << ",\"window\":[" << w.lo << ','
      << w.hi << "],\"value\":" << io::num(stat) << "}\n";
}

struct MeanderArgs {
  double alpha = 1.0;
  std::string cdf;
  std::optional<double> at;
  std::optional<int> sample;
  std::optional<std::uint64_t> seed;
};

void cmd_meander(const MeanderArgs& a, std::ostream& out) {
  const MeanderEndpointLaw law = MeanderEndpointLaw::from_alpha(a.alpha);
  if (!a.cdf.empty()) {
    out << io::num(a.cdf == "radial" ? law.radial_cdf(*a.at) : law.angular_cdf(*a.at)) << '\n';
    return;
  }
  RngStream rng(*a.seed);
  out << "r,theta\n";
  for (int i = 0; i < *a.sample; ++i) {
    const PolarPoint p = law.sample(rng);
    out << io::num(p.r) << ',' << io::num(p.theta) << '\n';
  }
}

std::string error_json(const std::exception& e) {
  nlohmann::json j;
  j["error"] = "runtime_error";
  j["message"] = e.what();
  if (const auto* m = dynamic_cast<const MemoryBudgetError*>(&e)) {
    j["error"] = "memory_budget";
    j["required_bytes"] = m->required_bytes();
  } else if (const auto* f = dynamic_cast<const AcceptanceFloorError*>(&e)) {
    j["error"] = "acceptance_floor";
    j["estimate"] = f->estimate();
  } else if (const auto* x = dynamic_cast<const ExtinctionError*>(&e)) {
    j["error"] = "extinction";
    j["level"] = x->level();
    j["checkpoint"] = x->checkpoint();
  } else if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e)) {
    j["error"] = "invalid_argument";
  }
  return j.dump();
}

}  // namespace

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("CONEWALK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random walks conditioned to stay in convex cones", "conewalk"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<unsigned> threads_flag;
  app.add_option("--threads", threads_flag, "Worker threads (default: $CONEWALK_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);

  TailArgs tail;
  auto* tail_cmd = app.add_subcommand("tail", "Exact survival probabilities P(T > n), CSV n,p,err_lo,err_hi");
  tail_cmd->add_option("--walk", tail.walk, "Walk spec")->required();
  tail_cmd->add_option("--cone", tail.cone, "Cone spec")->required();
  tail_cmd->add_option("--nmax", tail.nmax, "Largest n")->required()->check(CLI::NonNegativeNumber);
  tail_cmd->add_option("--trunc", tail.trunc, "Drop states of mass below EPS (bracketed)")->check(CLI::NonNegativeNumber);
  tail_cmd->add_option("--out", tail.out, "Write the CSV here instead of stdout");
  tail_cmd->add_option("--endpoint", tail.endpoint, "Also write the conditional endpoint law at nmax");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Sample paths conditioned on T > n, JSONL");
  sample_cmd->add_option("--walk", sample.walk, "Walk spec")->required();
  sample_cmd->add_option("--cone", sample.cone, "Cone spec")->required();
  sample_cmd->add_option("--n", sample.n, "Path length")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--count", sample.count, "Paths (rejection) or population (splitting)")
      ->required()
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--method", sample.method, "rejection | splitting")
      ->required()
      ->check(CLI::IsMember({"rejection", "splitting"}));
  sample_cmd->add_option("--seed", sample.seed, "Master seed")->required();
  sample_cmd->add_option("--out", sample.out, "Output JSONL")->required();
  sample_cmd->add_option("--schedule-exponent", sample.exponent, "Splitting checkpoints n (j/J)^c")
      ->check(CLI::PositiveNumber);

  GofArgs gof;
  auto* gof_cmd = app.add_subcommand("gof", "Goodness of fit against the meander or Rayleigh law, JSON array");
  auto* paths_opt = gof_cmd->add_option("--paths", gof.paths, "Sampled paths (JSONL)");
  auto* exact_opt = gof_cmd->add_option("--exact", gof.exact, "Endpoint law CSV from tail --endpoint");
  paths_opt->excludes(exact_opt);
  gof_cmd->require_option(1, 0);
  gof_cmd->add_option("--cone", gof.cone, "Cone spec")->required();
  gof_cmd->add_option("--alpha", gof.alpha, "Meander index; must match the cone");
  gof_cmd->add_option("--eps", gof.eps, "Boundary band for occupation")->check(CLI::NonNegativeNumber);
  gof_cmd->add_option("--level", gof.level, "KS significance level")->check(CLI::Range(0.0, 1.0));
  gof_cmd->add_option("--ess", gof.ess, "Effective sample size for the KS threshold")->check(CLI::PositiveNumber);
  gof_cmd->add_option("--threshold", gof.threshold, "Distance threshold for exact laws")->check(CLI::PositiveNumber);
  gof_cmd->add_option("--distance", gof.distance, "ks | tv (exact laws)")->check(CLI::IsMember({"ks", "tv"}));

  IndexArgs index;
  auto* index_cmd = app.add_subcommand("index", "Regular-variation index of a tail CSV");
  index_cmd->add_option("--tail", index.tail, "Tail CSV")->required();
  index_cmd->add_option("--window", index.window, "LO,HI (default nmax/8,nmax)");
  index_cmd->add_option("--method", index.method, "loglog | ratio")->check(CLI::IsMember({"loglog", "ratio"}));

  DomvarArgs domvar;
  auto* domvar_cmd = app.add_subcommand("domvar", "max p([nt])/p(n) over a window");
  domvar_cmd->add_option("--tail", domvar.tail, "Tail CSV")->required();
  domvar_cmd->add_option("--t", domvar.t, "t in (0, 1]")->required()->check(CLI::Range(0.0, 1.0));
  domvar_cmd->add_option("--window", domvar.window, "LO,HI (default nmax/8,nmax)");

  MeanderArgs meander;
  auto* meander_cmd = app.add_subcommand("meander", "Time-one meander law: CDF values or samples");
  meander_cmd->add_option("--alpha", meander.alpha, "Index pi/(2 beta), >= 1/2")->required();
  auto* cdf_opt = meander_cmd->add_option("--cdf", meander.cdf, "radial | angular")
                      ->check(CLI::IsMember({"radial", "angular"}));
  auto* at_opt = meander_cmd->add_option("--at", meander.at, "CDF argument");
  auto* sample_opt = meander_cmd->add_option("--sample", meander.sample, "Number of samples")
                         ->check(CLI::PositiveNumber);
  auto* seed_opt = meander_cmd->add_option("--seed", meander.seed, "Seed (required with --sample)");
  cdf_opt->needs(at_opt);
  at_opt->needs(cdf_opt);
  sample_opt->needs(seed_opt);
  cdf_opt->excludes(sample_opt);

  std::string demo_name;
  auto* demo_cmd = app.add_subcommand("demo", "End-to-end scenarios");
  demo_cmd->add_option("name", demo_name, "quarter-plane | example1 | example2 | rayleigh | octant")
      ->required()
      ->check(CLI::IsMember(demo_names()));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (meander_cmd->parsed() && meander.cdf.empty() && !meander.sample) {
      throw CLI::ValidationError("meander", "give --cdf with --at, or --sample with --seed");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const unsigned threads = resolve_threads(threads_flag);
    if (tail_cmd->parsed()) cmd_tail(tail, threads, out);
    else if (sample_cmd->parsed()) cmd_sample(sample, threads, out);
    else if (gof_cmd->parsed()) cmd_gof(gof, out);
    else if (index_cmd->parsed()) cmd_index(index, out);
    else if (domvar_cmd->parsed()) cmd_domvar(domvar, out);
    else if (meander_cmd->parsed()) cmd_meander(meander, out);
    else if (demo_cmd->parsed()) run_demo(demo_name, threads, out);
  } catch (const std::exception& e) {
    err << error_json(e) << '\n';
    return kExitRuntime;
  }
  return 0;
}

}  // namespace conewalk::cli
