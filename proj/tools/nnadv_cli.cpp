// Command-line front end: generate instances, certify the adversarial tour,
// sweep start cities, validate tours, and draw tours as SVG.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nnadv/nnadv.hpp"

namespace {

using namespace nnadv;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw CLI::ValidationError(what, "'" + text + "' is not an integer");
  return v;
}

/// `3`, `0..8`, or `0,2,5`.
std::vector<int> parse_k_range(const std::string& text) {
  std::vector<int> ks;
  for (const std::string& part : split(text, ',')) {
    if (auto dots = part.find(".."); dots != std::string::npos) {
      const int lo = parse_int(part.substr(0, dots), "--k");
      const int hi = parse_int(part.substr(dots + 2), "--k");
      if (hi < lo) throw CLI::ValidationError("--k", "empty range '" + part + "'");
      for (int k = lo; k <= hi; ++k) ks.push_back(k);
    } else {
      ks.push_back(parse_int(part, "--k"));
    }
  }
  if (ks.empty()) throw CLI::ValidationError("--k", "no value given");
  for (int k : ks) {
    if (k < 0 || k > 16) throw CLI::ValidationError("--k", "k must lie in 0..16");
  }
  return ks;
}

MetricSpec parse_metric(const std::string& text) {
  try {
    return MetricSpec::parse(text);
  } catch (const Error& e) {
    throw CLI::ValidationError("--metric", e.what());
  }
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct InstanceOptions {
  std::string k = "";
  long cols = 0;
  std::string metric = "l2";

  void add(CLI::App* cmd) {
    cmd->add_option("--k", k, "Family level k of G_k");
    cmd->add_option("--cols", cols, "Plain 2 x cols grid instead of G_k")->check(CLI::Range(2L, 1L << 20));
    cmd->add_option("--metric", metric, "l1, l2, linf, l<p> or graphic");
  }

  Instance build() const {
    const MetricSpec m = parse_metric(metric);
    if (cols > 0) {
      if (!k.empty()) throw CLI::ValidationError("--cols", "give either --k or --cols");
      return generate_grid(cols, m);
    }
    if (k.empty()) throw CLI::ValidationError("--k", "an instance needs --k or --cols");
    const auto ks = parse_k_range(k);
    if (ks.size() != 1) throw CLI::ValidationError("--k", "expected a single k");
    return generate_gk(ks.front(), m);
  }
};

std::vector<std::size_t> parse_starts(const std::string& text, const Instance& instance) {
  std::vector<std::size_t> starts;
  if (text == "all") return starts;
  if (text == "l") return {instance.landmark_l()};
  for (const std::string& part : split(text, ',')) {
    const int s = parse_int(part, "--start");
    if (s < 0 || static_cast<std::size_t>(s) >= instance.size()) {
      throw CLI::ValidationError("--start", "start city " + part + " is out of range");
    }
    starts.push_back(static_cast<std::size_t>(s));
  }
  return starts;
}

int run_generate(const InstanceOptions& io, const std::string& format, const std::string& output,
                 const std::string& scheme, long scale, unsigned long seed) {
  Instance instance = io.build();
  if (scheme != "none" || scale > 1) instance = perturb(instance, parse_perturb_scheme(scheme), scale, seed);
  std::string content;
  if (format == "tsplib") {
    content = export_instance(instance);
  } else if (format == "json") {
    content = instance_json(instance);
  } else {
    throw CLI::ValidationError("--format", "generate writes tsplib or json");
  }
  emit(output, content);
  std::ostream& info = (output.empty() || output == "-") ? std::cerr : std::cout;
  info << "n=" << instance.size() << " l=" << instance.landmark_l() << " m=" << instance.landmark_m() << '\n';
  return 0;
}

int run_certify(const std::string& krange, const std::string& metrics, const std::string& format,
                const std::string& output, const std::string& tour_file) {
  const auto ks = parse_k_range(krange);
  std::vector<MetricSpec> specs;
  for (const std::string& m : split(metrics, ',')) specs.push_back(parse_metric(m));
  if (specs.empty()) throw CLI::ValidationError("--metrics", "no metric given");
  std::optional<TourPath> tour;
  if (!tour_file.empty()) {
    if (ks.size() != 1) throw CLI::ValidationError("--tour-file", "needs a single k");
    tour = parse_tour(slurp(tour_file));
  }

  const auto cells = parallel_map(ks.size() * specs.size(), threads_from_env(), [&](std::size_t i) {
    return certify_cell(ks[i / specs.size()], specs[i % specs.size()], tour);
  });
  std::string content;
  if (format == "text") {
    content = certify_text(cells);
  } else if (format == "csv") {
    content = certify_csv(cells);
  } else if (format == "json") {
    content = certify_json(cells);
  } else {
    throw CLI::ValidationError("--format", "certify writes text, csv or json");
  }
  emit(output, content);
  bool ok = true;
  for (const auto& c : cells) ok = ok && c.passed();
  if (!ok && format != "text") std::cerr << certify_text(cells);
  return ok ? 0 : 1;
}

int run_sweep(const InstanceOptions& io, const std::string& policies, const std::string& start_text,
              const std::string& format, const std::string& output) {
  const Instance instance = io.build();
  const auto starts = parse_starts(start_text, instance);
  std::vector<SweepRow> rows;
  std::vector<TieBreakPolicy> plain;
  bool adversarial = false;
  for (const std::string& name : split(policies, ',')) {
    if (name == "adversarial") {
      adversarial = true;
    } else {
      try {
        plain.push_back(TieBreakPolicy::parse(name));
      } catch (const Error& e) {
        throw CLI::ValidationError("--policy", e.what());
      }
    }
  }
  if (!plain.empty()) rows = start_sweep(instance, plain, starts, threads_from_env());
  if (adversarial) {
    if (!instance.family_k()) throw CLI::ValidationError("--policy", "adversarial needs a family instance (--k)");
    const bool wants_l = starts.empty() || std::find(starts.begin(), starts.end(), instance.landmark_l()) != starts.end();
    if (!wants_l) throw CLI::ValidationError("--policy", "the adversarial target starts at l");
    const auto target = TieBreakPolicy::adversarial(build_adversarial_tour(*instance.family_k()).tour);
    auto extra = start_sweep(instance, {target}, {instance.landmark_l()});
    rows.insert(rows.end(), extra.begin(), extra.end());
  }
  if (format == "csv") {
    emit(output, sweep_csv(rows));
  } else if (format == "json") {
    emit(output, sweep_json(rows));
  } else {
    throw CLI::ValidationError("--format", "sweep writes csv or json");
  }
  return 0;
}

int run_validate(const InstanceOptions& io, const std::string& tour_file, const std::string& mode) {
  const Instance instance = io.build();
  const TourPath tour = parse_tour(slurp(tour_file));
  const auto verdict = validate_nnr(instance, tour, mode == "strict" ? ValidationMode::strict : ValidationMode::weak);
  if (verdict.valid) {
    std::cout << "valid (" << mode << "), " << tour.size() << " cities, " << verdict.ties.size()
              << " steps with ties\n";
    return 0;
  }
  std::cout << "invalid at step " << *verdict.failed_step << ": " << verdict.reason << "; step "
            << format_number(verdict.step_distance->value()) << " vs minimum "
            << format_number(verdict.minimum->value()) << "; tie set";
  for (std::size_t c : verdict.tie_set) std::cout << ' ' << c;
  std::cout << '\n';
  return 1;
}

int run_draw(const InstanceOptions& io, const std::string& which, const std::string& policy, const std::string& start,
             const std::string& output) {
  const Instance instance = io.build();
  TourPath tour;
  if (which == "adversarial") {
    if (!instance.family_k()) throw CLI::ValidationError("--tour", "adversarial needs --k");
    tour = build_adversarial_tour(*instance.family_k()).tour;
  } else if (which == "perimeter") {
    tour = perimeter_tour(instance).tour;
  } else if (which == "nnr") {
    const auto starts = parse_starts(start, instance);
    tour = run_nnr(instance, starts.empty() ? instance.landmark_l() : starts.front(), TieBreakPolicy::parse(policy)).tour;
  } else if (which != "none") {
    tour = parse_tour(slurp(which));
  }
  emit(output, render_svg(instance, tour));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nearest neighbor rule lower-bound instances: generate, certify, sweep, validate, draw"};
  app.require_subcommand(1);

  InstanceOptions gen_io, sweep_io, validate_io, draw_io;
  std::string gen_format, cert_format, sweep_format, output, scheme = "none", krange = "0", metrics = "l2", tour_file, policies = "lexicographic",
                          start = "all", mode = "weak", which = "adversarial", policy = "lexicographic";
  long scale = 1;
  unsigned long seed = 1;

  auto* gen = app.add_subcommand("generate", "Write G_k (or a 2 x m grid) as TSPLIB or JSON");
  gen_io.add(gen);
  gen->add_option("--format", gen_format, "tsplib or json")->default_val("tsplib");
  gen->add_option("--output,-o", output, "Output path (default stdout)");
  gen->add_option("--perturb", scheme, "none or strictify");
  gen->add_option("--scale", scale, "Lattice refinement for --perturb")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Perturbation seed");

  auto* cert = app.add_subcommand("certify", "Certify the adversarial tour and print the ratio table");
  cert->add_option("--k", krange, "k, a..b, or a comma list")->default_val("0");
  cert->add_option("--metrics,--metric", metrics, "Comma list of l1, l2, linf, l<p>, graphic")->default_val("l2");
  cert->add_option("--format", cert_format, "text, csv or json")->default_val("text");
  cert->add_option("--output,-o", output, "Output path (default stdout)");
  cert->add_option("--tour-file", tour_file, "Certify this tour instead of the constructed one");

  auto* sweep = app.add_subcommand("sweep", "Run NNR from many starts and report ratios");
  sweep_io.add(sweep);
  sweep->add_option("--policy", policies, "Comma list of lexicographic, index, adversarial");
  sweep->add_option("--start", start, "all, l, or a comma list of city indices");
  sweep->add_option("--format", sweep_format, "csv or json")->default_val("csv");
  sweep->add_option("--output,-o", output, "Output path (default stdout)");

  auto* val = app.add_subcommand("validate", "Check a tour file against the nearest neighbor rule");
  validate_io.add(val);
  val->add_option("--tour", tour_file, "Tour interchange file")->required();
  val->add_option("--mode", mode, "weak or strict")->check(CLI::IsMember({"weak", "strict"}));

  auto* draw = app.add_subcommand("draw", "Render an instance and a tour as SVG");
  draw_io.add(draw);
  draw->add_option("--tour", which, "adversarial, perimeter, nnr, none, or a tour file");
  draw->add_option("--policy", policy, "Tie-break policy for --tour nnr");
  draw->add_option("--start", start, "Start city for --tour nnr");
  draw->add_option("--output,-o", output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
    if (*gen) return run_generate(gen_io, gen_format, output, scheme, scale, seed);
    if (*cert) return run_certify(krange, metrics, cert_format, output, tour_file);
    if (*sweep) return run_sweep(sweep_io, policies, start, sweep_format, output);
    if (*val) return run_validate(validate_io, tour_file, mode);
    if (*draw) return run_draw(draw_io, which, policy, start, output);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const nnadv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
