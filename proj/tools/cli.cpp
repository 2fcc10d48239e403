#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "harmless/gadgets.hpp"
#include "harmless/generators.hpp"
#include "harmless/instance_io.hpp"
#include "harmless/kernel.hpp"
#include "harmless/serialize.hpp"
#include "harmless/solvers.hpp"
#include "harmless/sparsity.hpp"

namespace harmless::cli {

namespace {

std::size_t env_cap(const char *name, std::size_t fallback) {
  const char *value = std::getenv(name);
  if (!value || !*value)
    return fallback;
  char *end = nullptr;
  auto parsed = std::strtoull(value, &end, 10);
  if (*end != '\0' || parsed == 0)
    throw std::invalid_argument(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(parsed);
}

void render_text(const json &doc, const std::string &prefix, std::ostream &out) {
  if (doc.is_object()) {
    for (const auto &[key, value] : doc.items())
      render_text(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  if (doc.is_array() && std::any_of(doc.begin(), doc.end(), [](const json &x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < doc.size(); ++i)
      render_text(doc[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ':';
  if (doc.is_array()) {
    for (const auto &x : doc)
      out << ' ' << x.dump();
  } else if (doc.is_string()) {
    out << ' ' << doc.get<std::string>();
  } else {
    out << ' ' << doc.dump();
  }
  out << '\n';
}

struct Common {
  std::string format = "text";
  std::string output;
};

void emit(const json &report, const Common &common, std::ostream &out) {
  std::ostringstream text;
  if (common.format == "json")
    text << report.dump(2) << '\n';
  else
    render_text(report, "", text);
  if (common.output.empty()) {
    out << text.str();
    return;
  }
  std::ofstream file(common.output);
  if (!file)
    throw std::runtime_error("cannot write " + common.output);
  file << text.str();
}

json header(const std::string &command, json config) {
  return {{"tool", "harmless"}, {"version", version()}, {"command", command}, {"config", std::move(config)}};
}

void write_json_file(const json &doc, const std::string &path) {
  std::ofstream file(path);
  if (!file)
    throw std::runtime_error("cannot write " + path);
  file << doc.dump(2) << '\n';
}

bool wants_json(const std::string &path) { return std::filesystem::path(path).extension() == ".json"; }

void write_instance(const Instance &inst, const std::string &path) {
  if (wants_json(path))
    write_json_file(instance_to_json(inst), path);
  else
    save_instance_file(inst, path);
}

template <class F> double timed(F &&f) {
  auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool kernel_says_yes(const KernelResult &kr, std::size_t cap) {
  if (kr.report.early_yes)
    return true;
  if (kr.kernel.core.size() < static_cast<std::size_t>(kr.kernel.instance.k))
    return false;
  return brute_force_max(kr.kernel, cap).optimum >= kr.kernel.instance.k;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Harmless Set toolkit: exact solvers, kernelization, hardness gadgets"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  std::string input;
  Common common;
  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--report", common.output, "Write the report to a file instead of stdout");
  };

  std::size_t brute_cap = 0, cover_cap = 0;
  unsigned workers = 1;
  std::string method = "brute";
  bool decide = false, timing = false;
  auto *solve = app.add_subcommand("solve", "Maximum harmless set of an instance");
  solve->add_option("input", input, "Instance file (text or JSON)")->required();
  solve->add_option("--method", method, "Exact solver")->check(CLI::IsMember({"brute", "vc"}));
  solve->add_option("--workers", workers, "Worker threads for the vertex-cover solver")->check(CLI::PositiveNumber);
  solve->add_option("--brute-cap", brute_cap, "Largest selectable-vertex count for brute force")->check(CLI::PositiveNumber);
  solve->add_option("--cover-cap", cover_cap, "Largest vertex cover for the vertex-cover solver")->check(CLI::PositiveNumber);
  solve->add_flag("--decide", decide, "Exit 1 when the optimum is below k");
  solve->add_flag("--timing", timing, "Include wall-clock time in the report");
  add_common(solve);

  std::optional<Threshold> p;
  bool plain = false;
  std::string kernel_out;
  std::size_t c_close = 4, s_max = 4;
  auto *kern = app.add_subcommand("kernelize", "Reduce an instance to an annotated kernel");
  kern->add_option("input", input, "Instance file (text or JSON)")->required();
  kern->add_option("--p", p, "Threshold bound; default caps thresholds at k+1")->check(CLI::PositiveNumber);
  kern->add_option("--kernel", kernel_out, "Write the kernel (JSON keeps the core; text needs --plain)");
  kern->add_flag("--plain", plain, "Convert the kernel to an unannotated instance");
  kern->add_option("--c-close", c_close, "Projection closure bound")->check(CLI::PositiveNumber);
  kern->add_option("--s-max", s_max, "Hub budget of scattered-set extraction");
  add_common(kern);

  std::string roles_out, h_out;
  auto *reduce = app.add_subcommand("reduce-mcc", "Build the harmless set instance of a multicoloured clique instance");
  reduce->add_option("input", input, "MCC file")->required();
  reduce->add_option("--instance", h_out, "Write H here (.json for the structured format)")->required();
  reduce->add_option("--roles", roles_out, "Write the role registry here");
  add_common(reduce);

  auto *verify = app.add_subcommand("verify-reduction", "Check clique existence against the optimum of H");
  verify->add_option("input", input, "MCC file")->required();
  verify->add_option("--brute-cap", brute_cap, "Largest selectable-vertex count for brute force")->check(CLI::PositiveNumber);
  add_common(verify);

  int radius = 2, depth = 1;
  std::size_t target = 1;
  auto *stats = app.add_subcommand("stats", "Domination, projection profiles and a waterlily for the core");
  stats->add_option("input", input, "Instance file (text or JSON)")->required();
  stats->add_option("--radius", radius, "Radius r")->check(CLI::NonNegativeNumber);
  stats->add_option("--depth", depth, "Waterlily depth d")->check(CLI::NonNegativeNumber);
  stats->add_option("--target", target, "Requested number of waterlily centres")->check(CLI::PositiveNumber);
  stats->add_option("--c-close", c_close, "Projection closure bound")->check(CLI::PositiveNumber);
  stats->add_option("--s-max", s_max, "Hub budget of scattered-set extraction");
  add_common(stats);

  std::uint64_t seed = 1;
  std::size_t count = 200, max_n = 10;
  std::string corpus_dir;
  auto *fuzz = app.add_subcommand("fuzz", "Random corpus with solver and kernel cross-checks");
  fuzz->add_option("--seed", seed, "Generator seed");
  fuzz->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber);
  fuzz->add_option("--max-n", max_n, "Largest instance size")->check(CLI::Range(1, 20));
  fuzz->add_option("--corpus", corpus_dir, "Also write the generated instances to this directory");
  add_common(fuzz);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    brute_cap = brute_cap ? brute_cap : env_cap("HARMLESS_BRUTE_CAP", 48);
    cover_cap = cover_cap ? cover_cap : env_cap("HARMLESS_COVER_CAP", 22);

    if (*solve) {
      auto inst = load_any_instance_file(input);
      json config = {{"input", input}, {"method", method}, {"workers", workers}, {"brute_cap", brute_cap},
                     {"cover_cap", cover_cap}, {"decide", decide}, {"timing", timing}};
      SolveResult result;
      double seconds = timed([&] {
        if (method == "brute") {
          BruteForceOptions o;
          o.cap = brute_cap;
          result = brute_force_max(inst, o);
        } else {
          result = vc_solve(inst, {cover_cap, workers});
        }
      });
      json report = header("solve", std::move(config));
      report["k"] = inst.k;
      report["n"] = inst.size();
      report["result"] = to_json(result);
      report["harmless"] = is_harmless(inst, result.witness);
      const bool yes = result.optimum >= inst.k;
      report["decision"] = yes ? "yes" : "no";
      if (timing)
        report["seconds"] = seconds;
      emit(report, common, out);
      return decide && !yes ? kNo : kOk;
    }

    if (*kern) {
      auto inst = load_any_instance_file(input);
      KernelOptions options;
      options.p = p;
      options.c_close = c_close;
      options.s_max = s_max;
      json config = {{"input", input}, {"p", p ? json(*p) : json(nullptr)}, {"plain", plain},
                     {"kernel", kernel_out}, {"c_close", c_close}, {"s_max", s_max}};
      auto result = kernelize(inst, options);
      json report = header("kernelize", std::move(config));
      report["report"] = to_json(result.report);
      report["decision"] = result.decision();
      if (!kernel_out.empty()) {
        if (plain)
          write_instance(to_plain_kernel(result.kernel), kernel_out);
        else if (wants_json(kernel_out))
          write_json_file(annotated_to_json(result.kernel), kernel_out);
        else
          throw std::invalid_argument("an annotated kernel needs a .json path; use --plain for the text format");
      } else {
        report["kernel"] = plain ? instance_to_json(to_plain_kernel(result.kernel)) : annotated_to_json(result.kernel);
      }
      emit(report, common, out);
      return result.decision() == "no" ? kNo : kOk;
    }

    if (*reduce) {
      auto mcc = load_mcc_file(input);
      auto built = build_reduction(mcc);
      write_instance(built.h, h_out);
      auto roles = roles_to_json(built);
      if (!roles_out.empty())
        write_json_file(roles, roles_out);
      json report = header("reduce-mcc", {{"input", input}, {"instance", h_out}, {"roles", roles_out}});
      report["vertices"] = built.h.size();
      report["edges"] = built.h.graph.num_edges();
      report["target"] = built.target;
      report["modulator_size"] = built.modulator.size();
      report["empty_pairs"] = roles["empty_pairs"];
      emit(report, common, out);
      return kOk;
    }

    if (*verify) {
      auto mcc = load_mcc_file(input);
      json report = header("verify-reduction", {{"input", input}, {"brute_cap", brute_cap}});
      auto rep = verify_reduction(mcc, brute_cap);
      report["result"] = to_json(rep);
      emit(report, common, out);
      return rep.equivalent ? kOk : kNo;
    }

    if (*stats) {
      auto inst = load_any_instance_file(input);
      const auto &g = inst.graph;
      auto core = compute_core(inst);
      json report = header("stats", {{"input", input}, {"radius", radius}, {"depth", depth}, {"target", target},
                                     {"c_close", c_close}, {"s_max", s_max}});
      report["n"] = inst.size();
      report["m"] = g.num_edges();
      report["max_degree"] = g.max_degree();
      report["core_size"] = core.size();
      auto dom = domination_scattered(g, core, radius);
      report["domination"] = to_json(dom);
      report["profiles_of_dominators"] = count_profiles(g, dom.dominators, radius);
      auto closure = projection_closure(g, dom.dominators, radius, c_close);
      report["closure_size"] = closure.size();
      report["profiles_of_closure"] = count_profiles(g, closure, radius);
      WaterlilyParams params{radius, depth, target, c_close, s_max};
      auto lily = build_waterlily(g, core, params);
      report["waterlily_report"] = to_json(lily.report);
      report["waterlily"] = lily ? to_json(*lily.lily) : json(nullptr);
      emit(report, common, out);
      return kOk;
    }

    if (*fuzz) {
      json config = {{"seed", seed}, {"count", count}, {"max_n", max_n}, {"corpus", corpus_dir},
                     {"brute_cap", brute_cap}, {"cover_cap", cover_cap}};
      gen::Rng rng(seed);
      std::size_t solver_checks = 0, kernel_checks = 0, heredity_checks = 0;
      json mismatches = json::array();
      if (!corpus_dir.empty())
        std::filesystem::create_directories(corpus_dir);
      for (std::size_t i = 0; i < count; ++i) {
        std::size_t n = 1 + rng() % max_n;
        auto inst = gen::random_instance(n, rng);
        if (!corpus_dir.empty()) {
          std::ostringstream name;
          name << corpus_dir << "/case" << i << ".hs";
          save_instance_file(inst, name.str());
        }
        BruteForceOptions o;
        o.cap = brute_cap;
        auto brute = brute_force_max(inst, o);
        auto vc = vc_solve(inst, {cover_cap, 1});
        ++solver_checks;
        if (brute.optimum != vc.optimum || !is_harmless(inst, brute.witness) || !is_harmless(inst, vc.witness))
          mismatches.push_back({{"case", i}, {"check", "solvers"}, {"brute", brute.optimum}, {"vc", vc.optimum}});
        for (int k = 0; k <= static_cast<int>(n); ++k) {
          inst.k = k;
          bool expected = brute.optimum >= k;
          if (kernel_says_yes(kernelize(inst), brute_cap) != expected)
            mismatches.push_back({{"case", i}, {"check", "kernel"}, {"k", k}});
          ++kernel_checks;
        }
        VertexSet sub;
        for (Vertex v : brute.witness)
          if (rng() % 2)
            sub.push_back(v);
        ++heredity_checks;
        if (!is_harmless(inst, sub))
          mismatches.push_back({{"case", i}, {"check", "heredity"}});
      }
      json report = header("fuzz", std::move(config));
      report["solver_checks"] = solver_checks;
      report["kernel_checks"] = kernel_checks;
      report["heredity_checks"] = heredity_checks;
      report["mismatches"] = mismatches;
      emit(report, common, out);
      return mismatches.empty() ? kOk : kNo;
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

} // namespace harmless::cli
