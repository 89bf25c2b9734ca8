// rabkit: command-line front end over the right-angled building toolkit.
// Subcommands: build (truncation exports), verify (invariant suites),
// classify (generalized polygons and the chamber-transitive cases),
// automorphism (seed-permutation extension tables) and demo (conjugating a
// twisted lattice back into the standard one).
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
// Equal configurations produce byte-identical output.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rab/json_io.hpp"

namespace {

using nlohmann::json;

rab::DefiningGraph load_graph(const std::string& path) {
  if (path.empty())
    // Bundled running example: path i - j - k plus isolated l, orders 2,2,3,3.
    return rab::DefiningGraph(
        {{"i", 2, {}}, {"j", 2, {}}, {"k", 3, {}}, {"l", 3, {}}},
        {{0, 1}, {1, 2}});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rab::input_error("cannot open " + path);
  json spec;
  try {
    in >> spec;
  } catch (const json::exception& e) {
    throw rab::input_error("invalid JSON in " + path + ": " + e.what());
  }
  return rab::graph_from_json(spec);
}

rab::Element parse_element_arg(const rab::DefiningGraph& g,
                               const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw rab::input_error("invalid element JSON '" + text + "': " + e.what());
  }
  return rab::element_from_json(g, j);
}

// Atlas specs: "standard", "inversion" (materialized out to reach), or
// "twist:i0,i1,..." giving the image of each vertex under a constant twist.
rab::TypedAtlas make_atlas(const rab::DefiningGraph& g, const std::string& spec,
                           int reach) {
  if (spec == "standard") return rab::standard_atlas(g);
  if (spec == "inversion") return rab::inversion_twist_atlas(g, reach);
  if (spec.rfind("twist:", 0) == 0) {
    std::vector<int> sigma;
    std::stringstream ss(spec.substr(6));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        sigma.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw rab::input_error("twist spec needs comma-separated vertex ids: " +
                               spec);
      }
    }
    return rab::constant_twist_atlas(g, std::move(sigma));
  }
  throw rab::input_error("unknown atlas spec '" + spec +
                         "' (use standard, inversion or twist:i0,i1,...)");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rab::input_error("cannot write " + path);
  out << text;
}

// Prints the report and mirrors it to <out>/<name> when an output directory
// was requested.
void emit(const json& report, const std::string& out_dir,
          const std::string& name) {
  std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_file(out_dir + "/" + name, text);
  }
}

int thread_cap() {
  const char* env = std::getenv("RABKIT_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

const std::vector<std::string> kSuites = {
    "words",     "building",  "hyperplanes", "special",
    "groupoids", "hierarchy", "atlases",     "fuchsian"};

std::vector<rab::CheckResult> run_suite(const std::string& name,
                                        const rab::DefiningGraph& g, int radius,
                                        std::uint64_t seed) {
  if (name == "words") return rab::verify_words(g, seed);
  if (name == "building") return rab::verify_building(g, radius, seed);
  if (name == "hyperplanes") return rab::verify_hyperplanes(g, radius, seed);
  if (name == "special") return rab::verify_special(g, radius);
  if (name == "groupoids") return rab::verify_groupoids(g, radius, seed);
  if (name == "hierarchy") return rab::verify_hierarchy(g, radius, seed);
  if (name == "atlases") return rab::verify_atlases(g, radius, seed);
  return rab::verify_fuchsian(g, radius, seed);
}

int cmd_build(const rab::DefiningGraph& g, int radius,
              const std::string& out_dir, const std::string& format) {
  std::filesystem::create_directories(out_dir);
  json j = rab::truncation_json(g, radius);
  if (format.empty() || format == "json") {
    std::string path = out_dir + "/truncation.json";
    write_file(path, j.dump(2) + "\n");
    std::cout << "wrote " << path << "\n";
  }
  if (format.empty() || format == "dot") {
    std::string path = out_dir + "/truncation.dot";
    write_file(path, rab::truncation_dot(g, radius));
    std::cout << "wrote " << path << "\n";
  }
  std::cout << j["chambers"].size() << " chambers, " << j["vertices"].size()
            << " vertices, " << j["cubes"].size() << " cubes\n";
  return 0;
}

int cmd_verify(const rab::DefiningGraph& g, const std::string& suite,
               int radius, std::uint64_t seed, const std::string& out_dir) {
  std::vector<std::string> names =
      suite == "all" ? kSuites : std::vector<std::string>{suite};

  // Suites may run concurrently under RABKIT_THREADS; each one is seeded
  // independently, so the aggregated report does not depend on the cap.
  std::vector<std::vector<rab::CheckResult>> results(names.size());
  const size_t cap = static_cast<size_t>(thread_cap());
  if (cap > 1 && names.size() > 1) {
    size_t next = 0;
    while (next < names.size()) {
      size_t batch = std::min(cap, names.size() - next);
      std::vector<std::future<std::vector<rab::CheckResult>>> futs;
      for (size_t b = 0; b < batch; ++b) {
        size_t p = next + b;
        futs.push_back(std::async(std::launch::async, [&, p] {
          return run_suite(names[p], g, radius, seed);
        }));
      }
      for (size_t b = 0; b < batch; ++b) results[next + b] = futs[b].get();
      next += batch;
    }
  } else {
    for (size_t p = 0; p < names.size(); ++p)
      results[p] = run_suite(names[p], g, radius, seed);
  }

  json suites = json::array();
  bool pass = true;
  long long checks = 0, configurations = 0, failures = 0;
  for (size_t p = 0; p < names.size(); ++p) {
    bool ok = rab::all_ok(results[p]);
    pass = pass && ok;
    for (const rab::CheckResult& r : results[p]) {
      ++checks;
      configurations += r.checked;
      failures += static_cast<long long>(r.failures.size());
    }
    json entry{{"suite", names[p]},
               {"ok", ok},
               {"checks", rab::check_results_json(results[p])}};
    if (names[p] == "fuchsian")
      entry["classification"] = rab::show(rab::classify_case(g).which);
    suites.push_back(std::move(entry));
  }

  json report{{"command", "verify"},
              {"suite", suite},
              {"radius", radius},
              {"seed", seed},
              {"suites", std::move(suites)},
              {"totals",
               {{"checks", checks},
                {"configurations", configurations},
                {"failures", failures}}},
              {"ok", pass}};
  emit(report, out_dir, "verify.json");
  return pass ? 0 : 1;
}

int cmd_classify(const rab::DefiningGraph& g, int radius,
                 const std::string& out_dir) {
  rab::CaseReport rep = rab::classify_case(g);
  bool pass = true;
  json extra;
  if (rep.which != rab::FuchsianCase::none) {
    rep.link_check = rab::verify_links(g, radius);
    pass = rep.link_check->ok();
    extra = rab::incidence_report_json(
        rab::edge_cell_incidence(g, std::max(1, radius)));
  }
  json j = rab::case_report_json(g, rep);
  j["cell_multiplicities"] = extra.is_null() ? json(nullptr) : extra;
  emit(j, out_dir, "classify.json");
  return pass ? 0 : 1;
}

int cmd_automorphism(const rab::DefiningGraph& g, int radius,
                     const std::string& from_atlas, const std::string& to_atlas,
                     const std::string& seed_from, const std::string& seed_to,
                     const std::string& out_dir) {
  rab::Element efrom = parse_element_arg(g, seed_from);
  rab::Element eto = parse_element_arg(g, seed_to);
  // Twisted atlases are materialized past every chamber the extension and its
  // letter lookups can touch.
  int reach = radius + static_cast<int>(efrom.word().size()) +
              static_cast<int>(eto.word().size()) + 2;
  rab::TypedAtlas a1 = make_atlas(g, from_atlas, reach);
  rab::TypedAtlas a2 = make_atlas(g, to_atlas, reach);
  rab::Chamber c1{efrom}, c2{eto};
  std::vector<int> sigma0 = rab::seed_permutation(g, a1, c1, a2, c2);
  rab::AtlasExtension f =
      rab::extend_automorphism(g, sigma0, c1, c2, a1, a2, radius);
  json j = rab::extension_json(f);
  j["from_atlas"] = from_atlas;
  j["to_atlas"] = to_atlas;
  j["seed_sigma"] = sigma0;
  emit(j, out_dir, "automorphism.json");
  return 0;
}

int cmd_demo(const rab::DefiningGraph& g, int radius, std::uint64_t seed,
             int samples, const std::string& twist,
             const std::string& out_dir) {
  std::mt19937_64 rng(seed);
  int maxlen = std::max(1, radius);
  std::vector<rab::Element> lambdas;
  for (int s = 0; s < samples; ++s)
    lambdas.push_back(rab::detail::random_element(g, rng, maxlen));
  rab::TypedAtlas twisted = make_atlas(g, twist, radius + maxlen + 1);
  rab::CommensurationReport rep =
      rab::commensuration_demo(g, twisted, lambdas, radius);
  json j = rab::demo_report_json(rep);
  j["twist"] = twist;
  emit(j, out_dir, "demo.json");
  return rep.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations on graph products of finite groups and "
               "their right-angled buildings"};
  app.require_subcommand(1);

  std::string graph_path, out_dir, format;
  std::string suite = "all";
  std::string from_atlas = "standard", to_atlas = "standard";
  std::string seed_from = "[]", seed_to = "[]";
  std::string twist = "inversion";
  int radius = 2, samples = 5;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool with_seed) {
    cmd->add_option("--graph", graph_path,
                    "graph spec JSON; defaults to the bundled running example");
    cmd->add_option("--radius", radius, "ball radius (default 2)")
        ->check(CLI::NonNegativeNumber);
    if (with_seed) cmd->add_option("--seed", seed, "RNG seed (default 0)");
    cmd->add_option("--out", out_dir, "directory to mirror reports into");
  };

  CLI::App* build =
      app.add_subcommand("build", "export the truncated building");
  add_common(build, false);
  build->add_option("--format", format, "dot or json (default: both)")
      ->check(CLI::IsMember({"dot", "json"}));

  CLI::App* verify =
      app.add_subcommand("verify", "run invariant suites and report failures");
  add_common(verify, true);
  verify->add_option("--suite", suite, "suite name or all")
      ->check(CLI::IsMember({"words", "building", "hyperplanes", "special",
                             "groupoids", "hierarchy", "atlases", "fuchsian",
                             "all"}));

  CLI::App* classify = app.add_subcommand(
      "classify", "detect a generalized m-gon and classify the lattice case");
  add_common(classify, false);

  CLI::App* morph = app.add_subcommand(
      "automorphism", "extend a seed permutation between typed atlases");
  add_common(morph, false);
  morph->add_option("--from-atlas", from_atlas,
                    "standard | inversion | twist:i0,i1,...");
  morph->add_option("--to-atlas", to_atlas,
                    "standard | inversion | twist:i0,i1,...");
  morph->add_option("--seed-from", seed_from,
                    "source chamber as element JSON, e.g. [[\"k\",1]]");
  morph->add_option("--seed-to", seed_to, "target chamber as element JSON");

  CLI::App* demo = app.add_subcommand(
      "demo", "conjugate a twisted lattice back into the standard one");
  add_common(demo, true);
  demo->add_option("--twist", twist, "inversion | twist:i0,i1,...");
  demo->add_option("--samples", samples, "number of sampled lattice elements")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    rab::DefiningGraph g = load_graph(graph_path);
    if (build->parsed())
      return cmd_build(g, radius, out_dir.empty() ? "." : out_dir, format);
    if (verify->parsed()) return cmd_verify(g, suite, radius, seed, out_dir);
    if (classify->parsed()) return cmd_classify(g, radius, out_dir);
    if (morph->parsed())
      return cmd_automorphism(g, radius, from_atlas, to_atlas, seed_from,
                              seed_to, out_dir);
    return cmd_demo(g, radius, seed, samples, twist, out_dir);
  } catch (const rab::input_error& e) {
    std::cerr << "rabkit: " << e.what() << "\n";
    return 2;
  } catch (const rab::validation_error& e) {
    std::cerr << "rabkit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rabkit: " << e.what() << "\n";
    return 2;
  }
}
