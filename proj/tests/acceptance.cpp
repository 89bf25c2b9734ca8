// Acceptance gate: runs every release criterion and prints one PASS/FAIL
// line per criterion. Exits nonzero when any criterion fails.
//
// argv[1]: path to the rabkit binary (used by the determinism criterion).

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rab/atlases.hpp"
#include "rab/fuchsian.hpp"
#include "rab/hyperplanes.hpp"
#include "rab/json_io.hpp"
#include "rab/verify.hpp"

namespace {

using namespace rab;
using Clock = std::chrono::steady_clock;

DefiningGraph running_example() {
  return DefiningGraph(
      {{"i", 2, {}}, {"j", 2, {}}, {"k", 3, {}}, {"l", 3, {}}},
      {{0, 1}, {1, 2}});
}

DefiningGraph heawood(int p_points, int p_lines) {
  std::vector<DefiningGraph::VertexGroup> groups;
  for (int j = 0; j < 7; ++j) groups.push_back({"a" + std::to_string(j), p_points, {}});
  for (int j = 0; j < 7; ++j) groups.push_back({"b" + std::to_string(j), p_lines, {}});
  std::vector<std::pair<int, int>> edges;
  for (int j = 0; j < 7; ++j)
    for (int o : {0, 1, 3}) edges.push_back({(j + o) % 7, 7 + j});
  return DefiningGraph(std::move(groups), edges);
}

DefiningGraph cycle(int n, int p) {
  std::vector<DefiningGraph::VertexGroup> groups;
  std::vector<std::pair<int, int>> edges;
  for (int t = 0; t < n; ++t) {
    groups.push_back({"u" + std::to_string(t), p, {}});
    edges.push_back({t, (t + 1) % n});
  }
  return DefiningGraph(std::move(groups), edges);
}

DefiningGraph k23() {
  return DefiningGraph({{"a0", 2, {}},
                        {"a1", 2, {}},
                        {"b0", 2, {}},
                        {"b1", 2, {}},
                        {"b2", 2, {}}},
                       {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
}

std::string first_failure(const std::vector<CheckResult>& rs) {
  for (const CheckResult& r : rs)
    if (!r.failures.empty()) return r.name + ": " + r.failures.front();
  return "";
}

struct Gate {
  int failed = 0;

  void report(int n, const std::string& what, bool ok, double secs,
              const std::string& note) {
    std::printf("%s  criterion %d: %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", n,
                what.c_str(), secs,
                note.empty() ? "" : ("  [" + note + "]").c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
};

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int run_cmd(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  if (rc < 0 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string rabkit = argc > 1 ? argv[1] : "";
  Gate gate;
  DefiningGraph g = running_example();

  {  // 1. word core: move closure on short words, retract and coset laws
    auto t0 = Clock::now();
    auto rs = verify_words(g, 0);
    double dt = elapsed(t0);
    gate.report(1, "word closure and retract laws", all_ok(rs) && dt < 10.0,
                dt, first_failure(rs));
  }

  {  // 2. building combinatorics on the radius-3 ball
    auto t0 = Clock::now();
    bool big_enough = chamber_ball(g, 3).size() >= 100;
    auto rs = verify_building(g, 3, 0);
    double dt = elapsed(t0);
    gate.report(2, "building lemmas on the radius-3 ball",
                big_enough && all_ok(rs) && dt < 60.0, dt,
                !big_enough ? "ball is too small" : first_failure(rs));
  }

  {  // 3. hyperplanes and level equivalence; frozen dual-edge count
    auto t0 = Clock::now();
    auto rs = verify_hyperplanes(g, 2, 0);
    Cube base_i_edge{identity(g), 0, vbit(0)};
    HyperplaneId h = hyperplane_of(base_i_edge);
    int dual = 0;
    for (const Cube& q : rab::detail::truncation(g, 2).cubes)
      if (dimension(q) == 1 && hyperplane_of(q) == h) ++dual;
    double dt = elapsed(t0);
    gate.report(3, "hyperplane laws and the 3 dual edges at the base",
                all_ok(rs) && dual == 3, dt,
                dual != 3 ? "dual edges: " + std::to_string(dual)
                          : first_failure(rs));
  }

  {  // 4. special action of the coordinate kernel inside the length-3 box
    auto t0 = Clock::now();
    SpecialReport rep = check_special(g, coordinate_kernel_ball(g, 3), 3);
    double dt = elapsed(t0);
    gate.report(4, "coordinate kernel acts cleanly and nicely",
                rep.ok() && rep.configurations_checked > 0, dt,
                rep.violations.empty()
                    ? ""
                    : rep.violations.front().kind + ": " +
                          rep.violations.front().witness);
  }

  {  // 5. residue groupoids and the ascent hierarchy
    auto t0 = Clock::now();
    auto rs = verify_groupoids(g, 2, 0);
    auto hs = verify_hierarchy(g, 2, 0);
    double dt = elapsed(t0);
    std::string note = first_failure(rs);
    if (note.empty()) note = first_failure(hs);
    gate.report(5, "groupoid validation and hierarchy ascent",
                all_ok(rs) && all_ok(hs), dt, note);
  }

  {  // 6. typed atlases: round trips, transfer invariance, extension
    auto t0 = Clock::now();
    auto rs = verify_atlases(g, 3, 0);
    double dt = elapsed(t0);
    gate.report(6, "atlas round trips and automorphism extension",
                all_ok(rs), dt, first_failure(rs));
  }

  {  // 7. commensuration demos: inversion twist and rotation twist
    auto t0 = Clock::now();
    std::mt19937_64 rng(0);
    std::vector<Element> lambdas;
    for (int s = 0; s < 10; ++s)
      lambdas.push_back(rab::detail::random_element(g, rng, 3));
    CommensurationReport inv =
        commensuration_demo(g, inversion_twist_atlas(g, 7), lambdas, 3);
    double dt1 = elapsed(t0);

    auto t1 = Clock::now();
    DefiningGraph sq = cycle(4, 3);
    std::mt19937_64 rng2(0);
    std::vector<Element> lambdas2;
    for (int s = 0; s < 10; ++s)
      lambdas2.push_back(rab::detail::random_element(sq, rng2, 3));
    CommensurationReport rot = commensuration_demo(
        sq, constant_twist_atlas(sq, {1, 2, 3, 0}), lambdas2, 3);
    double dt2 = elapsed(t1);

    bool ok = inv.all_ok && inv.conjugator_found && dt1 < 120.0 &&
              rot.all_ok && rot.conjugator_found && dt2 < 120.0;
    gate.report(7, "commensuration demos (inversion and rotation twists)", ok,
                dt1 + dt2,
                !inv.all_ok ? "inversion: " + inv.witness
                            : (!rot.all_ok ? "rotation: " + rot.witness : ""));
  }

  {  // 8. Fuchsian classification on the fixture graphs
    auto t0 = Clock::now();
    std::string note;

    DefiningGraph hw = heawood(2, 2);
    CaseReport chw = classify_case(hw);
    bool ok = chw.polygon.is_gen_mgon && chw.polygon.m == 3 &&
              chw.polygon.thick && chw.which == FuchsianCase::ii;
    if (!ok) note = "heawood: expected a thick generalized 3-gon in case ii";
    if (ok && !verify_links(hw, 1).ok()) {
      ok = false;
      note = "heawood: a radius-1 link check failed";
    }

    if (ok) {
      DefiningGraph hex3 = cycle(6, 3);
      CaseReport chex = classify_case(hex3);
      IncidenceReport inc = edge_cell_incidence(hex3, 1);
      std::map<std::string, int> want{{"p1", 3}, {"p2", 3}};
      if (chex.which != FuchsianCase::iii || inc.side_multiplicity != want) {
        ok = false;
        note = "6-cycle/orders-3: expected case iii with multiplicities 3,3";
      }
    }

    if (ok) {
      DefiningGraph kk = k23();
      if (polygon_report(kk).m != 2 ||
          classify_case(kk).which != FuchsianCase::none) {
        ok = false;
        note = "K_{2,3}: expected a generalized 2-gon rejected by gonality";
      }
    }

    if (ok) {
      DefiningGraph sq = cycle(4, 2);
      if (!has_induced_4cycle(sq) || star_rigid(sq)) {
        ok = false;
        note = "4-cycle: expected an induced square and no star rigidity";
      }
    }

    double dt = elapsed(t0);
    gate.report(8, "generalized polygon cases and rigidity flags",
                ok && dt < 10.0, dt, note);
  }

  {  // 9. determinism and the exit-code contract of the binary
    auto t0 = Clock::now();
    bool ok = !rabkit.empty();
    std::string note = ok ? "" : "no rabkit path given";
    if (ok) {
      std::filesystem::create_directories("acceptance_scratch");
      const std::string base = rabkit + " verify --suite all --radius 2";
      int e1 = run_cmd(base + " > acceptance_scratch/run1.json");
      int e2 = run_cmd("RABKIT_THREADS=3 " + base +
                       " > acceptance_scratch/run2.json");
      std::string r1 = slurp("acceptance_scratch/run1.json");
      std::string r2 = slurp("acceptance_scratch/run2.json");
      if (e1 != 0 || e2 != 0) {
        ok = false;
        note = "verify all should exit 0";
      } else if (r1.empty() || r1 != r2) {
        ok = false;
        note = "reports differ between identical runs";
      }
      if (ok) {
        int eu = run_cmd(rabkit + " verify --suite bogus 2> /dev/null");
        std::ofstream bad("acceptance_scratch/bad.json",
                          std::ios::binary);
        bad << "not json{";
        bad.close();
        int eb = run_cmd(rabkit +
                         " build --graph acceptance_scratch/bad.json"
                         " --out acceptance_scratch 2> /dev/null");
        if (eu != 2 || eb != 2) {
          ok = false;
          note = "usage errors should exit 2";
        }
      }
    }
    gate.report(9, "byte-identical reports and exit codes", ok, elapsed(t0),
                note);
  }

  std::printf("acceptance: %d of 9 criteria passed\n", 9 - gate.failed);
  return gate.failed == 0 ? 0 : 1;
}
