// Command-line surface for the multisegment star-operation toolkit.
//
// Subcommands compute invariants of irreducible components attached to
// multisegments (hom/ext dimensions, rigidity, commutation), the star
// operation and its deterministic recipes, the involution, structure tests,
// and batch verification suites.
//
// Exit codes: 0 success, 2 parse error, 3 randomized computation failed to
// reach a majority, 4 mathematical precondition violated.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "compstar/compstar.hpp"

namespace {

using nlohmann::json;
using namespace compstar;

struct GlobalOpts {
  int n = 0;  // 0 = infer from inputs
  std::uint64_t prime = Fp::kDefaultPrime;
  int trials = 5;
  std::uint64_t seed = 0;
  bool json_out = false;
};

Engine make_engine(const GlobalOpts& g) {
  EngineConfig cfg;
  cfg.prime = g.prime;
  cfg.trials = g.trials;
  cfg.seed = g.seed;
  return Engine(cfg);
}

// Parse one multisegment honoring --n.
Multisegment parse_one(const std::string& text, const GlobalOpts& g) {
  return parse_multisegment(text, g.n);
}

// Parse two multisegments into a common ambient size: the larger of --n and
// both maximal ends.
std::pair<Multisegment, Multisegment> parse_two(const std::string& a,
                                                const std::string& b,
                                                const GlobalOpts& g) {
  Multisegment ma = parse_multisegment(a, g.n);
  Multisegment mb = parse_multisegment(b, g.n);
  int n = std::max({g.n, ma.n, mb.n});
  return {parse_multisegment(a, n), parse_multisegment(b, n)};
}

struct Emitter {
  const GlobalOpts& g;
  std::string command;
  json inputs = json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(const json& value, int trials, double error_bound,
            const std::string& human) const {
    if (g.json_out) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      json out;
      out["command"] = command;
      out["inputs"] = inputs;
      out["value"] = value;
      out["trials"] = trials;
      out["error_bound"] = error_bound;
      out["elapsed_ms"] = ms;
      std::cout << out.dump() << "\n";
    } else {
      std::cout << human << "\n";
    }
  }
};

std::vector<int> parse_permutation(const std::string& text) {
  std::vector<int> w;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) w.push_back(std::stoi(cur));
      cur.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else {
      throw parse_error("invalid character in permutation: " + std::string(1, c));
    }
  }
  if (!cur.empty()) w.push_back(std::stoi(cur));
  if (w.empty()) throw parse_error("empty permutation");
  // Compact digit form ("3142") when no separators and more than one digit.
  if (w.size() == 1 && text.size() > 1 &&
      text.find(',') == std::string::npos && text.find(' ') == std::string::npos) {
    w.clear();
    for (char c : text) w.push_back(c - '0');
  }
  return w;
}

int run(int argc, char** argv) {
  CLI::App app{"invariants and the star operation for type-A multisegments"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--n", g.n, "ambient size (default: inferred from inputs)")
      ->envname("COMPSTAR_N");
  app.add_option("--prime", g.prime, "field modulus for randomized trials")
      ->envname("COMPSTAR_PRIME");
  app.add_option("--trials", g.trials, "randomized trial count")
      ->envname("COMPSTAR_TRIALS");
  app.add_option("--seed", g.seed, "master RNG seed")->envname("COMPSTAR_SEED");
  app.add_flag("--json", g.json_out, "emit a JSON object instead of plain text")
      ->envname("COMPSTAR_JSON");

  std::string arg1, arg2;
  int verify_samples = 0, verify_k = 0;

  auto two_arg = [&](const char* name, const char* desc) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("m", arg1, "first multisegment")->required();
    sc->add_option("n2", arg2, "second multisegment")->required();
    return sc;
  };
  auto one_arg = [&](const char* name, const char* desc) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("m", arg1, "multisegment")->required();
    return sc;
  };

  CLI::App* c_star = two_arg("star", "the star operation m * n");
  CLI::App* c_hom = two_arg("hom", "generic hom dimension over the preprojective algebra");
  CLI::App* c_ext = two_arg("ext1", "generic ext^1 dimension over the preprojective algebra");
  CLI::App* c_rigid = one_arg("rigid", "is the component rigid (generic ext^1 vanishes)");
  CLI::App* c_comm = two_arg("commute", "do the components commute (m*n = n*m)");
  CLI::App* c_scomm = two_arg("strong-commute", "ext^1 vanishes for independent generic points");
  CLI::App* c_mw = one_arg("mw", "the involution (opposite-orientation parameter)");
  CLI::App* c_dual = one_arg("dual", "the duality involution on multisegments");
  CLI::App* c_grdim = one_arg("grdim", "graded dimension vector");
  CLI::App* c_reg = one_arg("regular", "are all begins and all ends distinct");
  CLI::App* c_bal = one_arg("balanced", "does m avoid the 4231 and 3412 patterns");
  CLI::App* c_split = one_arg("split", "is the precedence graph disconnected");
  CLI::App* c_lad = one_arg("ladder", "is m a ladder");
  CLI::App* c_match = two_arg("matching", "bipartite matching criterion data for (m, n)");
  CLI::App* c_factor = two_arg("factor", "solve star(n2-unknown): find x with m1 * x = m");
  c_factor->get_option("m")->description("the product multisegment");
  c_factor->get_option("n2")->description("the known rigid factor");
  CLI::App* c_sigma = app.add_subcommand("sigma-decompose",
                                         "sigma-decomposition of a component");
  c_sigma->add_option("m", arg1, "multisegment")->required();
  c_sigma->add_option("sigma", arg2, "basic representation, e.g. Z[2,3] or L[1,2]")
      ->required();
  CLI::App* c_peel = one_arg("peel", "one peeling step of a balanced multisegment");
  CLI::App* c_cw = app.add_subcommand("cw", "multisegment attached to a permutation");
  c_cw->add_option("w", arg1, "permutation, e.g. 3,1,4,2 or 3142")->required();
  CLI::App* c_verify = app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("suite", arg1,
                       "lm-sweep | balanced-vs-rigid | mw-involution | "
                       "duality-star | matching-vs-star | recipes-vs-randomized "
                       "| paper-examples")
      ->required();
  c_verify->add_option("--samples", verify_samples, "sample count override");
  c_verify->add_option("--k", verify_k, "max permutation size (lm-sweep)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto fmt_bool = [](bool b) { return b ? "true" : "false"; };

  if (app.got_subcommand(c_star) || app.got_subcommand(c_hom) ||
      app.got_subcommand(c_ext) || app.got_subcommand(c_comm) ||
      app.got_subcommand(c_scomm) || app.got_subcommand(c_factor)) {
    auto [m, nn] = parse_two(arg1, arg2, g);
    Engine eng = make_engine(g);
    Emitter em{g, app.get_subcommands().front()->get_name(),
               {{"m", format_multisegment(m)},
                {"n", format_multisegment(nn)},
                {"ambient", m.n}}};
    if (app.got_subcommand(c_star)) {
      auto v = eng.star(m, nn);
      em.emit(format_multisegment(v.value), v.trials, v.error_bound,
              format_multisegment(v.value));
    } else if (app.got_subcommand(c_hom)) {
      auto v = eng.hom_pi(m, nn);
      em.emit(v.value, v.trials, v.error_bound, std::to_string(v.value));
    } else if (app.got_subcommand(c_ext)) {
      auto v = eng.ext1_pi(m, nn);
      em.emit(v.value, v.trials, v.error_bound, std::to_string(v.value));
    } else if (app.got_subcommand(c_comm)) {
      auto v = eng.commute(m, nn);
      em.emit(v.value, v.trials, v.error_bound, fmt_bool(v.value));
    } else if (app.got_subcommand(c_scomm)) {
      auto v = eng.strongly_commute(m, nn);
      em.emit(v.value, v.trials, v.error_bound, fmt_bool(v.value));
    } else {
      auto v = eng.factor(m, nn);
      std::string text = v.value ? format_multisegment(*v.value) : "absent";
      em.emit(v.value ? json(text) : json(nullptr), v.trials, v.error_bound, text);
    }
    return 0;
  }

  if (app.got_subcommand(c_rigid) || app.got_subcommand(c_mw)) {
    Multisegment m = parse_one(arg1, g);
    Engine eng = make_engine(g);
    Emitter em{g, app.get_subcommands().front()->get_name(),
               {{"m", format_multisegment(m)}, {"ambient", m.n}}};
    if (app.got_subcommand(c_rigid)) {
      auto v = eng.is_rigid(m);
      em.emit(v.value, v.trials, v.error_bound, fmt_bool(v.value));
    } else {
      auto v = eng.mw(m);
      em.emit(format_multisegment(v.value), v.trials, v.error_bound,
              format_multisegment(v.value));
    }
    return 0;
  }

  if (app.got_subcommand(c_dual) || app.got_subcommand(c_grdim) ||
      app.got_subcommand(c_reg) || app.got_subcommand(c_bal) ||
      app.got_subcommand(c_split) || app.got_subcommand(c_lad) ||
      app.got_subcommand(c_peel)) {
    Multisegment m = parse_one(arg1, g);
    Emitter em{g, app.get_subcommands().front()->get_name(),
               {{"m", format_multisegment(m)}, {"ambient", m.n}}};
    if (app.got_subcommand(c_dual)) {
      Multisegment d = dual(m);
      em.emit(format_multisegment(d), 0, 0.0, format_multisegment(d));
    } else if (app.got_subcommand(c_grdim)) {
      std::vector<int> d = grdim(m);
      std::string human = "(";
      for (std::size_t i = 0; i < d.size(); ++i)
        human += (i ? "," : "") + std::to_string(d[i]);
      human += ")";
      em.emit(d, 0, 0.0, human);
    } else if (app.got_subcommand(c_reg)) {
      em.emit(is_regular(m), 0, 0.0, fmt_bool(is_regular(m)));
    } else if (app.got_subcommand(c_bal)) {
      BalancedResult b = balanced_test(m);
      json value = {{"balanced", b.balanced}};
      std::string human = fmt_bool(b.balanced);
      if (b.witness) {
        json segs = json::array();
        for (const Segment& s : b.witness->as_segments(m))
          segs.push_back("[" + std::to_string(s.b) + "," + std::to_string(s.e) + "]");
        value["witness_type"] =
            b.witness->type == PatternWitness::Type::T4231 ? "4231" : "3412";
        value["witness"] = segs;
        human += std::string(" (") + std::string(value["witness_type"]) + " witness)";
      }
      em.emit(value, 0, 0.0, human);
    } else if (app.got_subcommand(c_split)) {
      em.emit(is_split(m), 0, 0.0, fmt_bool(is_split(m)));
    } else if (app.got_subcommand(c_lad)) {
      em.emit(is_ladder(m), 0, 0.0, fmt_bool(is_ladder(m)));
    } else {  // peel
      PeelResult p = balanced_peel(m);
      json value = {{"sigma", format_basic(p.sigma)},
                    {"rest", format_multisegment(p.rest)},
                    {"case", p.peel_case}};
      em.emit(value, 0, 0.0,
              "sigma=" + format_basic(p.sigma) +
                  " rest=" + format_multisegment(p.rest) +
                  " case=" + std::to_string(p.peel_case));
    }
    return 0;
  }

  if (app.got_subcommand(c_match)) {
    auto [m, nn] = parse_two(arg1, arg2, g);
    Emitter em{g, "matching",
               {{"m", format_multisegment(m)},
                {"n", format_multisegment(nn)},
                {"ambient", m.n}}};
    MatchingResult mr = matching_condition(m, nn);
    long lam = hom_pi_lamina(m, nn);
    bool sum = star_sum_criterion(m, nn);
    json value = {{"holds", mr.holds},
                  {"max_matching", mr.max_matching},
                  {"required", mr.required},
                  {"hom_pi_lamina", lam},
                  {"star_equals_sum", sum}};
    em.emit(value, 0, 0.0,
            std::string("M(m,n)=") + fmt_bool(mr.holds) + " matching=" +
                std::to_string(mr.max_matching) + "/" +
                std::to_string(mr.required) + " hom_pi_lamina=" +
                std::to_string(lam) + " star_equals_sum=" + fmt_bool(sum));
    return 0;
  }

  if (app.got_subcommand(c_sigma)) {
    Multisegment m = parse_one(arg1, g);
    BasicRep sigma = parse_basic(arg2);
    Engine eng = make_engine(g);
    Emitter em{g, "sigma-decompose",
               {{"m", format_multisegment(m)},
                {"sigma", format_basic(sigma)},
                {"ambient", m.n}}};
    SigmaMachinery sm = sigma_machinery(m, sigma, eng);
    json peeled = json::array();
    for (const Segment& s : sm.peeled)
      peeled.push_back(format_basic(BasicRep{sigma.kind, s}));
    json value = {{"saturated", format_multisegment(sm.saturated_part)},
                  {"reduced", format_multisegment(sm.reduced_part)},
                  {"peeled", peeled},
                  {"is_reduced", sm.is_reduced}};
    em.emit(value, eng.config().trials, 0.0,
            "saturated=" + format_multisegment(sm.saturated_part) +
                " reduced=" + format_multisegment(sm.reduced_part) +
                " is_reduced=" + fmt_bool(sm.is_reduced));
    return 0;
  }

  if (app.got_subcommand(c_cw)) {
    std::vector<int> w = parse_permutation(arg1);
    Multisegment m = cw_multisegment(w);
    bool avoids = avoids_1324_2143(w);
    json winput = json::array();
    for (int v : w) winput.push_back(v);
    Emitter em{g, "cw", {{"w", winput}}};
    json value = {{"multisegment", format_multisegment(m)},
                  {"ambient", m.n},
                  {"avoids_1324_2143", avoids}};
    em.emit(value, 0, 0.0,
            format_multisegment(m) + " (n=" + std::to_string(m.n) +
                ", avoids 1324 and 2143: " + fmt_bool(avoids) + ")");
    return 0;
  }

  // verify
  Engine eng = make_engine(g);
  VerifyResult r = run_suite(arg1, eng, verify_samples, g.n, verify_k);
  Emitter em{g, "verify", {{"suite", arg1}}};
  json fails = json::array();
  for (const std::string& f : r.failures) fails.push_back(f);
  json value = {{"total", r.total}, {"failed", r.failed}, {"failures", fails}};
  std::string human = r.name + ": " + std::to_string(r.total - r.failed) + "/" +
                      std::to_string(r.total) + " passed";
  for (const std::string& f : r.failures) human += "\nFAIL " + f;
  em.emit(value, eng.config().trials, 0.0, human);
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const compstar::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const compstar::no_majority_error& e) {
    std::cerr << "no majority: " << e.what()
              << " (retry with a larger --trials)\n";
    return 3;
  } catch (const compstar::precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
