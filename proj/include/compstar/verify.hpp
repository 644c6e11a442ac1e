#pragma once

// Batch verification suites: each runs a battery of checks and reports
// per-case failures plus aggregate counts. Work items are generated
// deterministically up front and sharded across a worker pool; results are
// merged in input order, so output is independent of scheduling.

#include <atomic>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "compstar/combinatorics.hpp"
#include "compstar/common.hpp"
#include "compstar/enumerate.hpp"
#include "compstar/patterns.hpp"
#include "compstar/pp.hpp"
#include "compstar/segment.hpp"

namespace compstar {

struct VerifyResult {
  std::string name;
  int total = 0;
  int failed = 0;
  std::vector<std::string> failures;  // one message per failing case, in order

  bool ok() const { return failed == 0; }
};

namespace detail {

// Evaluate fn(i) for i in [0, total) on a worker pool; fn returns a failure
// message or nullopt. Results are collected by index.
inline std::vector<std::optional<std::string>> parallel_cases(
    int total, const std::function<std::optional<std::string>(int)>& fn) {
  std::vector<std::optional<std::string>> results(total);
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, 8);
  if (total < 4) workers = 1;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= total) return;
      try {
        results[i] = fn(i);
      } catch (const std::exception& e) {
        results[i] = std::string("exception: ") + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

inline VerifyResult collect(const std::string& name,
                            const std::vector<std::optional<std::string>>& results) {
  VerifyResult out;
  out.name = name;
  out.total = static_cast<int>(results.size());
  for (const auto& r : results)
    if (r) {
      ++out.failed;
      out.failures.push_back(*r);
    }
  return out;
}

// Run op with the given engine; on a no-majority failure retry once with
// triple the trial count.
template <typename Fn>
auto with_retry(const Engine& eng, Fn&& op) {
  try {
    return op(eng);
  } catch (const no_majority_error&) {
    EngineConfig cfg = eng.config();
    cfg.trials *= 3;
    Engine retry(cfg);
    return op(retry);
  }
}

}  // namespace detail

// Rigidity of the components attached to permutations agrees with avoidance
// of the patterns 1324 and 2143, for all w in S_2, ..., S_kmax.
inline VerifyResult verify_lm_sweep(const Engine& eng, int kmax = 5) {
  std::vector<std::vector<int>> perms;
  for (int k = 2; k <= kmax; ++k)
    for (auto& w : all_permutations(k)) perms.push_back(w);
  auto results = detail::parallel_cases(
      static_cast<int>(perms.size()), [&](int i) -> std::optional<std::string> {
        const auto& w = perms[i];
        Multisegment m = cw_multisegment(w);
        bool avoids = avoids_1324_2143(w);
        bool rigid = detail::with_retry(
            eng, [&](const Engine& e) { return e.is_rigid(m); }).value;
        if (rigid == avoids) return std::nullopt;
        std::ostringstream msg;
        msg << "w=(";
        for (std::size_t j = 0; j < w.size(); ++j)
          msg << (j ? "," : "") << w[j];
        msg << "): rigid=" << rigid << " but avoids(1324,2143)=" << avoids;
        return msg.str();
      });
  return detail::collect("lm-sweep", results);
}

// Balanced <=> rigid on random regular multisegments.
inline VerifyResult verify_balanced_vs_rigid(const Engine& eng, int samples = 200,
                                             int n = 8, int max_segs = 6) {
  std::vector<Multisegment> items;
  for (int i = 0; i < samples; ++i) {
    auto rng = make_rng(eng.config().seed, fnv1a64("verify-balanced"), i);
    items.push_back(random_regular(n, max_segs, rng));
  }
  auto results = detail::parallel_cases(
      samples, [&](int i) -> std::optional<std::string> {
        const Multisegment& m = items[i];
        bool balanced = is_balanced(m);
        bool rigid = detail::with_retry(
            eng, [&](const Engine& e) { return e.is_rigid(m); }).value;
        if (balanced == rigid) return std::nullopt;
        return "m=" + format_multisegment(m) + ": balanced=" +
               (balanced ? "true" : "false") + " rigid=" +
               (rigid ? "true" : "false");
      });
  return detail::collect("balanced-vs-rigid", results);
}

// The involution squares to the identity and preserves graded dimensions.
inline VerifyResult verify_mw_involution(const Engine& eng, int samples = 500,
                                         int n = 8, int max_segs = 6) {
  std::vector<Multisegment> items;
  for (int i = 0; i < samples; ++i) {
    auto rng = make_rng(eng.config().seed, fnv1a64("verify-mw"), i);
    items.push_back(random_multisegment(n, max_segs, rng));
  }
  auto results = detail::parallel_cases(
      samples, [&](int i) -> std::optional<std::string> {
        const Multisegment& m = items[i];
        Multisegment t = detail::with_retry(
            eng, [&](const Engine& e) { return e.mw(m); }).value;
        if (grdim(t) != grdim(m))
          return "m=" + format_multisegment(m) + ": mw changed grdim";
        Multisegment tt = detail::with_retry(
            eng, [&](const Engine& e) { return e.mw(t); }).value;
        if (!(tt == m))
          return "m=" + format_multisegment(m) + ": mw(mw(m))=" +
                 format_multisegment(tt);
        return std::nullopt;
      });
  return detail::collect("mw-involution", results);
}

// star(m,n)^dual = star(n^dual, m^dual).
inline VerifyResult verify_duality_star(const Engine& eng, int samples = 200,
                                        int n = 7, int max_segs = 4) {
  std::vector<std::pair<Multisegment, Multisegment>> items;
  for (int i = 0; i < samples; ++i) {
    auto rng = make_rng(eng.config().seed, fnv1a64("verify-duality"), i);
    items.emplace_back(random_multisegment(n, max_segs, rng),
                       random_multisegment(n, max_segs, rng));
  }
  auto results = detail::parallel_cases(
      samples, [&](int i) -> std::optional<std::string> {
        const auto& [m, nn] = items[i];
        Multisegment lhs = dual(detail::with_retry(
            eng, [&](const Engine& e) { return e.star(m, nn); }).value);
        Multisegment rhs = detail::with_retry(
            eng, [&](const Engine& e) { return e.star(dual(nn), dual(m)); }).value;
        if (lhs == rhs) return std::nullopt;
        return "m=" + format_multisegment(m) + " n=" + format_multisegment(nn) +
               ": dual(star)=" + format_multisegment(lhs) +
               " star(duals)=" + format_multisegment(rhs);
      });
  return detail::collect("duality-star", results);
}

// With one ladder argument: the matching criterion detects star = sum, and
// the matching formula computes hom over the preprojective algebra.
inline VerifyResult verify_matching_vs_star(const Engine& eng, int samples = 300,
                                            int n = 6, int max_segs = 4) {
  std::vector<std::pair<Multisegment, Multisegment>> items;
  for (int i = 0; i < samples; ++i) {
    auto rng = make_rng(eng.config().seed, fnv1a64("verify-matching"), i);
    Multisegment lad = random_ladder(n, max_segs, rng);
    Multisegment other = random_multisegment(n, max_segs, rng);
    if (rng() & 1)
      items.emplace_back(lad, other);
    else
      items.emplace_back(other, lad);
  }
  auto results = detail::parallel_cases(
      samples, [&](int i) -> std::optional<std::string> {
        const auto& [m, nn] = items[i];
        bool crit = star_sum_criterion(m, nn);
        Multisegment st = detail::with_retry(
            eng, [&](const Engine& e) { return e.star(m, nn); }).value;
        bool is_sum = st == m + nn;
        if (crit != is_sum)
          return "m=" + format_multisegment(m) + " n=" + format_multisegment(nn) +
                 ": criterion=" + (crit ? "true" : "false") + " star=" +
                 format_multisegment(st);
        long lam = hom_pi_lamina(m, nn);
        long hp = detail::with_retry(
            eng, [&](const Engine& e) { return e.hom_pi(m, nn); }).value;
        if (lam != hp)
          return "m=" + format_multisegment(m) + " n=" + format_multisegment(nn) +
                 ": hom_pi_lamina=" + std::to_string(lam) +
                 " hom_pi=" + std::to_string(hp);
        return std::nullopt;
      });
  return detail::collect("matching-vs-star", results);
}

// The deterministic recipes agree with the randomized star.
inline VerifyResult verify_recipes(const Engine& eng, int seg_samples = 300,
                                   int bal_samples = 200, int n = 6) {
  struct Item {
    Multisegment m, nn;
    bool balanced_case;
  };
  std::vector<Item> items;
  std::vector<Segment> segs = all_segments(n);
  for (int i = 0; i < seg_samples; ++i) {
    auto rng = make_rng(eng.config().seed, fnv1a64("verify-recipe-seg"), i);
    Segment d = segs[rng() % segs.size()];
    Multisegment nn = random_multisegment(n, 4, rng);
    items.push_back({Multisegment(n, {d}), nn, false});
  }
  for (int i = 0; i < bal_samples; ++i) {
    auto rng = make_rng(eng.config().seed, fnv1a64("verify-recipe-bal"), i);
    Multisegment m(n, {});
    for (int attempt = 0; attempt < 500; ++attempt) {
      Multisegment cand = random_regular(n, 4, rng);
      if (!cand.empty() && is_balanced(cand)) {
        m = cand;
        break;
      }
    }
    if (m.empty()) m = Multisegment(n, {Segment{1, 1}});
    Multisegment nn = random_multisegment(n, 4, rng);
    items.push_back({m, nn, true});
  }
  auto results = detail::parallel_cases(
      static_cast<int>(items.size()), [&](int i) -> std::optional<std::string> {
        const Item& it = items[i];
        Multisegment recipe = detail::with_retry(eng, [&](const Engine& e) {
          return it.balanced_case ? star_balanced(it.m, it.nn, e)
                                  : star_segment(it.m.segs[0], it.nn, e);
        });
        Multisegment direct = detail::with_retry(
            eng, [&](const Engine& e) { return e.star(it.m, it.nn); }).value;
        if (recipe == direct) return std::nullopt;
        return std::string(it.balanced_case ? "balanced" : "segment") +
               " m=" + format_multisegment(it.m) +
               " n=" + format_multisegment(it.nn) +
               ": recipe=" + format_multisegment(recipe) +
               " star=" + format_multisegment(direct);
      });
  return detail::collect("recipes-vs-randomized", results);
}

// Regression values from the worked examples.
inline VerifyResult verify_paper_examples(const Engine& eng) {
  std::vector<std::optional<std::string>> results;
  auto check = [&](bool ok, const std::string& what) {
    results.push_back(ok ? std::nullopt : std::optional<std::string>(what));
  };

  {  // the non-rigid component on n = 5
    Multisegment m = parse_multisegment("[4,5]+[2,4]+[3,3]+[1,2]", 5);
    auto hom = eng.hom_pi(m, m);
    auto ext = eng.ext1_pi(m, m);
    auto rig = eng.is_rigid(m);
    auto sc = eng.strongly_commute(m, m);
    auto st = detail::with_retry(eng, [&](const Engine& e) { return e.star(m, m); });
    check(hom.value == 3, "nonrigid: hom_pi(m,m)=" + std::to_string(hom.value));
    check(ext.value == 2, "nonrigid: ext1_pi(m,m)=" + std::to_string(ext.value));
    check(!rig.value, "nonrigid: is_rigid(m)=true");
    check(sc.value, "nonrigid: strongly_commute(m,m)=false");
    check(st.value == m + m,
          "nonrigid: star(m,m)=" + format_multisegment(st.value));
  }
  {  // the non-rigid component on n = 7 whose square is rigid
    Multisegment m = parse_multisegment("[4,7]+[5,6]+[2,5]+[3,4]+[1,3]", 7);
    Multisegment expect = parse_multisegment(
        "[4,7]+[2,7]+[5,6]+[3,6]+[4,5]+[1,5]+[2,4]+[3,3]+[1,3]", 7);
    auto st = detail::with_retry(eng, [&](const Engine& e) { return e.star(m, m); });
    check(st.value == expect, "square: star(m,m)=" + format_multisegment(st.value));
    check(!eng.is_rigid(m).value, "square: is_rigid(m)=true");
    check(eng.is_rigid(st.value).value, "square: is_rigid(star(m,m))=false");
  }
  {  // splitting a ladder into two
    Multisegment m1 = parse_multisegment("[1,1]+[3,4]+[4,7]", 8);
    Multisegment m2 = parse_multisegment("[2,4]+[5,6]+[8,8]", 8);
    Multisegment expect = parse_multisegment("[1,4]+[3,6]+[4,8]", 8);
    auto st = detail::with_retry(eng, [&](const Engine& e) { return e.star(m1, m2); });
    check(st.value == expect,
          "two-ladders: star(m1,m2)=" + format_multisegment(st.value));
    auto fac = detail::with_retry(
        eng, [&](const Engine& e) { return e.factor(expect, m1); });
    check(fac.value && *fac.value == m2,
          "two-ladders: factor(star, m1) mismatch");
  }
  {  // duality on a single segment
    Multisegment m = parse_multisegment("[4,5]", 5);
    check(dual(m) == parse_multisegment("[1,2]", 5),
          "dual([4,5]) != [1,2] on n=5");
  }
  return detail::collect("paper-examples", results);
}

// Dispatch by suite name; throws parse_error on an unknown name.
inline VerifyResult run_suite(const std::string& name, const Engine& eng,
                              int samples = 0, int n = 0, int k = 0) {
  if (name == "lm-sweep") return verify_lm_sweep(eng, k > 0 ? k : 5);
  if (name == "balanced-vs-rigid")
    return verify_balanced_vs_rigid(eng, samples > 0 ? samples : 200,
                                    n > 0 ? n : 8);
  if (name == "mw-involution")
    return verify_mw_involution(eng, samples > 0 ? samples : 500, n > 0 ? n : 8);
  if (name == "duality-star")
    return verify_duality_star(eng, samples > 0 ? samples : 200, n > 0 ? n : 7);
  if (name == "matching-vs-star")
    return verify_matching_vs_star(eng, samples > 0 ? samples : 300,
                                   n > 0 ? n : 6);
  if (name == "recipes-vs-randomized")
    return verify_recipes(eng, samples > 0 ? samples : 300,
                          samples > 0 ? std::max(1, samples * 2 / 3) : 200,
                          n > 0 ? n : 6);
  if (name == "paper-examples") return verify_paper_examples(eng);
  throw parse_error("unknown verification suite: " + name);
}

}  // namespace compstar
