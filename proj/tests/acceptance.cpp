// Acceptance suite: one PASS/FAIL line per criterion, details indented below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "opr/baselines.hpp"
#include "opr/join.hpp"
#include "opr/metrics.hpp"
#include "opr/miner.hpp"
#include "test_support.hpp"

namespace {

using namespace opr;
using opr::testing::kSample;
using Supports = std::map<OppPattern, std::size_t>;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    details.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    pass = pass && ok;
  }
};

Supports supports(const MiningResult& r) {
  Supports out;
  for (const auto& [p, info] : r.frequent) out.emplace(p, info.support);
  return out;
}

std::string show(const Supports& s) {
  std::string out = "{";
  for (const auto& [p, n] : s) {
    if (out.size() > 1) out += ", ";
    out += to_string(p) + ":" + std::to_string(n);
  }
  return out + "}";
}

std::string show(const OccurrenceList& l) {
  std::string out = "{";
  for (auto v : l) {
    if (out.size() > 1) out += ",";
    out += std::to_string(v);
  }
  return out + "}";
}

std::string show_rule(const OpRule& r) {
  return to_string(r.antecedent) + "->" + to_string(r.consequent) + " " + std::to_string(r.sup_y) +
         "/" + std::to_string(r.sup_x);
}

MinerConfig config(std::size_t minsup, Variant v = Variant::EfoMiner, double minconf = 1.0) {
  MinerConfig c;
  c.minsup = minsup;
  c.variant = v;
  c.minconf = minconf;
  return c;
}

struct Instance {
  TimeSeries series;
  std::size_t minsup;
};

// n in [10, 300]; every series carries repeated values.
std::vector<Instance> make_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> length(10, 300);
  std::uniform_int_distribution<std::size_t> minsup(2, 8);
  std::vector<Instance> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = length(rng);
    TimeSeries t = i % 3 == 0 ? opr::testing::random_series(rng, n, 4 + static_cast<int>(i % 20))
                              : opr::testing::random_series_with_ties(rng, n, 0.05 + 0.05 * (i % 5));
    if (std::adjacent_find(t.begin(), t.end()) == t.end() && n >= 2) t[1] = t[0];
    corpus.push_back({std::move(t), minsup(rng)});
  }
  return corpus;
}

const std::vector<Instance>& corpus() {
  static const auto c = make_corpus(1000, 20240601);
  return c;
}

double median_ms(const std::function<void()>& f, int reps) {
  std::vector<double> times;
  for (int i = 0; i < reps; ++i) {
    const auto start = Clock::now();
    f();
    times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

// ---------------------------------------------------------------------------

Outcome golden_frequent_set() {
  Outcome o;
  const Supports expected{{OppPattern{1, 2}, 7},       {OppPattern{2, 1}, 8},
                          {OppPattern{1, 3, 2}, 6},    {OppPattern{2, 1, 3}, 4},
                          {OppPattern{1, 3, 2, 4}, 3}, {OppPattern{3, 1, 4, 2}, 3}};
  for (Variant v : kAllVariants) {
    const auto start = Clock::now();
    const auto r = mine(SequenceDatabase(kSample), config(3, v));
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const auto got = supports(r);
    std::set<OppPattern> got_set, want_set;
    for (const auto& [p, n] : got) got_set.insert(p);
    for (const auto& [p, n] : expected) want_set.insert(p);
    o.check(got_set == want_set, std::string(to_string(v)) + " pattern set");
    o.check(got == expected, std::string(to_string(v)) + " supports " + show(got));
    o.check(secs < 1.0, std::string(to_string(v)) + " under 1 s");
  }
  return o;
}

Outcome golden_rules() {
  Outcome o;
  const auto strong = opr_miner(kSample, config(3, Variant::EfoMiner, 0.7)).rules;
  std::vector<std::pair<OppPattern, OppPattern>> strong_pairs;
  std::string listing;
  for (const auto& r : strong) {
    strong_pairs.emplace_back(r.antecedent, r.consequent);
    listing += " " + show_rule(r);
  }
  const std::vector<std::pair<OppPattern, OppPattern>> want_strong{
      {OppPattern{1, 2}, OppPattern{1, 3, 2}}, {OppPattern{2, 1, 3}, OppPattern{3, 1, 4, 2}}};
  o.check(strong_pairs == want_strong, "strong rules at minconf 0.7:" + listing);
  bool conf_ok = strong.size() == 2 && strong[0].sup_y * 7 == strong[0].sup_x * 6 &&
                 strong[1].sup_y * 4 == strong[1].sup_x * 3;
  o.check(conf_ok, "strong rule confidences 6/7 and 3/4");

  const auto all = opr_all_rules(efo_miner(kSample, config(3)));
  std::vector<std::pair<OppPattern, OppPattern>> all_pairs;
  listing.clear();
  for (const auto& r : all) {
    all_pairs.emplace_back(r.antecedent, r.consequent);
    listing += " " + show_rule(r);
  }
  const std::vector<std::pair<OppPattern, OppPattern>> want_all{
      {OppPattern{1, 2}, OppPattern{1, 3, 2}},
      {OppPattern{2, 1}, OppPattern{2, 1, 3}},
      {OppPattern{1, 3, 2}, OppPattern{1, 3, 2, 4}},
      {OppPattern{2, 1, 3}, OppPattern{3, 1, 4, 2}}};
  o.check(all_pairs == want_all, "unfiltered rules:" + listing);
  const auto loose = opr_miner(kSample, config(3, Variant::EfoMiner, 0.01)).rules;
  o.check(loose == all, "minconf 0.01 yields the unfiltered rule set");
  return o;
}

Outcome golden_joins() {
  Outcome o;
  const auto seeds = scan_length2(kSample);
  auto p = seeds.up;
  auto q = seeds.down;
  const auto plain = spf_join(OppPattern{1, 2}, p, OppPattern{2, 1}, q, kSample, false);
  o.check(plain.r == OccurrenceList{3, 5, 9, 11, 13, 15}, "L_(1,3,2) = " + show(plain.r));
  o.check(plain.h == OccurrenceList{11, 15}, "L_(2,3,1) = " + show(plain.h));

  auto ps = seeds.up;
  auto qs = seeds.down;
  spf_join(OppPattern{1, 2}, ps, OppPattern{2, 1}, qs, kSample, true);
  o.check(qs == OccurrenceList{6, 7}, "post-screening S_(2,1) = " + show(qs));

  auto d1 = seeds.down;
  auto d2 = seeds.down;
  const auto dd = spf_join(OppPattern{2, 1}, d1, OppPattern{2, 1}, d2, kSample, false);
  o.check(dd.r == OccurrenceList{6, 7} && dd.h.empty(), "L_(3,2,1) = " + show(dd.r));
  return o;
}

Outcome golden_table() {
  Outcome o;
  const std::vector<OppPattern> f3{{2, 1, 3}, {1, 3, 2}};
  std::set<OppPattern> fusion;
  std::size_t fusion_count = 0;
  for (const auto& a : f3) {
    for (const auto& b : f3) {
      if (!can_fuse(a, b)) continue;
      const auto f = fuse(a, b);
      fusion.insert(f.r);
      if (f.h) fusion.insert(*f.h);
      fusion_count += f.count();
    }
  }
  o.check(fusion == std::set<OppPattern>{{2, 1, 4, 3}, {3, 1, 4, 2}, {1, 3, 2, 4}} &&
              fusion_count == 3,
          "fusion column: 3 outputs");
  const auto e1 = enumerate_extensions(OppPattern{2, 1, 3});
  const auto e2 = enumerate_extensions(OppPattern{1, 3, 2});
  o.check(e1 == std::vector<OppPattern>{{2, 1, 3, 4}, {2, 1, 4, 3}, {3, 1, 4, 2}, {3, 2, 4, 1}},
          "enumeration of (2,1,3)");
  o.check(e2 == std::vector<OppPattern>{{1, 3, 2, 4}, {1, 4, 2, 3}, {1, 4, 3, 2}, {2, 4, 3, 1}},
          "enumeration of (1,3,2)");
  o.check(e1.size() + e2.size() == 8, "enumeration column: 8 outputs");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  std::size_t patterns = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& inst = corpus()[i];
    MinerConfig c = config(inst.minsup);
    c.max_pattern_len = 6;
    const auto mined = supports(efo_miner(inst.series, c));
    const auto oracle = supports(brute_force_frequent(inst.series, inst.minsup, 6));
    patterns += oracle.size();
    if (mined != oracle) {
      if (mismatches++ == 0) first_bad = "instance " + std::to_string(i);
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.check(corpus().size() >= 1000, std::to_string(corpus().size()) + " random series, n in [10,300]");
  o.check(mismatches == 0, std::to_string(mismatches) + " mismatches over " +
                               std::to_string(patterns) + " oracle patterns " + first_bad);
  o.check(secs < 300.0, "suite time " + std::to_string(secs) + " s");
  return o;
}

Outcome variant_equivalence() {
  Outcome o;
  std::size_t disagree = 0, cand_order = 0, comp_order = 0;
  for (const auto& inst : corpus()) {
    const SequenceDatabase db(inst.series);
    std::map<Variant, MiningResult> runs;
    for (Variant v : kAllVariants) runs.emplace(v, mine(db, config(inst.minsup, v)));
    const auto ref = supports(runs.at(Variant::EfoMiner));
    for (const auto& [v, r] : runs) disagree += supports(r) != ref;
    const auto& s = [&](Variant v) -> const InstrumentationCounters& { return runs.at(v).stats; };
    cand_order += !(s(Variant::EfoMiner).candidates_checked <= s(Variant::EfoPrun).candidates_checked &&
                    s(Variant::EfoPrun).candidates_checked <= s(Variant::EfoEnum).candidates_checked);
    comp_order += !(s(Variant::EfoMiner).element_comparisons <= s(Variant::EfoScrn).element_comparisons);
  }
  const auto n = std::to_string(corpus().size());
  o.check(disagree == 0, "frequent sets and supports agree across 5 variants on " + n + " instances");
  o.check(cand_order == 0, "candidates miner <= prun <= enum (" + std::to_string(cand_order) + " violations)");
  o.check(comp_order == 0, "comparisons miner <= scrn (" + std::to_string(comp_order) + " violations)");
  return o;
}

Outcome scalability() {
  Outcome o;
  std::mt19937_64 rng(77);
  const TimeSeries base = opr::testing::random_series_with_ties(rng, 6000, 0.02);
  const int reps = 7;

  Supports reference;
  std::vector<double> prop_ms, fixed_ms, mat_ms;
  std::vector<std::uint64_t> prop_cmp, fixed_cmp;
  bool identical = true;
  for (std::size_t k = 1; k <= 6; ++k) {
    const std::vector<TimeSeries> data(k, base);
    const std::size_t minsup = 10 * k;
    const auto r = mine_dataset(data, config(minsup));
    Supports scaled;
    for (const auto& [p, n] : supports(r)) scaled.emplace(p, n / k);
    if (k == 1) reference = scaled;
    identical = identical && scaled == reference;
    const auto fixed = mine_dataset(data, config(10));
    prop_cmp.push_back(r.stats.element_comparisons);
    fixed_cmp.push_back(fixed.stats.element_comparisons);

    prop_ms.push_back(median_ms([&] { mine_dataset(data, config(minsup)); }, reps));
    fixed_ms.push_back(median_ms([&] { mine_dataset(data, config(10)); }, reps));
    mat_ms.push_back(median_ms([&] { mine_dataset(data, config(minsup, Variant::MatBased)); }, 3));
    o.details.push_back("      x" + std::to_string(k) + " minsup " + std::to_string(minsup) +
                        ": efo " + std::to_string(prop_ms.back()) + " ms, fixed-minsup efo " +
                        std::to_string(fixed_ms.back()) + " ms, mat-based " +
                        std::to_string(mat_ms.back()) + " ms, patterns " +
                        std::to_string(r.frequent.size()) + " vs " +
                        std::to_string(fixed.frequent.size()));
  }
  o.check(identical && !reference.empty(),
          "frequent sets identical across x1..x6 (" + std::to_string(reference.size()) + " patterns)");
  const double prop_growth = prop_ms.back() / prop_ms.front();
  const double fixed_growth = fixed_ms.back() / fixed_ms.front();
  o.check(prop_growth < fixed_growth, "time growth x1->x6 proportional " + std::to_string(prop_growth) +
                                          " < fixed-minsup " + std::to_string(fixed_growth));
  const double prop_cmp_growth = static_cast<double>(prop_cmp.back()) / prop_cmp.front();
  const double fixed_cmp_growth = static_cast<double>(fixed_cmp.back()) / fixed_cmp.front();
  o.check(prop_cmp_growth < fixed_cmp_growth,
          "comparison growth proportional " + std::to_string(prop_cmp_growth) + " < fixed-minsup " +
              std::to_string(fixed_cmp_growth));
  bool faster = true;
  for (std::size_t i = 0; i < prop_ms.size(); ++i) faster = faster && prop_ms[i] < mat_ms[i];
  o.check(faster, "efo-miner faster than mat-based at every scale");
  return o;
}

Outcome monotonicity() {
  Outcome o;
  std::vector<Instance> cases{{kSample, 1}};
  for (std::size_t i = 0; i < 40; ++i) cases.push_back(corpus()[i * 25]);
  std::size_t minsup_bad = 0, constant_bad = 0, strong_bad = 0;
  for (const auto& inst : cases) {
    std::size_t previous = SIZE_MAX;
    for (std::size_t minsup : {1, 2, 3, 4, 6, 8}) {
      const std::size_t count = efo_miner(inst.series, config(minsup)).frequent.size();
      minsup_bad += count > previous;
      previous = count;
    }
    std::size_t prev_strong = SIZE_MAX;
    std::optional<std::tuple<std::uint64_t, std::size_t, std::size_t>> fixed;
    for (double minconf : {0.05, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      const auto r = opr_miner(inst.series, config(2, Variant::EfoMiner, minconf));
      const auto shape = std::make_tuple(r.mining.stats.candidates_checked, r.mining.frequent.size(),
                                         opr_all_rules(r.mining).size());
      if (!fixed) fixed = shape;
      constant_bad += shape != *fixed;
      strong_bad += r.rules.size() > prev_strong;
      prev_strong = r.rules.size();
    }
  }
  const auto n = std::to_string(cases.size());
  o.check(minsup_bad == 0, "pattern counts non-increasing over minsup {1,2,3,4,6,8} on " + n + " series");
  o.check(constant_bad == 0, "candidate/frequent/all-rule counts constant over 6 minconf values");
  o.check(strong_bad == 0, "strong-rule counts non-increasing over minconf");
  return o;
}

Outcome metrics() {
  Outcome o;
  using L = std::vector<int>;
  o.check(std::abs(nmi(L{0, 1, 0, 2}, L{0, 1, 0, 2}) - 1.0) <= 1e-12, "nmi(x, x) = 1");
  o.check(nmi(L{5, 5, 5, 5}, L{0, 1, 0, 1}) == 0.0, "constant labeling gives 0");
  o.check(std::abs(nmi(L{0, 0, 1, 1}, L{1, 1, 0, 0}) - 1.0) <= 1e-12, "swapped labels give 1");
  o.check(std::abs(homogeneity(L{0, 1, 1}, L{0, 1, 1}) - 1.0) <= 1e-12, "homogeneity(x, x) = 1");
  o.check(std::abs(homogeneity(L{0, 0, 1, 1}, L{0, 1, 2, 3}) - 1.0) <= 1e-12,
          "pure split clusters give homogeneity 1");
  o.check(std::abs(homogeneity(L{0, 1, 0, 1}, L{0, 0, 1, 1})) <= 1e-12,
          "independent clusters give homogeneity 0");

  std::mt19937_64 rng(5);
  std::size_t range_bad = 0, sym_bad = 0, relabel_bad = 0, ident_bad = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + trial % 80;
    std::uniform_int_distribution<int> dx(0, trial % 6), dy(0, (trial / 6) % 7);
    L x(n), y(n);
    for (auto& v : x) v = dx(rng);
    for (auto& v : y) v = dy(rng);
    const double v = nmi(x, y), h = homogeneity(x, y);
    range_bad += !(v >= 0 && v <= 1 && h >= 0 && h <= 1);
    sym_bad += std::abs(v - nmi(y, x)) > 1e-12;
    L xr = x, yr = y;
    for (auto& l : xr) l = 9 - 2 * l;
    for (auto& l : yr) l += 40;
    relabel_bad += std::abs(nmi(xr, yr) - v) > 1e-12 || std::abs(homogeneity(xr, yr) - h) > 1e-12;
    if (std::set<int>(x.begin(), x.end()).size() > 1) ident_bad += std::abs(nmi(x, x) - 1.0) > 1e-12;
  }
  o.check(range_bad == 0, "values in [0,1] on 2000 random labelings");
  o.check(sym_bad == 0, "nmi symmetric");
  o.check(relabel_bad == 0, "both metrics invariant under relabeling");
  o.check(ident_bad == 0, "identical labelings give nmi 1 within 1e-12");
  return o;
}

Outcome rule_subset() {
  Outcome o;
  std::size_t bad = 0, rules_seen = 0;
  const double confs[] = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& inst = corpus()[i];
    const double minconf = confs[i % 6];
    const auto r = opr_miner(inst.series, config(inst.minsup, Variant::EfoMiner, minconf));
    std::vector<OpRule> filtered;
    for (const auto& rule : opr_all_rules(r.mining)) {
      if (meets_confidence(rule.sup_x, rule.sup_y, minconf)) filtered.push_back(rule);
    }
    bad += filtered != r.rules;
    rules_seen += r.rules.size();
  }
  o.check(bad == 0, "opr_miner = filter(all rules) on " + std::to_string(corpus().size()) +
                        " instances (" + std::to_string(rules_seen) + " strong rules)");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"1 golden frequent set", golden_frequent_set},
      {"2 golden rules", golden_rules},
      {"3 golden joins", golden_joins},
      {"4 fusion vs enumeration table", golden_table},
      {"5 oracle equivalence", oracle_equivalence},
      {"6 variant equivalence and counter order", variant_equivalence},
      {"7 scalability shape", scalability},
      {"8 monotonicity sweeps", monotonicity},
      {"9 clustering metrics", metrics},
      {"10 rule subset", rule_subset},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << "criterion " << c.name << '\n';
    for (const auto& d : o.details) std::cout << "      " << d << '\n';
    std::cout.flush();
    failed += !o.pass;
  }
  std::cout << (10 - failed) << "/10 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
