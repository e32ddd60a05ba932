// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pedkin/exact_kinship.hpp"
#include "pedkin/identity_states.hpp"
#include "pedkin/io.hpp"
#include "pedkin/oracle.hpp"
#include "pedkin/recursive_cut.hpp"
#include "pedkin/sampler.hpp"
#include "pedkin/scaling.hpp"
#include "pedkin/simulate.hpp"
#include "pedkin_cli.hpp"

using namespace pedkin;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<Index> everyone(const Pedigree& ped) {
  std::vector<Index> out(ped.size());
  for (Index i = 0; i < ped.size(); ++i) out[i] = i;
  return out;
}

std::vector<Index> last_generation(const Pedigree& ped, std::uint32_t pairs) {
  std::vector<Index> out;
  for (Index i = static_cast<Index>(ped.size() - 2 * pairs); i < ped.size(); ++i) out.push_back(i);
  return out;
}

std::vector<std::string> ids_of(const Pedigree& ped, std::span<const Index> idx) {
  std::vector<std::string> out;
  for (Index i : idx) out.push_back(ped.id(i));
  return out;
}

FounderKinship two_founder_psi(const Pedigree& ped, double psi_fg) {
  std::vector<std::string> ids = ids_of(ped, ped.founders());
  const std::size_t F = ids.size();
  std::vector<double> m(F * F, 0.0);
  m[1] = m[F] = psi_fg;
  return FounderKinship::full(ids, m);
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto n = static_cast<std::uint32_t>(2 + seed % 9);
    const auto ped = random_pedigree(n, std::max(0.3, 2.0 / n), 1000 + seed);
    const auto r = compare_matrices(exact_kinship(ped), brute_force_kinship(ped).matrix, 1e-12);
    worst = std::max(worst, r.max_abs_difference);
    failures += !r.ok();
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < 60.0,
          "200 pedigrees, max |d|=" + fmt("%.3g", worst) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome canonical_values() {
  struct Case {
    const char* name;
    Pedigree ped;
    const char* a;
    const char* b;
    double expected;
  };
  const std::vector<Case> cases{{"parent-child", support::trio(), "A", "C", 0.25},
                                {"full sibs", support::full_sibs(), "C", "D", 0.25},
                                {"half sibs", support::half_sibs(), "C", "D", 0.125},
                                {"first cousins", support::first_cousins(), "C1", "C2", 0.0625},
                                {"full-sib mating child", support::full_sib_mating(), "X", "X", 0.25}};
  Outcome out;
  for (const auto& c : cases) {
    const double oracle = brute_force_kinship(c.ped).matrix.at(c.a, c.b);
    const double exact = exact_kinship(c.ped).at(c.a, c.b);
    const bool ok = std::abs(oracle - c.expected) <= 1e-12 && std::abs(exact - c.expected) <= 1e-12;
    out.pass &= ok;
    if (!ok) out.detail += std::string(c.name) + " oracle=" + fmt("%.17g", oracle) + " exact=" + fmt("%.17g", exact) + "; ";
  }
  if (out.pass) out.detail = "5 relationships exact";
  return out;
}

Outcome recursive_cut_exactness() {
  const auto ped = wright_fisher_pedigree({25, 8, 2024, false});
  const auto interest = last_generation(ped, 25);
  const auto psi = FounderKinship::zero(ped);
  const auto exact = exact_kinship(ped, psi);
  const auto cut = recursive_cut_kinship(ped, psi, interest, per_generation_plan(ped, interest));
  const auto ids = ids_of(ped, interest);
  const double diff = compare_matrices(cut.restricted_to(ids), exact.restricted_to(ids), 1e-10).max_abs_difference;
  const auto single = recursive_cut_kinship(ped, psi, interest, plan_cuts(ped, interest, ped.size()));
  const bool identical = single.restricted_to(ids) == exact.restricted_to(ids);
  return {ped.size() == 400 && diff <= 1e-10 && identical,
          "n=" + std::to_string(ped.size()) + ", max |d|=" + fmt("%.3g", diff) +
              ", single segment " + (identical ? "bit-identical" : "DIFFERS")};
}

Outcome founder_seeding() {
  const auto trio = support::trio();
  const double child = exact_kinship(trio, two_founder_psi(trio, 0.25)).at("C", "C");

  const auto ped = wright_fisher_pedigree({6, 5, 17, false});
  const auto ids = ids_of(ped, ped.founders());
  const std::size_t F = ids.size();
  std::vector<double> diag(F * F, 0.0), constant(F * F, 0.2);
  for (std::size_t f = 0; f < F; ++f) diag[f * F + f] = 0.2;
  const auto avg = FounderKinship::full(ids, diag).with_mode(FounderMode::average_psi);
  const bool identical = exact_kinship(ped, avg) == exact_kinship(ped, FounderKinship::full(ids, constant));
  return {child == 0.25 && identical, "Phi_CC=" + fmt("%.17g", child) + ", average-psi " +
                                          (identical ? "bit-identical" : "DIFFERS")};
}

Outcome sampler_unbiasedness() {
  std::vector<Pedigree> peds{support::trio(), support::full_sibs(), support::half_sibs(),
                             support::first_cousins(), support::full_sib_mating()};
  for (std::uint64_t seed = 0; peds.size() < 105; ++seed) {
    const auto n = static_cast<std::uint32_t>(3 + seed % 8);
    auto ped = random_pedigree(n, std::max(0.4, 2.0 / n), 5000 + seed);
    if (ped.nonfounder_count() <= 6) peds.push_back(std::move(ped));
  }
  int mismatched = 0;
  std::uint64_t vectors = 0;
  for (const auto& ped : peds) {
    const auto interest = everyone(ped);
    const FounderMerges merges(ped, FounderKinship::zero(ped), MergeRule::unbiased_2psi);
    EstimateAccumulator acc(interest.size());
    Rng rng = replicate_rng(0, 0);
    CCLabels labels;
    support::for_each_segregation(ped, [&](const SegregationSample& seg) {
      compute_cc_labels(ped, seg, merges, rng, labels);
      accumulate_replicate(labels, interest, acc);
    });
    vectors += acc.replicates();
    const auto exact = exact_kinship(ped);
    for (std::size_t i = 0; i < interest.size(); ++i) {
      for (std::size_t j = 0; j < interest.size(); ++j) mismatched += acc.mean(i, j) != exact(i, j);
    }
  }
  return {mismatched == 0, std::to_string(peds.size()) + " pedigrees, " + std::to_string(vectors) +
                               " segregation vectors, " + std::to_string(mismatched) + " unequal entries"};
}

Outcome sampler_convergence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& ped : {support::trio(), support::full_sibs()}) {
    SamplerConfig cfg;
    cfg.samples = 200000;
    cfg.seed = 20240601;
    const auto est = estimate_kinship(ped, FounderKinship::zero(ped), everyone(ped), cfg);
    worst = std::max(worst, compare_matrices(est.estimate, exact_kinship(ped), 0.01).max_abs_difference);
  }
  // RMS error of the full-sib entry, the one with non-zero variance.
  const auto sibs = support::full_sibs();
  const std::vector<Index> pair{sibs.index_of("C"), sibs.index_of("D")};
  std::vector<double> S, rms;
  const int seeds = 32;
  for (std::uint64_t s : {100u, 1000u, 10000u, 100000u}) {
    double sq = 0.0;
    for (int k = 0; k < seeds; ++k) {
      SamplerConfig cfg;
      cfg.samples = s;
      cfg.seed = 9000 + static_cast<std::uint64_t>(k);
      const double e = estimate_kinship(sibs, FounderKinship::zero(sibs), pair, cfg).estimate(0, 1) - 0.25;
      sq += e * e;
    }
    S.push_back(static_cast<double>(s));
    rms.push_back(std::sqrt(sq / seeds));
  }
  const double slope = fit_power_law(S, rms).slope;
  const double secs = seconds_since(t0);
  return {worst <= 0.01 && std::abs(slope + 0.5) <= 0.1 && secs < 120.0,
          "max |d| at S=2e5: " + fmt("%.2g", worst) + ", log-log slope " + fmt("%.3f", slope) + ", " +
              fmt("%.1f", secs) + " s"};
}

Outcome founder_merge_expectation() {
  const auto ped = support::make_pedigree({{"f", "", "", Sex::male}, {"g", "", "", Sex::female}});
  const auto psi = two_founder_psi(ped, 0.3);
  SamplerConfig cfg;
  cfg.samples = 100000;
  cfg.seed = 31337;
  const double unbiased = estimate_kinship(ped, psi, everyone(ped), cfg).estimate.at("f", "g");
  cfg.merge_rule = MergeRule::literal;
  const double literal = estimate_kinship(ped, psi, everyone(ped), cfg).estimate.at("f", "g");
  return {std::abs(unbiased - 0.3) <= 0.01 && std::abs(literal - 0.15) <= 0.01,
          "unbiased " + fmt("%.4f", unbiased) + ", literal " + fmt("%.4f", literal)};
}

Outcome complexity_scaling() {
  ExactOptions opts;
  opts.check_ancestry = false;
  const int repeats = 7;

  auto exact_time = [&](std::uint32_t G) {
    const auto ped = wright_fisher_pedigree({25, G, 1, false});
    const auto psi = FounderKinship::zero(ped);
    return min_wall_seconds([&] { exact_kinship(ped, psi, opts); }, repeats);
  };
  // n = 700 -> 1400: both matrices stay cache resident.
  const double exact_ratio = exact_time(28) / exact_time(14);

  auto sample_time = [&](std::uint32_t G) {
    const auto ped = wright_fisher_pedigree({10, G, 2, false});
    const auto interest = last_generation(ped, 10);
    SamplerConfig cfg;
    cfg.samples = 300;
    cfg.seed = 3;
    return min_wall_seconds([&] { estimate_kinship(ped, FounderKinship::zero(ped), interest, cfg); }, repeats) /
           300.0;
  };
  const double sample_ratio = sample_time(1000) / sample_time(500);

  std::vector<double> gens, times;
  for (std::uint32_t G : {4u, 8u, 16u, 32u}) {
    const auto ped = wright_fisher_pedigree({100, G, 3, false});
    const auto interest = last_generation(ped, 100);
    const auto plan = per_generation_plan(ped, interest);
    const auto psi = FounderKinship::zero(ped);
    gens.push_back(G);
    times.push_back(min_wall_seconds([&] { recursive_cut_kinship(ped, psi, interest, plan, opts); }, repeats));
  }
  const double r2 = fit_line(gens, times).r_squared;
  return {exact_ratio >= 3.0 && exact_ratio <= 6.0 && sample_ratio >= 1.5 && sample_ratio <= 3.0 && r2 >= 0.95,
          "exact n->2n x" + fmt("%.2f", exact_ratio) + ", sampler per-replicate x" + fmt("%.2f", sample_ratio) +
              ", cut linear R^2=" + fmt("%.4f", r2)};
}

Outcome determinism() {
  bool ok = true;
  const auto ped = wright_fisher_pedigree({15, 10, 8, false});
  const auto interest = last_generation(ped, 15);
  std::vector<std::string> ids(ids_of(ped, ped.founders()));
  const std::size_t F = ids.size();
  std::vector<double> m(F * F, 0.0);
  for (std::size_t f = 0; f < F; ++f) {
    m[f * F + f] = 0.1;
    for (std::size_t g = f + 1; g < F; ++g) m[f * F + g] = m[g * F + f] = 0.05;
  }
  const auto psi = FounderKinship::full(ids, m);
  for (auto rule : {MergeRule::unbiased_2psi, MergeRule::literal}) {
    std::vector<KinshipEstimate> runs;
    for (std::size_t threads : {1u, 1u, 4u, 4u}) {
      SamplerConfig cfg;
      cfg.samples = 2001;
      cfg.seed = 99;
      cfg.merge_rule = rule;
      cfg.threads = threads;
      runs.push_back(estimate_kinship(ped, psi, interest, cfg));
    }
    for (const auto& r : runs) {
      ok &= r.estimate == runs[0].estimate && *r.standard_error == *runs[0].standard_error;
    }
  }
  auto text = [](const Pedigree& p) {
    std::ostringstream out;
    write_pedigree(p, out);
    return out.str();
  };
  ok &= text(wright_fisher_pedigree({7, 6, 5, false})) == text(wright_fisher_pedigree({7, 6, 5, false}));
  ok &= text(wright_fisher_pedigree({7, 6, 5, true})) == text(wright_fisher_pedigree({7, 6, 5, true}));
  ok &= text(random_pedigree(50, 0.2, 5)) == text(random_pedigree(50, 0.2, 5));
  ExactOptions one, four;
  four.threads = 4;
  const auto big = wright_fisher_pedigree({40, 60, 6, false});
  ok &= exact_kinship(big, FounderKinship::zero(big), one) == exact_kinship(big, FounderKinship::zero(big), four);
  return {ok, "sampler (both merge rules), simulators and exact across runs and threads {1,4}"};
}

Outcome identity_state_table() {
  std::ostringstream out, err;
  if (cli::run({"states"}, out, err) != 0) return {false, "states exited non-zero"};
  std::istringstream in(out.str());
  std::string line;
  std::set<int> detailed, condensed;
  int rows = 0;
  bool ok = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int d, c, aa, ab, bb, alleles;
    std::string state, outbred;
    row >> d >> c >> state >> aa >> ab >> bb >> alleles >> outbred;
    ++rows;
    detailed.insert(d);
    condensed.insert(c);
    // Clique accounting: the edges of all types add up to the pairs within classes.
    int pairs = 0, classes = 0;
    for (std::size_t pos = 0; (pos = state.find('{', pos)) != std::string::npos; ++pos) {
      const auto end = state.find('}', pos);
      const int size = static_cast<int>(std::count(state.begin() + pos, state.begin() + end, ',')) + 1;
      pairs += size * (size - 1) / 2;
      ++classes;
    }
    ok &= aa + ab + bb == pairs;
    ok &= alleles == classes;
    ok &= (outbred == "yes") == (aa == 0 && bb == 0);
  }
  ok &= rows == 15 && detailed.size() == 15 && condensed.size() == 9;
  return {ok, std::to_string(rows) + " rows, " + std::to_string(detailed.size()) + " detailed, " +
                  std::to_string(condensed.size()) + " condensed"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"canonical values", canonical_values},
      {"recursive-cut exactness", recursive_cut_exactness},
      {"founder-kinship seeding", founder_seeding},
      {"sampler unbiasedness (exhaustive)", sampler_unbiasedness},
      {"sampler convergence", sampler_convergence},
      {"founder-merge expectation", founder_merge_expectation},
      {"complexity scaling", complexity_scaling},
      {"determinism", determinism},
      {"identity-state table", identity_state_table},
  };
  int failed = 0;
  int number = 0;
  for (const auto& [name, check] : criteria) {
    ++number;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", number, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", number - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
