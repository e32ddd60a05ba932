#include "pedkin_cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pedkin/ancestors.hpp"
#include "pedkin/error.hpp"
#include "pedkin/exact_kinship.hpp"
#include "pedkin/identity_states.hpp"
#include "pedkin/io.hpp"
#include "pedkin/oracle.hpp"
#include "pedkin/recursive_cut.hpp"
#include "pedkin/sampler.hpp"
#include "pedkin/scaling.hpp"
#include "pedkin/simulate.hpp"

namespace pedkin::cli {

namespace {

struct RunConfig {
  std::string pedigree_path;
  std::string founder_kinship_path;
  std::string interest_path;
  std::string matrix_path;
  std::string output_path;
  std::string id;
  bool average_psi = false;
  Diagonal diagonal = Diagonal::inbreeding;
  MatrixFormat format = MatrixFormat::dense;
  std::size_t threads = 1;

  // cut
  std::size_t max_segment = 0;
  bool emit_plan = false;

  // sample
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  MergeRule merge_rule = MergeRule::unbiased_2psi;
  bool with_stderr = false;

  // simulate / bench
  std::string model = "wf";
  std::uint32_t pairs = 0;
  std::uint32_t generations = 0;
  std::uint32_t size = 0;
  double founder_fraction = 0.5;
  bool monogamous = false;
  std::string algos = "exact,cut,sample";
  std::uint64_t bench_samples = 100;
  int repeats = 3;

  // verify
  double tolerance = 1e-12;
};

std::size_t default_threads() {
  if (const char* env = std::getenv("PEDKIN_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// Randomized commands print the seed they used when none was given.
std::uint64_t resolve_seed(const RunConfig& cfg, std::ostream& err) {
  if (cfg.seed) return *cfg.seed;
  std::random_device rd;
  const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  err << "seed=" << seed << '\n';
  return seed;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::io_failure, "cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

FounderKinship load_psi(const RunConfig& cfg, const Pedigree& ped) {
  FounderKinship psi = cfg.founder_kinship_path.empty()
                           ? FounderKinship::zero(ped)
                           : read_founder_kinship_file(cfg.founder_kinship_path, ped);
  if (cfg.average_psi) psi = psi.with_mode(FounderMode::average_psi);
  return psi;
}

std::vector<Index> load_interest(const RunConfig& cfg, const Pedigree& ped) {
  std::vector<Index> interest;
  for (const auto& id : read_id_list_file(cfg.interest_path)) {
    const Index i = ped.index_of(id);
    if (std::find(interest.begin(), interest.end(), i) == interest.end()) interest.push_back(i);
  }
  if (interest.empty()) throw Error(ErrorCode::invalid_argument, "interest file lists no individuals");
  return interest;
}

std::vector<std::string> ids_of(const Pedigree& ped, std::span<const Index> indices) {
  std::vector<std::string> out;
  for (Index i : indices) out.push_back(ped.id(i));
  return out;
}

void emit_matrix(const RunConfig& cfg, const KinshipMatrix& m, std::ostream& out) {
  write_kinship_matrix(convert_diagonal(m, cfg.diagonal), cfg.format, out);
}

int cmd_exact(const RunConfig& cfg, std::ostream& out) {
  const Pedigree ped = read_pedigree_file(cfg.pedigree_path);
  const auto psi = load_psi(cfg, ped);
  ExactOptions options;
  options.threads = cfg.threads;
  const auto m = exact_kinship(ped, psi, options);
  Output o(cfg.output_path, out);
  emit_matrix(cfg, m, *o);
  return kExitOk;
}

int cmd_cut(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Pedigree ped = read_pedigree_file(cfg.pedigree_path);
  const auto psi = load_psi(cfg, ped);
  const auto interest = load_interest(cfg, ped);
  ExactOptions options;
  options.threads = cfg.threads;

  const CutPlan plan = plan_cuts(ped, interest, cfg.max_segment);
  if (cfg.max_segment < plan.max_segment_size()) {
    err << "note: bound " << cfg.max_segment << " not achievable; largest segment has "
        << plan.max_segment_size() << " individuals\n";
  }
  if (cfg.emit_plan) out << describe_plan(plan);

  KinshipMatrix m;
  try {
    m = recursive_cut_kinship(ped, psi, interest, plan, options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::plan_mismatch) throw;
    err << "note: " << e.what() << "; falling back to whole-pedigree exact kinship\n";
    m = exact_kinship(ped, psi, options);
  }
  Output o(cfg.output_path, out);
  emit_matrix(cfg, m.restricted_to(ids_of(ped, interest)), *o);
  return kExitOk;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Pedigree ped = read_pedigree_file(cfg.pedigree_path);
  const auto psi = load_psi(cfg, ped);
  const auto interest = load_interest(cfg, ped);
  SamplerConfig sc;
  sc.samples = cfg.samples;
  sc.seed = resolve_seed(cfg, err);
  sc.merge_rule = cfg.merge_rule;
  sc.threads = cfg.threads;
  const auto estimate = estimate_kinship(ped, psi, interest, sc);
  Output o(cfg.output_path, out);
  *o << "# samples=" << estimate.samples << " seed=" << estimate.seed << '\n';
  emit_matrix(cfg, estimate.estimate, *o);
  if (cfg.with_stderr) {
    if (!estimate.standard_error) {
      throw Error(ErrorCode::invalid_argument, "--stderr needs at least two samples");
    }
    *o << "# standard-error\n";
    write_kinship_matrix(*estimate.standard_error, cfg.format, *o);
  }
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = resolve_seed(cfg, err);
  Pedigree ped;
  if (cfg.model == "wf") {
    ped = wright_fisher_pedigree({cfg.pairs, cfg.generations, seed, cfg.monogamous});
  } else {
    ped = random_pedigree(cfg.size, cfg.founder_fraction, seed);
  }
  Output o(cfg.output_path, out);
  write_pedigree(ped, *o);
  return kExitOk;
}

int cmd_ancestors(const RunConfig& cfg, std::ostream& out) {
  const Pedigree ped = read_pedigree_file(cfg.pedigree_path);
  const AncestorSets sets(ped);
  for (Index a : sets.members(ped.index_of(cfg.id))) out << ped.id(a) << '\n';
  return kExitOk;
}

int cmd_states(std::ostream& out) {
  out << "# detailed\tcondensed\tstate\te_aa\te_ab\te_bb\tfounder_alleles\toutbred\n";
  for (const auto& s : all_identity_states()) {
    const auto idx = classify(s);
    out << idx.detailed << '\t' << idx.condensed << '\t' << describe(s) << '\t'
        << edge_count(s, EdgeType::aa) << '\t' << edge_count(s, EdgeType::ab) << '\t'
        << edge_count(s, EdgeType::bb) << '\t' << founder_allele_count(s) << '\t'
        << (is_outbred(s) ? "yes" : "no") << '\n';
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Pedigree ped = read_pedigree_file(cfg.pedigree_path);
  const OracleResult oracle = brute_force_kinship(ped);
  KinshipMatrix candidate;
  std::string label = "exact";
  if (cfg.matrix_path.empty()) {
    ExactOptions options;
    options.threads = cfg.threads;
    candidate = exact_kinship(ped, FounderKinship::zero(ped), options);
  } else {
    std::ifstream in(cfg.matrix_path);
    if (!in) throw Error(ErrorCode::io_failure, "cannot open '" + cfg.matrix_path + "'");
    candidate = convert_diagonal(read_kinship_matrix(in), Diagonal::inbreeding);
    label = cfg.matrix_path;
    if (candidate.ids() != oracle.matrix.ids()) {
      // Align the supplied matrix with pedigree order.
      candidate = candidate.restricted_to(oracle.matrix.ids());
    }
  }
  const auto report = compare_matrices(oracle.matrix, candidate, cfg.tolerance);
  out << "oracle_vectors\t" << oracle.enumerated << '\n';
  out << "candidate\t" << label << '\n';
  out << "max_abs_difference\t" << std::setprecision(17) << report.max_abs_difference << '\n';
  out << "tolerance\t" << cfg.tolerance << '\n';
  for (const auto& mm : report.mismatches) {
    out << "mismatch\t" << mm.id_i << '\t' << mm.id_j << "\toracle=" << mm.a
        << "\tcandidate=" << mm.b << '\n';
  }
  out << "result\t" << (report.ok() ? "PASS" : "FAIL") << '\n';
  return report.ok() ? kExitOk : kExitFailure;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = resolve_seed(cfg, err);
  const std::vector<std::uint32_t> scales{1, 2, 4};
  out << "# algo\tN\tG\tn\tseconds\n";
  for (const auto& algo : split_list(cfg.algos)) {
    if (algo != "exact" && algo != "cut" && algo != "sample") {
      throw Error(ErrorCode::invalid_argument, "unknown algorithm '" + algo + "'");
    }
    std::vector<double> sizes, times;
    for (std::uint32_t s : scales) {
      const std::uint32_t G = cfg.generations * s;
      const Pedigree ped = wright_fisher_pedigree({cfg.pairs, G, seed, false});
      std::vector<Index> last;
      for (Index i = static_cast<Index>(ped.size() - 2 * cfg.pairs); i < ped.size(); ++i) {
        last.push_back(i);
      }
      const auto psi = FounderKinship::zero(ped);
      ExactOptions options;
      options.threads = cfg.threads;
      options.check_ancestry = false;
      double seconds = 0;
      if (algo == "exact") {
        seconds = min_wall_seconds([&] { exact_kinship(ped, psi, options); }, cfg.repeats);
      } else if (algo == "cut") {
        const CutPlan plan = per_generation_plan(ped, last);
        seconds = min_wall_seconds([&] { recursive_cut_kinship(ped, psi, last, plan, options); },
                                   cfg.repeats);
      } else {
        SamplerConfig sc;
        sc.samples = cfg.bench_samples;
        sc.seed = seed;
        sc.threads = cfg.threads;
        seconds = min_wall_seconds([&] { estimate_kinship(ped, psi, last, sc); }, cfg.repeats) /
                  static_cast<double>(cfg.bench_samples);
      }
      sizes.push_back(static_cast<double>(ped.size()));
      times.push_back(seconds);
      out << algo << '\t' << cfg.pairs << '\t' << G << '\t' << ped.size() << '\t'
          << std::setprecision(6) << seconds << '\n';
    }
    const LineFit fit = fit_power_law(sizes, times);
    out << "# fit\t" << algo << "\texponent=" << std::setprecision(3) << fit.slope
        << "\tr2=" << fit.r_squared << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.threads = default_threads();

  CLI::App app{"Kinship coefficients for pedigrees: exact, recursive-cut and Monte Carlo", "pedkin"};
  app.require_subcommand(1);

  const std::map<std::string, Diagonal> diagonals{{"inbreeding", Diagonal::inbreeding},
                                                  {"self-kinship", Diagonal::self_kinship}};
  const std::map<std::string, MatrixFormat> formats{{"dense", MatrixFormat::dense},
                                                    {"triplet", MatrixFormat::triplet}};
  const std::map<std::string, MergeRule> rules{{"paper", MergeRule::literal},
                                               {"literal", MergeRule::literal},
                                               {"unbiased", MergeRule::unbiased_2psi}};

  auto add_matrix_output = [&](CLI::App* sub) {
    sub->add_option("--diagonal", cfg.diagonal, "Diagonal convention")
        ->transform(CLI::CheckedTransformer(diagonals));
    sub->add_option("--format", cfg.format, "Matrix output format")
        ->transform(CLI::CheckedTransformer(formats));
    sub->add_option("-o,--output", cfg.output_path, "Output file (default stdout)");
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads (default $PEDKIN_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  };
  auto add_psi = [&](CLI::App* sub) {
    sub->add_option("--founder-kinship", cfg.founder_kinship_path, "Founder kinship triplets")
        ->check(CLI::ExistingFile);
    sub->add_flag("--average-psi", cfg.average_psi,
                  "Seed founder pairs with the mean founder inbreeding");
  };

  auto* exact = app.add_subcommand("exact", "Exact kinship of every pair");
  exact->add_option("pedigree", cfg.pedigree_path)->required()->check(CLI::ExistingFile);
  add_psi(exact);
  add_matrix_output(exact);
  add_threads(exact);

  auto* cut = app.add_subcommand("cut", "Exact kinship of the interest set by recursive cuts");
  cut->add_option("pedigree", cfg.pedigree_path)->required()->check(CLI::ExistingFile);
  cut->add_option("--interest", cfg.interest_path, "Ids of interest")->required()->check(CLI::ExistingFile);
  cut->add_option("--max-segment", cfg.max_segment, "Segment size bound")->required()->check(CLI::PositiveNumber);
  cut->add_flag("--emit-plan", cfg.emit_plan, "Print the cut plan");
  add_psi(cut);
  add_matrix_output(cut);
  add_threads(cut);

  auto* sample = app.add_subcommand("sample", "Monte Carlo kinship of the interest set");
  sample->add_option("pedigree", cfg.pedigree_path)->required()->check(CLI::ExistingFile);
  sample->add_option("--interest", cfg.interest_path, "Ids of interest")->required()->check(CLI::ExistingFile);
  sample->add_option("-S,--samples", cfg.samples, "Replicates")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", cfg.seed, "Random seed");
  sample->add_option("--merge-rule", cfg.merge_rule, "Founder merge probability: paper (or literal) uses Psi_fg, unbiased uses min(1, 2 Psi_fg)")
      ->transform(CLI::CheckedTransformer(rules));
  sample->add_flag("--stderr", cfg.with_stderr, "Append per-entry standard errors");
  add_psi(sample);
  add_matrix_output(sample);
  add_threads(sample);

  auto* simulate = app.add_subcommand("simulate", "Write a synthetic pedigree");
  simulate->add_option("--model", cfg.model, "wf or random")->check(CLI::IsMember({"wf", "random"}));
  simulate->add_option("-N", cfg.pairs, "Wright-Fisher pairs per generation");
  simulate->add_option("-G", cfg.generations, "Wright-Fisher generations");
  simulate->add_option("-n", cfg.size, "Random pedigree size");
  simulate->add_option("--founders", cfg.founder_fraction, "Random pedigree founder fraction");
  simulate->add_flag("--monogamous", cfg.monogamous, "Wright-Fisher with fixed couples");
  simulate->add_option("--seed", cfg.seed, "Random seed");
  simulate->add_option("-o,--output", cfg.output_path, "Output file (default stdout)");

  auto* ancestors = app.add_subcommand("ancestors", "List an individual and its ancestors");
  ancestors->add_option("pedigree", cfg.pedigree_path)->required()->check(CLI::ExistingFile);
  ancestors->add_option("id", cfg.id)->required();

  auto* states = app.add_subcommand("states", "Print the identity-state table");

  auto* verify = app.add_subcommand("verify", "Compare exact kinship (or a matrix) against brute force");
  verify->add_option("pedigree", cfg.pedigree_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--matrix", cfg.matrix_path, "Dense matrix to check instead of the exact algorithm")
      ->check(CLI::ExistingFile);
  verify->add_option("--tol", cfg.tolerance, "Absolute tolerance");
  add_threads(verify);

  auto* bench = app.add_subcommand("bench", "Time the algorithms on Wright-Fisher pedigrees");
  bench->add_option("--model", cfg.model, "Pedigree model")->check(CLI::IsMember({"wf"}));
  bench->add_option("-N", cfg.pairs, "Pairs per generation")->required()->check(CLI::PositiveNumber);
  bench->add_option("-G", cfg.generations, "Generations at the smallest scale")->required()->check(CLI::PositiveNumber);
  bench->add_option("--algos", cfg.algos, "Comma-separated subset of exact,cut,sample");
  bench->add_option("--samples", cfg.bench_samples, "Replicates per sampler timing")->check(CLI::PositiveNumber);
  bench->add_option("--repeats", cfg.repeats, "Timing repeats (minimum is kept)")->check(CLI::PositiveNumber);
  bench->add_option("--seed", cfg.seed, "Random seed");
  add_threads(bench);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*simulate) {
      if (cfg.model == "wf" && (cfg.pairs == 0 || cfg.generations == 0)) {
        err << "error: --model wf needs -N and -G\n";
        return kExitUsage;
      }
      if (cfg.model == "random" && cfg.size == 0) {
        err << "error: --model random needs -n\n";
        return kExitUsage;
      }
    }
    if (*exact) return cmd_exact(cfg, out);
    if (*cut) return cmd_cut(cfg, out, err);
    if (*sample) return cmd_sample(cfg, out, err);
    if (*simulate) return cmd_simulate(cfg, out, err);
    if (*ancestors) return cmd_ancestors(cfg, out);
    if (*states) return cmd_states(out);
    if (*verify) return cmd_verify(cfg, out);
    if (*bench) return cmd_bench(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace pedkin::cli
