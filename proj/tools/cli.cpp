#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "alsel/alsel.hpp"

namespace alsel::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

BBox parse_box(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) {
      throw CLI::ValidationError("box", "'" + text + "' is not x1,y1,x2,y2");
    }
    v.push_back(x);
  }
  if (v.size() != 4) throw CLI::ValidationError("box", "'" + text + "' is not x1,y1,x2,y2");
  return BBox(v[0], v[1], v[2], v[3]);
}

const std::vector<std::string> kStrategyNames{"random", "sal", "mal", "kmal"};
const std::vector<std::string> kMetricNames{"cosine", "euclidean"};

struct SelectArgs {
  std::string manifest;
  std::string strategy = "kmal";
  std::string metric = "cosine";
  std::string out;
  SelectionConfig config;
};

struct StatsArgs {
  std::string manifest;
  std::string reps = "multi";
  std::size_t interval = 10;
  std::size_t frames = 5;
  std::string metric = "cosine";
  std::size_t bins = 10;
  std::size_t threads = 0;
};

struct LossArgs {
  std::string pred;
  std::string gt;
  double alpha = 0.4;
  double beta = 0.6;
  std::string kind = "tversky";
  bool grad = false;
  std::optional<double> cl;
  double eta = 100.0;
};

struct BenchArgs {
  SynthConfig synth;
  std::vector<std::size_t> budgets;
  std::size_t seeds = 50;
  std::vector<std::string> strategies{"random", "sal", "mal", "kmal"};
  std::string out;
  std::size_t threads = 0;
};

int do_select(SelectArgs args, std::ostream& out) {
  args.config.strategy = *parse_strategy(args.strategy);
  args.config.metric = *parse_metric(args.metric);
  const auto pool = load_pool_any(args.manifest);
  const auto result = run_selection(pool, args.config);
  const auto path = resolve_output_path(args.out);
  save_selection(result, args.config, pool.ids(), path);
  out << "strategy " << to_string(args.config.strategy) << '\n'
      << "selected " << result.selected.size() << '\n'
      << "exhausted " << (result.exhausted ? 1 : 0) << '\n'
      << "out " << path.string() << '\n';
  return kExitOk;
}

int do_stats(const StatsArgs& args, std::ostream& out) {
  const auto pool = load_pool_any(args.manifest);
  const auto reps = args.reps == "first" ? first_frame_reps(pool)
                                          : multi_frame_reps(pool, args.interval, args.frames, args.threads);
  const Metric metric = *parse_metric(args.metric);
  const auto stats = nn_stats(distance_matrix(reps.reps, metric, args.threads));
  const std::size_t isolated = static_cast<std::size_t>(
      std::count_if(stats.d.begin(), stats.d.end(), [&](double d) { return d > stats.ave_d; }));
  const double max_d = *std::max_element(stats.d.begin(), stats.d.end());
  std::vector<std::size_t> counts(args.bins, 0);
  for (double d : stats.d) {
    std::size_t b = max_d > 0.0 ? static_cast<std::size_t>(d / max_d * static_cast<double>(args.bins)) : 0;
    counts[std::min(b, args.bins - 1)]++;
  }
  out << "n " << pool.size() << '\n'
      << "dim " << pool.dim() << '\n'
      << "reps " << args.reps << '\n'
      << "metric " << args.metric << '\n'
      << "ave_d " << fmt17(stats.ave_d) << '\n'
      << "isolated " << isolated << '\n'
      << "histogram " << args.bins << ' ' << fmt17(max_d) << '\n';
  for (std::size_t b = 0; b < args.bins; ++b) {
    const double lo = max_d * static_cast<double>(b) / static_cast<double>(args.bins);
    const double hi = max_d * static_cast<double>(b + 1) / static_cast<double>(args.bins);
    out << "bin " << b << ' ' << fmt17(lo) << ' ' << fmt17(hi) << ' ' << counts[b] << '\n';
  }
  return kExitOk;
}

int do_loss(const LossArgs& args, std::ostream& out) {
  const BBox pred = parse_box(args.pred);
  const BBox gt = parse_box(args.gt);
  LossValue value;
  if (args.kind == "iou") {
    value = iou_loss(pred, gt, args.grad);
  } else if (args.kind == "dice") {
    value = dice_loss(pred, gt, args.grad);
  } else if (args.kind == "jaccard") {
    value = jaccard_loss(pred, gt, args.grad);
  } else {
    value = tversky_loss(pred, gt, LossParams{args.alpha, args.beta, args.eta}, args.grad);
  }
  out << fmt17(value.value) << '\n';
  if (value.grad) {
    const auto& g = *value.grad;
    out << "grad " << fmt17(g[0]) << ' ' << fmt17(g[1]) << ' ' << fmt17(g[2]) << ' ' << fmt17(g[3]) << '\n';
  }
  if (args.cl) {
    out << "total " << fmt17(combine_total_loss(value.value, *args.cl, args.eta)) << '\n';
  }
  return kExitOk;
}

int do_bench(const BenchArgs& args, std::ostream& out) {
  std::vector<Strategy> strategies;
  for (const auto& s : args.strategies) strategies.push_back(*parse_strategy(s));
  std::vector<std::uint64_t> seeds(args.seeds);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
  const auto budgets = args.budgets.empty() ? std::vector<std::size_t>{args.synth.clusters} : args.budgets;
  const auto report = run_bench(args.synth, budgets, strategies, seeds, args.threads);
  const auto text = format_bench_report(report, args.synth);
  if (args.out.empty()) {
    out << text;
  } else {
    const auto path = resolve_output_path(args.out);
    write_text_file(path, text);
    for (const auto& s : report.summaries) {
      out << to_string(s.strategy) << " budget=" << s.budget << " coverage_rate=" << fmt17(s.coverage_rate)
          << " mean_outliers_selected=" << fmt17(s.mean_outliers_selected) << '\n';
    }
    out << "out " << path.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budgeted diverse subset selection for sequence embeddings, plus IoU/Tversky box losses", "alsel"};
  app.require_subcommand(1);

  SelectArgs sel;
  auto* select = app.add_subcommand("select", "Select a subset of a pool and write it to a file");
  select->add_option("--manifest", sel.manifest, "Pool manifest (or .csv fixture)")->required();
  select->add_option("--strategy", sel.strategy, "random|sal|mal|kmal")
      ->check(CLI::IsMember(kStrategyNames))
      ->capture_default_str();
  select->add_option("--budget", sel.config.budget, "Number of sequences to select")
      ->required()
      ->check(CLI::PositiveNumber);
  select->add_option("--interval", sel.config.interval, "Frame interval a")->check(CLI::PositiveNumber)->capture_default_str();
  select->add_option("--frames", sel.config.frames_per_sequence, "Cooperating frames m")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  select->add_option("--metric", sel.metric, "cosine|euclidean")
      ->check(CLI::IsMember(kMetricNames))
      ->capture_default_str();
  select->add_option("--seed", sel.config.seed, "Generator seed")->capture_default_str();
  select->add_option("--threads", sel.config.threads, "Worker threads (0 = all cores)")->capture_default_str();
  select->add_option("--out", sel.out, "Output file")->required();

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Print nearest-neighbour statistics of a pool");
  stats->add_option("--manifest", st.manifest, "Pool manifest (or .csv fixture)")->required();
  stats->add_option("--reps", st.reps, "first|multi")->check(CLI::IsMember({"first", "multi"}))->capture_default_str();
  stats->add_option("--interval", st.interval, "Frame interval a")->check(CLI::PositiveNumber)->capture_default_str();
  stats->add_option("--frames", st.frames, "Cooperating frames m")->check(CLI::PositiveNumber)->capture_default_str();
  stats->add_option("--metric", st.metric, "cosine|euclidean")
      ->check(CLI::IsMember(kMetricNames))
      ->capture_default_str();
  stats->add_option("--bins", st.bins, "Histogram bins")->check(CLI::PositiveNumber)->capture_default_str();
  stats->add_option("--threads", st.threads, "Worker threads (0 = all cores)")->capture_default_str();

  LossArgs ls;
  auto* loss = app.add_subcommand("loss", "Evaluate a box loss");
  loss->add_option("--pred", ls.pred, "Predicted box x1,y1,x2,y2")->required();
  loss->add_option("--gt", ls.gt, "Ground-truth box x1,y1,x2,y2")->required();
  loss->add_option("--alpha", ls.alpha, "Weight of |B - G|")->check(CLI::NonNegativeNumber)->capture_default_str();
  loss->add_option("--beta", ls.beta, "Weight of |G - B|")->check(CLI::NonNegativeNumber)->capture_default_str();
  loss->add_option("--kind", ls.kind, "iou|tversky|dice|jaccard")
      ->check(CLI::IsMember({"iou", "tversky", "dice", "jaccard"}))
      ->capture_default_str();
  loss->add_flag("--grad", ls.grad, "Also print d loss / d(x1,y1,x2,y2)");
  loss->add_option("--cl", ls.cl, "Classification loss; prints the weighted total")->check(CLI::NonNegativeNumber);
  loss->add_option("--eta", ls.eta, "Classification weight")->check(CLI::NonNegativeNumber)->capture_default_str();

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Cluster-coverage benchmark on synthetic pools");
  bench->add_option("--clusters", bn.synth.clusters, "Clusters k")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  bench->add_option("--budget", bn.budgets, "Budget(s); defaults to k")->check(CLI::PositiveNumber);
  bench->add_option("--seeds", bn.seeds, "Number of seeds (0..N-1)")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--samples", bn.synth.samples_per_cluster, "Sequences per cluster")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--dim", bn.synth.dim, "Embedding dimension")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  bench->add_option("--outliers", bn.synth.outliers, "Planted outliers")->capture_default_str();
  bench->add_option("--seed", bn.synth.seed, "Base generator seed")->capture_default_str();
  bench->add_option("--strategies", bn.strategies, "Subset of random,sal,mal,kmal")
      ->check(CLI::IsMember(kStrategyNames))
      ->delimiter(',');
  bench->add_option("--threads", bn.threads, "Worker threads (0 = all cores)")->capture_default_str();
  bench->add_option("--out", bn.out, "Report file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*select) return do_select(sel, out);
    if (*stats) return do_stats(st, out);
    if (*loss) return do_loss(ls, out);
    if (*bench) return do_bench(bn, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace alsel::cli
