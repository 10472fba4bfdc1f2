#pragma once

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tempo_bf/tempo_bf.hpp"

namespace tempo_bf::cli {

enum class Algorithm { tbc, tbc_plus, tbc_plus_plus, tbe, tbe_plus, oracle };
enum class OutputFormat { tsv, json };

inline const std::map<std::string, Algorithm>& algorithm_names() {
  static const std::map<std::string, Algorithm> names{
      {"tbc", Algorithm::tbc},   {"tbc+", Algorithm::tbc_plus},   {"tbc++", Algorithm::tbc_plus_plus},
      {"tbe", Algorithm::tbe},   {"tbe+", Algorithm::tbe_plus},   {"oracle", Algorithm::oracle}};
  return names;
}

inline std::string algorithm_name(Algorithm a) {
  for (const auto& [name, value] : algorithm_names())
    if (value == a) return name;
  return "?";
}

struct RunConfig {
  std::string input;
  std::int64_t delta = 0;
  Algorithm algorithm = Algorithm::tbc_plus_plus;
  std::vector<Algorithm> bench_algorithms{Algorithm::tbc, Algorithm::tbc_plus, Algorithm::tbc_plus_plus};
  std::size_t window = 0;
  std::optional<std::size_t> stride;
  StreamEngine engine = StreamEngine::stbc_plus;
  unsigned workers = 1;
  std::optional<double> sample_p;
  std::uint64_t seed = 0;
  std::optional<std::size_t> limit;
  std::optional<unsigned> timeout_secs;
  std::size_t oracle_max_edges = 500;
  bool oracle_enumerate = false;
  std::string output;
  OutputFormat format = OutputFormat::tsv;
  RandomGraphSpec generator;
};

struct BenchEntry {
  Algorithm algorithm;
  bool completed = false;
  std::string status;
  double seconds = 0.0;
  std::uint64_t peak_rss_bytes = 0;
  CountVector counts;
};

/// Wall time, peak resident memory and counts of each algorithm, all on
/// the same graph and duration.
struct BenchReport {
  std::size_t edge_count = 0;
  Duration delta = 0;
  std::vector<BenchEntry> entries;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Duration checked_delta(std::int64_t delta) {
  if (delta < 0) throw UsageError("--delta must be non-negative");
  return static_cast<Duration>(delta);
}

inline void write_counts(std::ostream& os, const CountVector& c, OutputFormat format) {
  if (format == OutputFormat::json) {
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < kButterflyTypes; ++i) j["T" + std::to_string(i)] = c[i];
    os << j.dump() << '\n';
    return;
  }
  for (std::size_t i = 0; i < kButterflyTypes; ++i) os << 'T' << i << '\t' << c[i] << '\n';
}

inline void write_estimates(std::ostream& os, const EstimateVector& c, OutputFormat format) {
  if (format == OutputFormat::json) {
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < kButterflyTypes; ++i) j["T" + std::to_string(i)] = c[i];
    os << j.dump() << '\n';
    return;
  }
  os << std::fixed << std::setprecision(3);
  for (std::size_t i = 0; i < kButterflyTypes; ++i) os << 'T' << i << '\t' << c[i] << '\n';
  os << std::defaultfloat << std::setprecision(6);
}

inline std::vector<std::string> instance_fields(const ButterflyInstance& b, const SymbolTable& s) {
  return {std::to_string(b.type),     s.upper_name(b.u),         s.upper_name(b.w),
          s.lower_name(b.v),          s.lower_name(b.x),         std::to_string(b.t_uv),
          std::to_string(b.t_vw),     std::to_string(b.t_ux),    std::to_string(b.t_xw)};
}

inline CountVector run_counter(Algorithm a, const TemporalBipartiteGraph& g, const VertexPriority& p,
                               Duration delta, std::span<const TemporalEdge> edges) {
  auto ignore = [](const ButterflyInstance&) {};
  switch (a) {
    case Algorithm::tbc: return count_baseline(g, p, delta);
    case Algorithm::tbc_plus: return count_optimized(g, p, delta);
    case Algorithm::tbc_plus_plus: return count_extreme(g, p, delta);
    case Algorithm::tbe: return enumerate_baseline(g, p, delta, ignore);
    case Algorithm::tbe_plus: return enumerate_optimized(g, p, delta, ignore);
    case Algorithm::oracle: return oracle::oracle_count(edges, delta);
  }
  return {};
}

/// Output stream for --output, or `fallback` when unset.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    os_ = &file_;
  }
  std::ostream& get() { return *os_; }
  void finish() {
    os_->flush();
    if (!*os_) throw std::runtime_error("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

inline void check_oracle_size(const RunConfig& cfg, std::size_t edges) {
  if (edges > cfg.oracle_max_edges)
    throw UsageError("oracle refuses " + std::to_string(edges) + " edges (limit " +
                     std::to_string(cfg.oracle_max_edges) + ", raise with --max-edges)");
}

}  // namespace detail

inline int cmd_count(const RunConfig& cfg, std::ostream& out) {
  const Duration delta = detail::checked_delta(cfg.delta);
  if (cfg.sample_p && cfg.algorithm != Algorithm::tbc_plus_plus)
    throw UsageError("--sample-p is only available with --algo tbc++");
  if (cfg.sample_p && !(*cfg.sample_p > 0.0 && *cfg.sample_p <= 1.0))
    throw UsageError("--sample-p must lie in (0, 1]");
  const auto list = load_edge_list_file(cfg.input);
  detail::OutputTarget target(cfg.output, out);
  auto g = list.to_graph();
  if (cfg.sample_p && *cfg.sample_p < 1.0) {
    detail::write_estimates(target.get(), count_sampled(g, delta, *cfg.sample_p, cfg.seed), cfg.format);
  } else {
    if (cfg.algorithm == Algorithm::oracle) detail::check_oracle_size(cfg, list.edges.size());
    const auto p = prepare_for_counting(g);
    detail::write_counts(target.get(), detail::run_counter(cfg.algorithm, g, p, delta, list.edges), cfg.format);
  }
  target.finish();
  return 0;
}

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  const Duration delta = detail::checked_delta(cfg.delta);
  const auto list = load_edge_list_file(cfg.input);
  detail::OutputTarget target(cfg.output, out);
  auto& os = target.get();
  auto g = list.to_graph();
  const auto p = prepare_for_counting(g);

  std::size_t emitted = 0;
  nlohmann::ordered_json instances = nlohmann::ordered_json::array();
  auto sink = [&](const ButterflyInstance& b) {
    if (cfg.limit && emitted >= *cfg.limit) return;
    ++emitted;
    const auto f = detail::instance_fields(b, list.symbols);
    if (cfg.format == OutputFormat::json) {
      instances.push_back({{"type", b.type}, {"u", f[1]}, {"w", f[2]}, {"v", f[3]}, {"x", f[4]},
                           {"t_uv", b.t_uv}, {"t_vw", b.t_vw}, {"t_ux", b.t_ux}, {"t_xw", b.t_xw}});
      return;
    }
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? " " : "") << f[i];
    os << '\n';
  };

  CountVector tallies;
  switch (cfg.algorithm) {
    case Algorithm::tbe:
    case Algorithm::tbc:
      tallies = enumerate_baseline(g, p, delta, sink);
      break;
    case Algorithm::oracle:
      detail::check_oracle_size(cfg, list.edges.size());
      tallies = oracle::oracle_enumerate(list.edges, delta, sink);
      break;
    default:
      tallies = enumerate_optimized(g, p, delta, sink);
  }
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["instances"] = std::move(instances);
    for (std::size_t i = 0; i < kButterflyTypes; ++i) j["counts"]["T" + std::to_string(i)] = tallies[i];
    os << j.dump() << '\n';
  } else {
    detail::write_counts(os, tallies, cfg.format);
  }
  target.finish();
  return 0;
}

inline int cmd_stream(const RunConfig& cfg, std::ostream& out) {
  const Duration delta = detail::checked_delta(cfg.delta);
  if (cfg.window < 1) throw UsageError("--window must be at least 1");
  const std::size_t stride = cfg.stride ? *cfg.stride : std::max<std::size_t>(1, cfg.window / 20);
  if (stride < 1) throw UsageError("--stride must be at least 1");
  if (stride > cfg.window) throw UsageError("--stride must not exceed --window");
  if (cfg.workers < 1) throw UsageError("--workers must be at least 1");

  const auto list = load_edge_list_file(cfg.input);
  detail::OutputTarget target(cfg.output, out);
  auto& os = target.get();
  WindowConfig wc{cfg.window, stride, cfg.engine, cfg.workers};
  auto sink = [&](const WindowEmission& e) {
    if (cfg.format == OutputFormat::json) {
      nlohmann::ordered_json j{{"step", e.step}, {"window_start", e.window_start}, {"window_end", e.window_end}};
      for (std::size_t i = 0; i < kButterflyTypes; ++i) j["T" + std::to_string(i)] = e.counts[i];
      os << j.dump() << '\n';
      return;
    }
    os << e.step << '\t' << e.window_start << '\t' << e.window_end;
    for (std::size_t i = 0; i < kButterflyTypes; ++i) os << '\t' << e.counts[i];
    os << '\n';
  };
  run_sliding_window(std::span<const TemporalEdge>(list.edges), list.upper_count(), list.lower_count(), delta,
                     wc, sink);
  target.finish();
  return 0;
}

/// Runs one algorithm in a child process so that peak memory and the
/// timeout are per algorithm. Timing excludes loading and preparation.
inline BenchEntry bench_one(Algorithm a, const EdgeList& list, Duration delta, std::optional<unsigned> timeout) {
  BenchEntry entry;
  entry.algorithm = a;
  int fd[2];
  if (pipe(fd) != 0) throw std::runtime_error("pipe failed");
  std::cout.flush();
  const pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    close(fd[0]);
    if (timeout) alarm(*timeout);
    auto g = list.to_graph();
    const auto p = prepare_for_counting(g);
    const auto start = std::chrono::steady_clock::now();
    const auto c = detail::run_counter(a, g, p, delta, list.edges);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    std::ostringstream msg;
    msg << std::setprecision(17) << took.count();
    for (std::size_t i = 0; i < kButterflyTypes; ++i) msg << ' ' << c[i];
    const std::string s = msg.str();
    [[maybe_unused]] auto n = write(fd[1], s.data(), s.size());
    close(fd[1]);
    _exit(0);
  }
  close(fd[1]);
  std::string text;
  char buf[256];
  for (ssize_t n; (n = read(fd[0], buf, sizeof buf)) > 0;) text.append(buf, static_cast<std::size_t>(n));
  close(fd[0]);
  int status = 0;
  rusage usage{};
  wait4(pid, &status, 0, &usage);
  entry.peak_rss_bytes = static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
  if (WIFSIGNALED(status)) {
    entry.status = WTERMSIG(status) == SIGALRM ? "timeout" : "killed";
    return entry;
  }
  std::istringstream in(text);
  in >> entry.seconds;
  for (std::size_t i = 0; i < kButterflyTypes; ++i) {
    std::uint64_t v = 0;
    in >> v;
    entry.counts.add(i, v);
  }
  entry.completed = WIFEXITED(status) && WEXITSTATUS(status) == 0 && static_cast<bool>(in);
  entry.status = entry.completed ? "ok" : "failed";
  return entry;
}

inline BenchReport run_bench(const EdgeList& list, Duration delta, const std::vector<Algorithm>& algorithms,
                             std::optional<unsigned> timeout) {
  BenchReport report{list.edges.size(), delta, {}};
  for (auto a : algorithms) report.entries.push_back(bench_one(a, list, delta, timeout));
  return report;
}

inline std::optional<unsigned> timeout_from_env() {
  const char* v = std::getenv("TEMPO_BF_TIMEOUT_SECS");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long secs = std::strtoul(v, &end, 10);
  if (*end != '\0' || secs == 0) throw UsageError("TEMPO_BF_TIMEOUT_SECS must be a positive integer");
  return static_cast<unsigned>(secs);
}

inline int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  const Duration delta = detail::checked_delta(cfg.delta);
  const auto timeout = cfg.timeout_secs ? cfg.timeout_secs : timeout_from_env();
  const auto list = load_edge_list_file(cfg.input);
  for (auto a : cfg.bench_algorithms)
    if (a == Algorithm::oracle) detail::check_oracle_size(cfg, list.edges.size());
  const auto report = run_bench(list, delta, cfg.bench_algorithms, timeout);

  detail::OutputTarget target(cfg.output, out);
  auto& os = target.get();
  if (cfg.format == OutputFormat::json) {
    nlohmann::ordered_json j{{"edges", report.edge_count}, {"delta", report.delta}};
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
      nlohmann::ordered_json r{{"algo", algorithm_name(e.algorithm)}, {"status", e.status},
                               {"seconds", e.seconds}, {"peak_rss_bytes", e.peak_rss_bytes}};
      for (std::size_t i = 0; i < kButterflyTypes; ++i) r["T" + std::to_string(i)] = e.counts[i];
      j["results"].push_back(r);
    }
    os << j.dump() << '\n';
  } else {
    os << "algo\tstatus\tseconds\tpeak_rss_bytes\tT0\tT1\tT2\tT3\tT4\tT5\n";
    for (const auto& e : report.entries) {
      os << algorithm_name(e.algorithm) << '\t' << e.status << '\t' << std::fixed << std::setprecision(6)
         << e.seconds << std::defaultfloat << '\t' << e.peak_rss_bytes;
      for (std::size_t i = 0; i < kButterflyTypes; ++i) os << '\t' << e.counts[i];
      os << '\n';
    }
  }
  target.finish();
  for (const auto& e : report.entries)
    if (!e.completed) return 3;
  return 0;
}

inline int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  const auto list = generate_random_graph(cfg.generator);
  detail::OutputTarget target(cfg.output, out);
  write_edge_list(target.get(), list);
  target.finish();
  return 0;
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const Duration delta = detail::checked_delta(cfg.delta);
  const auto list = load_edge_list_file(cfg.input);
  detail::check_oracle_size(cfg, list.edges.size());
  if (cfg.oracle_enumerate) {
    RunConfig e = cfg;
    e.algorithm = Algorithm::oracle;
    return cmd_enumerate(e, out);
  }
  detail::OutputTarget target(cfg.output, out);
  detail::write_counts(target.get(), oracle::oracle_count(list.edges, delta), cfg.format);
  target.finish();
  return 0;
}

/// Parses the command line and runs the chosen subcommand. Exit status 0 on
/// success, 2 on usage errors, 1 on input or runtime failures, 3 when a
/// benchmarked algorithm did not complete.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Temporal butterfly counting, enumeration and streaming"};
  app.require_subcommand(1);

  const std::map<std::string, OutputFormat> formats{{"tsv", OutputFormat::tsv}, {"json", OutputFormat::json}};
  const std::map<std::string, StreamEngine> engines{{"stbc", StreamEngine::stbc}, {"stbc+", StreamEngine::stbc_plus}};

  auto common = [&](CLI::App* sub, bool needs_delta) {
    sub->add_option("-i,--input", cfg.input, "Edge list: `u v t` or `u v w t` per line")->required();
    auto* d = sub->add_option("-d,--delta", cfg.delta, "Maximum timestamp span of a butterfly");
    if (needs_delta) d->required();
    sub->add_option("-o,--output", cfg.output, "Output file (default: standard output)");
    sub->add_option("--format", cfg.format, "tsv or json")->transform(CLI::CheckedTransformer(formats))->option_text("FORMAT");
  };

  auto* count = app.add_subcommand("count", "Count butterflies per type");
  common(count, true);
  count->add_option("--algo", cfg.algorithm, "tbc, tbc+, tbc++, tbe, tbe+ or oracle")
      ->transform(CLI::CheckedTransformer(algorithm_names()))
      ->option_text("ALGO");
  count->add_option("--sample-p", cfg.sample_p, "Edge sampling probability for the estimate");
  count->add_option("--seed", cfg.seed, "Sampling seed");

  auto* enumerate = app.add_subcommand("enumerate", "List butterfly instances");
  common(enumerate, true);
  enumerate->add_option("--algo", cfg.algorithm, "tbe, tbe+ or oracle")
      ->transform(CLI::CheckedTransformer(algorithm_names()))
      ->option_text("ALGO");
  enumerate->add_option("--limit", cfg.limit, "Print at most this many instances");
  enumerate->add_option("--max-edges", cfg.oracle_max_edges, "Edge limit for the oracle");

  auto* stream = app.add_subcommand("stream", "Sliding-window counts over a chronological edge stream");
  common(stream, true);
  stream->add_option("--window", cfg.window, "Window size in edges")->required();
  stream->add_option("--stride", cfg.stride, "Edges per step (default: 5% of the window, at least 1)");
  stream->add_option("--engine", cfg.engine, "stbc or stbc+")->transform(CLI::CheckedTransformer(engines))->option_text("ENGINE");
  stream->add_option("--workers", cfg.workers, "Worker threads for stbc+");

  auto* bench = app.add_subcommand("bench", "Time each algorithm on one graph");
  common(bench, true);
  std::vector<std::string> bench_names;
  bench->add_option("--algos", bench_names, "Algorithms to run (default: tbc tbc+ tbc++)")
      ->check(CLI::IsMember(algorithm_names()))
      ->option_text("ALGO ...");
  bench->add_option("--timeout", cfg.timeout_secs, "Per-algorithm limit in seconds (env TEMPO_BF_TIMEOUT_SECS)");
  bench->add_option("--max-edges", cfg.oracle_max_edges, "Edge limit for the oracle");

  auto* generate = app.add_subcommand("generate", "Write a seeded random temporal bipartite graph");
  auto& gs = cfg.generator;
  gs.upper_count = 100;
  gs.lower_count = 100;
  gs.edge_count = 1000;
  gs.time_max = 10000;
  generate->add_option("--upper", gs.upper_count, "Upper layer size");
  generate->add_option("--lower", gs.lower_count, "Lower layer size");
  generate->add_option("--edges", gs.edge_count, "Number of edges");
  generate->add_option("--tmin", gs.time_min, "Smallest timestamp");
  generate->add_option("--tmax", gs.time_max, "Largest timestamp");
  generate->add_flag("--skewed", gs.skewed, "Zipf-distributed upper endpoints");
  generate->add_option("--zipf", gs.zipf_exponent, "Zipf exponent for --skewed");
  generate->add_option("--seed", gs.seed, "Generator seed");
  generate->add_option("-o,--output", cfg.output, "Output file (default: standard output)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference counts");
  common(oracle_cmd, true);
  oracle_cmd->add_flag("--enumerate", cfg.oracle_enumerate, "Also list instances");
  oracle_cmd->add_option("--max-edges", cfg.oracle_max_edges, "Refuse inputs larger than this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*count) return cmd_count(cfg, out);
    if (*enumerate) {
      if (cfg.algorithm == Algorithm::tbc_plus_plus || cfg.algorithm == Algorithm::tbc_plus)
        cfg.algorithm = Algorithm::tbe_plus;
      return cmd_enumerate(cfg, out);
    }
    if (*stream) return cmd_stream(cfg, out);
    if (*bench) {
      if (!bench_names.empty()) {
        cfg.bench_algorithms.clear();
        for (const auto& n : bench_names) cfg.bench_algorithms.push_back(algorithm_names().at(n));
      }
      return cmd_bench(cfg, out);
    }
    if (*generate) return cmd_generate(cfg, out);
    if (*oracle_cmd) return cmd_oracle(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace tempo_bf::cli
