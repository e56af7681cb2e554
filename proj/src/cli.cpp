#include "qpolar/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qpolar/io.hpp"
#include "qpolar/polarize.hpp"
#include "qpolar/reduce.hpp"
#include "qpolar/report.hpp"
#include "qpolar/sweep.hpp"
#include "qpolar/transform.hpp"

namespace qpolar::cli {

namespace {

constexpr double kChainTolerance = 1e-9;

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// Command line as recorded in report headers; argv[0] is normalized so
/// the header does not depend on the install path.
std::string join(const std::vector<std::string>& args) {
  std::string s = "qpolar";
  for (std::size_t i = 1; i < args.size(); ++i) s += ' ' + args[i];
  return s;
}

std::string vector_text(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_real(v[i]);
  }
  return s + "]";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write \"" + path + "\"");
  f << content;
}

struct Context {
  std::string command_line;
  std::ostream& out;
  std::ostream& err;
};

int cmd_capacity(const Context& ctx, const std::string& source) {
  const Channel w = resolve_channel(source);
  ctx.out << fixed12(capacity(w)) << "\n";
  return ok;
}

struct SplitArgs {
  std::string channel;
  std::string pi;
  bool reduce = false;
  std::string write_minus;
  std::string write_plus;
};

int cmd_split(const Context& ctx, const SplitArgs& a) {
  const Channel w = resolve_channel(a.channel);
  const Permutation pi = a.pi.empty() ? Permutation::identity(w.alphabet()) : Permutation::parse(w.alphabet(), a.pi);
  SplitPair kids = split_permuted(w, pi);
  if (a.reduce) kids = {canonicalize(kids.minus), canonicalize(kids.plus)};

  const double i = capacity(w);
  const double im = capacity(kids.minus);
  const double ip = capacity(kids.plus);
  const double residual = std::abs(im + ip - 2.0 * i);
  const bool chain_ok = residual <= kChainTolerance;
  const bool order_ok = im <= i + kChainTolerance && i <= ip + kChainTolerance;

  auto& o = ctx.out;
  o << header_lines({ctx.command_line, std::nullopt});
  o << "q: " << w.q() << "\n";
  o << "pi: " << pi.str() << "\n";
  o << "reduce: " << (a.reduce ? "yes" : "no") << "\n";
  o << "outputs: " << w.outputs() << "\n";
  o << "minus_outputs: " << kids.minus.outputs() << "\n";
  o << "plus_outputs: " << kids.plus.outputs() << "\n";
  o << "I(W): " << fixed12(i) << "\n";
  o << "I(W-): " << fixed12(im) << "\n";
  o << "I(W+): " << fixed12(ip) << "\n";
  o << "minus_gap: " << fixed12(i - im) << "\n";
  o << "plus_gap: " << fixed12(ip - i) << "\n";
  o << "chain_rule_residual: " << sci(residual) << "\n";
  o << "chain_rule: " << (chain_ok ? "ok" : "VIOLATED") << "\n";
  o << "ordering: " << (order_ok ? "ok" : "VIOLATED") << "\n";

  if (!a.write_minus.empty()) store_channel(kids.minus, a.write_minus);
  if (!a.write_plus.empty()) store_channel(kids.plus, a.write_plus);
  return chain_ok && order_ok ? ok : violation;
}

struct PolarizeArgs {
  std::string channel;
  int depth = 0;
  double delta = 0.01;
  int paths = 0;
  std::uint64_t seed = 0;
  long long budget = kDefaultMaxOutputs;
  bool no_reduce = false;
  bool no_fast_path = false;
  int threads = 1;
  std::string out_prefix;
};

int cmd_polarize(const Context& ctx, const PolarizeArgs& a) {
  const Channel w = resolve_channel(a.channel);
  TreeOptions topt;
  topt.depth = a.depth;
  topt.delta = a.delta;
  topt.use_reduce = !a.no_reduce;
  topt.max_outputs = a.budget;
  topt.erasure_fast_path = !a.no_fast_path;
  topt.threads = a.threads;
  const PolarizationReport report = build_tree(w, topt);

  std::optional<PathSample> paths;
  if (a.paths > 0) {
    PathOptions popt;
    popt.depth = a.depth;
    popt.paths = a.paths;
    popt.seed = a.seed;
    popt.use_reduce = !a.no_reduce;
    popt.max_outputs = a.budget;
    popt.threads = a.threads;
    paths = sample_paths(w, popt);
  }

  const ReportHeader header{ctx.command_line, a.paths > 0 ? std::optional<std::uint64_t>(a.seed) : std::nullopt};
  auto& o = ctx.out;
  o << header_lines(header);
  o << "depth: " << report.depth << "\n";
  o << "delta: " << format_real(report.delta) << "\n";
  o << "erasure_fast_path: " << (report.erasure_fast_path ? "yes" : "no") << "\n";
  o << "root_capacity: " << fixed12(report.root_capacity) << "\n";
  o << "mean_capacity: " << fixed12(report.mean_capacity) << "\n";
  o << "fraction_high: " << fixed12(report.fraction_high) << "\n";
  o << "fraction_low: " << fixed12(report.fraction_low) << "\n";
  for (int k = 0; k < report.depth; ++k)
    o << "mean_abs_increment[" << k << "]: " << fixed12(report.mean_abs_increment[static_cast<std::size_t>(k)]) << "\n";
  if (paths) {
    o << "paths: " << a.paths << "\n";
    for (std::size_t k = 0; k < paths->summary.mean.size(); ++k)
      o << "path_mean[" << k << "]: " << fixed12(paths->summary.mean[k]) << " +- "
        << fixed12(paths->summary.standard_error[k]) << "\n";
  }
  if (!a.out_prefix.empty()) {
    write_file(a.out_prefix + ".json", report_document(header, report, paths ? &*paths : nullptr));
    write_file(a.out_prefix + ".csv", leaf_table(report));
    if (paths) write_file(a.out_prefix + ".paths.csv", path_table(*paths));
    o << "wrote: " << a.out_prefix << ".json " << a.out_prefix << ".csv" << (paths ? " " + a.out_prefix + ".paths.csv" : "")
      << "\n";
  }
  return ok;
}

struct LemmaArgs {
  std::vector<int> qs{2, 3, 5, 7};
  std::size_t samples = 10000;
  std::size_t channel_pairs = 200;
  double eta = 0.1;
  std::uint64_t seed = 0;
};

int cmd_lemmas(const Context& ctx, const LemmaArgs& a) {
  auto& o = ctx.out;
  o << header_lines({ctx.command_line, a.seed});
  std::size_t total_violations = 0;
  for (int q : a.qs) {
    SweepOptions opt;
    opt.samples = a.samples;
    opt.channel_pairs = a.channel_pairs;
    opt.eta = a.eta;
    opt.seed = a.seed;
    const LemmaSweep sweep = lemma_sweep(q, opt);
    o << "[q=" << q << "]\n";
    for (const auto& b : sweep.bounds) {
      if (b.skipped) {
        o << b.name << ": skipped (" << b.note << ")\n";
        continue;
      }
      total_violations += b.violations;
      o << b.name << ": checked=" << b.checked << " violations=" << b.violations
        << " worst_slack=" << format_real(b.worst_slack) << "\n";
      for (const auto& wit : b.witness) o << "  worst: " << vector_text(wit) << "\n";
    }
  }
  o << "total_violations: " << total_violations << "\n";
  return total_violations == 0 ? ok : violation;
}

struct CompositeArgs {
  int q = 4;
  std::string channel;
  double min_gap = 0.01;
  bool exhaustive = false;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
};

int cmd_composite(const Context& ctx, const CompositeArgs& a) {
  if (is_prime(a.q)) {
    ctx.err << "error: q=" << a.q << " is prime; the plain transform already polarizes, use `qpolar split`\n";
    return usage;
  }
  const std::string spec =
      a.channel.empty() ? "subgroup:q=" + std::to_string(a.q) + ",d=" + std::to_string(smallest_factor(a.q)) : a.channel;
  const Channel w = resolve_channel(spec);
  CompositeOptions opt;
  opt.exhaustive = a.exhaustive;
  opt.samples = a.samples;
  opt.seed = a.seed;
  const CompositeResult res = composite_search(a.q, w, a.min_gap, opt);

  auto& o = ctx.out;
  o << header_lines({ctx.command_line, res.exhaustive ? std::nullopt : std::optional<std::uint64_t>(a.seed)});
  o << "q: " << a.q << "\n";
  o << "channel: " << spec << "\n";
  o << "I(W): " << fixed12(capacity(w)) << "\n";
  o << "identity_gap: " << fixed12(res.fixed_point_demo) << "\n";
  o << "search: " << (res.exhaustive ? "exhaustive" : "sampled") << "\n";
  o << "examined: " << res.examined << "\n";
  o << "min_gap: " << format_real(a.min_gap) << "\n";
  o << "good_permutations: " << res.good_permutations.size() << "\n";
  for (const auto& g : res.good_permutations) o << g.pi.str() << " gap=" << fixed12(g.gap) << "\n";
  return ok;
}

struct GapCurveArgs {
  int q = 2;
  std::vector<double> deltas{0.05, 0.1, 0.2, 0.3, 0.4};
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
};

int cmd_gap_curve(const Context& ctx, const GapCurveArgs& a) {
  const auto curve = epsilon_curve(a.q, a.deltas, a.samples, a.seed);
  auto& o = ctx.out;
  o << header_lines({ctx.command_line, a.seed});
  o << "# empirical minimum of I(W) - I(W-) over sampled channels; not a proven bound\n";
  o << "delta,kept,empirical_min_gap,witness_capacity\n";
  for (const auto& pt : curve) {
    o << format_real(pt.delta) << "," << pt.kept << ",";
    if (pt.kept == 0)
      o << "nan,nan\n";
    else
      o << format_real(pt.empirical_min_gap) << "," << format_real(pt.witness_capacity) << "\n";
  }
  for (const auto& pt : curve)
    if (pt.kept == 0) ctx.err << "note: no sampled channel fell in the band for delta=" << format_real(pt.delta) << "\n";
  bool positive = true;
  for (const auto& pt : curve)
    if (pt.kept > 0 && !(pt.empirical_min_gap > 0.0)) positive = false;
  return positive ? ok : violation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-ary channel polarization toolkit", "qpolar"};
  app.require_subcommand(1);
  int threads = 1;

  std::string capacity_source;
  auto* cap = app.add_subcommand("capacity", "print the symmetric capacity I(W)");
  cap->add_option("channel", capacity_source, "channel file or builtin spec")->required();

  SplitArgs split_args;
  auto* sp = app.add_subcommand("split", "apply one polar transform step");
  sp->add_option("channel", split_args.channel, "channel file or builtin spec")->required();
  sp->add_option("--pi", split_args.pi, "permutation applied to the second input, e.g. [0,2,1,3]");
  sp->add_flag("--reduce", split_args.reduce, "canonicalize the children");
  sp->add_option("--write-minus", split_args.write_minus, "write W- to this channel file");
  sp->add_option("--write-plus", split_args.write_plus, "write W+ to this channel file");

  PolarizeArgs pol;
  auto* po = app.add_subcommand("polarize", "build the polarization tree and report");
  po->add_option("channel", pol.channel, "channel file or builtin spec")->required();
  po->add_option("--depth", pol.depth, "tree depth n")->required()->check(CLI::Range(0, 40));
  po->add_option("--delta", pol.delta, "polarization threshold")->check(CLI::Range(1e-300, 0.5));
  po->add_option("--paths", pol.paths, "also sample this many random paths")->check(CLI::NonNegativeNumber);
  po->add_option("--seed", pol.seed, "seed for path sampling");
  po->add_option("--budget", pol.budget, "maximum output alphabet size")->check(CLI::PositiveNumber);
  po->add_flag("--no-reduce", pol.no_reduce, "skip output canonicalization");
  po->add_flag("--no-fast-path", pol.no_fast_path, "disable the erasure recursion fast path");
  po->add_option("--out", pol.out_prefix, "write PREFIX.json and PREFIX.csv");
  po->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  LemmaArgs lem;
  auto* le = app.add_subcommand("lemmas", "sweep the entropy inequalities over random distributions");
  le->add_option("--q", lem.qs, "alphabet sizes")->delimiter(',')->check(CLI::Range(2, 64));
  le->add_option("--samples", lem.samples, "random distributions per q");
  le->add_option("--channel-pairs", lem.channel_pairs, "random channel pairs per q");
  le->add_option("--eta", lem.eta, "hypothesis margin for the strict gain check")->check(CLI::Range(1e-300, 0.5));
  le->add_option("--seed", lem.seed, "sampling seed");

  CompositeArgs comp;
  auto* co = app.add_subcommand("composite", "search permutations for a composite alphabet");
  co->add_option("--q", comp.q, "composite alphabet size")->required()->check(CLI::Range(2, 12));
  co->add_option("--channel", comp.channel, "channel (default: subgroup channel of the smallest factor)");
  co->add_option("--min-gap", comp.min_gap, "required I(W) - I(W-)");
  co->add_flag("--exhaustive", comp.exhaustive, "enumerate all q! permutations");
  co->add_option("--samples", comp.samples, "sampled permutations when not exhaustive");
  co->add_option("--seed", comp.seed, "sampling seed");

  GapCurveArgs gc;
  auto* gcurve = app.add_subcommand("gap-curve", "empirical strict-gap curve over random channels");
  gcurve->add_option("--q", gc.q, "prime alphabet size")->check(CLI::Range(2, 64));
  gcurve->add_option("--deltas", gc.deltas, "band half-widths in (0, 1/2)")->delimiter(',');
  gcurve->add_option("--samples", gc.samples, "random channels to draw");
  gcurve->add_option("--seed", gc.seed, "sampling seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }

  const Context ctx{join(args), out, err};
  try {
    pol.threads = threads;
    if (*cap) return cmd_capacity(ctx, capacity_source);
    if (*sp) return cmd_split(ctx, split_args);
    if (*po) return cmd_polarize(ctx, pol);
    if (*le) return cmd_lemmas(ctx, lem);
    if (*co) return cmd_composite(ctx, comp);
    if (*gcurve) return cmd_gap_curve(ctx, gc);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace qpolar::cli
