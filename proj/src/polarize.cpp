#include "qpolar/polarize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include "qpolar/random.hpp"
#include "qpolar/reduce.hpp"

namespace qpolar {

namespace {

/// Runs task(i) for i in [0, count) on up to `threads` workers. Exceptions are
/// collected per task and the one with the lowest index is rethrown, so the
/// outcome does not depend on scheduling.
template <typename Task>
void parallel_for(std::size_t count, int threads, Task&& task) {
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t i) {
    try {
      task(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(workers, count); ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) run(i);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void require_depth(int depth) {
  if (depth < 0 || depth > 40) throw std::invalid_argument("depth must lie in [0, 40]");
}

void summarize(PolarizationReport& r) {
  r.mean_capacity = r.level_mean(r.depth);
  const auto f = polarization_fractions(r.leaves(), r.delta);
  r.fraction_high = f.high;
  r.fraction_low = f.low;
  r.mean_abs_increment.assign(static_cast<std::size_t>(r.depth), 0.0);
  for (int k = 0; k < r.depth; ++k) {
    const auto& parent = r.levels[static_cast<std::size_t>(k)];
    const auto& child = r.levels[static_cast<std::size_t>(k) + 1];
    double acc = 0.0;
    for (std::size_t i = 0; i < parent.size(); ++i)
      acc += std::abs(child[2 * i] - parent[i]) + std::abs(child[2 * i + 1] - parent[i]);
    r.mean_abs_increment[static_cast<std::size_t>(k)] = acc / static_cast<double>(child.size());
  }
}

void grow_subtree(const Channel& node, const SignSequence& where, int depth, const TreeOptions& opt,
                  PolarizationReport& r) {
  if (where.size() == depth) return;
  const SplitPair kids = grow(node, where, opt.use_reduce, opt.max_outputs);
  const SignSequence s_minus = where.then(Sign::minus);
  const SignSequence s_plus = where.then(Sign::plus);
  auto& level = r.levels[static_cast<std::size_t>(where.size()) + 1];
  level[s_minus.index()] = capacity(kids.minus);
  level[s_plus.index()] = capacity(kids.plus);
  grow_subtree(kids.minus, s_minus, depth, opt, r);
  grow_subtree(kids.plus, s_plus, depth, opt, r);
}

}  // namespace

SignSequence SignSequence::from_index(std::uint64_t index, int depth) {
  std::vector<Sign> s(static_cast<std::size_t>(depth));
  for (int k = depth - 1; k >= 0; --k) {
    s[static_cast<std::size_t>(k)] = (index & 1U) ? Sign::plus : Sign::minus;
    index >>= 1;
  }
  return SignSequence(std::move(s));
}

SignSequence SignSequence::parse(const std::string& text) {
  std::vector<Sign> s;
  for (char c : text) {
    if (c == '-')
      s.push_back(Sign::minus);
    else if (c == '+')
      s.push_back(Sign::plus);
    else
      throw std::invalid_argument("sign sequence may only contain '-' and '+'");
  }
  return SignSequence(std::move(s));
}

std::uint64_t SignSequence::index() const noexcept {
  std::uint64_t i = 0;
  for (Sign s : signs_) i = (i << 1) | static_cast<std::uint64_t>(s);
  return i;
}

SignSequence SignSequence::then(Sign s) const {
  auto next = signs_;
  next.push_back(s);
  return SignSequence(std::move(next));
}

std::string SignSequence::str() const {
  std::string out;
  out.reserve(signs_.size());
  for (Sign s : signs_) out += (s == Sign::minus ? '-' : '+');
  return out;
}

BudgetExceeded::BudgetExceeded(SignSequence where, long long outputs, long long budget)
    : std::runtime_error("output budget exceeded at sign sequence \"" + where.str() + "\": " +
                         std::to_string(outputs) + " outputs > budget " + std::to_string(budget)),
      where_(std::move(where)),
      outputs_(outputs) {}

SplitPair grow(const Channel& parent, const SignSequence& where, bool use_reduce, long long max_outputs) {
  const long long m = parent.outputs();
  const long long minus_outputs = m * m;
  const long long plus_outputs = minus_outputs * parent.q();
  if (minus_outputs > max_outputs) throw BudgetExceeded(where.then(Sign::minus), minus_outputs, max_outputs);
  if (plus_outputs > max_outputs) throw BudgetExceeded(where.then(Sign::plus), plus_outputs, max_outputs);
  SplitPair kids = split(parent);
  if (!use_reduce) return kids;
  return {canonicalize(kids.minus), canonicalize(kids.plus)};
}

std::optional<double> erasure_parameter(const Channel& w) {
  const PosteriorView view = posteriors(w);
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(w.q(), 1.0 / w.q());
  double e = 0.0;
  for (const auto& entry : view.entries)
    if ((entry.posterior.mass() - uniform).cwiseAbs().maxCoeff() <= 1e-9) e += entry.weight;
  e = std::clamp(e, 0.0, 1.0);
  if (!equivalent(w, erasure_channel(w.q(), e))) return std::nullopt;
  return e;
}

double erasure_step(double e, Sign s) noexcept {
  return s == Sign::minus ? 1.0 - (1.0 - e) * (1.0 - e) : e * e;
}

double PolarizationReport::leaf(const SignSequence& s) const {
  if (s.size() != depth) throw std::invalid_argument("sign sequence length does not match report depth");
  return leaves()[s.index()];
}

double PolarizationReport::level_mean(int k) const {
  const auto& level = levels.at(static_cast<std::size_t>(k));
  return std::accumulate(level.begin(), level.end(), 0.0) / static_cast<double>(level.size());
}

PolarizationReport build_tree(const Channel& root, const TreeOptions& opt) {
  require_depth(opt.depth);
  if (!(opt.delta > 0.0 && opt.delta < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");
  PolarizationReport r;
  r.depth = opt.depth;
  r.delta = opt.delta;
  r.root_capacity = capacity(root);
  r.levels.resize(static_cast<std::size_t>(opt.depth) + 1);
  for (int k = 0; k <= opt.depth; ++k) r.levels[static_cast<std::size_t>(k)].assign(std::size_t{1} << k, 0.0);
  r.levels[0][0] = r.root_capacity;

  const std::optional<double> e0 = opt.erasure_fast_path ? erasure_parameter(root) : std::nullopt;
  if (e0) {
    r.erasure_fast_path = true;
    std::vector<double> e{*e0};
    for (int k = 1; k <= opt.depth; ++k) {
      std::vector<double> next(e.size() * 2);
      for (std::size_t i = 0; i < e.size(); ++i) {
        next[2 * i] = erasure_step(e[i], Sign::minus);
        next[2 * i + 1] = erasure_step(e[i], Sign::plus);
      }
      e = std::move(next);
      auto& level = r.levels[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < e.size(); ++i) level[i] = 1.0 - e[i];
    }
    summarize(r);
    return r;
  }

  if (opt.threads <= 1 || opt.depth == 0) {
    grow_subtree(root, SignSequence{}, opt.depth, opt, r);
  } else {
    // Expand breadth-first to a frontier with at least `threads` nodes, then
    // hand each frontier subtree to a worker. Workers write disjoint slots.
    int frontier_depth = 0;
    while ((1 << frontier_depth) < opt.threads && frontier_depth < opt.depth) ++frontier_depth;
    std::vector<Channel> frontier{root};
    for (int k = 0; k < frontier_depth; ++k) {
      std::vector<Channel> next;
      next.reserve(frontier.size() * 2);
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        const SignSequence where = SignSequence::from_index(i, k);
        SplitPair kids = grow(frontier[i], where, opt.use_reduce, opt.max_outputs);
        auto& level = r.levels[static_cast<std::size_t>(k) + 1];
        level[2 * i] = capacity(kids.minus);
        level[2 * i + 1] = capacity(kids.plus);
        next.push_back(std::move(kids.minus));
        next.push_back(std::move(kids.plus));
      }
      frontier = std::move(next);
    }
    parallel_for(frontier.size(), opt.threads, [&](std::size_t i) {
      grow_subtree(frontier[i], SignSequence::from_index(i, frontier_depth), opt.depth, opt, r);
    });
  }
  summarize(r);
  return r;
}

Fractions polarization_fractions(const std::vector<double>& capacities, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");
  if (capacities.empty()) return {0.0, 0.0};
  std::size_t high = 0;
  std::size_t low = 0;
  for (double c : capacities) {
    if (c > 1.0 - delta) ++high;
    if (c < delta) ++low;
  }
  const auto n = static_cast<double>(capacities.size());
  return {static_cast<double>(high) / n, static_cast<double>(low) / n};
}

Fractions polarization_fractions(const PolarizationReport& report, double delta) {
  return polarization_fractions(report.leaves(), delta);
}

Fractions polarization_fractions(const PolarizationReport& report, int depth, double delta) {
  return polarization_fractions(report.levels.at(static_cast<std::size_t>(depth)), delta);
}

PathSample sample_paths(const Channel& root, const PathOptions& opt) {
  require_depth(opt.depth);
  if (opt.paths < 1) throw std::invalid_argument("need at least one path");
  const double i0 = capacity(root);
  PathSample out;
  out.traces.resize(static_cast<std::size_t>(opt.paths));
  parallel_for(out.traces.size(), opt.threads, [&](std::size_t p) {
    PathTrace& t = out.traces[p];
    t.seed = mix_seed(opt.seed, p);
    Engine eng(t.seed);
    t.capacities.reserve(static_cast<std::size_t>(opt.depth) + 1);
    t.capacities.push_back(i0);
    Channel node = root;
    for (int k = 0; k < opt.depth; ++k) {
      const Sign s = coin(eng) ? Sign::plus : Sign::minus;
      SplitPair kids = grow(node, t.signs, opt.use_reduce, opt.max_outputs);
      node = s == Sign::minus ? std::move(kids.minus) : std::move(kids.plus);
      t.signs = t.signs.then(s);
      t.capacities.push_back(capacity(node));
    }
  });

  const auto n = static_cast<double>(opt.paths);
  auto& sum = out.summary;
  sum.mean.assign(static_cast<std::size_t>(opt.depth) + 1, 0.0);
  sum.standard_error.assign(sum.mean.size(), 0.0);
  sum.mean_abs_increment.assign(static_cast<std::size_t>(opt.depth), 0.0);
  for (std::size_t k = 0; k < sum.mean.size(); ++k) {
    double acc = 0.0;
    for (const auto& t : out.traces) acc += t.capacities[k];
    const double mean = acc / n;
    double var = 0.0;
    for (const auto& t : out.traces) var += (t.capacities[k] - mean) * (t.capacities[k] - mean);
    sum.mean[k] = mean;
    sum.standard_error[k] = opt.paths > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
  }
  for (std::size_t k = 0; k < sum.mean_abs_increment.size(); ++k) {
    double acc = 0.0;
    for (const auto& t : out.traces) acc += std::abs(t.capacities[k + 1] - t.capacities[k]);
    sum.mean_abs_increment[k] = acc / n;
  }
  return out;
}

std::vector<EpsilonPoint> epsilon_curve(int q, const std::vector<double>& delta_grid, std::size_t samples,
                                        std::uint64_t seed) {
  const Alphabet alphabet(q);
  require_prime(alphabet);
  for (double d : delta_grid)
    if (!(d > 0.0 && d < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");

  struct Sampled {
    double capacity;
    double gap;
  };
  std::vector<Sampled> pool;
  pool.reserve(samples);
  Engine pick(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const int m = 2 + uniform_index(pick, 7);
    const Channel w = random_channel(q, m, mix_seed(seed, i));
    const double iw = capacity(w);
    pool.push_back({iw, iw - capacity(split(w).minus)});
  }

  std::vector<EpsilonPoint> curve;
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (double d : delta_grid) {
    EpsilonPoint pt{d, 0, nan, nan};
    for (const auto& s : pool) {
      if (!(s.capacity > d && s.capacity < 1.0 - d)) continue;
      ++pt.kept;
      if (pt.kept == 1 || s.gap < pt.empirical_min_gap) {
        pt.empirical_min_gap = s.gap;
        pt.witness_capacity = s.capacity;
      }
    }
    curve.push_back(pt);
  }
  return curve;
}

CompositeResult composite_search(int q, const Channel& w, double min_gap, const CompositeOptions& opt) {
  const Alphabet alphabet(q);
  if (alphabet.prime())
    throw std::invalid_argument("q=" + std::to_string(q) + " is prime; use the plain split transform");
  require_same(alphabet, w.alphabet());
  const double iw = capacity(w);
  if (!(iw > 0.0 && iw < 1.0)) throw std::invalid_argument("composite search needs 0 < I(W) < 1");

  auto gap_for = [&](const Permutation& pi) { return iw - capacity(split_permuted(w, pi).minus); };

  CompositeResult result;
  result.fixed_point_demo = gap_for(Permutation::identity(alphabet));
  result.exhaustive = opt.exhaustive || q <= 6;

  auto consider = [&](std::vector<int> map) {
    Permutation pi(alphabet, std::move(map));
    ++result.examined;
    const double g = gap_for(pi);
    if (g >= min_gap) result.good_permutations.push_back({std::move(pi), g});
  };

  std::vector<int> map(static_cast<std::size_t>(q));
  std::iota(map.begin(), map.end(), 0);
  if (result.exhaustive) {
    do {
      consider(map);
    } while (std::next_permutation(map.begin(), map.end()));
  } else {
    Engine eng(opt.seed);
    std::set<std::vector<int>> seen;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      for (int i = q - 1; i > 0; --i) std::swap(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(uniform_index(eng, i + 1))]);
      if (seen.insert(map).second) consider(map);
    }
    std::sort(result.good_permutations.begin(), result.good_permutations.end(),
              [](const PermutationGap& a, const PermutationGap& b) { return a.pi.map() < b.pi.map(); });
  }
  return result;
}

}  // namespace qpolar
