#include "qpolar/sweep.hpp"

#include <limits>

#include "qpolar/channel.hpp"
#include "qpolar/dist.hpp"
#include "qpolar/random.hpp"
#include "qpolar/transform.hpp"

namespace qpolar {

namespace {

std::vector<Dist> corner_cases(const Alphabet& a) {
  const int q = a.size();
  std::vector<Dist> out{Dist::uniform(a)};
  for (int i = 0; i < q; ++i) out.push_back(Dist::unit(a, i));
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      for (double w : {0.5, 0.9, 1.0 - 1e-6}) {
        Eigen::VectorXd m = Eigen::VectorXd::Zero(q);
        m(i) = w;
        m(j) = 1.0 - w;
        out.emplace_back(a, std::move(m));
      }
    }
  }
  return out;
}

class Tracker {
 public:
  explicit Tracker(std::string name) { stats_.name = std::move(name); stats_.worst_slack = std::numeric_limits<double>::infinity(); }

  void observe(double slack, bool violated, std::initializer_list<const Dist*> witness) {
    ++stats_.checked;
    if (violated) ++stats_.violations;
    if (slack < stats_.worst_slack) {
      stats_.worst_slack = slack;
      stats_.witness.clear();
      for (const Dist* d : witness) stats_.witness.push_back(d->to_vector());
    }
  }

  void skip(std::string note) {
    stats_.skipped = true;
    stats_.note = std::move(note);
  }

  BoundStats take() {
    if (stats_.checked == 0) stats_.worst_slack = 0.0;
    return std::move(stats_);
  }

 private:
  BoundStats stats_;
};

}  // namespace

LemmaSweep lemma_sweep(int q, const SweepOptions& opt) {
  const Alphabet a(q);
  Engine eng(mix_seed(opt.seed, static_cast<std::uint64_t>(q)));
  std::vector<Dist> sample = corner_cases(a);
  for (std::size_t i = 0; i < opt.samples; ++i) sample.push_back(Dist::random(a, eng));

  Tracker l1("l1_to_uniform");
  Tracker shifts("shift_separation");
  Tracker weak("convolution_gain_weak");
  Tracker strict("convolution_gain_strict");
  Tracker cond("sum_conditional_entropy_gain");

  for (const Dist& p : sample) {
    const auto r3 = lemma3_check(p);
    l1.observe(r3.lhs - r3.rhs, !r3.holds, {&p});
  }

  if (!a.prime()) {
    const std::string note = "q=" + std::to_string(q) + " is composite; bound requires a prime alphabet";
    shifts.skip(note);
    weak.skip(note);
    strict.skip(note);
    cond.skip(note);
  } else {
    for (const Dist& p : sample) {
      const auto r4 = lemma4_check(p);
      shifts.observe(r4.min_shift_distance - r4.bound, !r4.holds, {&p});
    }
    // Pair each sampled distribution with the next one; corners pair with the
    // whole corner set.
    const std::size_t corners = corner_cases(a).size();
    auto check_pair = [&](const Dist& p, const Dist& r) {
      const auto r5 = lemma5_check(p, r, opt.eta);
      weak.observe(r5.gain, r5.gain < -kBoundSlack, {&p, &r});
      if (r5.hypotheses_met) strict.observe(r5.gain, !(r5.gain > 0.0), {&p, &r});
    };
    for (std::size_t i = 0; i < corners; ++i)
      for (std::size_t j = 0; j < corners; ++j) check_pair(sample[i], sample[j]);
    for (std::size_t i = corners; i + 1 < sample.size(); ++i) check_pair(sample[i], sample[i + 1]);

    for (std::size_t k = 0; k < opt.channel_pairs; ++k) {
      const int m1 = 2 + uniform_index(eng, 7);
      const int m2 = 2 + uniform_index(eng, 7);
      const Channel w1 = random_channel(q, m1, eng());
      const Channel w2 = random_channel(q, m2, eng());
      const double gain = entropy_gain_check(w1, w2);
      const double h1 = 1.0 - capacity(w1);
      const double h2 = 1.0 - capacity(w2);
      const bool in_band = h1 > opt.eta && h1 < 1.0 - opt.eta && h2 > opt.eta && h2 < 1.0 - opt.eta;
      cond.observe(gain, gain < -kBoundSlack || (in_band && !(gain > 0.0)), {});
    }
  }

  LemmaSweep out{q, {}};
  out.bounds.push_back(l1.take());
  out.bounds.push_back(shifts.take());
  out.bounds.push_back(weak.take());
  out.bounds.push_back(strict.take());
  out.bounds.push_back(cond.take());
  return out;
}

}  // namespace qpolar
