#include "abpf/particle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abpf/errors.hpp"
#include "abpf/exact.hpp"

namespace abpf {

BlockedEnsemble::BlockedEnsemble(std::vector<int> radices,
                                 std::vector<int> states, Partition partition,
                                 std::vector<std::vector<double>> weights,
                                 std::size_t time,
                                 std::optional<std::size_t> schedule_index)
    : radices_(std::move(radices)),
      states_(std::move(states)),
      partition_(std::move(partition)),
      weights_(std::move(weights)),
      time_(time),
      schedule_index_(schedule_index) {
  const std::size_t n = radices_.size();
  if (n == 0) throw InvalidArgument("ensemble needs at least one site");
  if (states_.size() % n != 0 || states_.empty()) {
    throw InvalidArgument("ensemble state array is not a whole number of particles");
  }
  count_ = states_.size() / n;
  if (partition_.vertex_count() != static_cast<int>(n)) {
    throw InvalidArgument("ensemble partition does not match the site count");
  }
  if (weights_.size() != partition_.block_count()) {
    throw InvalidArgument("need one weight vector per block");
  }
  for (const auto& w : weights_) {
    if (w.size() != count_) throw InvalidArgument("weight vector length != N");
    double total = 0.0;
    for (double x : w) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw InvalidArgument("weights must be finite and non-negative");
      }
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-10) {
      throw InvalidArgument("block weights must sum to 1");
    }
  }
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const int r = radices_[i % n];
    if (states_[i] < 0 || states_[i] >= r) {
      throw InvalidArgument("particle state outside its alphabet");
    }
  }
}

BlockedEnsemble init_ensemble(const InitialLaw& law, std::size_t particles,
                              const ReplicateStreams& streams) {
  if (particles == 0) throw InvalidArgument("particle count must be positive");
  const std::size_t n = law.radices().size();
  std::vector<int> states(particles * n);
  for (std::size_t i = 0; i < particles; ++i) {
    auto rng = streams.stream(StreamPurpose::kInitialize, 0, i);
    law.sample(rng, std::span<int>(states.data() + i * n, n));
  }
  const int sites = static_cast<int>(n);
  std::vector<std::vector<double>> weights(
      1, std::vector<double>(particles, 1.0 / static_cast<double>(particles)));
  return BlockedEnsemble(law.radices(), std::move(states),
                         Partition::single_block(sites), std::move(weights), 0);
}

std::vector<std::size_t> draw_ancestors(std::span<const double> weights,
                                        std::size_t draws, RandomStream& rng) {
  std::vector<double> cdf(weights.size());
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cdf[i] = acc;
    if (weights[i] > 0.0) last_positive = i;
  }
  std::vector<std::size_t> out(draws);
  for (auto& a : out) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::size_t>(it - cdf.begin());
    a = idx >= cdf.size() ? last_positive : idx;
  }
  return out;
}

std::vector<int> resample_product(const BlockedEnsemble& ensemble,
                                  const ReplicateStreams& streams) {
  const std::size_t time = ensemble.time() + 1;
  const std::size_t count = ensemble.particle_count();
  const auto n = static_cast<std::size_t>(ensemble.site_count());
  const auto& src = ensemble.states();
  std::vector<int> out(src.size());
  const Partition& part = ensemble.partition();
  for (std::size_t k = 0; k < part.block_count(); ++k) {
    auto rng = streams.stream(StreamPurpose::kResample, time, k);
    const auto ancestors = draw_ancestors(ensemble.weights(k), count, rng);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t a = ancestors[i];
      for (Vertex v : part.block(k)) {
        out[i * n + static_cast<std::size_t>(v)] =
            src[a * n + static_cast<std::size_t>(v)];
      }
    }
  }
  return out;
}

std::vector<int> propagate(const FieldModel& model, std::span<const int> states,
                           std::size_t time, const ReplicateStreams& streams) {
  const auto n = static_cast<std::size_t>(model.site_count());
  if (states.size() % n != 0) throw InvalidArgument("state array length mismatch");
  const std::size_t count = states.size() / n;
  std::vector<int> out(states.size());
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = streams.stream(StreamPurpose::kPropagate, time, i);
    const auto x = states.subspan(i * n, n);
    for (std::size_t v = 0; v < n; ++v) {
      out[i * n + v] = static_cast<int>(sample_categorical(
          model.transition_row(static_cast<Vertex>(v), x), rng.uniform()));
    }
  }
  return out;
}

namespace {

/// Exponentiates log-weights after subtracting the maximum and normalizes.
/// Returns false when every entry is -infinity.
bool normalize_log_weights(std::vector<double>& lw) {
  double top = -std::numeric_limits<double>::infinity();
  for (double x : lw) top = std::max(top, x);
  if (!std::isfinite(top)) return false;
  double total = 0.0;
  for (double& x : lw) {
    x = std::exp(x - top);
    total += x;
  }
  for (double& x : lw) x /= total;
  return true;
}

}  // namespace

std::vector<std::vector<double>> blockwise_weights(const FieldModel& model,
                                                   std::span<const int> states,
                                                   std::span<const int> y,
                                                   const Partition& partition) {
  model.require_observation(y);
  const auto n = static_cast<std::size_t>(model.site_count());
  const std::size_t count = states.size() / n;
  std::vector<std::vector<double>> out(partition.block_count());
  for (std::size_t k = 0; k < partition.block_count(); ++k) {
    auto& lw = out[k];
    lw.assign(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      double s = 0.0;
      for (Vertex v : partition.block(k)) {
        s += model.log_observation_density(
            v, states[i * n + static_cast<std::size_t>(v)], y[v]);
      }
      lw[i] = s;
    }
    if (!normalize_log_weights(lw)) throw DegenerateBlock(k);
  }
  return out;
}

BlockedEnsemble abpf_step(const FieldModel& model,
                          const BlockedEnsemble& ensemble,
                          std::span<const int> y,
                          const PartitionSchedule& schedule,
                          const ReplicateStreams& streams) {
  require_connected(model.graph());
  if (ensemble.radices() != model.state_sizes() ||
      schedule.vertex_count() != model.site_count()) {
    throw InvalidArgument("ensemble or schedule does not match the model");
  }
  const std::size_t time = ensemble.time() + 1;
  auto resampled = resample_product(ensemble, streams);
  auto moved = propagate(model, resampled, time, streams);
  const Partition& part = schedule.at(time);
  auto weights = blockwise_weights(model, moved, y, part);
  return BlockedEnsemble(ensemble.radices(), std::move(moved), part,
                         std::move(weights), time, schedule.sigma(time));
}

BlockedEnsemble bootstrap_step(const FieldModel& model,
                               const BlockedEnsemble& ensemble,
                               std::span<const int> y,
                               const ReplicateStreams& streams) {
  require_connected(model.graph());
  if (ensemble.radices() != model.state_sizes()) {
    throw InvalidArgument("ensemble does not match the model");
  }
  if (ensemble.partition().block_count() != 1) {
    throw InvalidArgument("bootstrap filter needs single-block weights");
  }
  model.require_observation(y);
  const std::size_t time = ensemble.time() + 1;
  const std::size_t count = ensemble.particle_count();
  const auto n = static_cast<std::size_t>(model.site_count());

  // Whole-particle multinomial resampling.
  auto rng = streams.stream(StreamPurpose::kResample, time, 0);
  const auto ancestors = draw_ancestors(ensemble.weights(0), count, rng);
  std::vector<int> resampled(count * n);
  for (std::size_t i = 0; i < count; ++i) {
    const auto src = ensemble.particle(ancestors[i]);
    std::copy(src.begin(), src.end(), resampled.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  auto moved = propagate(model, resampled, time, streams);

  // Full likelihood weights.
  std::vector<double> lw(count);
  for (std::size_t i = 0; i < count; ++i) {
    double s = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      s += model.log_observation_density(static_cast<Vertex>(v), moved[i * n + v],
                                         y[v]);
    }
    lw[i] = s;
  }
  if (!normalize_log_weights(lw)) throw DegenerateBlock(0);
  std::vector<std::vector<double>> weights{std::move(lw)};
  return BlockedEnsemble(ensemble.radices(), std::move(moved),
                         Partition::single_block(static_cast<int>(n)),
                         std::move(weights), time);
}

std::vector<BlockedEnsemble> abpf_run(const FieldModel& model,
                                      const InitialLaw& law,
                                      const std::vector<Configuration>& observations,
                                      const PartitionSchedule& schedule,
                                      std::size_t particles,
                                      const ReplicateStreams& streams) {
  require_connected(model.graph());
  std::vector<BlockedEnsemble> out;
  out.reserve(observations.size() + 1);
  out.push_back(init_ensemble(law, particles, streams));
  for (const auto& y : observations) {
    out.push_back(abpf_step(model, out.back(), y, schedule, streams));
  }
  return out;
}

std::vector<BlockedEnsemble> bootstrap_run(
    const FieldModel& model, const InitialLaw& law,
    const std::vector<Configuration>& observations, std::size_t particles,
    const ReplicateStreams& streams) {
  require_connected(model.graph());
  std::vector<BlockedEnsemble> out;
  out.reserve(observations.size() + 1);
  out.push_back(init_ensemble(law, particles, streams));
  for (const auto& y : observations) {
    out.push_back(bootstrap_step(model, out.back(), y, streams));
  }
  return out;
}

DenseDistribution empirical_local_measure(const BlockedEnsemble& ensemble,
                                          const VertexSet& sites) {
  const int n = ensemble.site_count();
  std::vector<int> radices;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] < 0 || sites[k] >= n) throw InvalidArgument("site out of range");
    if (k > 0 && sites[k - 1] >= sites[k]) {
      throw InvalidArgument("sites must be sorted and unique");
    }
    radices.push_back(ensemble.radices()[static_cast<std::size_t>(sites[k])]);
  }
  const std::size_t size = configuration_count(radices);
  if (size > 4096) throw CapExceeded("local measure too large", size, 4096);

  // Positions (within J) of the sites belonging to each block that meets J.
  const Partition& part = ensemble.partition();
  struct Piece {
    std::size_t block;
    std::vector<std::size_t> positions;
    std::vector<int> radices;
    std::vector<double> table;
  };
  std::vector<Piece> pieces;
  for (std::size_t pos = 0; pos < sites.size(); ++pos) {
    const std::size_t b = part.block_of(sites[pos]);
    auto it = std::find_if(pieces.begin(), pieces.end(),
                           [b](const Piece& p) { return p.block == b; });
    if (it == pieces.end()) {
      pieces.push_back({b, {}, {}, {}});
      it = pieces.end() - 1;
    }
    it->positions.push_back(pos);
    it->radices.push_back(radices[pos]);
  }
  const auto stride = static_cast<std::size_t>(n);
  for (auto& p : pieces) {
    p.table.assign(configuration_count(p.radices), 0.0);
    const auto w = ensemble.weights(p.block);
    for (std::size_t i = 0; i < ensemble.particle_count(); ++i) {
      std::size_t idx = 0;
      for (std::size_t q = p.positions.size(); q-- > 0;) {
        const auto v = static_cast<std::size_t>(sites[p.positions[q]]);
        idx = idx * static_cast<std::size_t>(p.radices[q]) +
              static_cast<std::size_t>(ensemble.states()[i * stride + v]);
      }
      p.table[idx] += w[i];
    }
  }
  std::vector<double> out(size);
  Configuration x(sites.size());
  for (std::size_t c = 0; c < size; ++c) {
    std::size_t rem = c;
    for (std::size_t q = 0; q < sites.size(); ++q) {
      x[q] = static_cast<int>(rem % static_cast<std::size_t>(radices[q]));
      rem /= static_cast<std::size_t>(radices[q]);
    }
    double prob = 1.0;
    for (const auto& p : pieces) {
      std::size_t idx = 0;
      for (std::size_t q = p.positions.size(); q-- > 0;) {
        idx = idx * static_cast<std::size_t>(p.radices[q]) +
              static_cast<std::size_t>(x[p.positions[q]]);
      }
      prob *= p.table[idx];
    }
    out[c] = prob;
  }
  return DenseDistribution::from_weights(std::move(radices), std::move(out));
}

DenseDistribution sampling_operator(const DenseDistribution& rho,
                                    std::size_t particles,
                                    const ReplicateStreams& streams) {
  if (particles == 0) throw InvalidArgument("particle count must be positive");
  auto rng = streams.stream(StreamPurpose::kSampling, 0, 0);
  std::vector<double> counts(rho.size(), 0.0);
  for (std::size_t i = 0; i < particles; ++i) {
    counts[sample_categorical(rho.probs(), rng.uniform())] += 1.0;
  }
  return DenseDistribution::from_weights(rho.radices(), std::move(counts));
}

void write_ensemble_csv(std::ostream& os, const BlockedEnsemble& ensemble) {
  os << "kind,time,block,particle,site,value\n";
  const auto n = static_cast<std::size_t>(ensemble.site_count());
  for (std::size_t i = 0; i < ensemble.particle_count(); ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      os << "state," << ensemble.time() << ",," << i << ',' << v << ','
         << ensemble.states()[i * n + v] << '\n';
    }
  }
  const auto prec = os.precision(17);
  for (std::size_t k = 0; k < ensemble.partition().block_count(); ++k) {
    const auto w = ensemble.weights(k);
    for (std::size_t i = 0; i < w.size(); ++i) {
      os << "weight," << ensemble.time() << ',' << k << ',' << i << ",,"
         << w[i] << '\n';
    }
  }
  os.precision(prec);
}

}  // namespace abpf
