#include "abpf/exact.hpp"

#include <cmath>
#include <sstream>

#include "abpf/diagnostics.hpp"
#include "abpf/errors.hpp"

namespace abpf {

namespace {

constexpr double kDriftTolerance = 1e-8;

void require_space(const FieldModel& model, const DenseDistribution& rho,
                   const ExactLimits& limits) {
  if (rho.radices() != model.state_sizes()) {
    throw InvalidArgument("distribution alphabets do not match the model");
  }
  const std::size_t count = model.state_space_size();
  if (count > limits.max_configurations) {
    throw CapExceeded("joint state space exceeds the dense cap", count,
                      limits.max_configurations);
  }
}

void require_observations(const FieldModel& model,
                          const std::vector<Configuration>& observations) {
  for (const auto& y : observations) model.require_observation(y);
}

}  // namespace

void require_connected(const FieldGraph& graph) {
  if (!graph.connected()) {
    throw InvalidArgument("graph is disconnected; engines need a connected graph");
  }
}

DenseDistribution predict(const FieldModel& model, const DenseDistribution& rho,
                          const ExactLimits& limits) {
  require_space(model, rho, limits);
  const int n = model.site_count();
  const std::size_t size = rho.size();
  std::vector<double> out(size, 0.0);
  Configuration x(static_cast<std::size_t>(n));
  std::vector<double> kernel;
  std::vector<double> next;
  kernel.reserve(size);
  next.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double w = rho[i];
    if (w == 0.0) continue;
    rho.decode_into(i, x);
    // Expand prod_v p^v(x, z^v) over z one site at a time; site 0 is the
    // least significant digit, so site v's digit has stride |kernel|.
    kernel.assign(1, w);
    for (Vertex v = 0; v < n; ++v) {
      const auto row = model.transition_row(v, x);
      next.assign(kernel.size() * row.size(), 0.0);
      for (std::size_t z = 0; z < row.size(); ++z) {
        const double pz = row[z];
        if (pz == 0.0) continue;
        double* dst = next.data() + z * kernel.size();
        for (std::size_t k = 0; k < kernel.size(); ++k) dst[k] = kernel[k] * pz;
      }
      kernel.swap(next);
    }
    for (std::size_t k = 0; k < size; ++k) out[k] += kernel[k];
  }
  double total = 0.0;
  for (double p : out) total += p;
  if (std::abs(total - 1.0) > kDriftTolerance) {
    std::ostringstream msg;
    msg << "prediction mass drifted to " << total << "; renormalizing";
    warn(msg.str());
  }
  return DenseDistribution::from_weights(rho.radices(), std::move(out));
}

DenseDistribution correct(const FieldModel& model, const DenseDistribution& rho,
                          std::span<const int> y) {
  if (rho.radices() != model.state_sizes()) {
    throw InvalidArgument("distribution alphabets do not match the model");
  }
  model.require_observation(y);
  const int n = model.site_count();
  std::vector<double> w(rho.size(), 0.0);
  Configuration x(static_cast<std::size_t>(n));
  double total = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] == 0.0) continue;
    rho.decode_into(i, x);
    double g = rho[i];
    for (Vertex v = 0; v < n && g != 0.0; ++v) {
      g *= model.observation_site_density(v, x[v], y[v]);
    }
    w[i] = g;
    total += g;
  }
  if (!(total > 0.0)) {
    throw DegenerateEvidence("observation has zero likelihood under the predictive law");
  }
  for (double& p : w) p /= total;
  return DenseDistribution(rho.radices(), std::move(w));
}

DenseDistribution block_marginal(const DenseDistribution& rho,
                                 const VertexSet& sites) {
  const int n = rho.site_count();
  std::vector<int> radices;
  radices.reserve(sites.size());
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const Vertex v = sites[k];
    if (v < 0 || v >= n) throw InvalidArgument("marginal site out of range");
    if (k > 0 && sites[k - 1] >= v) {
      throw InvalidArgument("marginal sites must be sorted and unique");
    }
    radices.push_back(rho.radices()[static_cast<std::size_t>(v)]);
  }
  std::vector<double> out(configuration_count(radices), 0.0);
  Configuration x(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] == 0.0) continue;
    rho.decode_into(i, x);
    std::size_t idx = 0;
    for (std::size_t k = sites.size(); k-- > 0;) {
      idx = idx * static_cast<std::size_t>(radices[k]) +
            static_cast<std::size_t>(x[static_cast<std::size_t>(sites[k])]);
    }
    out[idx] += rho[i];
  }
  return DenseDistribution::from_weights(std::move(radices), std::move(out));
}

DenseDistribution blocking(const DenseDistribution& rho,
                           const Partition& partition) {
  if (partition.vertex_count() != rho.site_count()) {
    throw InvalidArgument("partition does not match the distribution");
  }
  std::vector<DenseDistribution> marginals;
  marginals.reserve(partition.block_count());
  for (const auto& block : partition.blocks()) {
    marginals.push_back(block_marginal(rho, block));
  }
  std::vector<double> out(rho.size(), 0.0);
  Configuration x(static_cast<std::size_t>(rho.site_count()));
  Configuration part;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    rho.decode_into(i, x);
    double p = 1.0;
    for (std::size_t k = 0; k < marginals.size() && p != 0.0; ++k) {
      const auto& block = partition.block(k);
      part.resize(block.size());
      for (std::size_t s = 0; s < block.size(); ++s) {
        part[s] = x[static_cast<std::size_t>(block[s])];
      }
      p *= marginals[k][marginals[k].encode(part)];
    }
    out[i] = p;
  }
  return DenseDistribution::from_weights(rho.radices(), std::move(out));
}

std::vector<DenseDistribution> exact_filter_run(
    const FieldModel& model, const DenseDistribution& mu,
    const std::vector<Configuration>& observations, const ExactLimits& limits) {
  require_connected(model.graph());
  require_space(model, mu, limits);
  require_observations(model, observations);
  std::vector<DenseDistribution> out;
  out.reserve(observations.size() + 1);
  out.push_back(mu);
  for (const auto& y : observations) {
    out.push_back(correct(model, predict(model, out.back(), limits), y));
  }
  return out;
}

std::vector<DenseDistribution> blocked_filter_run(
    const FieldModel& model, const DenseDistribution& mu,
    const std::vector<Configuration>& observations,
    const PartitionSchedule& schedule, const ExactLimits& limits) {
  require_connected(model.graph());
  require_space(model, mu, limits);
  require_observations(model, observations);
  if (schedule.vertex_count() != model.site_count()) {
    throw InvalidArgument("schedule does not match the model");
  }
  std::vector<DenseDistribution> out;
  out.reserve(observations.size() + 1);
  out.push_back(mu);
  for (std::size_t k = 1; k <= observations.size(); ++k) {
    const auto predicted = predict(model, out.back(), limits);
    out.push_back(correct(model, blocking(predicted, schedule.at(k)),
                          observations[k - 1]));
  }
  return out;
}

double local_tv(const DenseDistribution& a, const DenseDistribution& b,
                const VertexSet& sites) {
  if (a.radices() != b.radices()) {
    throw InvalidArgument("distributions live on different spaces");
  }
  const auto ma = block_marginal(a, sites);
  const auto mb = block_marginal(b, sites);
  double d = 0.0;
  for (std::size_t i = 0; i < ma.size(); ++i) d += std::abs(ma[i] - mb[i]);
  return d;
}

std::vector<DenseDistribution> path_oracle(
    const FieldModel& model, const DenseDistribution& mu,
    const std::vector<Configuration>& observations, const ExactLimits& limits) {
  require_connected(model.graph());
  require_space(model, mu, limits);
  require_observations(model, observations);
  const std::size_t size = mu.size();
  const std::size_t horizon = observations.size();
  std::size_t paths = size;
  for (std::size_t k = 0; k < horizon; ++k) {
    if (paths > limits.max_paths / size) {
      throw CapExceeded("path enumeration exceeds the cap", SIZE_MAX,
                        limits.max_paths);
    }
    paths *= size;
  }
  if (paths > limits.max_paths) {
    throw CapExceeded("path enumeration exceeds the cap", paths,
                      limits.max_paths);
  }

  // Per-step factors evaluated from the model primitives directly.
  std::vector<Configuration> configs(size);
  for (std::size_t i = 0; i < size; ++i) configs[i] = mu.decode(i);
  std::vector<double> trans(size * size);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      trans[a * size + b] = transition_density(model, configs[a], configs[b]) /
                            static_cast<double>(size);
    }
  }
  std::vector<std::vector<double>> lik(horizon, std::vector<double>(size));
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t b = 0; b < size; ++b) {
      lik[t][b] = likelihood(model, configs[b], observations[t]);
    }
  }

  std::vector<DenseDistribution> out;
  out.reserve(horizon + 1);
  out.push_back(mu);
  std::vector<std::size_t> path;
  std::vector<double> weight;
  for (std::size_t k = 1; k <= horizon; ++k) {
    std::vector<double> end(size, 0.0);
    // Depth-first over x_0 .. x_k; weight[t] is the product up to x_t.
    path.assign(k + 1, 0);
    weight.assign(k + 1, 0.0);
    std::size_t depth = 0;
    path[0] = 0;
    for (;;) {
      const std::size_t x = path[depth];
      weight[depth] =
          depth == 0 ? mu[x]
                     : weight[depth - 1] * trans[path[depth - 1] * size + x] *
                           lik[depth - 1][x];
      if (depth == k) {
        end[x] += weight[depth];
      } else if (weight[depth] != 0.0) {
        ++depth;
        path[depth] = 0;
        continue;
      }
      // Advance to the next sibling, backtracking as needed.
      while (++path[depth] == size) {
        if (depth == 0) break;
        --depth;
      }
      if (path[depth] == size) break;
    }
    double total = 0.0;
    for (double w : end) total += w;
    if (!(total > 0.0)) {
      throw DegenerateEvidence("observations have zero likelihood along every path");
    }
    out.push_back(DenseDistribution::from_weights(mu.radices(), std::move(end)));
  }
  return out;
}

void write_distribution_csv(std::ostream& os, const DenseDistribution& rho) {
  os << "index";
  for (int v = 0; v < rho.site_count(); ++v) os << ",x" << v;
  os << ",prob\n";
  const auto prec = os.precision(17);
  Configuration x(static_cast<std::size_t>(rho.site_count()));
  for (std::size_t i = 0; i < rho.size(); ++i) {
    rho.decode_into(i, x);
    os << i;
    for (int a : x) os << ',' << a;
    os << ',' << rho[i] << '\n';
  }
  os.precision(prec);
}

}  // namespace abpf
