#include "abpf/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "abpf/errors.hpp"

namespace abpf {

namespace {

void require_small(const DenseDistribution& mu, const FieldModel& model) {
  if (mu.radices() != model.state_sizes()) {
    throw InvalidArgument("measure alphabets do not match the model");
  }
  if (mu.size() > kMaxCorrConfigurations) {
    throw CapExceeded("correlation diagnostics enumerate at most 64 configurations",
                      mu.size(), kMaxCorrConfigurations);
  }
}

/// Conditional at v reweighted over the sites `factors` (a subset of N(v)).
std::vector<double> reweighted_conditional(const DenseDistribution& mu,
                                           const FieldModel& model, Vertex v,
                                           const VertexSet& factors,
                                           std::span<const int> x,
                                           std::span<const int> z) {
  model.require_state(x);
  model.require_state(z);
  const int r = model.state_sizes()[static_cast<std::size_t>(v)];
  Configuration xa(x.begin(), x.end());
  std::vector<double> w(static_cast<std::size_t>(r));
  double total = 0.0;
  for (int a = 0; a < r; ++a) {
    xa[static_cast<std::size_t>(v)] = a;
    double p = mu[mu.encode(xa)];
    for (Vertex u : factors) {
      if (p == 0.0) break;
      p *= model.transition_probability(u, xa, z[static_cast<std::size_t>(u)]);
    }
    w[static_cast<std::size_t>(a)] = p;
    total += p;
  }
  if (!(total > 0.0)) {
    throw DegenerateConditioning("conditioning event has probability zero");
  }
  for (double& p : w) p /= total;
  return w;
}

VertexSet restricted_neighborhood(const FieldModel& model, Vertex v,
                                  const VertexSet* block) {
  const auto nbr = model.graph().neighborhood(v);
  VertexSet out;
  for (Vertex u : nbr) {
    if (block == nullptr || std::binary_search(block->begin(), block->end(), u)) {
      out.push_back(u);
    }
  }
  return out;
}

/// 1/2 sup over z on `factors` and over x, x~ differing at v'.
double coefficient(const DenseDistribution& mu, const FieldModel& model,
                   Vertex v, Vertex v_prime, const VertexSet& factors) {
  const auto& sizes = model.state_sizes();
  const std::size_t n = sizes.size();
  // mu^v_{x,z} depends on z only through z at the factor sites.
  std::vector<int> zr;
  for (Vertex u : factors) zr.push_back(sizes[static_cast<std::size_t>(u)]);
  const std::size_t z_count = configuration_count(zr);
  Configuration z(n, 0), x(n), xt(n);
  double best = 0.0;
  for (std::size_t zi = 0; zi < z_count; ++zi) {
    std::size_t rem = zi;
    for (std::size_t q = 0; q < factors.size(); ++q) {
      z[static_cast<std::size_t>(factors[q])] =
          static_cast<int>(rem % static_cast<std::size_t>(zr[q]));
      rem /= static_cast<std::size_t>(zr[q]);
    }
    for (std::size_t xi = 0; xi < mu.size(); ++xi) {
      mu.decode_into(xi, x);
      const auto base = reweighted_conditional(mu, model, v, factors, x, z);
      xt = x;
      const int own = x[static_cast<std::size_t>(v_prime)];
      for (int b = 0; b < sizes[static_cast<std::size_t>(v_prime)]; ++b) {
        if (b <= own) continue;  // each unordered pair once
        xt[static_cast<std::size_t>(v_prime)] = b;
        const auto alt = reweighted_conditional(mu, model, v, factors, xt, z);
        double l1 = 0.0;
        for (std::size_t a = 0; a < base.size(); ++a) l1 += std::abs(base[a] - alt[a]);
        best = std::max(best, 0.5 * l1);
      }
    }
  }
  return best;
}

}  // namespace

std::vector<double> conditional_measure(const DenseDistribution& mu,
                                        const FieldModel& model, Vertex v,
                                        std::span<const int> x,
                                        std::span<const int> z) {
  require_small(mu, model);
  model.graph().require_vertex(v);
  return reweighted_conditional(mu, model, v,
                                restricted_neighborhood(model, v, nullptr), x, z);
}

std::vector<double> block_conditional_measure(const DenseDistribution& mu,
                                              const FieldModel& model, Vertex v,
                                              const VertexSet& block,
                                              std::span<const int> x,
                                              std::span<const int> z) {
  require_small(mu, model);
  model.graph().require_vertex(v);
  VertexSet sorted = block;
  std::sort(sorted.begin(), sorted.end());
  return reweighted_conditional(mu, model, v,
                                restricted_neighborhood(model, v, &sorted), x, z);
}

double corr_coefficient(const DenseDistribution& mu, const FieldModel& model,
                        Vertex v, Vertex v_prime) {
  require_small(mu, model);
  model.graph().require_vertex(v);
  model.graph().require_vertex(v_prime);
  return coefficient(mu, model, v, v_prime,
                     restricted_neighborhood(model, v, nullptr));
}

double block_corr_coefficient(const DenseDistribution& mu,
                              const FieldModel& model,
                              const Partition& partition, Vertex v,
                              Vertex v_prime) {
  require_small(mu, model);
  model.graph().require_vertex(v);
  model.graph().require_vertex(v_prime);
  if (partition.vertex_count() != model.site_count()) {
    throw InvalidArgument("partition does not match the model");
  }
  double best = 0.0;
  for (const auto& block : partition.blocks()) {
    best = std::max(best, coefficient(mu, model, v, v_prime,
                                      restricted_neighborhood(model, v, &block)));
  }
  return best;
}

double corr_from_coefficients(const FieldGraph& graph,
                              const std::vector<std::vector<double>>& c,
                              double beta, Vertex* argmax) {
  double best = -1.0;
  Vertex arg = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(c.size()); ++v) {
    double s = 0.0;
    for (Vertex w = 0; w < static_cast<Vertex>(c.size()); ++w) {
      const double cv = c[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
      if (cv == 0.0) continue;
      const Distance d = graph.distance(v, w);
      if (!is_finite(d)) throw InvalidArgument("corr needs a connected graph");
      s += std::exp(beta * static_cast<double>(d)) * cv;
    }
    if (s > best) {
      best = s;
      arg = v;
    }
  }
  if (argmax != nullptr) *argmax = arg;
  return std::max(best, 0.0);
}

CorrReport corr_measure(const DenseDistribution& mu, const FieldModel& model,
                        double beta) {
  require_small(mu, model);
  const int n = model.site_count();
  CorrReport rep;
  rep.beta = beta;
  rep.coefficients.assign(static_cast<std::size_t>(n),
                          std::vector<double>(static_cast<std::size_t>(n)));
  for (Vertex v = 0; v < n; ++v) {
    const auto factors = restricted_neighborhood(model, v, nullptr);
    for (Vertex w = 0; w < n; ++w) {
      rep.coefficients[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] =
          coefficient(mu, model, v, w, factors);
    }
  }
  rep.corr = corr_from_coefficients(model.graph(), rep.coefficients, beta, &rep.argmax);
  return rep;
}

CorrReport block_corr_measure(const DenseDistribution& mu,
                              const FieldModel& model,
                              const Partition& partition, double beta) {
  require_small(mu, model);
  if (partition.vertex_count() != model.site_count()) {
    throw InvalidArgument("partition does not match the model");
  }
  const int n = model.site_count();
  CorrReport rep;
  rep.beta = beta;
  rep.partition = partition;
  rep.coefficients.assign(static_cast<std::size_t>(n),
                          std::vector<double>(static_cast<std::size_t>(n)));
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w = 0; w < n; ++w) {
      rep.coefficients[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] =
          block_corr_coefficient(mu, model, partition, v, w);
    }
  }
  rep.corr = corr_from_coefficients(model.graph(), rep.coefficients, beta, &rep.argmax);
  return rep;
}

}  // namespace abpf
