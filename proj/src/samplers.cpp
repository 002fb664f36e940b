#include "lego/samplers.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "lego/rng.hpp"

namespace lego {

std::string sampler_name(SamplerKind k) {
  switch (k) {
    case SamplerKind::Halton: return "halton";
    case SamplerKind::Gaussian: return "gaussian";
    case SamplerKind::Bridge: return "bridge";
    case SamplerKind::LearnedSP: return "sp";
    case SamplerKind::LearnedLego: return "lego";
  }
  throw std::invalid_argument("unknown sampler kind");
}

SamplerKind sampler_from_name(const std::string& name) {
  if (name == "halton") return SamplerKind::Halton;
  if (name == "gaussian") return SamplerKind::Gaussian;
  if (name == "bridge") return SamplerKind::Bridge;
  if (name == "sp") return SamplerKind::LearnedSP;
  if (name == "lego") return SamplerKind::LearnedLego;
  throw std::invalid_argument("unknown sampler name: " + name);
}

bool sampler_is_learned(SamplerKind k) {
  return k == SamplerKind::LearnedSP || k == SamplerKind::LearnedLego;
}

namespace {

bool in_unit_cube(const Config& q) {
  for (double v : q)
    if (v < 0.0 || v > 1.0) return false;
  return true;
}

}  // namespace

DrawResult draw_samples(SamplerKind kind, const PlanningProblem& p, int n, double timeout_ms,
                        std::uint64_t seed, const SamplerParams& params) {
  if (n < 0) throw std::invalid_argument("draw_samples: n must be >= 0");
  const int d = p.world.dim;
  DrawResult out;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  switch (kind) {
    case SamplerKind::Halton:
      out.samples = halton_points(n, d);
      break;

    case SamplerKind::Gaussian: {
      Rng rng(Rng::derive(seed, 0x9a55));
      while (static_cast<int>(out.samples.size()) < n) {
        if (elapsed() > timeout_ms) {
          out.timed_out = true;
          break;
        }
        Config q1(d), q2(d);
        for (int i = 0; i < d; ++i) q1[i] = rng.uniform();
        for (int i = 0; i < d; ++i) q2[i] = q1[i] + params.sigma * rng.normal();
        if (!in_unit_cube(q2)) continue;
        bool f1 = is_config_free(p.world, q1);
        bool f2 = is_config_free(p.world, q2);
        if (f1 != f2) out.samples.push_back(f1 ? q1 : q2);
      }
      break;
    }

    case SamplerKind::Bridge: {
      Rng rng(Rng::derive(seed, 0xb41d));
      while (static_cast<int>(out.samples.size()) < n) {
        if (elapsed() > timeout_ms) {
          out.timed_out = true;
          break;
        }
        Config q1(d), q2(d);
        for (int i = 0; i < d; ++i) q1[i] = rng.uniform();
        if (is_config_free(p.world, q1)) continue;
        for (int i = 0; i < d; ++i) q2[i] = q1[i] + params.sigma * rng.normal();
        if (!in_unit_cube(q2) || is_config_free(p.world, q2)) continue;
        Config mid = lerp(q1, q2, 0.5);
        if (is_config_free(p.world, mid)) out.samples.push_back(std::move(mid));
      }
      break;
    }

    case SamplerKind::LearnedSP:
    case SamplerKind::LearnedLego: {
      if (!params.model)
        throw std::invalid_argument("draw_samples: learned sampler needs a model");
      FeatureVector y = extract_features(p, params.grid_res);
      out.samples = sample_cvae(*params.model, y, n, seed);
      break;
    }
  }

  out.elapsed_ms = elapsed();
  return out;
}

RoadmapResult assemble_roadmap(const Graph& sparse, const std::vector<Config>& samples, double p,
                               int n_total, double gamma) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("assemble_roadmap: p must be in [0, 1]");
  if (n_total < 2) throw std::invalid_argument("assemble_roadmap: need a budget of at least 2");
  const int n_sparse = static_cast<int>(std::ceil(p * n_total));
  const int n_samp = n_total - n_sparse;
  if (n_sparse > sparse.size())
    throw std::invalid_argument("assemble_roadmap: sparse graph smaller than ceil(p * n)");
  const int d = sparse.dim();

  RoadmapResult res;
  res.n_sparse = n_sparse;
  std::vector<Config> base(sparse.vertices.begin(), sparse.vertices.begin() + n_sparse);
  res.graph = build_rdisc_graph(base, connect_radius(n_total, d, gamma));

  std::vector<Config> extra;
  extra.reserve(n_samp);
  for (int i = 0; i < n_samp && i < static_cast<int>(samples.size()); ++i)
    extra.push_back(samples[i]);
  res.n_samples = static_cast<int>(extra.size());
  if (static_cast<int>(extra.size()) < n_samp) {
    res.padded = true;
    // Continue the Halton sequence past the sparse prefix, exactly the points
    // a pure Halton roadmap of this budget would add next.
    for (std::uint64_t idx = n_sparse + 1; static_cast<int>(extra.size()) < n_samp; ++idx)
      extra.push_back(halton_point(idx, d));
  }
  if (!extra.empty()) res.graph = compose_vertices(res.graph, extra);
  return res;
}

}  // namespace lego
