#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lego/graph.hpp"
#include "lego/learner.hpp"
#include "lego/worlds.hpp"

namespace lego {

enum class SamplerKind { Halton, Gaussian, Bridge, LearnedSP, LearnedLego };

std::string sampler_name(SamplerKind k);
SamplerKind sampler_from_name(const std::string& name);
bool sampler_is_learned(SamplerKind k);

struct SamplerParams {
  double sigma = 0.05;              // Gaussian / Bridge perturbation scale
  const CvaeModel* model = nullptr; // learned kinds
  int grid_res = 10;                // occupancy resolution for learned features
};

struct DrawResult {
  std::vector<Config> samples;
  double elapsed_ms = 0.0;
  bool timed_out = false;
};

// Draws up to n samples. Halton emits the first n sequence points as-is;
// Gaussian keeps the free config of a straddling pair; Bridge keeps free
// midpoints of colliding pairs; learned kinds decode from the problem
// features. Rejection samplers stop early at the timeout.
DrawResult draw_samples(SamplerKind kind, const PlanningProblem& p, int n, double timeout_ms,
                        std::uint64_t seed, const SamplerParams& params = {});

struct RoadmapResult {
  Graph graph;
  int n_sparse = 0;    // vertices taken from the constant sparse sequence
  int n_samples = 0;   // sampler vertices composed in
  bool padded = false; // sampler ran short; Halton continuation used as filler
};

// Mixes ceil(p*n_total) leading vertices of the constant sparse Halton graph
// with floor((1-p)*n_total) sampler points (composed, tagged Added). Shortfall
// in samples is padded with the Halton continuation and flagged. gamma scales
// the connection radius of the assembled roadmap.
RoadmapResult assemble_roadmap(const Graph& sparse, const std::vector<Config>& samples, double p,
                               int n_total, double gamma = 1.5);

}  // namespace lego
