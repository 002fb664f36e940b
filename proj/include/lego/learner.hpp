#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lego/oracles.hpp"
#include "lego/worlds.hpp"

namespace lego {

// Conditional variational autoencoder over planning nodes. Both networks are
// two ReLU hidden layers with linear heads:
//   encoder: [x; y] -> mu, logvar   (latent posterior)
//   decoder: [z; y] -> xhat
// All parameters live in one flat vector; layer views are computed from the
// dimensions, so the decoder occupies a fixed contiguous tail.
struct CvaeModel {
  int data_dim = 0;     // d, configuration dimension
  int feature_dim = 0;  // m, conditioning vector length
  int latent_dim = 0;   // q
  int hidden = 512;
  double lambda = 2e-4;
  std::uint64_t seed = 0;
  std::vector<double> params;
};

// Latent dimension rule: 3 for configuration dims up to 5, else 5.
int default_latent_dim(int data_dim);

CvaeModel make_cvae(int data_dim, int feature_dim, int latent_dim, int hidden, double lambda,
                    std::uint64_t seed);

std::pair<std::vector<double>, std::vector<double>> encode(const CvaeModel& m,
                                                           const std::vector<double>& x,
                                                           const std::vector<double>& y);
std::vector<double> decode(const CvaeModel& m, const std::vector<double>& z,
                           const std::vector<double>& y);

// KL(N(mu, diag exp(logvar)) || N(0, I)), closed form, always >= 0.
double kl_divergence(const std::vector<double>& mu, const std::vector<double>& logvar);

struct LossParts {
  double recon = 0.0;
  double kl = 0.0;
  double total = 0.0;
};

// Reconstruction is mean squared error averaged over the given latent noise
// draws (one row per draw, latent_dim entries each); total = recon + lambda*kl.
LossParts elbo_loss(const CvaeModel& m, const std::vector<double>& x,
                    const std::vector<double>& y,
                    const std::vector<std::vector<double>>& noise);

// Loss plus d(loss)/d(params) for a single example under frozen noise.
std::pair<LossParts, std::vector<double>> elbo_grad(const CvaeModel& m,
                                                    const std::vector<double>& x,
                                                    const std::vector<double>& y,
                                                    const std::vector<std::vector<double>>& noise);

struct TrainConfig {
  int epochs = 200;
  int batch_size = 64;
  double learning_rate = 1e-3;
  double lambda = 2e-4;
  int latent_samples = 1;  // reparameterized draws per example per step
  int hidden = 512;
  int latent_dim = 0;  // 0 = default_latent_dim rule
};

struct LossRow {
  int epoch = 0;
  double recon = 0.0;
  double kl = 0.0;
  double total = 0.0;
};

struct TrainResult {
  CvaeModel model;
  std::vector<LossRow> curve;
};

// Flattens (NodeSet, features) pairs into per-node training examples and runs
// minibatch Adam. Empty node sets are rejected; filter them out beforehand.
TrainResult train_cvae(const std::vector<std::pair<NodeSet, FeatureVector>>& dataset,
                       const TrainConfig& cfg, std::uint64_t seed);

// Decoder-only: z ~ N(0, I), outputs clamped to the unit cube. Never touches
// encoder parameters.
std::vector<Config> sample_cvae(const CvaeModel& m, const std::vector<double>& y, int n,
                                std::uint64_t seed);

void save_model(const CvaeModel& m, const std::string& path);
CvaeModel load_model(const std::string& path);

void write_loss_csv(const std::vector<LossRow>& curve, const std::string& path);

}  // namespace lego
