#include "lego/learner.hpp"

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "lego/rng.hpp"

namespace lego {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using MapM = Eigen::Map<MatrixXd>;
using MapMc = Eigen::Map<const MatrixXd>;

// Offsets of each weight matrix / bias within the flat parameter vector.
// Encoder first, decoder as a contiguous tail.
struct Layout {
  struct Entry {
    int rows, cols;
    std::size_t offset;
  };
  Entry w1, b1, w2, b2, wmu, bmu, wlv, blv;  // encoder
  Entry v1, c1, v2, c2, vo, co;              // decoder
  std::size_t total = 0;
  std::size_t decoder_offset = 0;

  Layout(int d, int m, int q, int h) {
    std::size_t at = 0;
    auto put = [&at](int r, int c) {
      Entry e{r, c, at};
      at += static_cast<std::size_t>(r) * c;
      return e;
    };
    w1 = put(h, d + m);
    b1 = put(h, 1);
    w2 = put(h, h);
    b2 = put(h, 1);
    wmu = put(q, h);
    bmu = put(q, 1);
    wlv = put(q, h);
    blv = put(q, 1);
    decoder_offset = at;
    v1 = put(h, q + m);
    c1 = put(h, 1);
    v2 = put(h, h);
    c2 = put(h, 1);
    vo = put(d, h);
    co = put(d, 1);
    total = at;
  }
};

MapMc view(const std::vector<double>& p, const Layout::Entry& e) {
  return MapMc(p.data() + e.offset, e.rows, e.cols);
}

MapM view(std::vector<double>& p, const Layout::Entry& e) {
  return MapM(p.data() + e.offset, e.rows, e.cols);
}

MatrixXd relu(const MatrixXd& a) { return a.cwiseMax(0.0); }

MatrixXd relu_mask(const MatrixXd& a) {
  return (a.array() > 0.0).cast<double>().matrix();
}

struct ForwardLoss {
  LossParts parts;            // means over the batch
  std::vector<double> grads;  // d(mean loss)/d(params), empty if not requested
};

// Shared forward/backward over a batch (columns are examples). noise holds
// one q x B matrix per latent draw.
ForwardLoss run_batch(const CvaeModel& model, const MatrixXd& X, const MatrixXd& Y,
                      const std::vector<MatrixXd>& noise, bool want_grad) {
  const int d = model.data_dim, m = model.feature_dim, q = model.latent_dim, h = model.hidden;
  const int B = static_cast<int>(X.cols());
  const int nz = static_cast<int>(noise.size());
  const Layout L(d, m, q, h);
  const auto& P = model.params;

  MatrixXd U(d + m, B);
  U.topRows(d) = X;
  U.bottomRows(m) = Y;
  MatrixXd A1 = (view(P, L.w1) * U).colwise() + VectorXd(view(P, L.b1));
  MatrixXd H1 = relu(A1);
  MatrixXd A2 = (view(P, L.w2) * H1).colwise() + VectorXd(view(P, L.b2));
  MatrixXd H2 = relu(A2);
  MatrixXd MU = (view(P, L.wmu) * H2).colwise() + VectorXd(view(P, L.bmu));
  MatrixXd LV = (view(P, L.wlv) * H2).colwise() + VectorXd(view(P, L.blv));

  double kl_sum = 0.5 * (MU.array().square() + LV.array().exp() - 1.0 - LV.array()).sum();
  MatrixXd SIG = (LV * 0.5).array().exp().matrix();

  ForwardLoss out;
  std::vector<double> g;
  if (want_grad) g.assign(L.total, 0.0);
  MatrixXd dMU = MatrixXd::Zero(q, B), dLV = MatrixXd::Zero(q, B);
  double recon_sum = 0.0;

  for (int l = 0; l < nz; ++l) {
    MatrixXd Z = MU + SIG.cwiseProduct(noise[l]);
    MatrixXd V(q + m, B);
    V.topRows(q) = Z;
    V.bottomRows(m) = Y;
    MatrixXd C1 = (view(P, L.v1) * V).colwise() + VectorXd(view(P, L.c1));
    MatrixXd G1 = relu(C1);
    MatrixXd C2 = (view(P, L.v2) * G1).colwise() + VectorXd(view(P, L.c2));
    MatrixXd G2 = relu(C2);
    MatrixXd XH = (view(P, L.vo) * G2).colwise() + VectorXd(view(P, L.co));
    MatrixXd D = XH - X;
    recon_sum += D.array().square().sum() / (d * nz);
    if (!want_grad) continue;

    MatrixXd dXH = D * (2.0 / (d * nz));
    view(g, L.vo) += dXH * G2.transpose();
    view(g, L.co) += dXH.rowwise().sum();
    MatrixXd dG2 = view(P, L.vo).transpose() * dXH;
    MatrixXd dC2 = dG2.cwiseProduct(relu_mask(C2));
    view(g, L.v2) += dC2 * G1.transpose();
    view(g, L.c2) += dC2.rowwise().sum();
    MatrixXd dG1 = view(P, L.v2).transpose() * dC2;
    MatrixXd dC1 = dG1.cwiseProduct(relu_mask(C1));
    view(g, L.v1) += dC1 * V.transpose();
    view(g, L.c1) += dC1.rowwise().sum();
    MatrixXd dZ = (view(P, L.v1).transpose() * dC1).topRows(q);
    dMU += dZ;
    dLV += dZ.cwiseProduct(noise[l]).cwiseProduct(SIG) * 0.5;
  }

  out.parts.recon = recon_sum / B;
  out.parts.kl = kl_sum / B;
  out.parts.total = out.parts.recon + model.lambda * out.parts.kl;
  if (!want_grad) return out;

  dMU += model.lambda * MU;
  dLV += (model.lambda * 0.5) * (LV.array().exp() - 1.0).matrix();
  view(g, L.wmu) += dMU * H2.transpose();
  view(g, L.bmu) += dMU.rowwise().sum();
  view(g, L.wlv) += dLV * H2.transpose();
  view(g, L.blv) += dLV.rowwise().sum();
  MatrixXd dH2 = view(P, L.wmu).transpose() * dMU + view(P, L.wlv).transpose() * dLV;
  MatrixXd dA2 = dH2.cwiseProduct(relu_mask(A2));
  view(g, L.w2) += dA2 * H1.transpose();
  view(g, L.b2) += dA2.rowwise().sum();
  MatrixXd dH1 = view(P, L.w2).transpose() * dA2;
  MatrixXd dA1 = dH1.cwiseProduct(relu_mask(A1));
  view(g, L.w1) += dA1 * U.transpose();
  view(g, L.b1) += dA1.rowwise().sum();

  for (double& gv : g) gv /= B;
  out.grads = std::move(g);
  return out;
}

VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> from_vec(const VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

int default_latent_dim(int data_dim) { return data_dim <= 5 ? 3 : 5; }

CvaeModel make_cvae(int data_dim, int feature_dim, int latent_dim, int hidden, double lambda,
                    std::uint64_t seed) {
  if (data_dim < 1 || feature_dim < 1 || latent_dim < 1 || hidden < 1)
    throw std::invalid_argument("make_cvae: dimensions must be positive");
  CvaeModel m;
  m.data_dim = data_dim;
  m.feature_dim = feature_dim;
  m.latent_dim = latent_dim;
  m.hidden = hidden;
  m.lambda = lambda;
  m.seed = seed;
  Layout L(data_dim, feature_dim, latent_dim, hidden);
  m.params.assign(L.total, 0.0);
  Rng rng(Rng::derive(seed, 0x1417));
  auto fill = [&](const Layout::Entry& e, double std) {
    MapM w = view(m.params, e);
    for (int c = 0; c < w.cols(); ++c)
      for (int r = 0; r < w.rows(); ++r) w(r, c) = rng.normal() * std;
  };
  // He init on ReLU layers, Xavier on the linear heads; biases stay zero.
  fill(L.w1, std::sqrt(2.0 / (data_dim + feature_dim)));
  fill(L.w2, std::sqrt(2.0 / hidden));
  fill(L.wmu, std::sqrt(1.0 / hidden));
  fill(L.wlv, std::sqrt(1.0 / hidden));
  fill(L.v1, std::sqrt(2.0 / (latent_dim + feature_dim)));
  fill(L.v2, std::sqrt(2.0 / hidden));
  fill(L.vo, std::sqrt(1.0 / hidden));
  return m;
}

std::pair<std::vector<double>, std::vector<double>> encode(const CvaeModel& m,
                                                           const std::vector<double>& x,
                                                           const std::vector<double>& y) {
  if (static_cast<int>(x.size()) != m.data_dim || static_cast<int>(y.size()) != m.feature_dim)
    throw std::invalid_argument("encode: input dimension mismatch");
  Layout L(m.data_dim, m.feature_dim, m.latent_dim, m.hidden);
  VectorXd u(m.data_dim + m.feature_dim);
  u << to_vec(x), to_vec(y);
  VectorXd h1 = relu(view(m.params, L.w1) * u + VectorXd(view(m.params, L.b1)));
  VectorXd h2 = relu(view(m.params, L.w2) * h1 + VectorXd(view(m.params, L.b2)));
  VectorXd mu = view(m.params, L.wmu) * h2 + VectorXd(view(m.params, L.bmu));
  VectorXd lv = view(m.params, L.wlv) * h2 + VectorXd(view(m.params, L.blv));
  return {from_vec(mu), from_vec(lv)};
}

std::vector<double> decode(const CvaeModel& m, const std::vector<double>& z,
                           const std::vector<double>& y) {
  if (static_cast<int>(z.size()) != m.latent_dim || static_cast<int>(y.size()) != m.feature_dim)
    throw std::invalid_argument("decode: input dimension mismatch");
  Layout L(m.data_dim, m.feature_dim, m.latent_dim, m.hidden);
  VectorXd v(m.latent_dim + m.feature_dim);
  v << to_vec(z), to_vec(y);
  VectorXd g1 = relu(view(m.params, L.v1) * v + VectorXd(view(m.params, L.c1)));
  VectorXd g2 = relu(view(m.params, L.v2) * g1 + VectorXd(view(m.params, L.c2)));
  VectorXd xh = view(m.params, L.vo) * g2 + VectorXd(view(m.params, L.co));
  return from_vec(xh);
}

double kl_divergence(const std::vector<double>& mu, const std::vector<double>& logvar) {
  if (mu.size() != logvar.size())
    throw std::invalid_argument("kl_divergence: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    s += mu[i] * mu[i] + std::exp(logvar[i]) - 1.0 - logvar[i];
  return 0.5 * s;
}

namespace {

std::vector<MatrixXd> noise_to_matrices(const CvaeModel& m,
                                        const std::vector<std::vector<double>>& noise) {
  if (noise.empty()) throw std::invalid_argument("elbo: need at least one latent draw");
  std::vector<MatrixXd> eps;
  for (const auto& draw : noise) {
    if (static_cast<int>(draw.size()) != m.latent_dim)
      throw std::invalid_argument("elbo: noise draw has wrong dimension");
    eps.push_back(Eigen::Map<const MatrixXd>(draw.data(), m.latent_dim, 1));
  }
  return eps;
}

}  // namespace

LossParts elbo_loss(const CvaeModel& m, const std::vector<double>& x,
                    const std::vector<double>& y,
                    const std::vector<std::vector<double>>& noise) {
  MatrixXd X = Eigen::Map<const MatrixXd>(x.data(), m.data_dim, 1);
  MatrixXd Y = Eigen::Map<const MatrixXd>(y.data(), m.feature_dim, 1);
  return run_batch(m, X, Y, noise_to_matrices(m, noise), false).parts;
}

std::pair<LossParts, std::vector<double>> elbo_grad(const CvaeModel& m,
                                                    const std::vector<double>& x,
                                                    const std::vector<double>& y,
                                                    const std::vector<std::vector<double>>& noise) {
  MatrixXd X = Eigen::Map<const MatrixXd>(x.data(), m.data_dim, 1);
  MatrixXd Y = Eigen::Map<const MatrixXd>(y.data(), m.feature_dim, 1);
  ForwardLoss fl = run_batch(m, X, Y, noise_to_matrices(m, noise), true);
  return {fl.parts, std::move(fl.grads)};
}

TrainResult train_cvae(const std::vector<std::pair<NodeSet, FeatureVector>>& dataset,
                       const TrainConfig& cfg, std::uint64_t seed) {
  if (dataset.empty()) throw std::invalid_argument("train_cvae: empty dataset");
  for (std::size_t i = 0; i < dataset.size(); ++i)
    if (dataset[i].first.nodes.empty())
      throw std::invalid_argument("train_cvae: node set " + std::to_string(i) + " is empty");
  const int d = static_cast<int>(dataset[0].first.nodes[0].size());
  const int m = static_cast<int>(dataset[0].second.size());

  std::size_t total = 0;
  for (const auto& [ns, y] : dataset) {
    if (static_cast<int>(y.size()) != m)
      throw std::invalid_argument("train_cvae: inconsistent feature dimension");
    for (const auto& x : ns.nodes) {
      if (static_cast<int>(x.size()) != d)
        throw std::invalid_argument("train_cvae: inconsistent node dimension");
      ++total;
    }
  }
  MatrixXd X(d, total), Y(m, total);
  std::size_t col = 0;
  for (const auto& [ns, y] : dataset) {
    for (const auto& x : ns.nodes) {
      X.col(col) = to_vec(x);
      Y.col(col) = to_vec(y);
      ++col;
    }
  }

  int q = cfg.latent_dim > 0 ? cfg.latent_dim : default_latent_dim(d);
  TrainResult res;
  res.model = make_cvae(d, m, q, cfg.hidden, cfg.lambda, Rng::derive(seed, 0xa11ce));
  CvaeModel& model = res.model;
  Layout L(d, m, q, cfg.hidden);

  std::vector<double> adam_m(L.total, 0.0), adam_v(L.total, 0.0);
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kAdamEps = 1e-8;
  long step = 0;
  Rng rng(Rng::derive(seed, 0x7ea1));

  std::vector<int> perm(total);
  for (std::size_t i = 0; i < total; ++i) perm[i] = static_cast<int>(i);

  const int P = static_cast<int>(total);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (int i = P - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
    double recon_sum = 0.0, kl_sum = 0.0;
    for (int begin = 0; begin < P; begin += cfg.batch_size) {
      int B = std::min(cfg.batch_size, P - begin);
      MatrixXd Xb(d, B), Yb(m, B);
      for (int c = 0; c < B; ++c) {
        Xb.col(c) = X.col(perm[begin + c]);
        Yb.col(c) = Y.col(perm[begin + c]);
      }
      std::vector<MatrixXd> eps(cfg.latent_samples, MatrixXd(q, B));
      for (auto& E : eps)
        for (int c = 0; c < B; ++c)
          for (int r = 0; r < q; ++r) E(r, c) = rng.normal();

      ForwardLoss fl = run_batch(model, Xb, Yb, eps, true);
      recon_sum += fl.parts.recon * B;
      kl_sum += fl.parts.kl * B;

      ++step;
      double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
      double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
      for (std::size_t i = 0; i < L.total; ++i) {
        double gv = fl.grads[i];
        adam_m[i] = kBeta1 * adam_m[i] + (1.0 - kBeta1) * gv;
        adam_v[i] = kBeta2 * adam_v[i] + (1.0 - kBeta2) * gv * gv;
        model.params[i] -=
            cfg.learning_rate * (adam_m[i] / bc1) / (std::sqrt(adam_v[i] / bc2) + kAdamEps);
      }
    }
    LossRow row;
    row.epoch = epoch;
    row.recon = recon_sum / P;
    row.kl = kl_sum / P;
    row.total = row.recon + model.lambda * row.kl;
    res.curve.push_back(row);
  }
  return res;
}

std::vector<Config> sample_cvae(const CvaeModel& m, const std::vector<double>& y, int n,
                                std::uint64_t seed) {
  if (static_cast<int>(y.size()) != m.feature_dim)
    throw std::invalid_argument("sample_cvae: feature dimension mismatch");
  if (n < 0) throw std::invalid_argument("sample_cvae: n must be >= 0");
  Layout L(m.data_dim, m.feature_dim, m.latent_dim, m.hidden);
  Rng rng(Rng::derive(seed, 0x5a3));
  MatrixXd Z(m.latent_dim, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < m.latent_dim; ++r) Z(r, c) = rng.normal();
  MatrixXd V(m.latent_dim + m.feature_dim, n);
  V.topRows(m.latent_dim) = Z;
  V.bottomRows(m.feature_dim) = to_vec(y).replicate(1, n);
  const auto& P = m.params;
  MatrixXd G1 = relu((view(P, L.v1) * V).colwise() + VectorXd(view(P, L.c1)));
  MatrixXd G2 = relu((view(P, L.v2) * G1).colwise() + VectorXd(view(P, L.c2)));
  MatrixXd XH = (view(P, L.vo) * G2).colwise() + VectorXd(view(P, L.co));
  std::vector<Config> out;
  out.reserve(n);
  for (int c = 0; c < n; ++c) {
    Config q(m.data_dim);
    for (int r = 0; r < m.data_dim; ++r) q[r] = std::clamp(XH(r, c), 0.0, 1.0);
    out.push_back(std::move(q));
  }
  return out;
}

namespace {
constexpr char kModelMagic[8] = {'L', 'G', 'C', 'V', 'A', 'E', '0', '1'};
}

void save_model(const CvaeModel& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_model: cannot open " + path);
  f.write(kModelMagic, sizeof(kModelMagic));
  std::int64_t dims[4] = {m.data_dim, m.feature_dim, m.latent_dim, m.hidden};
  f.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  f.write(reinterpret_cast<const char*>(&m.lambda), sizeof(m.lambda));
  f.write(reinterpret_cast<const char*>(&m.seed), sizeof(m.seed));
  std::uint64_t count = m.params.size();
  f.write(reinterpret_cast<const char*>(&count), sizeof(count));
  f.write(reinterpret_cast<const char*>(m.params.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!f) throw std::runtime_error("save_model: write failed for " + path);
}

CvaeModel load_model(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_model: cannot open " + path);
  char magic[8];
  f.read(magic, sizeof(magic));
  if (!f || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0)
    throw std::runtime_error("load_model: bad magic in " + path);
  std::int64_t dims[4];
  f.read(reinterpret_cast<char*>(dims), sizeof(dims));
  CvaeModel m;
  m.data_dim = static_cast<int>(dims[0]);
  m.feature_dim = static_cast<int>(dims[1]);
  m.latent_dim = static_cast<int>(dims[2]);
  m.hidden = static_cast<int>(dims[3]);
  f.read(reinterpret_cast<char*>(&m.lambda), sizeof(m.lambda));
  f.read(reinterpret_cast<char*>(&m.seed), sizeof(m.seed));
  std::uint64_t count = 0;
  f.read(reinterpret_cast<char*>(&count), sizeof(count));
  Layout L(m.data_dim, m.feature_dim, m.latent_dim, m.hidden);
  if (!f || count != L.total) throw std::runtime_error("load_model: corrupt file " + path);
  m.params.resize(count);
  f.read(reinterpret_cast<char*>(m.params.data()),
         static_cast<std::streamsize>(count * sizeof(double)));
  if (!f) throw std::runtime_error("load_model: truncated file " + path);
  return m;
}

void write_loss_csv(const std::vector<LossRow>& curve, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_loss_csv: cannot open " + path);
  f << "epoch,recon,kl,total\n";
  char buf[128];
  for (const LossRow& r : curve) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", r.epoch, r.recon, r.kl, r.total);
    f << buf;
  }
}

}  // namespace lego
