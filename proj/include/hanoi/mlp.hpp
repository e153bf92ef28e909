#pragma once

#include <Eigen/Core>

#include <cmath>
#include <random>

#include "hanoi/error.hpp"

namespace hanoi {

enum class OutputActivation { linear, sigmoid };

/// Parameter-shaped container; used for weights, gradients and Adam moments.
template <typename Scalar>
struct MlpParams {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix w1;  // hidden x inputs
  Vector b1;
  Matrix w2;  // outputs x hidden
  Vector b2;

  static MlpParams zeros_like(const MlpParams& p) {
    return {Matrix::Zero(p.w1.rows(), p.w1.cols()), Vector::Zero(p.b1.size()),
            Matrix::Zero(p.w2.rows(), p.w2.cols()), Vector::Zero(p.b2.size())};
  }
};

/// One hidden ReLU layer. Batches are column-major: one sample per column.
template <typename Scalar>
class Mlp {
public:
  using Params = MlpParams<Scalar>;
  using Matrix = typename Params::Matrix;
  using Vector = typename Params::Vector;

  struct Cache {
    Matrix hidden_pre;
    Matrix hidden;
    Matrix out;
  };

  Mlp() = default;

  template <typename Rng>
  Mlp(int inputs, int hidden, int outputs, OutputActivation activation, Rng& rng)
      : activation_(activation) {
    if (inputs <= 0 || hidden <= 0 || outputs <= 0) throw InvalidArgument("layer sizes must be positive");
    params_.w1 = he_init(hidden, inputs, rng);
    params_.b1 = Vector::Zero(hidden);
    params_.w2 = he_init(outputs, hidden, rng);
    params_.b2 = Vector::Zero(outputs);
  }

  int inputs() const noexcept { return static_cast<int>(params_.w1.cols()); }
  int outputs() const noexcept { return static_cast<int>(params_.w2.rows()); }
  OutputActivation activation() const noexcept { return activation_; }

  const Params& params() const noexcept { return params_; }
  Params& params() noexcept { return params_; }

  Matrix forward(const Matrix& x) const {
    Cache c;
    forward(x, c);
    return std::move(c.out);
  }

  const Matrix& forward(const Matrix& x, Cache& c) const {
    c.hidden_pre = (params_.w1 * x).colwise() + params_.b1;
    c.hidden = c.hidden_pre.cwiseMax(Scalar(0));
    c.out = (params_.w2 * c.hidden).colwise() + params_.b2;
    if (activation_ == OutputActivation::sigmoid) {
      c.out = c.out.unaryExpr([](Scalar v) { return Scalar(1) / (Scalar(1) + std::exp(-v)); });
    }
    return c.out;
  }

  /// Gradients given dL/d(output pre-activation). For sigmoid + binary
  /// cross-entropy that is simply (p - target) / batch.
  Params gradients(const Matrix& x, const Cache& c, const Matrix& d_out) const {
    Params g;
    g.w2 = d_out * c.hidden.transpose();
    g.b2 = d_out.rowwise().sum();
    Matrix d_hidden = (params_.w2.transpose() * d_out).cwiseProduct(
        (c.hidden_pre.array() > Scalar(0)).template cast<Scalar>().matrix());
    g.w1 = d_hidden * x.transpose();
    g.b1 = d_hidden.rowwise().sum();
    return g;
  }

private:
  template <typename Rng>
  static Matrix he_init(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / cols));
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = static_cast<Scalar>(normal(rng));
    return m;
  }

  Params params_;
  OutputActivation activation_ = OutputActivation::linear;
};

template <typename Scalar>
class Adam {
public:
  using Params = MlpParams<Scalar>;

  Adam() = default;
  Adam(const Params& shape, Scalar learning_rate)
      : lr_(learning_rate), m_(Params::zeros_like(shape)), v_(Params::zeros_like(shape)) {}

  void step(Params& p, const Params& g) {
    ++t_;
    const Scalar c1 = Scalar(1) - std::pow(beta1_, Scalar(t_));
    const Scalar c2 = Scalar(1) - std::pow(beta2_, Scalar(t_));
    update(p.w1, g.w1, m_.w1, v_.w1, c1, c2);
    update(p.b1, g.b1, m_.b1, v_.b1, c1, c2);
    update(p.w2, g.w2, m_.w2, v_.w2, c1, c2);
    update(p.b2, g.b2, m_.b2, v_.b2, c1, c2);
  }

private:
  template <typename Derived>
  void update(Eigen::MatrixBase<Derived>& w, const Eigen::MatrixBase<Derived>& g,
              Eigen::MatrixBase<Derived>& m, Eigen::MatrixBase<Derived>& v, Scalar c1, Scalar c2) {
    m = beta1_ * m + (Scalar(1) - beta1_) * g;
    v = beta2_ * v + (Scalar(1) - beta2_) * g.cwiseProduct(g);
    w.array() -= lr_ * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
  }

  Scalar lr_ = Scalar(1e-3);
  Scalar beta1_ = Scalar(0.9);
  Scalar beta2_ = Scalar(0.999);
  Scalar eps_ = Scalar(1e-8);
  long t_ = 0;
  Params m_;
  Params v_;
};

}  // namespace hanoi
