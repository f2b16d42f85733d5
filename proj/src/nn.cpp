#include "pointerlab/nn.hpp"

#include <cmath>

namespace pointerlab {

Linear::Linear(int in, int out, Rng& rng, double weight_scale) {
    double s = weight_scale > 0.0 ? weight_scale : std::sqrt(2.0 / (in + out));
    std::vector<double> w(static_cast<size_t>(in) * out);
    for (auto& v : w) v = rng.normal(0.0, s);
    weight = Tensor::from_data({out, in}, std::move(w), true);
    bias = Tensor::zeros({out}, true);
}

void Linear::collect(ParamMap& params, const std::string& prefix) const {
    params.add(prefix + ".weight", weight);
    params.add(prefix + ".bias", bias);
}

Conv2d::Conv2d(int cin, int cout, int k, int stride_, int pad_, Rng& rng)
    : stride(stride_), pad(pad_) {
    double s = std::sqrt(2.0 / (cin * k * k));
    std::vector<double> w(static_cast<size_t>(cout) * cin * k * k);
    for (auto& v : w) v = rng.normal(0.0, s);
    weight = Tensor::from_data({cout, cin, k, k}, std::move(w), true);
    bias = Tensor::zeros({cout}, true);
}

void Conv2d::collect(ParamMap& params, const std::string& prefix) const {
    params.add(prefix + ".weight", weight);
    params.add(prefix + ".bias", bias);
}

LayerNorm::LayerNorm(int dim_) : dim(dim_) {
    gamma = Tensor::full({dim}, 1.0, true);
    beta = Tensor::zeros({dim}, true);
}

void LayerNorm::collect(ParamMap& params, const std::string& prefix) const {
    params.add(prefix + ".gamma", gamma);
    params.add(prefix + ".beta", beta);
}

Adam::Adam(std::vector<Tensor> params, double lr, double beta1, double beta2, double eps)
    : params_(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
    for (const auto& p : params_) {
        m_.emplace_back(p.size(), 0.0);
        v_.emplace_back(p.size(), 0.0);
    }
}

double Adam::current_lr() const {
    if (decay_step_ <= 0) return lr_;
    return lr_ * std::pow(decay_gamma_, static_cast<double>(t_ / decay_step_));
}

void Adam::step() {
    const double lr = current_lr();
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (size_t pi = 0; pi < params_.size(); ++pi) {
        auto& p = params_[pi];
        auto& grad = p.grad_mut();
        if (grad.size() != p.values().size()) continue;  // never touched by backward
        auto& m = m_[pi];
        auto& v = v_[pi];
        double* data = p.data();
        for (size_t i = 0; i < grad.size(); ++i) {
            double g = grad[i];
            m[i] = beta1_ * m[i] + (1.0 - beta1_) * g;
            v[i] = beta2_ * v[i] + (1.0 - beta2_) * g * g;
            double mhat = m[i] / bc1;
            double vhat = v[i] / bc2;
            data[i] -= lr * mhat / (std::sqrt(vhat) + eps_);
            grad[i] = 0.0;
        }
    }
}

}  // namespace pointerlab
