#pragma once

#include <map>
#include <string>
#include <vector>

#include "pointerlab/tensor.hpp"

namespace pointerlab {

// Named parameter registry; the checkpoint container serializes it.
struct ParamMap {
    std::vector<std::pair<std::string, Tensor>> items;

    void add(const std::string& name, const Tensor& t) { items.emplace_back(name, t); }
    std::vector<Tensor> tensors() const {
        std::vector<Tensor> out;
        out.reserve(items.size());
        for (const auto& [_, t] : items) out.push_back(t);
        return out;
    }
};

struct Linear {
    Tensor weight;  // (out, in)
    Tensor bias;    // (out)

    Linear() = default;
    Linear(int in, int out, Rng& rng, double weight_scale = -1.0);
    Tensor forward(const Tensor& x) const { return linear(x, weight, bias); }
    void collect(ParamMap& params, const std::string& prefix) const;
};

struct Conv2d {
    Tensor weight;  // (cout, cin, k, k)
    Tensor bias;    // (cout)
    int stride = 1;
    int pad = 1;

    Conv2d() = default;
    Conv2d(int cin, int cout, int k, int stride, int pad, Rng& rng);
    Tensor forward(const Tensor& x) const { return conv2d(x, weight, bias, stride, pad); }
    void collect(ParamMap& params, const std::string& prefix) const;
};

struct LayerNorm {
    Tensor gamma;
    Tensor beta;
    int dim = 0;

    LayerNorm() = default;
    explicit LayerNorm(int dim);
    Tensor forward(const Tensor& x) const { return layer_norm_rows(x, gamma, beta, dim); }
    void collect(ParamMap& params, const std::string& prefix) const;
};

// Adam with optional step-decay schedule (lr * gamma^floor(t/step)).
class Adam {
public:
    Adam(std::vector<Tensor> params, double lr, double beta1 = 0.9, double beta2 = 0.999,
         double eps = 1e-8);

    void set_step_decay(double gamma, int step_size) {
        decay_gamma_ = gamma;
        decay_step_ = step_size;
    }
    double current_lr() const;
    // applies grads accumulated on the parameter nodes, then zeroes them
    void step();

private:
    std::vector<Tensor> params_;
    std::vector<std::vector<double>> m_, v_;
    double lr_, beta1_, beta2_, eps_;
    double decay_gamma_ = 1.0;
    int decay_step_ = 0;
    int64_t t_ = 0;
};

}  // namespace pointerlab
