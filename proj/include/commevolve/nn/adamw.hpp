#pragma once

#include <cstddef>
#include <vector>

#include "commevolve/nn/tensor.hpp"

namespace commevolve::nn {

struct AdamWConfig {
    double lr = 0.001;
    double weight_decay = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// AdamW with decoupled weight decay:
///   m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2
///   theta <- theta - lr * ( m_hat / (sqrt(v_hat) + eps) + wd * theta )
/// Moment buffers are laid out per parameter in the order of the first step()
/// call; later calls must pass the same parameter list.
class AdamW {
public:
    explicit AdamW(AdamWConfig cfg = {}) : cfg_(cfg) {}

    void step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads);

    std::size_t steps() const { return t_; }
    const AdamWConfig& config() const { return cfg_; }

private:
    AdamWConfig cfg_;
    std::vector<std::vector<double>> m_;
    std::vector<std::vector<double>> v_;
    std::size_t t_ = 0;
};

}  // namespace commevolve::nn
