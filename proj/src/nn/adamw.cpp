#include "commevolve/nn/adamw.hpp"

#include <cmath>
#include <stdexcept>

namespace commevolve::nn {

void AdamW::step(const std::vector<Tensor*>& params,
                 const std::vector<const Tensor*>& grads) {
    if (params.size() != grads.size()) {
        throw std::invalid_argument("adamw: parameter/gradient count mismatch");
    }
    if (m_.empty()) {
        m_.resize(params.size());
        v_.resize(params.size());
        for (std::size_t i = 0; i < params.size(); ++i) {
            m_[i].assign(params[i]->size(), 0.0);
            v_[i].assign(params[i]->size(), 0.0);
        }
    }
    if (m_.size() != params.size()) {
        throw std::invalid_argument("adamw: parameter list changed between steps");
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        Tensor& theta = *params[i];
        const Tensor& g = *grads[i];
        if (theta.size() != g.size() || theta.size() != m_[i].size()) {
            throw std::invalid_argument("adamw: shape mismatch for parameter " +
                                        std::to_string(i));
        }
        for (std::size_t j = 0; j < theta.size(); ++j) {
            m_[i][j] = cfg_.beta1 * m_[i][j] + (1.0 - cfg_.beta1) * g.v[j];
            v_[i][j] = cfg_.beta2 * v_[i][j] + (1.0 - cfg_.beta2) * g.v[j] * g.v[j];
            const double m_hat = m_[i][j] / bc1;
            const double v_hat = v_[i][j] / bc2;
            theta.v[j] -= cfg_.lr * (m_hat / (std::sqrt(v_hat) + cfg_.eps) +
                                     cfg_.weight_decay * theta.v[j]);
        }
    }
}

}  // namespace commevolve::nn
