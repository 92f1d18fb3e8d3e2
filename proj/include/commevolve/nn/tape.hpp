#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "commevolve/nn/tensor.hpp"

namespace commevolve::nn {

/// Reverse-mode autodiff tape. Forward calls record the computation; a single
/// backward() pass then fills exact gradients for every node that requires
/// them. Every forward op guards against non-finite outputs.
///
/// Reductions run in fixed left-to-right order, so identical inputs always
/// produce bit-identical values and gradients.
class Tape {
public:
    using Id = int;

    Id leaf(Tensor value, bool requires_grad = true);

    Id matmul(Id a, Id b);             // [n x k] * [k x m]
    Id matmul_transposed(Id a, Id b);  // [n x k] * [m x k]^T -> [n x m]
    Id add(Id a, Id b);                // same shape
    Id add_row_broadcast(Id x, Id bias);
    Id relu(Id x);
    Id sigmoid(Id x);
    Id scale(Id x, double factor);
    /// Row softmax of 1 x n logits. Masked-out entries (keep == 0) receive
    /// weight exactly 0 and contribute no gradient. Throws if every entry is
    /// masked.
    Id softmax_row(Id logits, const std::vector<std::uint8_t>* keep = nullptr);
    Id concat_row(const std::vector<Id>& parts);  // 1 x k row vectors
    /// Mean binary cross-entropy against a constant 0/1 target; predictions
    /// are clamped to [1e-7, 1 - 1e-7].
    Id bce_loss(Id pred, Tensor target);
    Id mean_of(const std::vector<Id>& scalars);

    void backward(Id root);

    const Tensor& value(Id id) const;
    const Tensor& grad(Id id) const;
    bool requires_grad(Id id) const;

    /// Smallest distance of any ReLU input to its kink (and any BCE input to
    /// its clamp bound) seen while recording. Used by gradient-check fixtures
    /// to reject instances where central differences straddle a
    /// non-differentiable point.
    double kink_margin() const { return kink_margin_; }

    static constexpr double kBceEpsilon = 1e-7;

private:
    struct Node {
        Tensor value;
        Tensor grad;
        bool requires_grad = false;
        std::function<void(Tape&)> backprop;  // may be empty for leaves
    };

    std::vector<Node> nodes_;
    bool backward_done_ = false;
    double kink_margin_ = 1e300;

    Id emplace(Tensor value, bool requires_grad, std::function<void(Tape&)> fn,
               const char* op_name);
    const Node& node(Id id) const;
    Node& node(Id id);
    void check_open() const;
};

}  // namespace commevolve::nn
