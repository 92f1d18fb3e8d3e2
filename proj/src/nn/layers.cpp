#include "commevolve/nn/layers.hpp"

#include <cmath>
#include <stdexcept>

namespace commevolve::nn {

Tensor uniform_init(std::size_t rows, std::size_t cols, std::size_t fan_in,
                    std::mt19937_64& rng) {
    double bound = std::sqrt(1.0 / static_cast<double>(fan_in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    std::vector<double> values(rows * cols);
    for (auto& v : values) v = dist(rng);
    if (rows == 1) return Tensor({cols}, std::move(values));
    return Tensor({rows, cols}, std::move(values));
}

DenseLayer DenseLayer::init(std::size_t in, std::size_t out, Activation act,
                            std::mt19937_64& rng) {
    DenseLayer layer;
    layer.W = uniform_init(in, out, in, rng);
    if (in == 1) layer.W.shape = {1, out};  // keep rank 2 for 1-input layers
    layer.b = uniform_init(1, out, in, rng);
    layer.activation = act;
    return layer;
}

AttentionParams AttentionParams::init(int heads, std::size_t d_q, std::size_t d_m,
                                      std::size_t d_k, std::size_t d_v,
                                      std::mt19937_64& rng) {
    if (heads < 1) throw std::invalid_argument("attention: heads must be >= 1");
    if (d_k == 0 || d_v == 0) throw std::invalid_argument("attention: d_k and d_v must be > 0");
    AttentionParams p;
    p.heads = heads;
    for (int h = 0; h < heads; ++h) {
        p.Wq.push_back(uniform_init(d_q, d_k, d_q, rng));
        p.Wk.push_back(uniform_init(d_m, d_k, d_m, rng));
        p.Wv.push_back(uniform_init(d_m, d_v, d_m, rng));
    }
    p.Wo = uniform_init(static_cast<std::size_t>(heads) * d_v, d_m,
                        static_cast<std::size_t>(heads) * d_v, rng);
    return p;
}

DenseIds register_dense(Tape& tape, const DenseLayer& layer, bool requires_grad) {
    return {tape.leaf(layer.W, requires_grad), tape.leaf(layer.b, requires_grad)};
}

AttentionIds register_attention(Tape& tape, const AttentionParams& params,
                                bool requires_grad) {
    AttentionIds ids;
    for (int h = 0; h < params.heads; ++h) {
        ids.Wq.push_back(tape.leaf(params.Wq[static_cast<std::size_t>(h)], requires_grad));
        ids.Wk.push_back(tape.leaf(params.Wk[static_cast<std::size_t>(h)], requires_grad));
        ids.Wv.push_back(tape.leaf(params.Wv[static_cast<std::size_t>(h)], requires_grad));
    }
    ids.Wo = tape.leaf(params.Wo, requires_grad);
    return ids;
}

Tape::Id dense_apply(Tape& tape, const DenseIds& ids, Tape::Id x, Activation activation) {
    Tape::Id z = tape.add_row_broadcast(tape.matmul(x, ids.W), ids.b);
    switch (activation) {
        case Activation::identity: return z;
        case Activation::relu: return tape.relu(z);
        case Activation::sigmoid: return tape.sigmoid(z);
    }
    throw std::logic_error("unreachable activation");
}

Tape::Id gn_attention_apply(Tape& tape, const AttentionIds& ids, Tape::Id z_x,
                            Tape::Id z_q, std::size_t scale_dim,
                            const std::vector<std::uint8_t>* mask) {
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(scale_dim));
    std::vector<Tape::Id> head_outputs;
    for (std::size_t h = 0; h < ids.Wq.size(); ++h) {
        Tape::Id q = tape.matmul(z_q, ids.Wq[h]);          // 1 x d_k
        Tape::Id k = tape.matmul(z_x, ids.Wk[h]);          // n x d_k
        Tape::Id v = tape.matmul(z_x, ids.Wv[h]);          // n x d_v
        Tape::Id logits = tape.scale(tape.matmul_transposed(q, k), inv_sqrt);
        Tape::Id alpha = tape.softmax_row(logits, mask);   // 1 x n
        Tape::Id head = tape.matmul(alpha, v);             // 1 x d_v
        head_outputs.push_back(tape.relu(head));
    }
    Tape::Id merged = head_outputs.size() == 1 ? head_outputs[0]
                                               : tape.concat_row(head_outputs);
    return tape.matmul(merged, ids.Wo);  // 1 x d_m
}

Tensor dense_forward(const DenseLayer& layer, const Tensor& x) {
    Tape tape;
    Tape::Id in = tape.leaf(x, false);
    DenseIds ids = register_dense(tape, layer, false);
    return tape.value(dense_apply(tape, ids, in, layer.activation));
}

Tensor attention_coefficients(const Tensor& Q, const Tensor& K, std::size_t scale_dim,
                              const std::vector<std::uint8_t>* mask) {
    if (K.rows() == 0) throw std::invalid_argument("attention_coefficients: empty key matrix");
    Tape tape;
    Tape::Id q = tape.leaf(Q, false);
    Tape::Id k = tape.leaf(K, false);
    Tape::Id logits = tape.scale(tape.matmul_transposed(q, k),
                                 1.0 / std::sqrt(static_cast<double>(scale_dim)));
    return tape.value(tape.softmax_row(logits, mask));
}

Tensor gn_attention(const Tensor& z_x, const Tensor& z_q, const AttentionParams& params,
                    std::size_t scale_dim, const std::vector<std::uint8_t>* mask) {
    Tape tape;
    Tape::Id zx = tape.leaf(z_x, false);
    Tape::Id zq = tape.leaf(z_q, false);
    AttentionIds ids = register_attention(tape, params, false);
    return tape.value(gn_attention_apply(tape, ids, zx, zq, scale_dim, mask));
}

double bce_loss(const Tensor& pred, const Tensor& target) {
    Tape tape;
    Tape::Id p = tape.leaf(pred, false);
    return tape.value(tape.bce_loss(p, target)).v[0];
}

}  // namespace commevolve::nn
