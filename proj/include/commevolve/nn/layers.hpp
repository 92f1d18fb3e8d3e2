#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "commevolve/nn/tape.hpp"
#include "commevolve/nn/tensor.hpp"

namespace commevolve::nn {

enum class Activation { identity, relu, sigmoid };

struct DenseLayer {
    Tensor W;  // in x out
    Tensor b;  // out
    Activation activation = Activation::identity;

    static DenseLayer init(std::size_t in, std::size_t out, Activation act,
                           std::mt19937_64& rng);
};

/// Multi-head attention parameters. Per head: W^Q (d_q x d_k),
/// W^K (d_m x d_k), W^V (d_m x d_v); the shared output mix W^O is
/// (heads * d_v) x d_m.
struct AttentionParams {
    int heads = 1;
    std::vector<Tensor> Wq, Wk, Wv;
    Tensor Wo;

    static AttentionParams init(int heads, std::size_t d_q, std::size_t d_m,
                                std::size_t d_k, std::size_t d_v, std::mt19937_64& rng);
};

/// Uniform(-sqrt(1/fan_in), +sqrt(1/fan_in)) initialization.
Tensor uniform_init(std::size_t rows, std::size_t cols, std::size_t fan_in,
                    std::mt19937_64& rng);

// --- tape builders (used while recording a training/prediction graph) ---

struct DenseIds {
    Tape::Id W = -1;
    Tape::Id b = -1;
};

struct AttentionIds {
    std::vector<Tape::Id> Wq, Wk, Wv;
    Tape::Id Wo = -1;
};

DenseIds register_dense(Tape& tape, const DenseLayer& layer, bool requires_grad = true);
AttentionIds register_attention(Tape& tape, const AttentionParams& params,
                                bool requires_grad = true);

Tape::Id dense_apply(Tape& tape, const DenseIds& ids, Tape::Id x, Activation activation);

/// Group-node attention: per head, query = z_q W^Q, keys/values from Z_X;
/// scaled dot-product coefficients use sqrt(scale_dim); head outputs pass
/// through ReLU, concatenate, and mix through W^O into a 1 x d_m vector.
Tape::Id gn_attention_apply(Tape& tape, const AttentionIds& ids, Tape::Id z_x,
                            Tape::Id z_q, std::size_t scale_dim,
                            const std::vector<std::uint8_t>* mask = nullptr);

// --- standalone forward-only ops ---

Tensor dense_forward(const DenseLayer& layer, const Tensor& x);

/// softmax(Q K^T / sqrt(scale_dim)) for a 1 x d_k query against n x d_k keys.
Tensor attention_coefficients(const Tensor& Q, const Tensor& K, std::size_t scale_dim,
                              const std::vector<std::uint8_t>* mask = nullptr);

Tensor gn_attention(const Tensor& z_x, const Tensor& z_q, const AttentionParams& params,
                    std::size_t scale_dim, const std::vector<std::uint8_t>* mask = nullptr);

/// Mean binary cross-entropy with predictions clamped to [1e-7, 1 - 1e-7].
double bce_loss(const Tensor& pred, const Tensor& target);

}  // namespace commevolve::nn
