#include "commevolve/nn/tape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace commevolve::nn {

namespace {

void require_cols_rows(const Tensor& a, const Tensor& b, std::size_t a_cols,
                       std::size_t b_rows, const char* op) {
    if (a_cols != b_rows) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + a.shape_str() +
                                    " vs " + b.shape_str());
    }
}

}  // namespace

Tape::Id Tape::emplace(Tensor value, bool requires_grad, std::function<void(Tape&)> fn,
                       const char* op_name) {
    check_open();
    if (!value.all_finite()) {
        throw std::runtime_error(std::string("non-finite values produced by ") + op_name);
    }
    nodes_.push_back(Node{std::move(value), Tensor{}, requires_grad, std::move(fn)});
    return static_cast<Id>(nodes_.size() - 1);
}

const Tape::Node& Tape::node(Id id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
        throw std::out_of_range("tape node id out of range");
    }
    return nodes_[static_cast<std::size_t>(id)];
}

Tape::Node& Tape::node(Id id) {
    return const_cast<Node&>(static_cast<const Tape*>(this)->node(id));
}

void Tape::check_open() const {
    if (backward_done_) {
        throw std::logic_error("tape already ran backward(); record a fresh tape");
    }
}

Tape::Id Tape::leaf(Tensor value, bool requires_grad) {
    return emplace(std::move(value), requires_grad, {}, "leaf");
}

Tape::Id Tape::matmul(Id a, Id b) {
    const Tensor& A = node(a).value;
    const Tensor& B = node(b).value;
    const std::size_t n = A.rows(), k = A.cols(), m = B.cols();
    require_cols_rows(A, B, k, B.rows(), "matmul");
    Tensor C = Tensor::zeros({n, m});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p) acc += A.at(i, p) * B.at(p, j);
            C.at(i, j) = acc;
        }
    }
    bool rg = node(a).requires_grad || node(b).requires_grad;
    Id out = emplace(std::move(C), rg, {}, "matmul");
    node(out).backprop = [out, a, b, n, k, m](Tape& t) {
        const Tensor& dC = t.node(out).grad;
        const Tensor& A = t.node(a).value;
        const Tensor& B = t.node(b).value;
        if (t.node(a).requires_grad) {
            Tensor& dA = t.node(a).grad;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t p = 0; p < k; ++p) {
                    double acc = 0.0;
                    for (std::size_t j = 0; j < m; ++j) acc += dC.at(i, j) * B.at(p, j);
                    dA.v[i * k + p] += acc;
                }
            }
        }
        if (t.node(b).requires_grad) {
            Tensor& dB = t.node(b).grad;
            for (std::size_t p = 0; p < k; ++p) {
                for (std::size_t j = 0; j < m; ++j) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i < n; ++i) acc += A.at(i, p) * dC.at(i, j);
                    dB.v[p * m + j] += acc;
                }
            }
        }
    };
    return out;
}

Tape::Id Tape::matmul_transposed(Id a, Id b) {
    const Tensor& A = node(a).value;
    const Tensor& B = node(b).value;
    const std::size_t n = A.rows(), k = A.cols(), m = B.rows();
    require_cols_rows(A, B, k, B.cols(), "matmul_transposed");
    Tensor C = Tensor::zeros({n, m});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p) acc += A.at(i, p) * B.at(j, p);
            C.at(i, j) = acc;
        }
    }
    bool rg = node(a).requires_grad || node(b).requires_grad;
    Id out = emplace(std::move(C), rg, {}, "matmul_transposed");
    node(out).backprop = [out, a, b, n, k, m](Tape& t) {
        const Tensor& dC = t.node(out).grad;
        const Tensor& A = t.node(a).value;
        const Tensor& B = t.node(b).value;
        if (t.node(a).requires_grad) {
            Tensor& dA = t.node(a).grad;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t p = 0; p < k; ++p) {
                    double acc = 0.0;
                    for (std::size_t j = 0; j < m; ++j) acc += dC.at(i, j) * B.at(j, p);
                    dA.v[i * k + p] += acc;
                }
            }
        }
        if (t.node(b).requires_grad) {
            Tensor& dB = t.node(b).grad;
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t p = 0; p < k; ++p) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i < n; ++i) acc += dC.at(i, j) * A.at(i, p);
                    dB.v[j * k + p] += acc;
                }
            }
        }
    };
    return out;
}

Tape::Id Tape::add(Id a, Id b) {
    const Tensor& A = node(a).value;
    const Tensor& B = node(b).value;
    if (!A.same_shape(B)) {
        throw std::invalid_argument("add: shape mismatch " + A.shape_str() + " vs " +
                                    B.shape_str());
    }
    Tensor C = A;
    for (std::size_t i = 0; i < C.size(); ++i) C.v[i] += B.v[i];
    bool rg = node(a).requires_grad || node(b).requires_grad;
    Id out = emplace(std::move(C), rg, {}, "add");
    node(out).backprop = [out, a, b](Tape& t) {
        const Tensor& dC = t.node(out).grad;
        if (t.node(a).requires_grad) {
            Tensor& dA = t.node(a).grad;
            for (std::size_t i = 0; i < dC.size(); ++i) dA.v[i] += dC.v[i];
        }
        if (t.node(b).requires_grad) {
            Tensor& dB = t.node(b).grad;
            for (std::size_t i = 0; i < dC.size(); ++i) dB.v[i] += dC.v[i];
        }
    };
    return out;
}

Tape::Id Tape::add_row_broadcast(Id x, Id bias) {
    const Tensor& X = node(x).value;
    const Tensor& B = node(bias).value;
    const std::size_t n = X.rows(), m = X.cols();
    if (B.size() != m) {
        throw std::invalid_argument("add_row_broadcast: bias " + B.shape_str() +
                                    " does not match " + X.shape_str());
    }
    Tensor C = X;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) C.v[i * m + j] += B.v[j];
    }
    bool rg = node(x).requires_grad || node(bias).requires_grad;
    Id out = emplace(std::move(C), rg, {}, "add_row_broadcast");
    node(out).backprop = [out, x, bias, n, m](Tape& t) {
        const Tensor& dC = t.node(out).grad;
        if (t.node(x).requires_grad) {
            Tensor& dX = t.node(x).grad;
            for (std::size_t i = 0; i < dC.size(); ++i) dX.v[i] += dC.v[i];
        }
        if (t.node(bias).requires_grad) {
            Tensor& dB = t.node(bias).grad;
            for (std::size_t j = 0; j < m; ++j) {
                double acc = 0.0;
                for (std::size_t i = 0; i < n; ++i) acc += dC.v[i * m + j];
                dB.v[j] += acc;
            }
        }
    };
    return out;
}

Tape::Id Tape::relu(Id x) {
    const Tensor& X = node(x).value;
    Tensor C = X;
    for (double v : X.v) kink_margin_ = std::min(kink_margin_, std::abs(v));
    for (auto& v : C.v) v = v > 0.0 ? v : 0.0;
    Id out = emplace(std::move(C), node(x).requires_grad, {}, "relu");
    node(out).backprop = [out, x](Tape& t) {
        if (!t.node(x).requires_grad) return;
        const Tensor& dC = t.node(out).grad;
        const Tensor& X = t.node(x).value;
        Tensor& dX = t.node(x).grad;
        for (std::size_t i = 0; i < dC.size(); ++i) {
            if (X.v[i] > 0.0) dX.v[i] += dC.v[i];
        }
    };
    return out;
}

Tape::Id Tape::sigmoid(Id x) {
    const Tensor& X = node(x).value;
    Tensor C = X;
    for (auto& v : C.v) v = 1.0 / (1.0 + std::exp(-v));
    Id out = emplace(std::move(C), node(x).requires_grad, {}, "sigmoid");
    node(out).backprop = [out, x](Tape& t) {
        if (!t.node(x).requires_grad) return;
        const Tensor& dC = t.node(out).grad;
        const Tensor& S = t.node(out).value;
        Tensor& dX = t.node(x).grad;
        for (std::size_t i = 0; i < dC.size(); ++i) {
            dX.v[i] += dC.v[i] * S.v[i] * (1.0 - S.v[i]);
        }
    };
    return out;
}

Tape::Id Tape::scale(Id x, double factor) {
    Tensor C = node(x).value;
    for (auto& v : C.v) v *= factor;
    Id out = emplace(std::move(C), node(x).requires_grad, {}, "scale");
    node(out).backprop = [out, x, factor](Tape& t) {
        if (!t.node(x).requires_grad) return;
        const Tensor& dC = t.node(out).grad;
        Tensor& dX = t.node(x).grad;
        for (std::size_t i = 0; i < dC.size(); ++i) dX.v[i] += factor * dC.v[i];
    };
    return out;
}

Tape::Id Tape::softmax_row(Id logits, const std::vector<std::uint8_t>* keep) {
    const Tensor& L = node(logits).value;
    if (L.rows() != 1 || L.cols() == 0) {
        throw std::invalid_argument("softmax_row: expected non-empty 1 x n input, got " +
                                    L.shape_str());
    }
    const std::size_t n = L.cols();
    std::vector<std::uint8_t> mask(n, 1);
    if (keep != nullptr) {
        if (keep->size() != n) {
            throw std::invalid_argument("softmax_row: mask length " +
                                        std::to_string(keep->size()) + " vs n=" +
                                        std::to_string(n));
        }
        mask = *keep;
    }
    double max_logit = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask[i]) continue;
        if (!any || L.v[i] > max_logit) max_logit = L.v[i];
        any = true;
    }
    if (!any) throw std::invalid_argument("softmax_row: every position is masked");
    Tensor C = Tensor::zeros({1, n});
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask[i]) continue;
        C.v[i] = std::exp(L.v[i] - max_logit);
        denom += C.v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) C.v[i] /= denom;  // masked entries stay exactly 0
    }
    Id out = emplace(std::move(C), node(logits).requires_grad, {}, "softmax_row");
    node(out).backprop = [out, logits, mask = std::move(mask), n](Tape& t) {
        if (!t.node(logits).requires_grad) return;
        const Tensor& dC = t.node(out).grad;
        const Tensor& S = t.node(out).value;
        Tensor& dL = t.node(logits).grad;
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask[i]) dot += S.v[i] * dC.v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (mask[i]) dL.v[i] += S.v[i] * (dC.v[i] - dot);
        }
    };
    return out;
}

Tape::Id Tape::concat_row(const std::vector<Id>& parts) {
    if (parts.empty()) throw std::invalid_argument("concat_row: no parts");
    std::size_t total = 0;
    bool rg = false;
    for (Id p : parts) {
        const Tensor& P = node(p).value;
        if (P.rows() != 1) {
            throw std::invalid_argument("concat_row: expected row vectors, got " +
                                        P.shape_str());
        }
        total += P.cols();
        rg = rg || node(p).requires_grad;
    }
    Tensor C = Tensor::zeros({1, total});
    std::size_t offset = 0;
    for (Id p : parts) {
        const Tensor& P = node(p).value;
        std::copy(P.v.begin(), P.v.end(), C.v.begin() + static_cast<long>(offset));
        offset += P.cols();
    }
    Id out = emplace(std::move(C), rg, {}, "concat_row");
    node(out).backprop = [out, parts](Tape& t) {
        const Tensor& dC = t.node(out).grad;
        std::size_t offset = 0;
        for (Id p : parts) {
            const std::size_t w = t.node(p).value.cols();
            if (t.node(p).requires_grad) {
                Tensor& dP = t.node(p).grad;
                for (std::size_t i = 0; i < w; ++i) dP.v[i] += dC.v[offset + i];
            }
            offset += w;
        }
    };
    return out;
}

Tape::Id Tape::bce_loss(Id pred, Tensor target) {
    const Tensor& P = node(pred).value;
    if (P.size() != target.size()) {
        throw std::invalid_argument("bce_loss: prediction " + P.shape_str() +
                                    " vs target " + target.shape_str());
    }
    const std::size_t n = P.size();
    constexpr double eps = kBceEpsilon;
    double loss = 0.0;
    std::vector<std::uint8_t> clamped(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        double p = P.v[i];
        kink_margin_ = std::min(kink_margin_, std::min(std::abs(p - eps),
                                                       std::abs(1.0 - eps - p)));
        if (p < eps) { p = eps; clamped[i] = 1; }
        if (p > 1.0 - eps) { p = 1.0 - eps; clamped[i] = 1; }
        double y = target.v[i];
        loss += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    }
    loss /= static_cast<double>(n);
    Id out = emplace(Tensor::scalar(loss), node(pred).requires_grad, {}, "bce_loss");
    node(out).backprop = [out, pred, target = std::move(target),
                          clamped = std::move(clamped), n](Tape& t) {
        if (!t.node(pred).requires_grad) return;
        const double upstream = t.node(out).grad.v[0];
        const Tensor& P = t.node(pred).value;
        Tensor& dP = t.node(pred).grad;
        for (std::size_t i = 0; i < n; ++i) {
            if (clamped[i]) continue;  // flat region of the clamp
            double p = P.v[i];
            double y = target.v[i];
            dP.v[i] += upstream * (p - y) / (p * (1.0 - p)) / static_cast<double>(n);
        }
    };
    return out;
}

Tape::Id Tape::mean_of(const std::vector<Id>& scalars) {
    if (scalars.empty()) throw std::invalid_argument("mean_of: no inputs");
    double acc = 0.0;
    bool rg = false;
    for (Id s : scalars) {
        const Tensor& S = node(s).value;
        if (S.size() != 1) {
            throw std::invalid_argument("mean_of: expected scalars, got " + S.shape_str());
        }
        acc += S.v[0];
        rg = rg || node(s).requires_grad;
    }
    acc /= static_cast<double>(scalars.size());
    Id out = emplace(Tensor::scalar(acc), rg, {}, "mean_of");
    node(out).backprop = [out, scalars](Tape& t) {
        const double share = t.node(out).grad.v[0] / static_cast<double>(scalars.size());
        for (Id s : scalars) {
            if (t.node(s).requires_grad) t.node(s).grad.v[0] += share;
        }
    };
    return out;
}

void Tape::backward(Id root) {
    check_open();
    const Tensor& R = node(root).value;
    if (R.size() != 1) {
        throw std::invalid_argument("backward: root must be a scalar, got " + R.shape_str());
    }
    if (!node(root).requires_grad) {
        throw std::logic_error("backward: root does not depend on any parameter");
    }
    for (auto& n : nodes_) {
        if (n.requires_grad) n.grad = Tensor::zeros(n.value.shape);
    }
    node(root).grad.v[0] = 1.0;
    backward_done_ = true;
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
        if (it->requires_grad && it->backprop) it->backprop(*this);
    }
}

const Tensor& Tape::value(Id id) const { return node(id).value; }

const Tensor& Tape::grad(Id id) const {
    if (!backward_done_) {
        throw std::logic_error("grad: backward() has not been run on this tape");
    }
    const Node& n = node(id);
    if (!n.requires_grad) {
        throw std::logic_error("grad: node does not track gradients");
    }
    return n.grad;
}

bool Tape::requires_grad(Id id) const { return node(id).requires_grad; }

}  // namespace commevolve::nn
