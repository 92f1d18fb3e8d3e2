#include "commevolve/nn/tensor.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace commevolve::nn {

Tensor::Tensor(std::vector<std::size_t> shape_in, std::vector<double> values)
    : shape(std::move(shape_in)), v(std::move(values)) {
    std::size_t expected = 1;
    for (std::size_t d : shape) expected *= d;
    if (shape.empty() || expected != v.size()) {
        throw std::invalid_argument("Tensor: shape " + shape_str() + " does not match " +
                                    std::to_string(v.size()) + " values");
    }
}

Tensor Tensor::zeros(std::vector<std::size_t> shape_in) {
    std::size_t n = 1;
    for (std::size_t d : shape_in) n *= d;
    return Tensor(std::move(shape_in), std::vector<double>(n, 0.0));
}

Tensor Tensor::scalar(double x) { return Tensor({1}, {x}); }

Tensor Tensor::row(std::vector<double> values) {
    std::size_t n = values.size();
    return Tensor({1, n}, std::move(values));
}

Tensor Tensor::matrix(std::size_t r, std::size_t c, std::vector<double> values) {
    return Tensor({r, c}, std::move(values));
}

std::size_t Tensor::rows() const { return shape.size() >= 2 ? shape[0] : 1; }

std::size_t Tensor::cols() const {
    return shape.size() >= 2 ? shape[1] : (shape.empty() ? 0 : shape[0]);
}

double& Tensor::at(std::size_t r, std::size_t c) { return v[r * cols() + c]; }

double Tensor::at(std::size_t r, std::size_t c) const { return v[r * cols() + c]; }

bool Tensor::all_finite() const {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

std::string Tensor::shape_str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += "x";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

}  // namespace commevolve::nn
