#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace commevolve::nn {

/// Dense row-major tensor of doubles. Rank 1 values are treated as row
/// vectors where a 2-d view is needed.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> v;

    Tensor() = default;
    Tensor(std::vector<std::size_t> shape_in, std::vector<double> values);

    static Tensor zeros(std::vector<std::size_t> shape_in);
    static Tensor scalar(double x);
    static Tensor row(std::vector<double> values);                        // 1 x n
    static Tensor matrix(std::size_t r, std::size_t c, std::vector<double> values);

    std::size_t size() const { return v.size(); }
    std::size_t rows() const;
    std::size_t cols() const;
    double& at(std::size_t r, std::size_t c);
    double at(std::size_t r, std::size_t c) const;

    bool same_shape(const Tensor& other) const { return shape == other.shape; }
    bool all_finite() const;
    std::string shape_str() const;

    friend bool operator==(const Tensor&, const Tensor&) = default;
};

}  // namespace commevolve::nn
