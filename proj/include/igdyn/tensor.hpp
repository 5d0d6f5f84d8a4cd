#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace igdyn {

/// Dense rank-3 array indexed (i, j, k), dim^3 entries.
template <class Real = double>
class Tensor3T {
public:
    Tensor3T() = default;
    explicit Tensor3T(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, Real(0)) {}

    int dim() const { return dim_; }
    Real& operator()(int i, int j, int k) { return data_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k]; }
    Real operator()(int i, int j, int k) const { return data_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k]; }

    Real max_abs() const {
        Real m = 0;
        for (Real v : data_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    int dim_ = 0;
    std::vector<Real> data_;
};

/// Dense rank-4 array indexed (i, j, k, l), dim^4 entries.
template <class Real = double>
class Tensor4T {
public:
    Tensor4T() = default;
    explicit Tensor4T(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim, Real(0)) {}

    int dim() const { return dim_; }
    Real& operator()(int i, int j, int k, int l) {
        return data_[((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l];
    }
    Real operator()(int i, int j, int k, int l) const {
        return data_[((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l];
    }

    Real max_abs() const {
        Real m = 0;
        for (Real v : data_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    int dim_ = 0;
    std::vector<Real> data_;
};

using Tensor3 = Tensor3T<double>;
using Tensor4 = Tensor4T<double>;

} // namespace igdyn
