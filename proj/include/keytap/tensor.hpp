#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "keytap/common.hpp"

namespace keytap {

// Dense row-major tensor of doubles. All the nn kernels index into `data`
// directly; `at` exists for tests and cold paths.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> data;

    Tensor() = default;

    explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
        data.assign(static_cast<size_t>(checked_numel(shape)), 0.0);
    }

    Tensor(std::vector<int> s, std::vector<double> d) : shape(std::move(s)), data(std::move(d)) {
        if (static_cast<int64_t>(data.size()) != checked_numel(shape))
            throw ShapeMismatch("tensor data length does not match shape");
    }

    int64_t numel() const { return static_cast<int64_t>(data.size()); }

    int dim(size_t axis) const { return shape.at(axis); }

    static int64_t checked_numel(const std::vector<int>& s) {
        if (s.empty()) throw ShapeMismatch("tensor rank must be >= 1");
        int64_t n = 1;
        for (int e : s) {
            if (e < 1) throw ShapeMismatch("tensor extents must be >= 1");
            n *= e;
        }
        return n;
    }

    double& at(std::initializer_list<int> idx) { return data[offset(idx)]; }
    double at(std::initializer_list<int> idx) const { return data[offset(idx)]; }

    size_t offset(std::initializer_list<int> idx) const {
        if (idx.size() != shape.size()) throw ShapeMismatch("index rank mismatch");
        size_t off = 0;
        size_t axis = 0;
        for (int i : idx) {
            off = off * static_cast<size_t>(shape[axis]) + static_cast<size_t>(i);
            ++axis;
        }
        return off;
    }

    bool same_shape(const Tensor& o) const { return shape == o.shape; }

    void fill(double v) { std::fill(data.begin(), data.end(), v); }
};

inline std::string shape_string(const std::vector<int>& s) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ")";
    return os.str();
}

inline void require_shape(const Tensor& t, const std::vector<int>& expect, const char* what) {
    if (t.shape != expect)
        throw ShapeMismatch(std::string(what) + ": expected " + shape_string(expect) + ", got " +
                            shape_string(t.shape));
}

inline Tensor zeros_like(const Tensor& t) { return Tensor(t.shape); }

}  // namespace keytap
