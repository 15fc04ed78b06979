#ifndef SEGRE_TENSOR_HPP
#define SEGRE_TENSOR_HPP

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "segre/error.hpp"
#include "segre/matrix.hpp"
#include "segre/rational.hpp"

namespace segre {

// Shape of a dense multi-way array: order >= 2, every mode dimension >= 1.
struct Shape {
    std::vector<std::size_t> dims;

    explicit Shape(std::vector<std::size_t> d) : dims(std::move(d)) {
        if (dims.size() < 2) throw shape_error("shape: order must be at least 2");
        for (std::size_t x : dims)
            if (x == 0) throw shape_error("shape: zero mode dimension");
    }

    std::size_t order() const { return dims.size(); }
    std::size_t dim(std::size_t m) const {
        if (m >= dims.size()) throw shape_error("shape: mode out of range");
        return dims[m];
    }
    std::size_t size() const {
        std::size_t s = 1;
        for (std::size_t x : dims) s *= x;
        return s;
    }

    friend bool operator==(const Shape& a, const Shape& b) { return a.dims == b.dims; }
    friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }
};

// Offset of a multi-index in row-major order (last mode fastest).
inline std::size_t flat_index(const Shape& s, const std::vector<std::size_t>& idx) {
    if (idx.size() != s.order()) throw shape_error("tensor: index arity mismatch");
    std::size_t off = 0;
    for (std::size_t m = 0; m < idx.size(); ++m) {
        if (idx[m] >= s.dims[m]) throw shape_error("tensor: index out of range");
        off = off * s.dims[m] + idx[m];
    }
    return off;
}

inline std::vector<std::size_t> unflatten(const Shape& s, std::size_t off) {
    std::vector<std::size_t> idx(s.order());
    for (std::size_t m = s.order(); m-- > 0;) {
        idx[m] = off % s.dims[m];
        off /= s.dims[m];
    }
    return idx;
}

// Dense tensor over Rational, entries in row-major order.
class Tensor {
public:
    explicit Tensor(Shape shape) : shape_(std::move(shape)), e_(shape_.size()) {}

    const Shape& shape() const { return shape_; }
    std::size_t order() const { return shape_.order(); }
    std::size_t dim(std::size_t m) const { return shape_.dim(m); }
    std::size_t size() const { return e_.size(); }

    Rational& at(const std::vector<std::size_t>& idx) { return e_[flat_index(shape_, idx)]; }
    const Rational& at(const std::vector<std::size_t>& idx) const {
        return e_[flat_index(shape_, idx)];
    }

    Rational& operator[](std::size_t off) { return e_[off]; }
    const Rational& operator[](std::size_t off) const { return e_[off]; }

    bool is_zero() const {
        for (const auto& x : e_) if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Tensor& a, const Tensor& b) {
        return a.shape_ == b.shape_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

private:
    Shape shape_;
    std::vector<Rational> e_;
};

// A linear map acting on one mode; matrix columns match the mode dimension.
struct ModeMap {
    std::size_t mode;
    Matrix matrix;
};

inline Tensor simple_tensor(const std::vector<std::vector<Rational>>& factors) {
    std::vector<std::size_t> dims;
    dims.reserve(factors.size());
    for (const auto& f : factors) dims.push_back(f.size());
    Tensor t{Shape(dims)};
    for (std::size_t off = 0; off < t.size(); ++off) {
        auto idx = unflatten(t.shape(), off);
        Rational p(1);
        for (std::size_t m = 0; m < factors.size(); ++m) p *= factors[m][idx[m]];
        t[off] = p;
    }
    return t;
}

inline Tensor add(const Tensor& a, const Tensor& b) {
    if (a.shape() != b.shape()) throw shape_error("tensor: sum shape mismatch");
    Tensor s = a;
    for (std::size_t off = 0; off < s.size(); ++off) s[off] += b[off];
    return s;
}

inline Tensor scale(const Tensor& t, const Rational& c) {
    Tensor s = t;
    for (std::size_t off = 0; off < s.size(); ++off) s[off] *= c;
    return s;
}

// Contract `map.matrix` against one mode; the result dimension on that mode
// equals the matrix row count. out(..., r, ...) = sum_c M(r,c) t(..., c, ...).
inline Tensor apply_mode_map(const Tensor& t, const ModeMap& map) {
    if (map.mode >= t.order()) throw shape_error("mode map: mode out of range");
    if (map.matrix.cols() != t.dim(map.mode))
        throw shape_error("mode map: matrix columns must match mode dimension");
    std::vector<std::size_t> dims = t.shape().dims;
    dims[map.mode] = map.matrix.rows();
    Tensor out{Shape(dims)};
    for (std::size_t off = 0; off < out.size(); ++off) {
        auto idx = unflatten(out.shape(), off);
        const std::size_t r = idx[map.mode];
        Rational acc;
        for (std::size_t c = 0; c < t.dim(map.mode); ++c) {
            if (map.matrix(r, c).is_zero()) continue;
            idx[map.mode] = c;
            acc += map.matrix(r, c) * t.at(idx);
        }
        out[off] = acc;
    }
    return out;
}

inline Tensor apply_mode_map(const Tensor& t, std::size_t mode, const Matrix& m) {
    return apply_mode_map(t, ModeMap{mode, m});
}

// perm lists, for each output mode, the input mode it takes:
// out.dim(p) = t.dim(perm[p]) and out(i_0,...) = t(j) with j[perm[p]] = i_p.
inline Tensor permute_modes(const Tensor& t, const std::vector<std::size_t>& perm) {
    const std::size_t n = t.order();
    if (perm.size() != n) throw shape_error("permute: arity mismatch");
    std::vector<bool> seen(n, false);
    for (std::size_t m : perm) {
        if (m >= n || seen[m]) throw shape_error("permute: not a permutation");
        seen[m] = true;
    }
    std::vector<std::size_t> dims(n);
    for (std::size_t p = 0; p < n; ++p) dims[p] = t.dim(perm[p]);
    Tensor out{Shape(dims)};
    std::vector<std::size_t> src(n);
    for (std::size_t off = 0; off < out.size(); ++off) {
        auto idx = unflatten(out.shape(), off);
        for (std::size_t p = 0; p < n; ++p) src[perm[p]] = idx[p];
        out[off] = t.at(src);
    }
    return out;
}

// Keep the first `keep` modes, fuse the trailing ones into a single mode.
// Row-major layout makes this a reshape: entries are reused verbatim.
inline Tensor group_trailing(const Tensor& t, std::size_t keep) {
    if (keep == 0 || keep >= t.order())
        throw shape_error("group: keep must be in [1, order-1]");
    std::size_t rest = 1;
    for (std::size_t m = keep; m < t.order(); ++m) rest *= t.dim(m);
    std::vector<std::size_t> dims(t.shape().dims.begin(), t.shape().dims.begin() + keep);
    dims.push_back(rest);
    Tensor out{Shape(dims)};
    for (std::size_t off = 0; off < t.size(); ++off) out[off] = t[off];
    return out;
}

} // namespace segre

#endif
