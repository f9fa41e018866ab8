#pragma once

#include "field.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skeleta {

struct NotAComplex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sorted by index, no stored zeros.
template <class S>
using SparseVector = std::vector<std::pair<std::size_t, S>>;

template <class S>
void axpy(SparseVector<S>& y, const S& a, const SparseVector<S>& x) {
    if (is_zero(a) || x.empty()) return;
    SparseVector<S> out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(std::move(y[i++]));
        } else if (i == y.size() || x[j].first < y[i].first) {
            out.emplace_back(x[j].first, a * x[j].second);
            ++j;
        } else {
            S v = y[i].second + a * x[j].second;
            if (!is_zero(v)) out.emplace_back(y[i].first, std::move(v));
            ++i, ++j;
        }
    }
    y = std::move(out);
}

template <class S>
SparseVector<S> scaled(const SparseVector<S>& x, const S& a) {
    SparseVector<S> out;
    if (is_zero(a)) return out;
    out.reserve(x.size());
    for (const auto& [i, v] : x) out.emplace_back(i, a * v);
    return out;
}

template <class S>
void add_entry(SparseVector<S>& y, std::size_t idx, const S& v) {
    if (is_zero(v)) return;
    auto it = std::lower_bound(y.begin(), y.end(), idx, [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != y.end() && it->first == idx) {
        it->second = it->second + v;
        if (is_zero(it->second)) y.erase(it);
    } else {
        y.insert(it, {idx, v});
    }
}

template <class S>
std::optional<S> entry(const SparseVector<S>& y, std::size_t idx) {
    auto it = std::lower_bound(y.begin(), y.end(), idx, [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != y.end() && it->first == idx) return it->second;
    return std::nullopt;
}

// Column-major sparse matrix: column j is the image of the j-th basis vector.
template <class F>
class SparseMatrix {
public:
    using Scalar = typename F::value_type;
    using Vec = SparseVector<Scalar>;

    SparseMatrix() = default;
    SparseMatrix(F field, std::size_t rows, std::size_t cols) : field_(field), rows_(rows), cols_(cols), data_(cols) {}

    static SparseMatrix identity(F field, std::size_t k) {
        SparseMatrix m(field, k, k);
        for (std::size_t i = 0; i < k; ++i) m.data_[i].emplace_back(i, field.one());
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Vec& col(std::size_t j) const { return data_.at(j); }

    void set_col(std::size_t j, Vec v) {
        if (j >= cols_ || (!v.empty() && v.back().first >= rows_)) throw std::out_of_range("matrix index out of range");
        data_[j] = std::move(v);
    }
    void add(std::size_t r, std::size_t c, const Scalar& v) {
        check(r, c);
        add_entry(data_[c], r, v);
    }
    void set(std::size_t r, std::size_t c, const Scalar& v) {
        check(r, c);
        auto& col = data_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t k) { return e.first < k; });
        if (it != col.end() && it->first == r) {
            if (is_zero(v)) col.erase(it);
            else it->second = v;
        } else if (!is_zero(v)) {
            col.insert(it, {r, v});
        }
    }
    Scalar get(std::size_t r, std::size_t c) const {
        check(r, c);
        return entry(data_[c], r).value_or(field_.zero());
    }

    std::size_t nnz() const {
        std::size_t k = 0;
        for (const auto& c : data_) k += c.size();
        return k;
    }
    bool is_zero_matrix() const {
        return std::all_of(data_.begin(), data_.end(), [](const Vec& c) { return c.empty(); });
    }

    Vec apply(const Vec& x) const {
        Vec y;
        for (const auto& [j, v] : x) axpy(y, v, data_.at(j));
        return y;
    }

    SparseMatrix operator*(const SparseMatrix& b) const {
        if (cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not compose");
        SparseMatrix out(field_, rows_, b.cols_);
        for (std::size_t j = 0; j < b.cols_; ++j) out.data_[j] = apply(b.data_[j]);
        return out;
    }

    SparseMatrix transpose() const {
        SparseMatrix out(field_, cols_, rows_);
        for (std::size_t j = 0; j < cols_; ++j)
            for (const auto& [i, v] : data_[j]) out.data_[i].emplace_back(j, v);
        return out;
    }

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    }

    F field_{};
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Vec> data_;
};

// Incremental reduced echelon basis. With tracking on, every pivot remembers
// how it was built from the inserted vectors (numbered by insertion order).
template <class F>
class Echelon {
public:
    using Scalar = typename F::value_type;
    using Vec = SparseVector<Scalar>;

    explicit Echelon(F field, bool track = false) : field_(field), track_(track) {}

    std::size_t rank() const { return pivots_.size(); }
    std::size_t inserted() const { return inserted_; }

    // Returns the remainder of v; coords (if tracking) satisfy v = sum coords_j * inserted_j + remainder.
    Vec reduce(Vec v, Vec* coords = nullptr) const {
        if (coords) coords->clear();
        std::size_t idx = 0;
        while (idx < v.size()) {
            auto it = lead_.find(v[idx].first);
            if (it == lead_.end()) {
                ++idx;
                continue;
            }
            Scalar a = v[idx].second;
            const auto& p = pivots_[it->second];
            axpy(v, -a, p.vec);
            if (coords && track_) axpy(*coords, a, p.combo);
        }
        return v;
    }

    bool in_span(const Vec& v) const { return reduce(v).empty(); }

    // Returns true if v was independent. On dependence with tracking, relation
    // holds a nonzero combination of inserted vectors that sums to zero.
    bool insert(const Vec& v, Vec* relation = nullptr) {
        std::size_t id = inserted_++;
        Vec coords;
        Vec r = reduce(v, track_ ? &coords : nullptr);
        if (r.empty()) {
            if (relation) {
                *relation = Vec{{id, field_.one()}};
                axpy(*relation, -field_.one(), coords);
            }
            return false;
        }
        Scalar inv = field_.one() / r.front().second;
        Pivot p;
        p.vec = scaled(r, inv);
        if (track_) {
            p.combo = Vec{{id, field_.one()}};
            axpy(p.combo, -field_.one(), coords);
            p.combo = scaled(p.combo, inv);
        }
        // keep the basis fully reduced on the new pivot column
        std::size_t col = p.vec.front().first;
        for (auto& q : pivots_) {
            auto e = entry(q.vec, col);
            if (!e) continue;
            Scalar a = *e;
            axpy(q.vec, -a, p.vec);
            if (track_) axpy(q.combo, -a, p.combo);
        }
        lead_[col] = pivots_.size();
        pivots_.push_back(std::move(p));
        return true;
    }

private:
    struct Pivot {
        Vec vec;
        Vec combo;
    };

    F field_;
    bool track_;
    std::size_t inserted_ = 0;
    std::vector<Pivot> pivots_;
    std::map<std::size_t, std::size_t> lead_;
};

template <class F>
std::size_t rank(const SparseMatrix<F>& m) {
    Echelon<F> e(m.field());
    for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.col(j));
    return e.rank();
}

template <class F>
std::vector<SparseVector<typename F::value_type>> kernel_basis(const SparseMatrix<F>& m) {
    Echelon<F> e(m.field(), true);
    std::vector<SparseVector<typename F::value_type>> out;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        SparseVector<typename F::value_type> rel;
        if (!e.insert(m.col(j), &rel)) out.push_back(std::move(rel));
    }
    return out;
}

// Some x with m x = b, if one exists.
template <class F>
std::optional<SparseVector<typename F::value_type>> solve(const SparseMatrix<F>& m,
                                                           const SparseVector<typename F::value_type>& b) {
    Echelon<F> e(m.field(), true);
    for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.col(j));
    SparseVector<typename F::value_type> x;
    if (!e.reduce(b, &x).empty()) return std::nullopt;
    return x;
}

// d[i] : C^i -> C^{i+1}. Returns dim H^i for i = 0..d.size().
template <class F>
std::vector<std::size_t> homology_dims(const std::vector<SparseMatrix<F>>& d) {
    if (d.empty()) return {};
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        if (d[i].rows() != d[i + 1].cols()) throw std::invalid_argument("differentials do not compose");
        if (!(d[i + 1] * d[i]).is_zero_matrix())
            throw NotAComplex("d" + std::to_string(i + 1) + " * d" + std::to_string(i) + " != 0");
    }
    std::vector<std::size_t> ranks(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) ranks[i] = rank(d[i]);
    std::vector<std::size_t> h(d.size() + 1);
    for (std::size_t i = 0; i <= d.size(); ++i) {
        std::size_t dim = i < d.size() ? d[i].cols() : d.back().rows();
        std::size_t out_rank = i < d.size() ? ranks[i] : 0;
        std::size_t in_rank = i > 0 ? ranks[i - 1] : 0;
        h[i] = dim - out_rank - in_rank;
    }
    return h;
}

// A bounded cochain complex C^lo -> ... -> C^{lo+dims.size()-1}.
template <class F>
struct CochainComplex {
    int lowest = 0;
    std::vector<std::size_t> dims;
    std::vector<SparseMatrix<F>> d;  // d[i] : C^{lowest+i} -> C^{lowest+i+1}, size dims.size()-1

    int euler_characteristic() const {
        long chi = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) chi += (((lowest + static_cast<int>(i)) % 2 == 0) ? 1 : -1) * static_cast<long>(dims[i]);
        return static_cast<int>(chi);
    }
};

// Nonzero cohomology dimensions keyed by degree.
template <class F>
std::map<int, std::size_t> cohomology_dims(const CochainComplex<F>& c) {
    std::map<int, std::size_t> out;
    if (c.dims.empty()) return out;
    if (c.dims.size() == 1) {
        if (c.dims[0] > 0) out[c.lowest] = c.dims[0];
        return out;
    }
    auto h = homology_dims(c.d);
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] > 0) out[c.lowest + static_cast<int>(i)] = h[i];
    return out;
}

inline int euler_of(const std::map<int, std::size_t>& dims) {
    long chi = 0;
    for (const auto& [k, v] : dims) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(v);
    return static_cast<int>(chi);
}

}  // namespace skeleta
