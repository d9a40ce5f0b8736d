#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <vector>

#include "zzgril/error.hpp"

namespace zzgril {

// Sparse vector over F2: sorted row indices of the nonzero entries.
using F2Column = std::vector<std::uint32_t>;

// target += src, reusing scratch as the output buffer.
inline void add_into(F2Column& target, const F2Column& src, F2Column& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), src.begin(), src.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

inline void add_into(F2Column& target, const F2Column& src) {
    F2Column scratch;
    add_into(target, src, scratch);
}

inline bool contains(const F2Column& c, std::uint32_t row) {
    return std::binary_search(c.begin(), c.end(), row);
}

inline std::int64_t pivot(const F2Column& c) { return c.empty() ? -1 : static_cast<std::int64_t>(c.back()); }

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    static F2Matrix identity(std::size_t n) {
        F2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back(static_cast<std::uint32_t>(i));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    const F2Column& column(std::size_t j) const { return columns_[j]; }
    F2Column& column(std::size_t j) { return columns_[j]; }
    const std::vector<F2Column>& columns() const { return columns_; }

    void set_rows(std::size_t r) { rows_ = r; }

    void append(F2Column c) {
        for (auto r : c)
            if (r >= rows_) throw ParameterError("F2Matrix::append: row index out of range");
        columns_.push_back(std::move(c));
    }

    bool get(std::size_t r, std::size_t c) const { return contains(columns_[c], static_cast<std::uint32_t>(r)); }

    void set(std::size_t r, std::size_t c, bool v) {
        auto& col = columns_[c];
        auto it = std::lower_bound(col.begin(), col.end(), static_cast<std::uint32_t>(r));
        bool present = it != col.end() && *it == r;
        if (v && !present) col.insert(it, static_cast<std::uint32_t>(r));
        if (!v && present) col.erase(it);
    }

    bool is_zero() const {
        return std::all_of(columns_.begin(), columns_.end(), [](const F2Column& c) { return c.empty(); });
    }

    std::size_t rank() const;

    friend bool operator==(const F2Matrix& a, const F2Matrix& b) {
        return a.rows_ == b.rows_ && a.columns_ == b.columns_;
    }

private:
    std::size_t rows_ = 0;
    std::vector<F2Column> columns_;
};

// Column reduction R = A V with V upper unitriangular; nonzero columns of R have distinct pivots.
struct F2Reduction {
    F2Matrix reduced;
    F2Matrix transform;
};

inline F2Reduction reduce(const F2Matrix& a) {
    F2Reduction out{a, F2Matrix::identity(a.cols())};
    out.transform.set_rows(a.cols());
    std::vector<std::int64_t> owner(a.rows(), -1);
    F2Column scratch;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        auto& col = out.reduced.column(j);
        while (!col.empty()) {
            auto p = col.back();
            if (owner[p] < 0) {
                owner[p] = static_cast<std::int64_t>(j);
                break;
            }
            auto k = static_cast<std::size_t>(owner[p]);
            add_into(col, out.reduced.column(k), scratch);
            add_into(out.transform.column(j), out.transform.column(k), scratch);
        }
    }
    return out;
}

inline std::size_t F2Matrix::rank() const {
    std::vector<std::int64_t> owner(rows_, -1);
    std::vector<F2Column> work = columns_;
    F2Column scratch;
    std::size_t r = 0;
    for (std::size_t j = 0; j < work.size(); ++j) {
        auto& col = work[j];
        while (!col.empty()) {
            auto p = col.back();
            if (owner[p] < 0) {
                owner[p] = static_cast<std::int64_t>(j);
                ++r;
                break;
            }
            add_into(col, work[static_cast<std::size_t>(owner[p])], scratch);
        }
    }
    return r;
}

inline F2Matrix multiply(const F2Matrix& a, const F2Matrix& b) {
    if (a.cols() != b.rows()) throw ParameterError("multiply: inner dimensions differ");
    F2Matrix out(a.rows(), b.cols());
    F2Column scratch;
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (auto k : b.column(j)) add_into(out.column(j), a.column(k), scratch);
    return out;
}

// Stack columns of a and b side by side (same row count).
inline F2Matrix hconcat(const F2Matrix& a, const F2Matrix& b) {
    if (a.rows() != b.rows()) throw ParameterError("hconcat: row counts differ");
    F2Matrix out(a.rows(), 0);
    for (auto& c : a.columns()) out.append(c);
    for (auto& c : b.columns()) out.append(c);
    return out;
}

// Basis of the null space of a, as columns of length a.cols().
inline std::vector<F2Column> kernel_basis(const F2Matrix& a) {
    auto red = reduce(a);
    std::vector<F2Column> out;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (red.reduced.column(j).empty()) out.push_back(red.transform.column(j));
    return out;
}

}  // namespace zzgril
