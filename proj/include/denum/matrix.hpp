#pragma once

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "rat.hpp"

namespace denum {

/// Dense matrix over Int or Rat, row-major storage.
template <class T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw DimensionError("Mat: negative dimension");
    }
    Mat(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        a_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) throw DimensionError("Mat: ragged initializer");
            for (const auto& x : r) a_.push_back(x);
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const T& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }

    Mat transpose() const {
        Mat m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    std::vector<T> col(int j) const {
        std::vector<T> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    std::vector<T> row(int i) const {
        std::vector<T> v(cols_);
        for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
        return v;
    }

    void set_col(int j, const std::vector<T>& v) {
        if (static_cast<int>(v.size()) != rows_) throw DimensionError("set_col: length mismatch");
        for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw DimensionError("Mat mul: shape mismatch");
        Mat m(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& x = at(i, k);
                if (x == 0) continue;
                for (int j = 0; j < o.cols_; ++j) m.at(i, j) += x * o.at(k, j);
            }
        return m;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw DimensionError("Mat*vec: length mismatch");
        std::vector<T> r(rows_, T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    std::string str() const {
        std::ostringstream os;
        for (int i = 0; i < rows_; ++i) {
            os << (i ? "; " : "[");
            for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << to_string(at(i, j));
        }
        os << "]";
        return os.str();
    }

  private:
    int rows_, cols_;
    std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

inline RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(m.at(i, j));
    return r;
}

/// Exact conversion; throws if any entry has a denominator.
inline IntMat to_int_exact(const RatMat& m) {
    IntMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const Rat& x = m.at(i, j);
            if (x.get_den() != 1) throw DomainError("to_int_exact: non-integer entry");
            r.at(i, j) = x.get_num();
        }
    return r;
}

inline RatVec to_rat(const IntVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

/// Determinant by fraction-free Bareiss elimination.
inline Int det(const IntMat& m0) {
    if (m0.rows() != m0.cols()) throw DimensionError("det: matrix not square");
    int n = m0.rows();
    if (n == 0) return 1;
    IntMat m = m0;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int t = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    Int d = m.at(n - 1, n - 1);
    if (sign < 0) d = -d;
    return d;
}

inline Rat det(const RatMat& m) {
    if (m.rows() != m.cols()) throw DimensionError("det: matrix not square");
    int n = m.rows();
    if (n == 0) return Rat(1);
    // Clear denominators row by row, then run integer Bareiss.
    IntMat mi(n, n);
    Rat scale(1);
    for (int i = 0; i < n; ++i) {
        Int l = 1;
        for (int j = 0; j < n; ++j) l = int_lcm(l, m.at(i, j).get_den());
        for (int j = 0; j < n; ++j) {
            Rat x = m.at(i, j) * Rat(l);
            mi.at(i, j) = x.get_num();
        }
        scale *= Rat(l);
    }
    return Rat(det(mi)) / scale;
}

namespace detail {

/// Bareiss forward elimination of [M | I], then rational back-substitution.
inline RatMat invert_int(const IntMat& m0) {
    int n = m0.rows();
    IntMat w(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w.at(i, j) = m0.at(i, j);
        w.at(i, n + i) = 1;
    }
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
        if (w.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { p = i; break; }
            if (p < 0) throw SingularError("invert: matrix is singular");
            for (int j = 0; j < 2 * n; ++j) std::swap(w.at(k, j), w.at(p, j));
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < 2 * n; ++j) {
                Int t = w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    RatMat inv(n, n);
    for (int c = 0; c < n; ++c) {
        for (int i = n - 1; i >= 0; --i) {
            Rat s(w.at(i, n + c));
            for (int j = i + 1; j < n; ++j) s -= Rat(w.at(i, j)) * inv.at(j, c);
            inv.at(i, c) = s / Rat(w.at(i, i));
        }
    }
    return inv;
}

}  // namespace detail

/// Exact inverse; throws SingularError when det = 0.
inline RatMat invert(const RatMat& m) {
    if (m.rows() != m.cols()) throw DimensionError("invert: matrix not square");
    int n = m.rows();
    if (n == 0) return m;
    IntMat mi(n, n);
    IntVec rowmul(n);
    for (int i = 0; i < n; ++i) {
        Int l = 1;
        for (int j = 0; j < n; ++j) l = int_lcm(l, m.at(i, j).get_den());
        for (int j = 0; j < n; ++j) {
            Rat x = m.at(i, j) * Rat(l);
            mi.at(i, j) = x.get_num();
        }
        rowmul[i] = l;
    }
    // (D m)^-1 = m^-1 D^-1, so scale columns of the integer inverse back up.
    RatMat inv = detail::invert_int(mi);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) inv.at(i, j) *= Rat(rowmul[j]);
    return inv;
}

inline RatMat invert(const IntMat& m) { return invert(to_rat(m)); }

/// Smallest positive multiple of v with coprime integer entries.
inline IntVec primitive(const RatVec& v) {
    if (v.empty()) throw DegenerateInputError("primitive: empty vector");
    Int l = 1;
    bool nonzero = false;
    for (const Rat& x : v) {
        if (x != 0) nonzero = true;
        l = int_lcm(l, x.get_den());
    }
    if (!nonzero) throw DegenerateInputError("primitive: zero vector");
    IntVec u(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat x = v[i] * Rat(l);
        u[i] = x.get_num();
    }
    Int g = vec_gcd(u);
    for (Int& x : u) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return u;
}

inline IntVec primitive(const IntVec& v) {
    return primitive(to_rat(v));
}

/// Unimodular matrix with first row w (w must be primitive).
///
/// Column-reduces w to e1 by a Euclidean sweep while accumulating the
/// inverse transform, so U = V^-1 where w V = e1^T.
inline IntMat unimodular_completion(const IntVec& w) {
    int n = static_cast<int>(w.size());
    if (n == 0) throw DegenerateInputError("unimodular_completion: empty vector");
    if (vec_gcd(w) != 1) throw DegenerateInputError("unimodular_completion: vector not primitive");
    IntVec r = w;
    IntMat u = IntMat::identity(n);
    auto add_col = [&](int dst, int src, const Int& c) {
        // column op col_dst += c * col_src mirrors row op row_src -= c * row_dst on u
        r[dst] += c * r[src];
        for (int j = 0; j < n; ++j) u.at(src, j) -= c * u.at(dst, j);
    };
    auto swap_cols = [&](int i, int j) {
        std::swap(r[i], r[j]);
        for (int k = 0; k < n; ++k) std::swap(u.at(i, k), u.at(j, k));
    };
    for (int j = 1; j < n; ++j) {
        while (r[j] != 0) {
            Int q = r[0] / r[j];  // truncated division
            add_col(0, j, -q);
            swap_cols(0, j);
        }
    }
    if (r[0] == -1) {
        // negate first column; mirror: negate first row of u
        r[0] = 1;
        for (int j = 0; j < n; ++j) u.at(0, j) = -u.at(0, j);
    }
    return u;
}

inline Rat inf_norm(const RatVec& v) {
    Rat m(0);
    for (const Rat& x : v) {
        Rat a = rat_abs(x);
        if (a > m) m = a;
    }
    return m;
}

inline Rat one_norm(const RatVec& v) {
    Rat s(0);
    for (const Rat& x : v) s += rat_abs(x);
    return s;
}

inline RatVec vec_sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Rat vec_dot(const RatVec& a, const RatVec& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace denum
