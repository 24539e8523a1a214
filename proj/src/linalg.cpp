#include "mdingarch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdingarch {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("Matrix multiply: shape mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("Matrix add: shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("Matrix subtract: shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
    return out;
}

Matrix Matrix::scaled(double s) const {
    Matrix out = *this;
    for (double& v : out.data_) v *= s;
    return out;
}

std::vector<double> Matrix::mat_vec(const std::vector<double>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

std::vector<double> Matrix::diagonal() const {
    const std::size_t n = std::min(rows_, cols_);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = (*this)(i, i);
    return d;
}

void Matrix::symmetrize() {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j) {
            const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
            (*this)(i, j) = v;
            (*this)(j, i) = v;
        }
}

namespace {

// in-place LU-style elimination of [a | rhs columns]; returns false if singular
bool eliminate(Matrix& a, Matrix& rhs) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) pivot = r;
        if (std::fabs(a(pivot, col)) < 1e-300) return false;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            for (std::size_t j = 0; j < rhs.cols(); ++j) std::swap(rhs(col, j), rhs(pivot, j));
        }
        const double inv = 1.0 / a(col, col);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col) * inv;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(r, j) -= f * rhs(col, j);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double inv = 1.0 / a(i, i);
        for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(i, j) *= inv;
    }
    return true;
}

}  // namespace

std::vector<double> solve(Matrix a, std::vector<double> b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw std::invalid_argument("solve: shape mismatch");
    Matrix rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
    if (!eliminate(a, rhs)) throw std::runtime_error("solve: singular matrix");
    std::vector<double> x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) x[i] = rhs(i, 0);
    return x;
}

bool try_inverse(const Matrix& a, Matrix& out) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
    Matrix work = a;
    Matrix rhs = Matrix::identity(a.rows());
    if (!eliminate(work, rhs)) return false;
    out = rhs;
    return true;
}

Matrix inverse(const Matrix& a) {
    Matrix out;
    if (!try_inverse(a, out)) throw std::runtime_error("inverse: singular matrix");
    return out;
}

std::vector<double> symmetric_eigen(const Matrix& a, Matrix& eigenvectors) {
    if (a.rows() != a.cols()) throw std::invalid_argument("symmetric_eigen: not square");
    const std::size_t n = a.rows();
    Matrix m = a;
    eigenvectors = Matrix::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(m(p, q)) < 1e-300) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = eigenvectors(k, p), vkq = eigenvectors(k, q);
                    eigenvectors(k, p) = c * vkp - s * vkq;
                    eigenvectors(k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i);
    return eig;
}

Matrix symmetric_pseudo_inverse(const Matrix& a, double tol) {
    Matrix v;
    const std::vector<double> eig = symmetric_eigen(a, v);
    double max_abs = 0.0;
    for (double e : eig) max_abs = std::max(max_abs, std::fabs(e));
    const std::size_t n = a.rows();
    Matrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::fabs(eig[k]) <= tol * max_abs) continue;
        const double inv = 1.0 / eig[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) += inv * v(i, k) * v(j, k);
    }
    return out;
}

double min_symmetric_eigenvalue(const Matrix& a) {
    Matrix v;
    const std::vector<double> eig = symmetric_eigen(a, v);
    return *std::min_element(eig.begin(), eig.end());
}

double quadratic_form(const std::vector<double>& v, const Matrix& m) {
    const std::vector<double> mv = m.mat_vec(v);
    double q = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) q += v[i] * mv[i];
    return q;
}

}  // namespace mdingarch
