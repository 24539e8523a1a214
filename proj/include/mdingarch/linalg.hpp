#pragma once

#include <cstddef>
#include <vector>

namespace mdingarch {

// Minimal dense row-major matrix for the small covariance/test-statistic
// systems this library solves (dimensions here never exceed ~20).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& other) const;
    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix scaled(double s) const;

    std::vector<double> mat_vec(const std::vector<double>& v) const;
    std::vector<double> diagonal() const;

    void symmetrize();

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Gaussian elimination with partial pivoting. Throws std::runtime_error on a
// numerically singular system.
std::vector<double> solve(Matrix a, std::vector<double> b);
Matrix inverse(const Matrix& a);
bool try_inverse(const Matrix& a, Matrix& out);

// Jacobi eigen-decomposition of a symmetric matrix; returns eigenvalues and
// fills the column-eigenvector matrix.
std::vector<double> symmetric_eigen(const Matrix& a, Matrix& eigenvectors);

// Moore-Penrose pseudo-inverse of a symmetric matrix, dropping eigenvalues
// below tol * max|eigenvalue|.
Matrix symmetric_pseudo_inverse(const Matrix& a, double tol = 1e-12);

double min_symmetric_eigenvalue(const Matrix& a);

double quadratic_form(const std::vector<double>& v, const Matrix& m);

}  // namespace mdingarch
