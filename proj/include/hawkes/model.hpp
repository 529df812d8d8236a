#pragma once

#include <cstddef>
#include <vector>

namespace hawkes {

/// Dense row-major matrix, used for interaction coefficients and result tables.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const double* row(std::size_t i) const { return data_.data() + i * cols_; }
    double* row(std::size_t i) { return data_.data() + i * cols_; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Multivariate exponential Hawkes model with one decay rate per receiving
/// dimension: the kernel from subprocess j to i is alpha(i,j) * exp(-beta[i] t).
/// Baselines and decays are strictly positive; interactions may be negative
/// (inhibition).
struct HawkesModel {
    std::vector<double> mu;   // baseline intensities, length d
    Matrix alpha;             // d x d interaction magnitudes, alpha(i,j) = effect of j on i
    std::vector<double> beta; // decay rates, length d

    std::size_t dim() const { return mu.size(); }

    /// Throws std::invalid_argument on shape mismatch or nonpositive mu/beta.
    void validate() const;

    bool operator==(const HawkesModel& other) const = default;
};

/// Ordered event times with 0-based dimension marks on an observation window
/// [0, horizon]. Times are strictly increasing, positive, and bounded by the
/// horizon; simultaneous events are rejected.
struct EventSequence {
    std::vector<double> times;
    std::vector<int> marks;   // 0-based subprocess indices
    double horizon = 0.0;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }

    /// Throws std::invalid_argument when the invariants fail or a mark
    /// is outside [0, d).
    void validate(std::size_t d) const;

    /// Number of events carrying mark i.
    std::size_t count(int mark) const;

    bool operator==(const EventSequence& other) const = default;
};

/// Spectral radius of the positive-part kernel-mass matrix
/// (max(0, alpha_ij) / beta_i); radius < 1 ensures existence/stationarity.
struct SpectralReport {
    double radius = 0.0;
    bool stable = false;
};

} // namespace hawkes
