#include "hawkes/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hawkes {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) {
            throw std::invalid_argument("Matrix::from_rows: ragged rows");
        }
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

void HawkesModel::validate() const {
    const std::size_t d = mu.size();
    if (d == 0) {
        throw std::invalid_argument("HawkesModel: dimension must be positive");
    }
    if (beta.size() != d || alpha.rows() != d || alpha.cols() != d) {
        throw std::invalid_argument("HawkesModel: mu/alpha/beta shapes disagree");
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (!std::isfinite(mu[i]) || mu[i] <= 0.0) {
            throw std::invalid_argument("HawkesModel: mu[" + std::to_string(i) +
                                        "] must be finite and > 0");
        }
        if (!std::isfinite(beta[i]) || beta[i] <= 0.0) {
            throw std::invalid_argument("HawkesModel: beta[" + std::to_string(i) +
                                        "] must be finite and > 0");
        }
        for (std::size_t j = 0; j < d; ++j) {
            if (!std::isfinite(alpha(i, j))) {
                throw std::invalid_argument("HawkesModel: alpha entries must be finite");
            }
        }
    }
}

void EventSequence::validate(std::size_t d) const {
    if (marks.size() != times.size()) {
        throw std::invalid_argument("EventSequence: times/marks length mismatch");
    }
    if (!std::isfinite(horizon) || horizon <= 0.0) {
        throw std::invalid_argument("EventSequence: horizon must be finite and > 0");
    }
    double prev = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        if (!std::isfinite(t) || t <= prev) {
            throw std::invalid_argument(
                "EventSequence: times must be strictly increasing and > 0 (row " +
                std::to_string(k) + ")");
        }
        if (marks[k] < 0 || static_cast<std::size_t>(marks[k]) >= d) {
            throw std::invalid_argument("EventSequence: mark out of range at row " +
                                        std::to_string(k));
        }
        prev = t;
    }
    if (!times.empty() && times.back() > horizon) {
        throw std::invalid_argument("EventSequence: horizon precedes the last event");
    }
}

std::size_t EventSequence::count(int mark) const {
    std::size_t n = 0;
    for (int m : marks) {
        if (m == mark) ++n;
    }
    return n;
}

} // namespace hawkes
