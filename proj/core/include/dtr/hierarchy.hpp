#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace dtr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// The 0/1 summing matrix S of a hierarchy: n rows (aggregates first, then
/// the m bottom series) by m columns. The bottom m x m block is the identity.
class AggregationMatrix {
public:
    /// Validates 0/1 entries, the identity bottom block and, when there are
    /// aggregate rows, that every bottom series feeds at least one aggregate.
    explicit AggregationMatrix(Matrix entries);

    const Matrix& entries() const noexcept { return s_; }
    Eigen::Index total() const noexcept { return s_.rows(); }
    Eigen::Index bottom() const noexcept { return s_.cols(); }
    Eigen::Index aggregates() const noexcept { return s_.rows() - s_.cols(); }

private:
    Matrix s_;
};

/// Month/day hierarchy: row 0 is the monthly total, rows 1..n the days.
AggregationMatrix build_two_level(std::size_t n_bottom);

/// Full vector Y = [u v] over a hierarchy, aggregates first.
class HierarchyVector {
public:
    HierarchyVector() = default;
    explicit HierarchyVector(Vector full) : full_(std::move(full)) {}

    const Vector& full() const noexcept { return full_; }
    Eigen::Index size() const noexcept { return full_.size(); }
    double operator[](Eigen::Index i) const { return full_(i); }

    /// The aggregate part u (first r entries) for the given hierarchy.
    Vector aggregates(const AggregationMatrix& s) const;
    /// The bottom part v (last m entries) for the given hierarchy.
    Vector bottom(const AggregationMatrix& s) const;

private:
    Vector full_;
};

HierarchyVector aggregate_bottom(const Vector& v, const AggregationMatrix& s);

/// Max-norm of y - S * bottom(y); zero exactly when y is coherent.
double coherence_residual(const HierarchyVector& y, const AggregationMatrix& s);

} // namespace dtr
