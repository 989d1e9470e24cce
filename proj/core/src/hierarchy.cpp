#include "dtr/hierarchy.hpp"

#include "dtr/error.hpp"

#include <string>

namespace dtr {
namespace {

void require_size(const HierarchyVector& y, const AggregationMatrix& s) {
    if (y.size() != s.total()) {
        throw Error(ErrorKind::Shape, "hierarchy vector has length " + std::to_string(y.size()) +
                                          ", aggregation matrix expects " + std::to_string(s.total()));
    }
}

} // namespace

AggregationMatrix::AggregationMatrix(Matrix entries) : s_(std::move(entries)) {
    const Eigen::Index n = s_.rows();
    const Eigen::Index m = s_.cols();
    if (m < 1 || n < m) {
        throw Error(ErrorKind::InvalidHierarchy, "aggregation matrix must be n x m with n >= m >= 1, got " +
                                                     std::to_string(n) + "x" + std::to_string(m));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const double x = s_(i, j);
            if (x != 0.0 && x != 1.0) {
                throw Error(ErrorKind::InvalidHierarchy, "aggregation matrix entries must be 0 or 1");
            }
        }
    }
    const Eigen::Index r = n - m;
    if (!s_.bottomRows(m).isIdentity(0.0)) {
        throw Error(ErrorKind::InvalidHierarchy, "bottom block of the aggregation matrix is not the identity");
    }
    if (r > 0) {
        for (Eigen::Index j = 0; j < m; ++j) {
            if (s_.topRows(r).col(j).sum() < 1.0) {
                throw Error(ErrorKind::InvalidHierarchy,
                            "bottom series " + std::to_string(j) + " does not feed any aggregate");
            }
        }
    }
}

AggregationMatrix build_two_level(std::size_t n_bottom) {
    if (n_bottom == 0) throw Error(ErrorKind::InvalidHierarchy, "a hierarchy needs at least one bottom series");
    const auto m = static_cast<Eigen::Index>(n_bottom);
    Matrix s(m + 1, m);
    s.row(0).setOnes();
    s.bottomRows(m).setIdentity();
    return AggregationMatrix(std::move(s));
}

Vector HierarchyVector::aggregates(const AggregationMatrix& s) const {
    require_size(*this, s);
    return full_.head(s.aggregates());
}

Vector HierarchyVector::bottom(const AggregationMatrix& s) const {
    require_size(*this, s);
    return full_.tail(s.bottom());
}

HierarchyVector aggregate_bottom(const Vector& v, const AggregationMatrix& s) {
    if (v.size() != s.bottom()) {
        throw Error(ErrorKind::Shape, "bottom vector has length " + std::to_string(v.size()) +
                                          ", aggregation matrix expects " + std::to_string(s.bottom()));
    }
    Vector full = s.entries() * v;
    // The identity block reproduces v already; copy it anyway so the bottom
    // entries are bit-identical to the input regardless of summation order.
    full.tail(s.bottom()) = v;
    return HierarchyVector(std::move(full));
}

double coherence_residual(const HierarchyVector& y, const AggregationMatrix& s) {
    require_size(y, s);
    const Vector implied = s.entries() * y.bottom(s);
    return (y.full() - implied).lpNorm<Eigen::Infinity>();
}

} // namespace dtr
