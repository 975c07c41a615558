#pragma once

#include <Eigen/Core>

#include "rlnc/field.hpp"

namespace rlnc {

/// Dense row-major storage for matrices over F_q.
using ElementMatrix = Eigen::Matrix<Element, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Coding vectors received at the destination, one row per delivered coded
/// packet and one column per source.
class CodingMatrix {
public:
    CodingMatrix(Field field, Eigen::Index rows, Eigen::Index cols);

    /// Takes ownership of `entries`; throws std::invalid_argument if any
    /// entry lies outside the field or there are no columns.
    CodingMatrix(Field field, ElementMatrix entries);

    const Field& field() const noexcept { return field_; }
    Eigen::Index rows() const noexcept { return entries_.rows(); }
    Eigen::Index cols() const noexcept { return entries_.cols(); }

    const ElementMatrix& entries() const noexcept { return entries_; }

    Element operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    /// Writes one entry; throws std::out_of_range for values not in F_q.
    void set(Eigen::Index i, Eigen::Index j, Element value);

    CodingMatrix transpose() const;

private:
    Field field_;
    ElementMatrix entries_;
};

/// Rank over F_q by Gaussian elimination on a private copy, taking the first
/// nonzero pivot in each column.
Eigen::Index rank(const Field& field, const Eigen::Ref<const ElementMatrix>& entries);
Eigen::Index rank(const CodingMatrix& a);

/// True iff the rank equals the column count. A matrix with no rows is
/// decodable only when it also has no columns. Elimination stops at the first
/// column without a pivot.
bool is_decodable(const Field& field, const Eigen::Ref<const ElementMatrix>& entries);
bool is_decodable(const CodingMatrix& a);

} // namespace rlnc
