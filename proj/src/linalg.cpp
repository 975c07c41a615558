#include "rlnc/linalg.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rlnc {

namespace {

// F_2 with at most 64 columns: one word per row, row operations are XORs.
Eigen::Index rank_binary(const Eigen::Ref<const ElementMatrix>& a, bool stop_on_deficiency)
{
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    thread_local std::vector<std::uint64_t> packed;
    packed.assign(static_cast<std::size_t>(rows), 0);
    for (Eigen::Index i = 0; i < rows; ++i) {
        std::uint64_t word = 0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            word |= static_cast<std::uint64_t>(a(i, j) & 1u) << j;
        }
        packed[static_cast<std::size_t>(i)] = word;
    }

    Eigen::Index rank = 0;
    for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        Eigen::Index pivot = rank;
        while (pivot < rows && !(packed[static_cast<std::size_t>(pivot)] & bit)) ++pivot;
        if (pivot == rows) {
            if (stop_on_deficiency) return rank;
            continue;
        }
        std::swap(packed[static_cast<std::size_t>(rank)], packed[static_cast<std::size_t>(pivot)]);
        const std::uint64_t pivot_row = packed[static_cast<std::size_t>(rank)];
        for (Eigen::Index i = rank + 1; i < rows; ++i) {
            auto& row = packed[static_cast<std::size_t>(i)];
            if (row & bit) row ^= pivot_row;
        }
        ++rank;
    }
    return rank;
}

Eigen::Index rank_general(const Field& f, const Eigen::Ref<const ElementMatrix>& a,
                          bool stop_on_deficiency)
{
    thread_local ElementMatrix work;
    work = a;
    const Eigen::Index rows = work.rows();
    const Eigen::Index cols = work.cols();

    Eigen::Index rank = 0;
    for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
        Eigen::Index pivot = rank;
        while (pivot < rows && work(pivot, c) == 0) ++pivot;
        if (pivot == rows) {
            if (stop_on_deficiency) return rank;
            continue;
        }
        if (pivot != rank) work.row(pivot).swap(work.row(rank));

        const Element scale = f.inv(work(rank, c));
        for (Eigen::Index j = c; j < cols; ++j) work(rank, j) = f.mul(work(rank, j), scale);

        for (Eigen::Index i = rank + 1; i < rows; ++i) {
            const Element factor = work(i, c);
            if (factor == 0) continue;
            for (Eigen::Index j = c; j < cols; ++j) {
                work(i, j) = f.sub(work(i, j), f.mul(factor, work(rank, j)));
            }
        }
        ++rank;
    }
    return rank;
}

Eigen::Index eliminate(const Field& f, const Eigen::Ref<const ElementMatrix>& a,
                       bool stop_on_deficiency)
{
    if (a.rows() == 0 || a.cols() == 0) return 0;
    if (f.order() == 2 && a.cols() <= 64) return rank_binary(a, stop_on_deficiency);
    return rank_general(f, a, stop_on_deficiency);
}

} // namespace

CodingMatrix::CodingMatrix(Field field, Eigen::Index rows, Eigen::Index cols)
    : field_(std::move(field)), entries_(ElementMatrix::Zero(rows, cols))
{
    if (cols < 1) throw std::invalid_argument("coding matrix needs at least one column");
}

CodingMatrix::CodingMatrix(Field field, ElementMatrix entries)
    : field_(std::move(field)), entries_(std::move(entries))
{
    if (entries_.cols() < 1) throw std::invalid_argument("coding matrix needs at least one column");
    if (entries_.size() > 0 && entries_.maxCoeff() >= field_.order()) {
        throw std::invalid_argument("coding matrix entry outside F_" + std::to_string(field_.order()));
    }
}

void CodingMatrix::set(Eigen::Index i, Eigen::Index j, Element value)
{
    if (!field_.contains(value)) {
        throw std::out_of_range("value " + std::to_string(value) + " outside F_" +
                                std::to_string(field_.order()));
    }
    entries_(i, j) = value;
}

CodingMatrix CodingMatrix::transpose() const
{
    if (rows() == 0) throw std::invalid_argument("cannot transpose a matrix with no rows");
    return CodingMatrix(field_, ElementMatrix(entries_.transpose()));
}

Eigen::Index rank(const Field& field, const Eigen::Ref<const ElementMatrix>& entries)
{
    return eliminate(field, entries, false);
}

Eigen::Index rank(const CodingMatrix& a) { return rank(a.field(), a.entries()); }

bool is_decodable(const Field& field, const Eigen::Ref<const ElementMatrix>& entries)
{
    if (entries.rows() < entries.cols()) return false;
    return eliminate(field, entries, true) == entries.cols();
}

bool is_decodable(const CodingMatrix& a) { return is_decodable(a.field(), a.entries()); }

} // namespace rlnc
