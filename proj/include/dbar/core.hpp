#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbar {

using cplx = std::complex<double>;

/// Hard upper bound on the number of planar factors a product domain may have.
inline constexpr int kMaxDim = 8;

/// Default ceiling on n for the 2^n - 1 term operator; callers may raise it up to kMaxDim.
inline constexpr int kDefaultMaxDim = 4;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Invalid input: bad shapes, indices, or parameters.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A (0,1)-form failed the symbolic closedness check where closedness is required.
class NotClosedError : public SpecError {
public:
    explicit NotClosedError(double residual);
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Evaluation point too close to a factor boundary for the quadrature to be trusted.
class NearBoundaryError : public std::domain_error {
public:
    NearBoundaryError(int factor, double distance, double threshold);
    int factor() const noexcept { return factor_; }
    double distance() const noexcept { return distance_; }

private:
    int factor_;
    double distance_;
};

// ---------------------------------------------------------------------------
// SubsetIndex
// ---------------------------------------------------------------------------

/// A subset of {0, ..., n-1} stored as a bitmask. Elements are 0-based in code
/// and printed 1-based.
class SubsetIndex {
public:
    constexpr SubsetIndex() = default;
    constexpr explicit SubsetIndex(std::uint32_t mask) : mask_(mask) {}

    static SubsetIndex from_elements(std::span<const int> elements);
    static SubsetIndex from_elements(std::initializer_list<int> elements);
    static SubsetIndex full(int n);

    constexpr std::uint32_t mask() const noexcept { return mask_; }
    constexpr bool empty() const noexcept { return mask_ == 0; }
    constexpr bool contains(int i) const noexcept { return (mask_ >> i) & 1u; }
    int size() const noexcept;
    /// Sorted elements i_1 < ... < i_l.
    std::vector<int> elements() const;
    SubsetIndex complement(int n) const;
    constexpr bool subset_of(SubsetIndex other) const noexcept {
        return (mask_ & ~other.mask_) == 0;
    }
    /// 1-based display, e.g. "{1,3}".
    std::string to_string() const;

    friend constexpr bool operator==(SubsetIndex, SubsetIndex) = default;
    friend constexpr auto operator<=>(SubsetIndex, SubsetIndex) = default;

private:
    std::uint32_t mask_ = 0;
};

/// All nonempty subsets of {0..n-1} in increasing bitmask order.
std::vector<SubsetIndex> nonempty_subsets(int n);

/// All subsets of {0..n-1}, including the empty set first.
std::vector<SubsetIndex> all_subsets(int n);

// ---------------------------------------------------------------------------
// BlockPartition
// ---------------------------------------------------------------------------

/// Partition of planar coordinates {0..n-1} into consecutive blocks.
class BlockPartition {
public:
    BlockPartition() = default;
    explicit BlockPartition(std::vector<int> sizes);

    /// n blocks of size one.
    static BlockPartition singletons(int n);
    /// Build from explicit coordinate groups (0-based); groups must be
    /// consecutive, disjoint and cover 0..n-1 in order.
    static BlockPartition from_groups(const std::vector<std::vector<int>>& groups);

    int block_count() const noexcept { return static_cast<int>(sizes_.size()); }
    int dimension() const noexcept { return dimension_; }
    int size(int block) const { return sizes_.at(block); }
    int offset(int block) const { return offsets_.at(block); }
    std::vector<int> coords(int block) const;
    int block_of(int coord) const;
    bool all_singletons() const noexcept { return block_count() == dimension_; }
    const std::vector<int>& sizes() const noexcept { return sizes_; }

    friend bool operator==(const BlockPartition& a, const BlockPartition& b) {
        return a.sizes_ == b.sizes_;
    }

private:
    std::vector<int> sizes_;
    std::vector<int> offsets_;
    int dimension_ = 0;
};

}  // namespace dbar
