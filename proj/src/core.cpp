#include "dbar/core.hpp"

#include <bit>
#include <sstream>

namespace dbar {

namespace {

std::string format_distance_message(int factor, double distance, double threshold) {
    std::ostringstream os;
    os.precision(6);
    os << "near-boundary evaluation: point is at distance " << distance
       << " from the boundary of factor " << (factor + 1) << " (threshold " << threshold
       << ")";
    return os.str();
}

std::string format_closed_message(double residual) {
    std::ostringstream os;
    os.precision(6);
    os << "dbar_closed_check failed: form is not dbar-closed (max residual " << residual
       << ")";
    return os.str();
}

}  // namespace

NotClosedError::NotClosedError(double residual)
    : SpecError(format_closed_message(residual)), residual_(residual) {}

NearBoundaryError::NearBoundaryError(int factor, double distance, double threshold)
    : std::domain_error(format_distance_message(factor, distance, threshold)),
      factor_(factor),
      distance_(distance) {}

// ---------------------------------------------------------------------------

SubsetIndex SubsetIndex::from_elements(std::span<const int> elements) {
    std::uint32_t mask = 0;
    for (int e : elements) {
        if (e < 0 || e >= kMaxDim) {
            throw SpecError("subset element out of range: " + std::to_string(e + 1));
        }
        mask |= 1u << e;
    }
    return SubsetIndex(mask);
}

SubsetIndex SubsetIndex::from_elements(std::initializer_list<int> elements) {
    return from_elements(std::span<const int>(elements.begin(), elements.size()));
}

SubsetIndex SubsetIndex::full(int n) { return SubsetIndex((1u << n) - 1u); }

int SubsetIndex::size() const noexcept { return std::popcount(mask_); }

std::vector<int> SubsetIndex::elements() const {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

SubsetIndex SubsetIndex::complement(int n) const {
    return SubsetIndex(~mask_ & ((1u << n) - 1u));
}

std::string SubsetIndex::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first) s += ",";
        s += std::to_string(e + 1);
        first = false;
    }
    return s + "}";
}

std::vector<SubsetIndex> nonempty_subsets(int n) {
    std::vector<SubsetIndex> out;
    for (std::uint32_t m = 1; m < (1u << n); ++m) out.emplace_back(m);
    return out;
}

std::vector<SubsetIndex> all_subsets(int n) {
    std::vector<SubsetIndex> out;
    for (std::uint32_t m = 0; m < (1u << n); ++m) out.emplace_back(m);
    return out;
}

// ---------------------------------------------------------------------------

BlockPartition::BlockPartition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    int acc = 0;
    for (int s : sizes_) {
        if (s < 1) throw SpecError("block sizes must be positive");
        offsets_.push_back(acc);
        acc += s;
    }
    if (acc > kMaxDim) {
        throw SpecError("product dimension " + std::to_string(acc) + " exceeds " +
                        std::to_string(kMaxDim));
    }
    dimension_ = acc;
}

BlockPartition BlockPartition::singletons(int n) {
    return BlockPartition(std::vector<int>(static_cast<std::size_t>(n), 1));
}

BlockPartition BlockPartition::from_groups(const std::vector<std::vector<int>>& groups) {
    std::vector<int> sizes;
    int expected = 0;
    for (const auto& g : groups) {
        if (g.empty()) throw SpecError("empty block in partition");
        for (int c : g) {
            if (c != expected) {
                throw SpecError("blocks must be consecutive, disjoint and cover all factors");
            }
            ++expected;
        }
        sizes.push_back(static_cast<int>(g.size()));
    }
    return BlockPartition(std::move(sizes));
}

std::vector<int> BlockPartition::coords(int block) const {
    std::vector<int> out(static_cast<std::size_t>(size(block)));
    for (int i = 0; i < size(block); ++i) out[static_cast<std::size_t>(i)] = offset(block) + i;
    return out;
}

int BlockPartition::block_of(int coord) const {
    if (coord < 0 || coord >= dimension_) throw SpecError("coordinate out of range");
    for (int j = block_count() - 1; j >= 0; --j) {
        if (coord >= offsets_[static_cast<std::size_t>(j)]) return j;
    }
    throw SpecError("coordinate out of range");
}

}  // namespace dbar
