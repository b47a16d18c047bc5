#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "dbar/core.hpp"
#include "dbar/exact.hpp"

namespace dbar {

/// Exponent pair (a, b) of z^a zbar^b over at most kMaxDim variables.
struct Monomial {
    std::array<std::uint8_t, kMaxDim> a{};
    std::array<std::uint8_t, kMaxDim> b{};

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Exact polynomial sum_{a,b} c_{a,b} z^a zbar^b in n complex variables.
///
/// Coefficients are exact complex rationals and zero coefficients are never
/// stored, so structural equality is mathematical equality.
class MultiIndexPoly {
public:
    using TermMap = std::map<Monomial, ExactComplex>;

    explicit MultiIndexPoly(int n = 0);

    static MultiIndexPoly constant(int n, const ExactComplex& c);
    static MultiIndexPoly monomial(int n, std::span<const int> a, std::span<const int> b,
                                   const ExactComplex& c = ExactComplex(1));
    static MultiIndexPoly z(int n, int j);
    static MultiIndexPoly zbar(int n, int j);

    int dimension() const noexcept { return n_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    /// Accumulates c into the coefficient of m, dropping it if it cancels.
    void add_term(const Monomial& m, const ExactComplex& c);

    MultiIndexPoly& operator+=(const MultiIndexPoly& o);
    MultiIndexPoly& operator-=(const MultiIndexPoly& o);
    MultiIndexPoly& operator*=(const ExactComplex& s);
    friend MultiIndexPoly operator+(MultiIndexPoly a, const MultiIndexPoly& b) { return a += b; }
    friend MultiIndexPoly operator-(MultiIndexPoly a, const MultiIndexPoly& b) { return a -= b; }
    friend MultiIndexPoly operator*(MultiIndexPoly a, const ExactComplex& s) { return a *= s; }
    friend MultiIndexPoly operator*(const ExactComplex& s, MultiIndexPoly a) { return a *= s; }
    friend MultiIndexPoly operator*(const MultiIndexPoly& a, const MultiIndexPoly& b);
    friend MultiIndexPoly operator-(const MultiIndexPoly& a);
    friend bool operator==(const MultiIndexPoly& a, const MultiIndexPoly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    std::complex<double> evaluate(std::span<const std::complex<double>> z) const;

    /// Largest |c| over stored terms, 0 for the zero polynomial.
    double max_abs_coefficient() const;
    int max_a(int j) const;
    int max_b(int j) const;
    /// True when some term has a nonzero exponent in variable j.
    bool depends_on(int j) const;
    bool depends_on_zbar(int j) const;

    /// Copy with every coefficient of magnitude below threshold removed.
    MultiIndexPoly pruned(double threshold) const;

private:
    int n_;
    TermMap terms_;
};

/// Floating-point snapshot of a MultiIndexPoly for fast repeated evaluation.
class NumericPoly {
public:
    NumericPoly() = default;
    explicit NumericPoly(const MultiIndexPoly& p);

    int dimension() const noexcept { return n_; }
    std::complex<double> operator()(std::span<const std::complex<double>> z) const;

private:
    struct Term {
        std::array<std::uint8_t, kMaxDim> a;
        std::array<std::uint8_t, kMaxDim> b;
        std::complex<double> c;
    };
    int n_ = 0;
    std::vector<Term> terms_;
    std::array<int, kMaxDim> max_a_{};
    std::array<int, kMaxDim> max_b_{};
};

/// A (0,1)-form f = sum_j f_j dzbar_j with a block structure on the coordinates.
class OneForm {
public:
    OneForm() = default;
    /// Singleton blocks.
    explicit OneForm(std::vector<MultiIndexPoly> components);
    OneForm(std::vector<MultiIndexPoly> components, BlockPartition blocks);

    static OneForm zero(const BlockPartition& blocks);

    int dimension() const noexcept { return static_cast<int>(components_.size()); }
    const BlockPartition& blocks() const noexcept { return blocks_; }
    const MultiIndexPoly& component(int j) const { return components_.at(static_cast<std::size_t>(j)); }
    const std::vector<MultiIndexPoly>& components() const noexcept { return components_; }
    bool is_zero() const;
    double max_abs_coefficient() const;
    OneForm with_blocks(BlockPartition blocks) const;

    OneForm& operator+=(const OneForm& o);
    OneForm& operator-=(const OneForm& o);
    OneForm& operator*=(const ExactComplex& s);
    friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
    friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
    friend OneForm operator*(const ExactComplex& s, OneForm a) { return a *= s; }
    friend bool operator==(const OneForm& a, const OneForm& b) {
        return a.components_ == b.components_;
    }

private:
    std::vector<MultiIndexPoly> components_;
    BlockPartition blocks_;
};

// ---------------------------------------------------------------------------
// Wirtinger calculus
// ---------------------------------------------------------------------------

/// Exact d/dzbar_j.
MultiIndexPoly wirtinger_dbar(const MultiIndexPoly& p, int j);
/// Exact d/dz_j.
MultiIndexPoly wirtinger_d(const MultiIndexPoly& p, int j);

struct ClosedCheck {
    bool closed = true;
    /// Largest coefficient magnitude over all d f_j/dzbar_k - d f_k/dzbar_j.
    double residual = 0.0;
};

ClosedCheck dbar_closed_check(const OneForm& f);
/// Closedness in the coordinates of one block only (the dbar_j-closedness of
/// the block components, other variables treated as parameters).
ClosedCheck block_dbar_closed_check(const OneForm& f, int block);

/// f_I for coordinate subsets: the (|I|-1)-fold barred derivative of f_{i_1}
/// in the remaining directions of I. Requires a closed form when |I| > 1.
MultiIndexPoly subscript_derivative(const OneForm& f, SubsetIndex I);
/// Same, with an explicit presentation (i_1 first). For closed f the result
/// does not depend on the presentation.
MultiIndexPoly subscript_derivative(const OneForm& f, std::span<const int> presentation);

/// One member of the block-level f_I class.
struct FamilyMember {
    int component;                     // coordinate of pi_{i_1}(f) chosen
    std::vector<int> derivative_coords;  // one coordinate in each later block
    MultiIndexPoly value;
};

/// Block version of f_I: every choice of a component of pi_{i_1}(f) and one
/// barred coordinate direction in each remaining block of I. I indexes blocks.
std::vector<FamilyMember> subscript_family(const OneForm& f, SubsetIndex block_subset);
std::vector<FamilyMember> subscript_family(const OneForm& f, std::span<const int> block_presentation);

/// pi_j(f): the components attached to block j, all others zeroed.
OneForm block_project(const OneForm& f, int block);

/// dbar u as a (0,1)-form with the given block structure.
OneForm dbar_apply(const MultiIndexPoly& u, const BlockPartition& blocks);
/// dbar_j u: only the block-j components of dbar u.
OneForm dbar_block_apply(const MultiIndexPoly& u, const BlockPartition& blocks, int block);

namespace detail {
/// f_I without the closedness check (caller guarantees it).
MultiIndexPoly subscript_derivative_unchecked(const OneForm& f, std::span<const int> presentation);
}  // namespace detail

// ---------------------------------------------------------------------------
// Serialization records
// ---------------------------------------------------------------------------

/// {a, b, re, im} record; the external polynomial format.
struct PolyRecord {
    std::vector<int> a;
    std::vector<int> b;
    double re = 0.0;
    double im = 0.0;
};

MultiIndexPoly poly_from_records(int n, std::span<const PolyRecord> records);
std::vector<PolyRecord> poly_to_records(const MultiIndexPoly& p);

}  // namespace dbar
