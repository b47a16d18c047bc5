#include "dbar/forms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dbar {

namespace {

void check_var(int n, int j) {
    if (j < 0 || j >= n) {
        throw SpecError("variable index " + std::to_string(j + 1) + " out of range for n = " +
                        std::to_string(n));
    }
}

void check_dim(int n) {
    if (n < 0 || n > kMaxDim) {
        throw SpecError("dimension must lie in [0, " + std::to_string(kMaxDim) + "]");
    }
}

std::uint8_t narrow_exponent(int e) {
    if (e < 0 || e > 255) throw SpecError("exponent out of range [0, 255]");
    return static_cast<std::uint8_t>(e);
}

}  // namespace

// ---------------------------------------------------------------------------
// MultiIndexPoly
// ---------------------------------------------------------------------------

MultiIndexPoly::MultiIndexPoly(int n) : n_(n) { check_dim(n); }

MultiIndexPoly MultiIndexPoly::constant(int n, const ExactComplex& c) {
    MultiIndexPoly p(n);
    p.add_term(Monomial{}, c);
    return p;
}

MultiIndexPoly MultiIndexPoly::monomial(int n, std::span<const int> a, std::span<const int> b,
                                        const ExactComplex& c) {
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n) {
        throw SpecError("monomial exponent length must equal dimension");
    }
    Monomial m;
    for (int j = 0; j < n; ++j) {
        m.a[static_cast<std::size_t>(j)] = narrow_exponent(a[static_cast<std::size_t>(j)]);
        m.b[static_cast<std::size_t>(j)] = narrow_exponent(b[static_cast<std::size_t>(j)]);
    }
    MultiIndexPoly p(n);
    p.add_term(m, c);
    return p;
}

MultiIndexPoly MultiIndexPoly::z(int n, int j) {
    check_var(n, j);
    Monomial m;
    m.a[static_cast<std::size_t>(j)] = 1;
    MultiIndexPoly p(n);
    p.add_term(m, ExactComplex(1));
    return p;
}

MultiIndexPoly MultiIndexPoly::zbar(int n, int j) {
    check_var(n, j);
    Monomial m;
    m.b[static_cast<std::size_t>(j)] = 1;
    MultiIndexPoly p(n);
    p.add_term(m, ExactComplex(1));
    return p;
}

void MultiIndexPoly::add_term(const Monomial& m, const ExactComplex& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiIndexPoly& MultiIndexPoly::operator+=(const MultiIndexPoly& o) {
    if (o.n_ != n_) throw SpecError("dimension mismatch in polynomial sum");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiIndexPoly& MultiIndexPoly::operator-=(const MultiIndexPoly& o) {
    if (o.n_ != n_) throw SpecError("dimension mismatch in polynomial difference");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiIndexPoly& MultiIndexPoly::operator*=(const ExactComplex& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

MultiIndexPoly operator*(const MultiIndexPoly& a, const MultiIndexPoly& b) {
    if (a.n_ != b.n_) throw SpecError("dimension mismatch in polynomial product");
    MultiIndexPoly out(a.n_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m;
            for (int j = 0; j < a.n_; ++j) {
                auto k = static_cast<std::size_t>(j);
                m.a[k] = narrow_exponent(ma.a[k] + mb.a[k]);
                m.b[k] = narrow_exponent(ma.b[k] + mb.b[k]);
            }
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

MultiIndexPoly operator-(const MultiIndexPoly& a) {
    MultiIndexPoly out = a;
    out *= ExactComplex(-1);
    return out;
}

std::complex<double> MultiIndexPoly::evaluate(std::span<const std::complex<double>> z) const {
    return NumericPoly(*this)(z);
}

double MultiIndexPoly::max_abs_coefficient() const {
    double best = 0.0;
    for (const auto& [m, c] : terms_) best = std::max(best, c.abs());
    return best;
}

int MultiIndexPoly::max_a(int j) const {
    check_var(n_, j);
    int best = 0;
    for (const auto& [m, c] : terms_) best = std::max(best, int{m.a[static_cast<std::size_t>(j)]});
    return best;
}

int MultiIndexPoly::max_b(int j) const {
    check_var(n_, j);
    int best = 0;
    for (const auto& [m, c] : terms_) best = std::max(best, int{m.b[static_cast<std::size_t>(j)]});
    return best;
}

bool MultiIndexPoly::depends_on(int j) const {
    check_var(n_, j);
    auto k = static_cast<std::size_t>(j);
    return std::any_of(terms_.begin(), terms_.end(),
                       [k](const auto& t) { return t.first.a[k] != 0 || t.first.b[k] != 0; });
}

bool MultiIndexPoly::depends_on_zbar(int j) const {
    check_var(n_, j);
    auto k = static_cast<std::size_t>(j);
    return std::any_of(terms_.begin(), terms_.end(),
                       [k](const auto& t) { return t.first.b[k] != 0; });
}

MultiIndexPoly MultiIndexPoly::pruned(double threshold) const {
    MultiIndexPoly out(n_);
    for (const auto& [m, c] : terms_) {
        if (c.abs() >= threshold) out.terms_.emplace(m, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// NumericPoly
// ---------------------------------------------------------------------------

namespace {

std::complex<double> ipow(std::complex<double> x, unsigned e) {
    std::complex<double> r(1.0, 0.0);
    while (e) {
        if (e & 1u) r *= x;
        e >>= 1u;
        if (e) x *= x;
    }
    return r;
}

}  // namespace

NumericPoly::NumericPoly(const MultiIndexPoly& p) : n_(p.dimension()) {
    terms_.reserve(p.term_count());
    for (const auto& [m, c] : p.terms()) {
        terms_.push_back(Term{m.a, m.b, c.to_complex()});
        for (int j = 0; j < n_; ++j) {
            auto k = static_cast<std::size_t>(j);
            max_a_[k] = std::max(max_a_[k], int{m.a[k]});
            max_b_[k] = std::max(max_b_[k], int{m.b[k]});
        }
    }
}

std::complex<double> NumericPoly::operator()(std::span<const std::complex<double>> z) const {
    if (static_cast<int>(z.size()) < n_) throw SpecError("evaluation point has too few coordinates");
    if (terms_.empty()) return {0.0, 0.0};
    if (terms_.size() == 1) {
        // One monomial: square-and-multiply beats building power tables.
        const Term& t = terms_.front();
        std::complex<double> v = t.c;
        for (int j = 0; j < n_; ++j) {
            auto k = static_cast<std::size_t>(j);
            v *= ipow(z[k], t.a[k]) * ipow(std::conj(z[k]), t.b[k]);
        }
        return v;
    }
    // Power tables z_j^k and conj(z_j)^k, laid out per variable.
    thread_local std::vector<std::complex<double>> pow_a;
    thread_local std::vector<std::complex<double>> pow_b;
    std::array<std::size_t, kMaxDim> off_a{};
    std::array<std::size_t, kMaxDim> off_b{};
    std::size_t na = 0;
    std::size_t nb = 0;
    for (int j = 0; j < n_; ++j) {
        auto k = static_cast<std::size_t>(j);
        off_a[k] = na;
        off_b[k] = nb;
        na += static_cast<std::size_t>(max_a_[k]) + 1;
        nb += static_cast<std::size_t>(max_b_[k]) + 1;
    }
    pow_a.resize(na);
    pow_b.resize(nb);
    for (int j = 0; j < n_; ++j) {
        auto k = static_cast<std::size_t>(j);
        const std::complex<double> zj = z[k];
        const std::complex<double> zbj = std::conj(zj);
        pow_a[off_a[k]] = 1.0;
        for (int e = 1; e <= max_a_[k]; ++e) {
            pow_a[off_a[k] + static_cast<std::size_t>(e)] =
                pow_a[off_a[k] + static_cast<std::size_t>(e) - 1] * zj;
        }
        pow_b[off_b[k]] = 1.0;
        for (int e = 1; e <= max_b_[k]; ++e) {
            pow_b[off_b[k] + static_cast<std::size_t>(e)] =
                pow_b[off_b[k] + static_cast<std::size_t>(e) - 1] * zbj;
        }
    }
    std::complex<double> acc{0.0, 0.0};
    for (const Term& t : terms_) {
        std::complex<double> v = t.c;
        for (int j = 0; j < n_; ++j) {
            auto k = static_cast<std::size_t>(j);
            if (t.a[k]) v *= pow_a[off_a[k] + t.a[k]];
            if (t.b[k]) v *= pow_b[off_b[k] + t.b[k]];
        }
        acc += v;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// OneForm
// ---------------------------------------------------------------------------

OneForm::OneForm(std::vector<MultiIndexPoly> components)
    : OneForm(components, BlockPartition::singletons(static_cast<int>(components.size()))) {}

OneForm::OneForm(std::vector<MultiIndexPoly> components, BlockPartition blocks)
    : components_(std::move(components)), blocks_(std::move(blocks)) {
    const int n = static_cast<int>(components_.size());
    if (blocks_.dimension() != n) {
        throw SpecError("block partition dimension does not match component count");
    }
    for (const auto& c : components_) {
        if (c.dimension() != n) throw SpecError("form component has wrong dimension");
    }
}

OneForm OneForm::zero(const BlockPartition& blocks) {
    const int n = blocks.dimension();
    return OneForm(std::vector<MultiIndexPoly>(static_cast<std::size_t>(n), MultiIndexPoly(n)),
                   blocks);
}

bool OneForm::is_zero() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](const MultiIndexPoly& p) { return p.is_zero(); });
}

double OneForm::max_abs_coefficient() const {
    double best = 0.0;
    for (const auto& c : components_) best = std::max(best, c.max_abs_coefficient());
    return best;
}

OneForm OneForm::with_blocks(BlockPartition blocks) const {
    return OneForm(components_, std::move(blocks));
}

OneForm& OneForm::operator+=(const OneForm& o) {
    if (o.dimension() != dimension()) throw SpecError("dimension mismatch in form sum");
    for (std::size_t j = 0; j < components_.size(); ++j) components_[j] += o.components_[j];
    return *this;
}

OneForm& OneForm::operator-=(const OneForm& o) {
    if (o.dimension() != dimension()) throw SpecError("dimension mismatch in form difference");
    for (std::size_t j = 0; j < components_.size(); ++j) components_[j] -= o.components_[j];
    return *this;
}

OneForm& OneForm::operator*=(const ExactComplex& s) {
    for (auto& c : components_) c *= s;
    return *this;
}

// ---------------------------------------------------------------------------
// Wirtinger calculus
// ---------------------------------------------------------------------------

MultiIndexPoly wirtinger_dbar(const MultiIndexPoly& p, int j) {
    check_var(p.dimension(), j);
    auto k = static_cast<std::size_t>(j);
    MultiIndexPoly out(p.dimension());
    for (const auto& [m, c] : p.terms()) {
        if (m.b[k] == 0) continue;
        Monomial d = m;
        d.b[k] = static_cast<std::uint8_t>(m.b[k] - 1);
        out.add_term(d, c * Rational(int{m.b[k]}));
    }
    return out;
}

MultiIndexPoly wirtinger_d(const MultiIndexPoly& p, int j) {
    check_var(p.dimension(), j);
    auto k = static_cast<std::size_t>(j);
    MultiIndexPoly out(p.dimension());
    for (const auto& [m, c] : p.terms()) {
        if (m.a[k] == 0) continue;
        Monomial d = m;
        d.a[k] = static_cast<std::uint8_t>(m.a[k] - 1);
        out.add_term(d, c * Rational(int{m.a[k]}));
    }
    return out;
}

namespace {

ClosedCheck closed_check_over(const OneForm& f, const std::vector<int>& coords) {
    ClosedCheck out;
    for (std::size_t x = 0; x < coords.size(); ++x) {
        for (std::size_t y = x + 1; y < coords.size(); ++y) {
            const int j = coords[x];
            const int k = coords[y];
            MultiIndexPoly diff = wirtinger_dbar(f.component(j), k) - wirtinger_dbar(f.component(k), j);
            if (!diff.is_zero()) {
                out.closed = false;
                out.residual = std::max(out.residual, diff.max_abs_coefficient());
            }
        }
    }
    return out;
}

}  // namespace

ClosedCheck dbar_closed_check(const OneForm& f) {
    std::vector<int> all(static_cast<std::size_t>(f.dimension()));
    for (int j = 0; j < f.dimension(); ++j) all[static_cast<std::size_t>(j)] = j;
    return closed_check_over(f, all);
}

ClosedCheck block_dbar_closed_check(const OneForm& f, int block) {
    if (block < 0 || block >= f.blocks().block_count()) throw SpecError("block index out of range");
    return closed_check_over(f, f.blocks().coords(block));
}

namespace detail {

MultiIndexPoly subscript_derivative_unchecked(const OneForm& f, std::span<const int> presentation) {
    if (presentation.empty()) throw SpecError("f_I is undefined for the empty set");
    MultiIndexPoly out = f.component(presentation[0]);
    for (std::size_t t = 1; t < presentation.size(); ++t) {
        out = wirtinger_dbar(out, presentation[t]);
    }
    return out;
}

}  // namespace detail

namespace {

void validate_presentation(const OneForm& f, std::span<const int> presentation, int limit) {
    if (presentation.empty()) throw SpecError("f_I is undefined for the empty set");
    std::uint32_t seen = 0;
    for (int i : presentation) {
        if (i < 0 || i >= limit) throw SpecError("subset element out of range");
        if ((seen >> i) & 1u) throw SpecError("repeated element in subset presentation");
        seen |= 1u << i;
    }
    if (presentation.size() > 1) {
        ClosedCheck chk = dbar_closed_check(f);
        if (!chk.closed) throw NotClosedError(chk.residual);
    }
}

}  // namespace

MultiIndexPoly subscript_derivative(const OneForm& f, std::span<const int> presentation) {
    validate_presentation(f, presentation, f.dimension());
    return detail::subscript_derivative_unchecked(f, presentation);
}

MultiIndexPoly subscript_derivative(const OneForm& f, SubsetIndex I) {
    const std::vector<int> elems = I.elements();
    return subscript_derivative(f, std::span<const int>(elems));
}

std::vector<FamilyMember> subscript_family(const OneForm& f, std::span<const int> block_presentation) {
    const BlockPartition& blocks = f.blocks();
    validate_presentation(f, block_presentation, blocks.block_count());

    std::vector<FamilyMember> out;
    // Odometer over (component in first block, one coordinate per later block).
    const std::size_t l = block_presentation.size();
    std::vector<std::vector<int>> choices(l);
    for (std::size_t t = 0; t < l; ++t) choices[t] = blocks.coords(block_presentation[t]);
    std::vector<std::size_t> idx(l, 0);
    while (true) {
        FamilyMember member{choices[0][idx[0]], {}, MultiIndexPoly(f.dimension())};
        MultiIndexPoly v = f.component(member.component);
        for (std::size_t t = 1; t < l; ++t) {
            const int c = choices[t][idx[t]];
            member.derivative_coords.push_back(c);
            v = wirtinger_dbar(v, c);
        }
        member.value = std::move(v);
        out.push_back(std::move(member));

        std::size_t t = l;
        while (t > 0) {
            --t;
            if (++idx[t] < choices[t].size()) break;
            idx[t] = 0;
            if (t == 0) return out;
        }
    }
}

std::vector<FamilyMember> subscript_family(const OneForm& f, SubsetIndex block_subset) {
    const std::vector<int> elems = block_subset.elements();
    return subscript_family(f, std::span<const int>(elems));
}

OneForm block_project(const OneForm& f, int block) {
    const BlockPartition& blocks = f.blocks();
    if (block < 0 || block >= blocks.block_count()) throw SpecError("block index out of range");
    std::vector<MultiIndexPoly> comps;
    comps.reserve(static_cast<std::size_t>(f.dimension()));
    for (int j = 0; j < f.dimension(); ++j) {
        comps.push_back(blocks.block_of(j) == block ? f.component(j) : MultiIndexPoly(f.dimension()));
    }
    return OneForm(std::move(comps), blocks);
}

OneForm dbar_apply(const MultiIndexPoly& u, const BlockPartition& blocks) {
    if (blocks.dimension() != u.dimension()) throw SpecError("block partition dimension mismatch");
    std::vector<MultiIndexPoly> comps;
    for (int j = 0; j < u.dimension(); ++j) comps.push_back(wirtinger_dbar(u, j));
    return OneForm(std::move(comps), blocks);
}

OneForm dbar_block_apply(const MultiIndexPoly& u, const BlockPartition& blocks, int block) {
    return block_project(dbar_apply(u, blocks), block);
}

// ---------------------------------------------------------------------------

MultiIndexPoly poly_from_records(int n, std::span<const PolyRecord> records) {
    MultiIndexPoly p(n);
    for (const PolyRecord& r : records) {
        p += MultiIndexPoly::monomial(n, r.a, r.b, ExactComplex::from_double(r.re, r.im));
    }
    return p;
}

std::vector<PolyRecord> poly_to_records(const MultiIndexPoly& p) {
    std::vector<PolyRecord> out;
    for (const auto& [m, c] : p.terms()) {
        PolyRecord r;
        for (int j = 0; j < p.dimension(); ++j) {
            r.a.push_back(m.a[static_cast<std::size_t>(j)]);
            r.b.push_back(m.b[static_cast<std::size_t>(j)]);
        }
        const auto v = c.to_complex();
        r.re = v.real();
        r.im = v.imag();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace dbar
