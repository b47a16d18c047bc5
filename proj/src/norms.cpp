#include "dbar/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "dbar/parallel.hpp"

namespace dbar {

namespace {

constexpr double kPi = std::numbers::pi;

void require_exponent(double p) {
    if (!(p >= 1.0)) throw SpecError("exponent p must be >= 1");
}

/// The grid seen as a product of two blocks of planar factors.
struct BlockView {
    std::size_t size1 = 0;
    std::size_t size2 = 0;
    std::vector<std::vector<cplx>> coords1;  // block-1 point -> its coordinates
    std::vector<std::vector<cplx>> coords2;
};

std::vector<std::vector<cplx>> block_coords(const Grid& grid, const BlockPartition& blocks, int b) {
    const std::vector<int> fs = blocks.coords(b);
    std::size_t count = 1;
    for (int f : fs) count *= grid.factor_size(f);
    std::vector<std::vector<cplx>> out(count, std::vector<cplx>(fs.size()));
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t rem = k;
        for (std::size_t t = fs.size(); t-- > 0;) {
            const std::size_t sz = grid.factor_size(fs[t]);
            out[k][t] = grid.factor(fs[t]).points[rem % sz];
            rem /= sz;
        }
    }
    return out;
}

BlockView make_view(const GridField& field, const BlockPartition& blocks) {
    if (blocks.block_count() != 2) throw SpecError("iterated Hölder norms need exactly two blocks");
    if (blocks.dimension() != field.grid.dimension()) throw SpecError("block partition does not match grid");
    BlockView v;
    v.coords1 = block_coords(field.grid, blocks, 0);
    v.coords2 = block_coords(field.grid, blocks, 1);
    v.size1 = v.coords1.size();
    v.size2 = v.coords2.size();
    return v;
}

double distance(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
    return std::sqrt(s);
}

std::vector<std::size_t> subgrid_indices(std::size_t size, int count) {
    std::vector<std::size_t> out;
    const auto c = static_cast<std::size_t>(std::max(1, count));
    if (size <= c) {
        for (std::size_t i = 0; i < size; ++i) out.push_back(i);
        return out;
    }
    for (std::size_t t = 0; t < c; ++t) out.push_back((2 * t + 1) * size / (2 * c));
    return out;
}

/// Sampled Hölder quotient over pairs of points of one index set, the value
/// accessor giving g at a point of that set.
template <class Value>
double one_block_holder(const std::vector<std::vector<cplx>>& coords, Value&& value, double alpha,
                        const HolderSampling& s, std::mt19937_64& rng) {
    double best = 0.0;
    const std::vector<std::size_t> sub = subgrid_indices(coords.size(), s.subgrid);
    auto quotient = [&](std::size_t i, std::size_t j) {
        const double d = distance(coords[i], coords[j]);
        if (!(d > 0.0)) return;
        best = nan_max(best, std::abs(value(i) - value(j)) / std::pow(d, alpha));
    };
    for (std::size_t x = 0; x < sub.size(); ++x) {
        for (std::size_t y = x + 1; y < sub.size(); ++y) quotient(sub[x], sub[y]);
    }
    if (coords.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, coords.size() - 1);
        for (int t = 0; t < s.random_pairs; ++t) {
            const std::size_t i = pick(rng);
            const std::size_t j = pick(rng);
            if (i != j) quotient(i, j);
        }
    }
    return best;
}

}  // namespace

double lp_norm(const GridField& field, double p, int threads) {
    require_exponent(p);
    const std::size_t n = field.values.size();
    if (n == 0 || n != field.grid.size()) throw SpecError("field is empty or does not match its grid");
    if (std::isinf(p)) {
        return deterministic_max(n, threads, [&](std::size_t k) {
            const cplx v = field.values[k];
            return std::isnan(v.real()) ? 0.0 : std::abs(v);
        });
    }
    const double s = deterministic_sum<double>(n, threads, [&](std::size_t k) {
        const cplx v = field.values[k];
        if (std::isnan(v.real())) return 0.0;
        return std::pow(std::abs(v), p) * field.grid.volume(k);
    });
    return std::pow(s, 1.0 / p);
}

bool admissible_exponents(double r, double p) {
    if (!(r >= 1.0) || !(p >= r)) return false;
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
    return inv_r - inv_p < 0.5;
}

double mixed_H_norm(const GridField& field, SubsetIndex I, double r, double p) {
    if (I.empty()) throw SpecError("mixed norm needs a nonempty subset");
    if (!admissible_exponents(r, p)) {
        throw SpecError("inadmissible exponents: need 1 <= r <= p and 1/r - 1/p < 1/2");
    }
    const Grid& grid = field.grid;
    const int n = grid.dimension();
    if (!I.subset_of(SubsetIndex::full(n))) throw SpecError("subset exceeds grid dimension");
    if (field.values.size() != grid.size()) throw SpecError("field does not match its grid");

    // Outer index: row-major over the factors outside I.
    std::vector<std::size_t> outer_stride(static_cast<std::size_t>(n), 0);
    std::size_t outer_size = 1;
    for (int j = n - 1; j >= 0; --j) {
        if (I.contains(j)) continue;
        outer_stride[static_cast<std::size_t>(j)] = outer_size;
        outer_size *= grid.factor_size(j);
    }
    std::vector<double> inner(outer_size, 0.0);
    std::vector<double> outer_volume(outer_size, 1.0);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        grid.unflatten(k, idx);
        std::size_t o = 0;
        double vin = 1.0;
        double vout = 1.0;
        for (int j = 0; j < n; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            const double vol = grid.factor(j).volumes[idx[jj]];
            if (I.contains(j)) {
                vin *= vol;
            } else {
                o += idx[jj] * outer_stride[jj];
                vout *= vol;
            }
        }
        outer_volume[o] = vout;
        const cplx v = field.values[k];
        if (std::isnan(v.real())) continue;
        if (std::isinf(r)) {
            inner[o] = std::max(inner[o], std::abs(v));
        } else {
            inner[o] += std::pow(std::abs(v), r) * vin;
        }
    }
    for (double& x : inner) {
        if (!std::isinf(r)) x = std::pow(x, 1.0 / r);
    }
    if (std::isinf(p)) return *std::max_element(inner.begin(), inner.end());
    std::vector<double> terms(outer_size);
    for (std::size_t o = 0; o < outer_size; ++o) terms[o] = std::pow(inner[o], p) * outer_volume[o];
    return std::pow(pairwise_sum(terms), 1.0 / p);
}

double iterated_holder_seminorm(const GridField& field, const BlockPartition& blocks,
                                std::array<double, 2> alpha, const HolderSampling& sampling) {
    for (double a : alpha) {
        if (!(a > 0.0 && a < 1.0)) throw SpecError("Hölder exponents must lie in (0, 1)");
    }
    const BlockView v = make_view(field, blocks);
    const auto& g = field.values;
    const std::size_t S2 = v.size2;
    using Quad = std::array<std::size_t, 4>;
    auto quotient = [&](const Quad& q) {
        const double d1 = distance(v.coords1[q[0]], v.coords1[q[1]]);
        const double d2 = distance(v.coords2[q[2]], v.coords2[q[3]]);
        if (!(d1 > 0.0) || !(d2 > 0.0)) return 0.0;
        // Grouped so that a function of one block alone cancels exactly.
        const cplx diff = (g[q[0] * S2 + q[2]] - g[q[1] * S2 + q[2]]) - (g[q[0] * S2 + q[3]] - g[q[1] * S2 + q[3]]);
        const double x = std::abs(diff) / (std::pow(d1, alpha[0]) * std::pow(d2, alpha[1]));
        return std::isnan(x) ? 0.0 : x;
    };
    // Best few starting quadruples, kept sorted by quotient (descending).
    const std::size_t keep = static_cast<std::size_t>(std::max(sampling.ascent_starts, 1));
    std::vector<std::pair<double, Quad>> top;
    auto offer = [&](const Quad& q) {
        const double x = quotient(q);
        if (!(x > 0.0)) return;
        if (top.size() == keep && x <= top.back().first) return;
        auto it = std::find_if(top.begin(), top.end(), [x](const auto& e) { return x > e.first; });
        top.insert(it, {x, q});
        if (top.size() > keep) top.pop_back();
    };
    const std::vector<std::size_t> sub1 = subgrid_indices(v.size1, sampling.subgrid);
    const std::vector<std::size_t> sub2 = subgrid_indices(v.size2, sampling.subgrid);
    for (std::size_t a = 0; a < sub1.size(); ++a) {
        for (std::size_t b = a + 1; b < sub1.size(); ++b) {
            for (std::size_t c = 0; c < sub2.size(); ++c) {
                for (std::size_t d = c + 1; d < sub2.size(); ++d) offer({sub1[a], sub1[b], sub2[c], sub2[d]});
            }
        }
    }
    if (v.size1 > 1 && v.size2 > 1) {
        std::mt19937_64 rng(sampling.seed);
        std::uniform_int_distribution<std::size_t> p1(0, v.size1 - 1);
        std::uniform_int_distribution<std::size_t> p2(0, v.size2 - 1);
        for (int t = 0; t < sampling.random_pairs; ++t) {
            const std::size_t z1 = p1(rng);
            const std::size_t w1 = p1(rng);
            const std::size_t z2 = p2(rng);
            const std::size_t w2 = p2(rng);
            offer({z1, w1, z2, w2});
        }
    }
    // Coordinate ascent over grid points: move one endpoint at a time to the best
    // point of its block until nothing improves.
    double best = top.empty() ? 0.0 : top.front().first;
    if (sampling.ascent_starts <= 0) return best;
    for (auto [x, q] : top) {
        for (int sweep = 0; sweep < 50; ++sweep) {
            bool moved = false;
            for (int slot = 0; slot < 4; ++slot) {
                const std::size_t size = slot < 2 ? v.size1 : v.size2;
                Quad trial = q;
                for (std::size_t i = 0; i < size; ++i) {
                    trial[static_cast<std::size_t>(slot)] = i;
                    const double y = quotient(trial);
                    if (y > x) {
                        x = y;
                        q = trial;
                        moved = true;
                    }
                }
            }
            if (!moved) break;
        }
        best = std::max(best, x);
    }
    return best;
}

double linf_holder_norm(const GridField& field, const BlockPartition& blocks, int holder_block,
                        double alpha, const HolderSampling& sampling) {
    if (holder_block != 0 && holder_block != 1) throw SpecError("holder block must be 0 or 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw SpecError("Hölder exponent must lie in (0, 1)");
    const BlockView v = make_view(field, blocks);
    const auto& g = field.values;
    const std::size_t S2 = v.size2;
    const bool second = holder_block == 1;
    const std::size_t outer = second ? v.size1 : v.size2;
    const std::size_t inner = second ? v.size2 : v.size1;
    const auto& coords = second ? v.coords2 : v.coords1;
    std::mt19937_64 rng(sampling.seed);
    double best = 0.0;
    for (std::size_t o = 0; o < outer; ++o) {
        auto at = [&](std::size_t i) { return second ? g[o * S2 + i] : g[i * S2 + o]; };
        double sup = 0.0;
        for (std::size_t i = 0; i < inner; ++i) sup = nan_max(sup, std::abs(at(i)));
        best = nan_max(best, sup + one_block_holder(coords, at, alpha, sampling, rng));
    }
    return best;
}

double young_conjugate(double p, double r) {
    require_exponent(p);
    require_exponent(r);
    const double inv = (std::isinf(p) ? 0.0 : 1.0 / p) + 1.0 - (std::isinf(r) ? 0.0 : 1.0 / r);
    if (!(inv > 0.0)) throw SpecError("no finite conjugate exponent for these p, r");
    return 1.0 / inv;
}

double young_bound_constant(double R, double p, double r) {
    if (!(R > 0.0)) throw SpecError("radius must be positive");
    const double rc = young_conjugate(p, r);
    if (rc < 1.0) throw SpecError("r must not exceed p");
    if (!(rc < 2.0)) throw SpecError("conjugate exponent r' must be < 2 (got " + std::to_string(rc) + ")");
    return std::pow(2.0 * kPi * std::pow(R, 2.0 - rc) / (2.0 - rc), 1.0 / rc);
}

double oscillating_mixed_difference(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw SpecError("path parameters must be positive");
    const double s = std::hypot(a, b);
    // sin(1/s) - sin(1/a) with 1/s - 1/a = -b^2 / (a s (a + s)).
    const double delta = -b * b / (a * s * (a + s));
    const double first = 2.0 * std::cos(1.0 / a + 0.5 * delta) * std::sin(0.5 * delta);
    const double second = std::sin(1.0 / s) - std::sin(1.0 / b);
    return a * a * first + b * b * second;
}

double oscillating_path_quotient(double a, double k, std::array<double, 2> alpha) {
    const double b = std::pow(a, k);
    return std::abs(oscillating_mixed_difference(a, b)) / (std::pow(a, alpha[0]) * std::pow(b, alpha[1]));
}

}  // namespace dbar
