#include "volent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <span>
#include <string>

#include "volent/entropy.hpp"
#include "volent/geometry.hpp"
#include "volent/rng.hpp"

namespace volent::verify {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int64_t kBlockSize = 1 << 16; // samples per RNG substream

// Log-sum-exp accumulator. Adding and merging are exact in order, so a
// fixed block order gives bit-identical totals regardless of scheduling.
struct LseAccum {
    double max = kNegInf;
    double sum = 0.0; // sum of exp(l - max)

    void add(double l) {
        if (l == kNegInf) return;
        if (l <= max) {
            sum += std::exp(l - max);
        } else {
            sum = sum * std::exp(max - l) + 1.0;
            max = l;
        }
    }

    void merge(const LseAccum& other) {
        if (other.sum == 0.0) return;
        if (sum == 0.0) {
            *this = other;
            return;
        }
        if (other.max <= max) {
            sum += other.sum * std::exp(other.max - max);
        } else {
            sum = sum * std::exp(max - other.max) + other.sum;
            max = other.max;
        }
    }

    double log_total() const { return sum == 0.0 ? kNegInf : max + std::log(sum); }
};

// Radial integrand of a product domain: one ordered block of coordinates
// per factor, density multiplicative across blocks.
struct IntegrandLayout {
    std::vector<geometry::RadialDensityParams> blocks;
    std::vector<int> block_start;
    int total_rank = 0;

    explicit IntegrandLayout(const ProductSpec& domain) {
        for (const auto& factor : domain.factors) {
            blocks.emplace_back(factor);
            block_start.push_back(total_rank);
            total_rank += static_cast<int>(factor.r);
        }
    }

    double log_density(std::span<const double> t) const {
        double logd = 0.0;
        for (size_t k = 0; k < blocks.size(); ++k) {
            logd += geometry::log_radial_density_t(
                t.subspan(static_cast<size_t>(block_start[k]),
                          static_cast<size_t>(blocks[k].r)),
                blocks[k]);
        }
        return logd;
    }

    void sort_blocks_descending(std::span<double> t) const {
        for (size_t k = 0; k < blocks.size(); ++k) {
            auto begin = t.begin() + block_start[k];
            std::sort(begin, begin + blocks[k].r, std::greater<>());
        }
    }
};

// ---- Gauss-Legendre nodes -------------------------------------------------

struct GaussRule {
    std::vector<double> x; // nodes on [-1, 1]
    std::vector<double> w;
};

GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.x.resize(static_cast<size_t>(n));
    rule.w.resize(static_cast<size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.x[static_cast<size_t>(i)] = -z;
        rule.x[static_cast<size_t>(n - 1 - i)] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[static_cast<size_t>(i)] = w;
        rule.w[static_cast<size_t>(n - 1 - i)] = w;
    }
    return rule;
}

// ---- Quadrature over the cone-restricted ball ------------------------------
//
// The region {t in cone product, |t| <= T} is integrated in spherical
// coordinates, where every ordering constraint becomes a smooth angular
// bound (Cartesian nesting would put the circular boundary inside panels
// and destroy the convergence order):
//   R = 2: t = rho (cos h1, sin h1),           h1 in (0, H1)
//   R = 3: t = rho (cos h1, sin h1 cos h2, sin h1 sin h2)
// with H1 = pi/4 for an ordered pair, pi/2 across blocks, and in rank
// three the bound on h1 is atan(sec h2) where coordinates 0 and 1 share a
// block. The Jacobian is rho^(R-1) sin(h1)^(R-2).

struct AngularRegion {
    double h2_max = 0.0;      // outer angle range (R = 3 only)
    double h1_const = 0.0;    // inner angle range when independent of h2
    bool h1_depends = false;  // h1 bounded by atan(sec h2)

    explicit AngularRegion(const IntegrandLayout& layout) {
        const auto& blocks = layout.blocks;
        if (layout.total_rank == 2) {
            h1_const = blocks.size() == 1 ? std::numbers::pi / 4 : std::numbers::pi / 2;
        } else if (layout.total_rank == 3) {
            // first two coordinates ordered iff they share a block
            h1_depends = blocks[0].r >= 2;
            h1_const = std::numbers::pi / 2;
            // last two coordinates ordered iff they share a block
            const bool tail_ordered = blocks.back().r >= 2 && blocks[0].r != 3;
            h2_max = (blocks[0].r == 3 || tail_ordered) ? std::numbers::pi / 4
                                                        : std::numbers::pi / 2;
        }
    }
};

struct PanelIterator {
    double length;
    int npanels;

    PanelIterator(double range, double width)
        : length(range),
          npanels(std::max(1, static_cast<int>(std::ceil(range / width)))) {}

    // node i of panel p mapped onto (0, length), with the local weight
    double node(const GaussRule& rule, int p, size_t i) const {
        const double a = length * p / npanels;
        const double b = length * (p + 1) / npanels;
        return 0.5 * (a + b) + 0.5 * (b - a) * rule.x[i];
    }
    double log_weight(const GaussRule& rule, size_t i) const {
        return std::log(0.5 * (length / npanels) * rule.w[i]);
    }
};

// Integral over rho in (0, T) of f(rho x) rho^(R-1) for a fixed direction.
void radial_integral(const IntegrandLayout& layout, const GaussRule& rule,
                     double panel_width, double radius, std::span<const double> direction,
                     double log_weight, std::vector<double>& t, LseAccum& acc) {
    const int total = layout.total_rank;
    const PanelIterator panels(radius, panel_width);
    for (int p = 0; p < panels.npanels; ++p) {
        for (size_t i = 0; i < rule.x.size(); ++i) {
            const double rho = panels.node(rule, p, i);
            double lw = log_weight + panels.log_weight(rule, i) +
                        (total - 1) * std::log(rho);
            for (int j = 0; j < total; ++j)
                t[static_cast<size_t>(j)] = rho * direction[static_cast<size_t>(j)];
            acc.add(lw + layout.log_density(t));
        }
    }
}

LogEstimate quadrature_log_volume(const IntegrandLayout& layout, double radius,
                                  const Quadrature& method, Exec exec) {
    const int total = layout.total_rank;
    if (total > 3) {
        throw UnsupportedRankError("quadrature supports total rank <= 3, got " +
                                   std::to_string(total));
    }
    const GaussRule rule = gauss_legendre(method.nodes);
    const double angle_width = 0.5 * method.panel_width;
    const AngularRegion region(layout);

    // Tasks: radial panels for rank one, outermost-angle nodes otherwise.
    // Each task fills its own slot; slots are reduced in order afterwards.
    std::vector<LseAccum> partials;

    if (total == 1) {
        const PanelIterator panels(radius, method.panel_width);
        const int ntasks = panels.npanels;
        partials.resize(static_cast<size_t>(ntasks));
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
        for (int task = 0; task < ntasks; ++task) {
            LseAccum acc;
            std::vector<double> t(1);
            for (size_t i = 0; i < rule.x.size(); ++i) {
                t[0] = panels.node(rule, task, i);
                acc.add(panels.log_weight(rule, i) + layout.log_density(t));
            }
            partials[static_cast<size_t>(task)] = acc;
        }
    } else if (total == 2) {
        const PanelIterator angles(region.h1_const, angle_width);
        const int ntasks = angles.npanels * method.nodes;
        partials.resize(static_cast<size_t>(ntasks));
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
        for (int task = 0; task < ntasks; ++task) {
            const int p = task / method.nodes;
            const size_t i = static_cast<size_t>(task % method.nodes);
            const double h1 = angles.node(rule, p, i);
            const double direction[2] = {std::cos(h1), std::sin(h1)};
            LseAccum acc;
            std::vector<double> t(2);
            radial_integral(layout, rule, method.panel_width, radius, direction,
                            angles.log_weight(rule, i), t, acc);
            partials[static_cast<size_t>(task)] = acc;
        }
    } else {
        const PanelIterator outer(region.h2_max, angle_width);
        const int ntasks = outer.npanels * method.nodes;
        partials.resize(static_cast<size_t>(ntasks));
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
        for (int task = 0; task < ntasks; ++task) {
            const int p = task / method.nodes;
            const size_t i = static_cast<size_t>(task % method.nodes);
            const double h2 = outer.node(rule, p, i);
            const double h1_max = region.h1_depends
                                      ? std::atan(1.0 / std::cos(h2))
                                      : region.h1_const;
            const double log_w2 = outer.log_weight(rule, i);
            LseAccum acc;
            std::vector<double> t(3);
            const PanelIterator inner(h1_max, angle_width);
            for (int q = 0; q < inner.npanels; ++q) {
                for (size_t k = 0; k < rule.x.size(); ++k) {
                    const double h1 = inner.node(rule, q, k);
                    const double direction[3] = {std::cos(h1),
                                                 std::sin(h1) * std::cos(h2),
                                                 std::sin(h1) * std::sin(h2)};
                    const double log_w =
                        log_w2 + inner.log_weight(rule, k) + std::log(std::sin(h1));
                    radial_integral(layout, rule, method.panel_width, radius, direction,
                                    log_w, t, acc);
                }
            }
            partials[static_cast<size_t>(task)] = acc;
        }
    }

    LseAccum totalacc;
    for (const auto& partial : partials) totalacc.merge(partial);

    LogEstimate estimate;
    estimate.log_value = totalacc.log_total();
    return estimate;
}

// ---- Monte Carlo over the ball --------------------------------------------

struct McPartial {
    LseAccum first;  // log f
    LseAccum second; // 2 log f
};

McPartial mc_block(const IntegrandLayout& layout, double radius, uint64_t block_seed,
                   int64_t count) {
    std::mt19937_64 gen(block_seed);
    const int total = layout.total_rank;
    std::vector<double> t(static_cast<size_t>(total));
    McPartial partial;
    for (int64_t s = 0; s < count; ++s) {
        double norm2 = 0.0;
        for (int j = 0; j < total; ++j) {
            const double g = rng::standard_normal(gen);
            t[static_cast<size_t>(j)] = g;
            norm2 += g * g;
        }
        const double u = rng::uniform01(gen);
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue; // unreachable in practice; draws stay aligned
        const double scale = radius * std::pow(u, 1.0 / total) / norm;
        for (double& v : t) v = std::abs(v) * scale;
        layout.sort_blocks_descending(t);
        const double l = layout.log_density(t);
        partial.first.add(l);
        partial.second.add(2.0 * l);
    }
    return partial;
}

LogEstimate mc_log_volume(const IntegrandLayout& layout, double radius,
                          const MonteCarlo& method, Exec exec) {
    if (method.samples < 1) throw Error("sample count must be positive");
    const int total = layout.total_rank;
    const int64_t nblocks = (method.samples + kBlockSize - 1) / kBlockSize;
    std::vector<McPartial> partials(static_cast<size_t>(nblocks));

#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (int64_t block = 0; block < nblocks; ++block) {
        const int64_t begin = block * kBlockSize;
        const int64_t count = std::min<int64_t>(kBlockSize, method.samples - begin);
        partials[static_cast<size_t>(block)] =
            mc_block(layout, radius, rng::substream_seed(method.seed, static_cast<uint64_t>(block)),
                     count);
    }

    McPartial reduced;
    for (const auto& partial : partials) {
        reduced.first.merge(partial.first);
        reduced.second.merge(partial.second);
    }

    // Uniform sampling measure: volume of ball * orthant factor 2^-R,
    // ordering cones contribute 1/prod r_k!.
    const double logn = std::log(static_cast<double>(method.samples));
    double log_constant = 0.5 * total * std::log(std::numbers::pi) +
                          total * std::log(radius) - std::lgamma(0.5 * total + 1.0) -
                          total * std::numbers::ln2;
    for (const auto& block : layout.blocks)
        log_constant -= std::lgamma(static_cast<double>(block.r) + 1.0);

    LogEstimate estimate;
    const double log_s1 = reduced.first.log_total();
    if (log_s1 == kNegInf) return estimate;
    const double log_mean = log_s1 - logn;
    estimate.log_value = log_constant + log_mean;

    const double log_s2 = reduced.second.log_total();
    const double log_e2 = log_s2 - logn;
    const double ratio = 2.0 * log_mean - log_e2; // <= 0 up to rounding
    if (ratio < 0.0) {
        const double log_var = log_e2 + std::log1p(-std::exp(ratio));
        estimate.log_std_error = log_constant + 0.5 * (log_var - logn);
    }
    return estimate;
}

double default_fit_window(size_t n) {
    return std::max<double>(4.0, std::ceil(0.4 * static_cast<double>(n)));
}

} // namespace

LogEstimate log_ball_volume(const ProductSpec& domain, double radius, const Method& method,
                            Exec exec) {
    if (!(radius > 0.0)) {
        throw NonPositiveRadiusError("ball radius must be positive, got " +
                                     std::to_string(radius));
    }
    const IntegrandLayout layout(domain);
    return std::visit(
        [&](const auto& m) -> LogEstimate {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Quadrature>) {
                return quadrature_log_volume(layout, radius, m, exec);
            } else {
                return mc_log_volume(layout, radius, m, exec);
            }
        },
        method);
}

double ball_volume(const ProductSpec& domain, double radius, const Method& method, Exec exec) {
    return log_ball_volume(domain, radius, method, exec).value();
}

double ball_volume(const DomainSpec& domain, double radius, const Method& method, Exec exec) {
    return ball_volume(ProductSpec{domain}, radius, method, exec);
}

GrowthEstimate growth_entropy(const ProductSpec& domain, const std::vector<double>& radii,
                              const Method& method, int fit_window, Exec exec) {
    if (radii.empty()) throw FitDegenerateError("no radii given");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw NonPositiveRadiusError("radii must be positive");
        if (i > 0 && radii[i] <= radii[i - 1])
            throw Error("radii must be strictly increasing");
    }
    int window = fit_window > 0 ? fit_window
                                : static_cast<int>(default_fit_window(radii.size()));
    if (window < 4 || window > std::ssize(radii)) {
        throw FitDegenerateError("fit window needs at least 4 of the " +
                                 std::to_string(radii.size()) + " radii, got " +
                                 std::to_string(window));
    }

    GrowthEstimate estimate;
    estimate.radii = radii;
    estimate.fit_window = window;
    estimate.method = method;
    estimate.log_volumes.reserve(radii.size());
    for (size_t i = 0; i < radii.size(); ++i) {
        Method per_radius = method;
        if (auto* mc = std::get_if<MonteCarlo>(&per_radius)) {
            // independent substream per radius
            mc->seed = rng::substream_seed(mc->seed, 0x52414449 + i);
        }
        estimate.log_volumes.push_back(
            log_ball_volume(domain, radii[i], per_radius, exec).log_value);
    }

    // Least squares on the trailing window.
    const size_t begin = radii.size() - static_cast<size_t>(window);
    double mean_t = 0.0, mean_y = 0.0;
    for (size_t i = begin; i < radii.size(); ++i) {
        mean_t += radii[i];
        mean_y += estimate.log_volumes[i];
    }
    mean_t /= window;
    mean_y /= window;
    double stt = 0.0, sty = 0.0;
    for (size_t i = begin; i < radii.size(); ++i) {
        stt += (radii[i] - mean_t) * (radii[i] - mean_t);
        sty += (radii[i] - mean_t) * (estimate.log_volumes[i] - mean_y);
    }
    if (stt == 0.0) throw FitDegenerateError("fit window has no distinct radii");
    estimate.slope = sty / stt;

    double rss = 0.0;
    for (size_t i = begin; i < radii.size(); ++i) {
        const double fitted = mean_y + estimate.slope * (radii[i] - mean_t);
        rss += (estimate.log_volumes[i] - fitted) * (estimate.log_volumes[i] - fitted);
    }
    estimate.slope_std_error =
        window > 2 ? std::sqrt(rss / ((window - 2) * stt)) : 0.0;
    return estimate;
}

GrowthEstimate growth_entropy(const DomainSpec& domain, const std::vector<double>& radii,
                              const Method& method, int fit_window, Exec exec) {
    return growth_entropy(ProductSpec{domain}, radii, method, fit_window, exec);
}

MaximizeResult maximize_exponent(const ProductSpec& domain, int restarts, uint64_t seed) {
    if (restarts < 1) throw Error("restarts must be >= 1");
    const int total = static_cast<int>(domain.total_rank());

    const auto evaluate = [&](std::span<const double> x) {
        double value = 0.0;
        size_t offset = 0;
        for (const auto& factor : domain.factors) {
            value += entropy::directional_exponent(
                x.subspan(offset, static_cast<size_t>(factor.r)), factor);
            offset += static_cast<size_t>(factor.r);
        }
        return value;
    };

    // Subgradient: within each factor block, coordinate i ranked j-th by
    // absolute value gets 2 (b+1+a(r-j)) sign(x_i).
    std::vector<int> order(static_cast<size_t>(total));
    const auto subgradient = [&](std::span<const double> x, std::span<double> g) {
        size_t offset = 0;
        for (const auto& factor : domain.factors) {
            const size_t r = static_cast<size_t>(factor.r);
            std::iota(order.begin(), order.begin() + r, static_cast<int>(offset));
            std::sort(order.begin(), order.begin() + r, [&](int lhs, int rhs) {
                const double la = std::abs(x[static_cast<size_t>(lhs)]);
                const double ra = std::abs(x[static_cast<size_t>(rhs)]);
                if (la != ra) return la > ra;
                return lhs < rhs;
            });
            for (size_t j = 0; j < r; ++j) {
                const auto i = static_cast<size_t>(order[j]);
                const double w = static_cast<double>(
                    factor.b + 1 + factor.a * (factor.r - static_cast<int64_t>(j) - 1));
                g[i] = 2.0 * w * (x[i] < 0.0 ? -1.0 : 1.0);
            }
            offset += r;
        }
    };

    MaximizeResult best;
    best.value = kNegInf;
    std::vector<double> x(static_cast<size_t>(total));
    std::vector<double> g(static_cast<size_t>(total));
    for (int restart = 0; restart < restarts; ++restart) {
        std::mt19937_64 gen(rng::substream_seed(seed, static_cast<uint64_t>(restart)));
        double norm = 0.0;
        do {
            norm = 0.0;
            for (double& v : x) {
                v = rng::standard_normal(gen);
                norm += v * v;
            }
            norm = std::sqrt(norm);
        } while (norm == 0.0);
        for (double& v : x) v /= norm;

        double fx = evaluate(x);
        for (int iter = 0; iter < 100; ++iter) {
            subgradient(x, g);
            double gnorm = 0.0;
            for (double v : g) gnorm += v * v;
            gnorm = std::sqrt(gnorm);
            for (size_t i = 0; i < x.size(); ++i) g[i] /= gnorm;
            const double fg = evaluate(g);
            if (fg <= fx + 1e-13 * (1.0 + std::abs(fx))) break;
            std::swap(x, g);
            fx = fg;
        }
        if (fx > best.value) {
            best.value = fx;
            best.argmax = x;
        }
    }
    return best;
}

MaximizeResult maximize_exponent(const DomainSpec& domain, int restarts, uint64_t seed) {
    return maximize_exponent(ProductSpec{domain}, restarts, seed);
}

CollisionReport scan_collisions(int64_t max_dim) {
    CollisionReport report;
    report.max_dim = max_dim;
    std::map<int64_t, std::vector<DomainSpec>> by_squared_quarter;
    for (const auto& domain : catalog::enumerate_domains(max_dim)) {
        by_squared_quarter[entropy::entropy_hyperbolic(domain).squared_quarter].push_back(
            domain);
    }
    for (auto& [squared_quarter, members] : by_squared_quarter) {
        if (members.size() < 2) continue;
        CollisionGroup group;
        group.squared_quarter = squared_quarter;
        // enumeration order sorts by dimension first
        for (size_t i = 0; i + 1 < members.size(); ++i) {
            if (members[i].d == members[i + 1].d) group.same_dimension_pair = true;
        }
        group.members = std::move(members);
        report.groups.push_back(std::move(group));
    }
    return report;
}

} // namespace volent::verify
