// SPDX-License-Identifier: MIT
#include "roughfunc/path_generators.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "roughfunc/rng.hpp"

namespace roughfunc {

PathKind parse_path_kind(std::string_view name) {
    if (name == "smooth_bv") return PathKind::smooth_bv;
    if (name == "fbm") return PathKind::fbm;
    if (name == "weierstrass") return PathKind::weierstrass;
    if (name == "brownian") return PathKind::brownian;
    throw std::invalid_argument("unknown path kind '" + std::string(name) + "'");
}

std::string to_string(PathKind kind) {
    switch (kind) {
        case PathKind::smooth_bv: return "smooth_bv";
        case PathKind::fbm: return "fbm";
        case PathKind::weierstrass: return "weierstrass";
        case PathKind::brownian: return "brownian";
    }
    return "?";
}

double nominal_exponent(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case PathKind::smooth_bv: return 1.0;
        case PathKind::fbm: return spec.hurst;
        case PathKind::weierstrass: return spec.alpha;
        case PathKind::brownian: return 0.5;
    }
    return 0.0;
}

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct FftwPlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};

/// One sample of fractional Gaussian noise of length n with unit variance
/// per step (Davies-Harte / Wood-Chan circulant embedding).
class FgnSampler {
public:
    FgnSampler(std::size_t n, double hurst) : n_(n), m_(2 * n), sqrt_eig_(m_) {
        buf_.reset(fftw_alloc_complex(m_));
        plan_.reset(fftw_plan_dft_1d(static_cast<int>(m_), buf_.get(), buf_.get(), FFTW_FORWARD, FFTW_ESTIMATE));

        const double two_h = 2.0 * hurst;
        auto gamma = [two_h](double k) {
            return 0.5 * (std::pow(std::abs(k + 1.0), two_h) - 2.0 * std::pow(std::abs(k), two_h) +
                          std::pow(std::abs(k - 1.0), two_h));
        };
        for (std::size_t j = 0; j < m_; ++j) {
            const double lag = j <= n_ ? static_cast<double>(j) : static_cast<double>(m_ - j);
            buf_.get()[j][0] = gamma(lag);
            buf_.get()[j][1] = 0.0;
        }
        fftw_execute(plan_.get());
        double largest = 0.0;
        for (std::size_t j = 0; j < m_; ++j) largest = std::max(largest, buf_.get()[j][0]);
        for (std::size_t j = 0; j < m_; ++j) {
            double lambda = buf_.get()[j][0];
            if (lambda < 0.0) {
                if (lambda < -1e-10 * largest)
                    throw std::runtime_error("fbm: circulant embedding is not non-negative definite");
                lambda = 0.0;
            }
            sqrt_eig_[j] = std::sqrt(lambda / static_cast<double>(m_));
        }
    }

    std::vector<double> sample(std::mt19937_64& rng) {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (std::size_t j = 0; j < m_; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            buf_.get()[j][0] = sqrt_eig_[j] * re;
            buf_.get()[j][1] = sqrt_eig_[j] * im;
        }
        fftw_execute(plan_.get());
        std::vector<double> out(n_);
        for (std::size_t j = 0; j < n_; ++j) out[j] = buf_.get()[j][0];
        return out;
    }

private:
    std::size_t n_;
    std::size_t m_;
    std::vector<double> sqrt_eig_;
    std::unique_ptr<fftw_complex, FftwFree> buf_;
    std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan_;
};

SampledPath generate_fbm(const GeneratorSpec& spec, double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("fbm: Hurst index must lie in (0, 1)");
    if (spec.steps > kMaxGaussianSteps) throw std::invalid_argument("fbm: N exceeds 2^14");
    const std::size_t n = spec.steps;
    const auto d = static_cast<std::size_t>(spec.dim);
    const double scale = std::pow(spec.horizon / static_cast<double>(n), hurst);

    std::vector<double> samples((n + 1) * d, 0.0);
    FgnSampler sampler(n, hurst);
    for (std::size_t c = 0; c < d; ++c) {
        auto rng = make_engine(spec.seed, c);
        const auto noise = sampler.sample(rng);
        double x = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x += scale * noise[i];
            samples[(i + 1) * d + c] = x;
        }
    }
    return SampledPath(spec.horizon, spec.dim, std::move(samples));
}

SampledPath generate_weierstrass(const GeneratorSpec& spec) {
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw std::invalid_argument("weierstrass: alpha must lie in (0, 1)");
    const double b = spec.weierstrass_base;
    if (!(b > 1.0)) throw std::invalid_argument("weierstrass: base must be > 1");
    int terms = spec.weierstrass_terms;
    if (terms < 0)
        terms = static_cast<int>(std::floor(std::log(static_cast<double>(spec.steps)) / std::log(b) + 1e-9));
    const double pi = std::numbers::pi;
    return SampledPath::from_function(spec.horizon, spec.steps, spec.dim, [&](double t) {
        Point x(static_cast<std::size_t>(spec.dim), 0.0);
        for (int c = 0; c < spec.dim; ++c) {
            double acc = 0.0;
            for (int j = 0; j <= terms; ++j)
                acc += std::pow(b, -j * spec.alpha) * std::cos(std::pow(b, j) * pi * t + c * pi / 3.0);
            x[static_cast<std::size_t>(c)] = acc;
        }
        return x;
    });
}

SampledPath generate_smooth(const GeneratorSpec& spec) {
    return SampledPath::from_function(spec.horizon, spec.steps, spec.dim, [&](double t) {
        Point x(static_cast<std::size_t>(spec.dim));
        for (int c = 0; c < spec.dim; ++c)
            x[static_cast<std::size_t>(c)] = std::sin((c + 1) * t + 0.5 * c) + 0.25 * c * t * t;
        return x;
    });
}

}  // namespace

SampledPath generate(const GeneratorSpec& spec) {
    if (spec.dim < 1) throw std::invalid_argument("generate: dimension must be >= 1");
    if (!is_power_of_two(spec.steps)) throw std::invalid_argument("generate: N must be a power of two");
    if (!(spec.horizon > 0.0)) throw std::invalid_argument("generate: horizon must be > 0");
    switch (spec.kind) {
        case PathKind::smooth_bv: return generate_smooth(spec);
        case PathKind::weierstrass: return generate_weierstrass(spec);
        case PathKind::fbm: return generate_fbm(spec, spec.hurst);
        case PathKind::brownian: return generate_fbm(spec, 0.5);
    }
    throw std::invalid_argument("generate: unknown kind");
}

SampledPath random_piecewise_linear(std::mt19937_64& rng, int dim, std::size_t segments, double horizon,
                                    double spread) {
    if (dim < 1 || segments < 1) throw std::invalid_argument("random_piecewise_linear: need dim >= 1, segments >= 1");
    std::uniform_real_distribution<double> coord(-0.5 * spread, 0.5 * spread);
    std::vector<double> samples((segments + 1) * static_cast<std::size_t>(dim));
    for (double& v : samples) v = coord(rng);
    return SampledPath(horizon, dim, std::move(samples));
}

}  // namespace roughfunc
