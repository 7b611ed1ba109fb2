// SPDX-License-Identifier: MIT
/**
 * Causal functionals with analytic Dupire derivatives.
 *
 * A causal functional F(t, X) depends on X only through the stopped path X_t.
 *   space derivative  nabla^k F(t, X): k-th derivative at h = 0 of
 *                     h -> F(t, X_t + h 1_{[t,T]}), a symmetric k-tensor;
 *   time derivative   DF(t, X): right derivative at h = 0 of h -> F(t + h, X_t).
 *
 * The example family uses ridge profiles phi(<c, x>) so that every space
 * derivative is phi^{(k)} c^{(x)k}:
 *   F1 (PointFunctional)            phi(<c, X(t)>)
 *   F2 (RunningIntegralFunctional)  int_0^t psi(<c, X(u)>) du
 *   F3 (PathIntegralFunctional)     phi(<c, X(t)>) chi(<e, int_0^t w(u) X(u) du>),  w(u) = w0 + w1 u
 * F3 ignores the integral slot in its space derivatives: the bump moves the
 * integrand only on a Lebesgue-null set.
 */
#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "roughfunc/path_model.hpp"
#include "roughfunc/tensor_algebra.hpp"

namespace roughfunc {

/// Scalar profile with closed-form derivatives of every order.
class Profile {
public:
    struct Polynomial {
        std::vector<double> coeffs;  ///< coeffs[i] multiplies x^i
    };
    struct Sine {
        double frequency = 1.0;
        double phase = 0.0;  ///< sin(frequency x + phase)
    };

    static Profile polynomial(std::vector<double> coeffs);
    static Profile monomial(int degree, double scale = 1.0);
    static Profile sine(double frequency = 1.0, double phase = 0.0);

    double value(double x) const { return derivative(0, x); }
    double derivative(int k, double x) const;
    std::string describe() const;

    const std::variant<Polynomial, Sine>& form() const { return form_; }

private:
    explicit Profile(std::variant<Polynomial, Sine> form) : form_(std::move(form)) {}
    std::variant<Polynomial, Sine> form_;
};

/// Flags asserting fixed-time Lipschitz continuity (on the compact path sets probed).
struct LipschitzMeta {
    bool value = true;
    bool time_derivative = true;
    bool space_derivatives = true;
};

class CausalFunctional {
public:
    virtual ~CausalFunctional() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0;
    /// Highest available space-derivative order.
    virtual int max_space_order() const = 0;
    virtual LipschitzMeta lipschitz() const { return {}; }

    virtual double eval(double t, const PathView& x) const = 0;
    virtual double time_derivative(double t, const PathView& x) const = 0;
    /// nabla^k F; k = 0 returns F as an order-0 tensor.
    virtual LevelTensor space_derivative(int k, double t, const PathView& x) const = 0;
    /// D nabla^k F; k = 0 returns DF as an order-0 tensor.
    virtual LevelTensor time_space_derivative(int k, double t, const PathView& x) const = 0;

protected:
    void require_order(int k) const;
};

class PointFunctional final : public CausalFunctional {
public:
    PointFunctional(Profile f, std::vector<double> direction, int max_order = 6);

    std::string name() const override;
    int dim() const override { return static_cast<int>(direction_.size()); }
    int max_space_order() const override { return max_order_; }
    double eval(double t, const PathView& x) const override;
    double time_derivative(double t, const PathView& x) const override;
    LevelTensor space_derivative(int k, double t, const PathView& x) const override;
    LevelTensor time_space_derivative(int k, double t, const PathView& x) const override;

private:
    Profile f_;
    std::vector<double> direction_;
    int max_order_;
};

class RunningIntegralFunctional final : public CausalFunctional {
public:
    RunningIntegralFunctional(Profile g, std::vector<double> direction, int max_order = 6);

    std::string name() const override;
    int dim() const override { return static_cast<int>(direction_.size()); }
    int max_space_order() const override { return max_order_; }
    double eval(double t, const PathView& x) const override;
    double time_derivative(double t, const PathView& x) const override;
    LevelTensor space_derivative(int k, double t, const PathView& x) const override;
    LevelTensor time_space_derivative(int k, double t, const PathView& x) const override;

private:
    Profile g_;
    std::vector<double> direction_;
    int max_order_;
};

class PathIntegralFunctional final : public CausalFunctional {
public:
    PathIntegralFunctional(Profile point_part, Profile integral_part, std::vector<double> direction,
                           std::vector<double> integral_direction, double weight0 = 1.0, double weight1 = 0.0,
                           int max_order = 6);

    std::string name() const override;
    int dim() const override { return static_cast<int>(direction_.size()); }
    int max_space_order() const override { return max_order_; }
    double eval(double t, const PathView& x) const override;
    double time_derivative(double t, const PathView& x) const override;
    LevelTensor space_derivative(int k, double t, const PathView& x) const override;
    LevelTensor time_space_derivative(int k, double t, const PathView& x) const override;

private:
    double integral_argument(double t, const PathView& x) const;
    double weight(double t) const { return w0_ + w1_ * t; }

    Profile phi_;
    Profile chi_;
    std::vector<double> direction_;
    std::vector<double> integral_direction_;
    double w0_;
    double w1_;
    int max_order_;
};

// ---------------------------------------------------------------------------
// Finite-difference verification (never used inside the engines)
// ---------------------------------------------------------------------------

struct FdReport {
    std::vector<double> steps;
    std::vector<double> errors;       ///< max entrywise |analytic - FD| per step
    double max_error = 0.0;           ///< largest entry of `errors`
    double observed_order = 0.0;      ///< log-log slope; NaN when every error is at round-off
    bool exact = false;               ///< all errors below the round-off floor

    double error_at(double step) const;
};

/// Central differences of h -> F(t, X_t + h 1) along coordinate (and, for
/// k = 2, mixed) directions against nabla^k F. Supports k = 1, 2.
FdReport fd_check_space(const CausalFunctional& F, int k, double t, const SampledPath& path,
                        const std::vector<double>& steps);

/// One-sided second-order differences (-3 F(t) + 4 F(t+h) - F(t+2h)) / 2h of
/// h -> F(t + h, X_t) against DF; requires t < T.
FdReport fd_check_time(const CausalFunctional& F, double t, const SampledPath& path, const std::vector<double>& steps);

/// |F(t, X) - F(t, Y)| / |X_t - Y_t|_inf over grid samples up to t
/// (0 when the stopped paths agree).
double lipschitz_ratio(const CausalFunctional& F, double t, const SampledPath& x, const SampledPath& y);

/// Default FD step grid 1e-2, 1e-3, 1e-4, 1e-5.
std::vector<double> default_fd_steps();

}  // namespace roughfunc
