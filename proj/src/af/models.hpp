#pragma once

#include <Eigen/Dense>
#include <array>
#include <atomic>
#include <functional>
#include <memory>
#include <string>

#include "geom.hpp"

namespace af {

template <int M> using VecM = Eigen::Matrix<double, M, 1>;
template <int M> using MatM = Eigen::Matrix<double, M, M>;

// Positive/negative eigenvalue parts of a directional Jacobian K = R Lam R^-1.
template <int M>
struct EigenSplit {
    MatM<M> plus, minus, abs, sign;
};

// Hyperbolic system: flux, directional Jacobian, eigen-splitting, wave speeds
// and the admissibility predicate. Stateless apart from diagnostics; safe for
// unrestricted parallel use.
template <int M>
class FluxModel {
public:
    virtual ~FluxModel() = default;

    virtual void flux(const VecM<M>& u, const Vec2& x, VecM<M>& fx, VecM<M>& fy) const = 0;
    virtual MatM<M> jacobian_dot_n(const VecM<M>& u, const Vec2& x, const Vec2& n) const = 0;
    // A(u) gx + B(u) gy applied to a solution gradient (gx, gy).
    virtual VecM<M> jac_apply(const VecM<M>& u, const Vec2& x, const VecM<M>& gx,
                              const VecM<M>& gy) const = 0;
    virtual EigenSplit<M> eigen_split(const VecM<M>& u, const Vec2& x, const Vec2& n) const = 0;

    // Upper bound on |eigenvalues of J.n| used by Rusanov and the CFL condition.
    virtual double max_speed(const VecM<M>& u, const Vec2& x, const Vec2& n) const = 0;
    // Same bound maximised over unit directions.
    virtual double max_speed_iso(const VecM<M>& u, const Vec2& x) const = 0;
    // Pointwise spectral radius of J(u).n (may be sharper than max_speed).
    virtual double wave_speed(const VecM<M>& u, const Vec2& x, const Vec2& n) const {
        return max_speed(u, x, n);
    }

    virtual bool admissible(const VecM<M>& u) const = 0;

    // Reflection across a line with unit normal n (identity for scalars).
    virtual VecM<M> mirror(const VecM<M>& u, const Vec2& unit_n) const {
        (void)unit_n;
        return u;
    }

    // Roe flux with Harten-Yee entropy fix; returns false when the model has
    // no Roe linearization or the average degenerates (caller falls back).
    virtual bool roe_flux(const VecM<M>& uL, const VecM<M>& uR, const Vec2& x, const Vec2& n,
                          VecM<M>& out) const {
        (void)uL; (void)uR; (void)x; (void)n; (void)out;
        return false;
    }

    // Functionals tested by the MOOD DMP stage (u itself for scalars,
    // density and pressure for Euler).
    virtual int num_functionals() const { return 1; }
    virtual void functionals(const VecM<M>& u, double* out) const { out[0] = u[0]; }

    virtual std::array<std::string, M> component_names() const = 0;

    VecM<M> flux_dot_n(const VecM<M>& u, const Vec2& x, const Vec2& n) const {
        VecM<M> fx, fy;
        flux(u, x, fx, fy);
        return fx * n.x + fy * n.y;
    }

    mutable std::atomic<long> roe_fallbacks{0};
};

// Scalar linear advection u_t + div(a(x) u) = 0 with div a = 0.
class AdvectionModel final : public FluxModel<1> {
public:
    AdvectionModel(std::function<Vec2(const Vec2&)> velocity, double lo, double hi)
        : velocity_(std::move(velocity)), lo_(lo), hi_(hi) {}

    Vec2 velocity(const Vec2& x) const { return velocity_(x); }
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }

    void flux(const VecM<1>& u, const Vec2& x, VecM<1>& fx, VecM<1>& fy) const override {
        const Vec2 a = velocity_(x);
        fx[0] = a.x * u[0];
        fy[0] = a.y * u[0];
    }
    MatM<1> jacobian_dot_n(const VecM<1>&, const Vec2& x, const Vec2& n) const override {
        MatM<1> k;
        k(0, 0) = dot(velocity_(x), n);
        return k;
    }
    VecM<1> jac_apply(const VecM<1>&, const Vec2& x, const VecM<1>& gx,
                      const VecM<1>& gy) const override {
        const Vec2 a = velocity_(x);
        VecM<1> r;
        r[0] = a.x * gx[0] + a.y * gy[0];
        return r;
    }
    EigenSplit<1> eigen_split(const VecM<1>& u, const Vec2& x, const Vec2& n) const override;
    double max_speed(const VecM<1>&, const Vec2& x, const Vec2& n) const override {
        return std::abs(dot(velocity_(x), n));
    }
    double max_speed_iso(const VecM<1>&, const Vec2& x) const override {
        return norm(velocity_(x));
    }
    bool admissible(const VecM<1>& u) const override { return u[0] >= lo_ && u[0] <= hi_; }
    bool roe_flux(const VecM<1>& uL, const VecM<1>& uR, const Vec2& x, const Vec2& n,
                  VecM<1>& out) const override;
    std::array<std::string, 1> component_names() const override { return {"u"}; }

private:
    std::function<Vec2(const Vec2&)> velocity_;
    double lo_, hi_;
};

// Non-convex scalar law u_t + (sin u)_x + (cos u)_y = 0.
class KppModel final : public FluxModel<1> {
public:
    KppModel(double lo, double hi) : lo_(lo), hi_(hi) {}
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }

    void flux(const VecM<1>& u, const Vec2&, VecM<1>& fx, VecM<1>& fy) const override {
        fx[0] = std::sin(u[0]);
        fy[0] = std::cos(u[0]);
    }
    MatM<1> jacobian_dot_n(const VecM<1>& u, const Vec2&, const Vec2& n) const override {
        MatM<1> k;
        k(0, 0) = std::cos(u[0]) * n.x - std::sin(u[0]) * n.y;
        return k;
    }
    VecM<1> jac_apply(const VecM<1>& u, const Vec2&, const VecM<1>& gx,
                      const VecM<1>& gy) const override {
        VecM<1> r;
        r[0] = std::cos(u[0]) * gx[0] - std::sin(u[0]) * gy[0];
        return r;
    }
    EigenSplit<1> eigen_split(const VecM<1>& u, const Vec2& x, const Vec2& n) const override;
    // |cos(u) nx - sin(u) ny| <= |n| for any u in the invariant interval, so the
    // Rusanov/CFL bound is taken over the whole interval.
    double max_speed(const VecM<1>&, const Vec2&, const Vec2& n) const override {
        return norm(n);
    }
    double max_speed_iso(const VecM<1>&, const Vec2&) const override { return 1.0; }
    double wave_speed(const VecM<1>& u, const Vec2&, const Vec2& n) const override {
        return std::abs(std::cos(u[0]) * n.x - std::sin(u[0]) * n.y);
    }
    bool admissible(const VecM<1>& u) const override { return u[0] >= lo_ && u[0] <= hi_; }
    bool roe_flux(const VecM<1>& uL, const VecM<1>& uR, const Vec2& x, const Vec2& n,
                  VecM<1>& out) const override;
    std::array<std::string, 1> component_names() const override { return {"u"}; }

private:
    double lo_, hi_;
};

// Compressible Euler equations with a perfect-gas equation of state.
// u = (rho, rho vx, rho vy, E), p = (gamma - 1) e, e = E - rho |v|^2 / 2.
class EulerModel final : public FluxModel<4> {
public:
    explicit EulerModel(double gamma = 1.4) : gamma_(gamma) {}
    double gamma() const { return gamma_; }

    static VecM<4> conservative(double rho, double vx, double vy, double p, double gamma) {
        VecM<4> u;
        u << rho, rho * vx, rho * vy, p / (gamma - 1.0) + 0.5 * rho * (vx * vx + vy * vy);
        return u;
    }
    VecM<4> conservative(double rho, double vx, double vy, double p) const {
        return conservative(rho, vx, vy, p, gamma_);
    }
    // (rho, vx, vy, p)
    VecM<4> primitive(const VecM<4>& u) const {
        VecM<4> q;
        q[0] = u[0];
        q[1] = u[1] / u[0];
        q[2] = u[2] / u[0];
        q[3] = pressure(u);
        return q;
    }
    double pressure(const VecM<4>& u) const {
        return (gamma_ - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]);
    }
    double sound_speed(const VecM<4>& u) const {
        return std::sqrt(gamma_ * pressure(u) / u[0]);
    }

    void flux(const VecM<4>& u, const Vec2&, VecM<4>& fx, VecM<4>& fy) const override;
    MatM<4> jacobian_dot_n(const VecM<4>& u, const Vec2&, const Vec2& n) const override;
    VecM<4> jac_apply(const VecM<4>& u, const Vec2&, const VecM<4>& gx,
                      const VecM<4>& gy) const override;
    EigenSplit<4> eigen_split(const VecM<4>& u, const Vec2& x, const Vec2& n) const override;
    double max_speed(const VecM<4>& u, const Vec2&, const Vec2& n) const override {
        const double vn = (u[1] * n.x + u[2] * n.y) / u[0];
        return std::abs(vn) + sound_speed(u) * norm(n);
    }
    double max_speed_iso(const VecM<4>& u, const Vec2&) const override {
        return std::sqrt(u[1] * u[1] + u[2] * u[2]) / u[0] + sound_speed(u);
    }
    bool admissible(const VecM<4>& u) const override {
        if (!(u[0] > 0.0)) return false;
        return u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0] > 0.0;
    }
    VecM<4> mirror(const VecM<4>& u, const Vec2& unit_n) const override {
        const Vec2 mv = reflect({u[1], u[2]}, unit_n);
        VecM<4> r;
        r << u[0], mv.x, mv.y, u[3];
        return r;
    }
    bool roe_flux(const VecM<4>& uL, const VecM<4>& uR, const Vec2& x, const Vec2& n,
                  VecM<4>& out) const override;
    int num_functionals() const override { return 2; }
    void functionals(const VecM<4>& u, double* out) const override {
        out[0] = u[0];
        out[1] = pressure(u);
    }
    std::array<std::string, 4> component_names() const override {
        return {"rho", "rho_vx", "rho_vy", "E"};
    }

    // Relative width of the Harten-Yee smoothing band, delta = hy * (|v.n| + c |n|).
    double harten_yee_delta = 0.1;

private:
    double gamma_;
};

enum class FluxKind { rusanov, roe_hartenyee };

std::unique_ptr<AdvectionModel> advection_model(std::function<Vec2(const Vec2&)> velocity,
                                                double lo, double hi);
std::unique_ptr<KppModel> kpp_model(double lo, double hi);
std::unique_ptr<EulerModel> euler_model(double gamma = 1.4);

// Pointwise numerical flux F(uL, uR, n): consistent and conservative.
// Rusanov uses alpha = max(max_speed(uL), max_speed(uR)); Roe falls back to
// Rusanov (counting the event) when the linearization degenerates.
template <int M>
VecM<M> numerical_flux(const FluxModel<M>& model, FluxKind kind, const VecM<M>& uL,
                       const VecM<M>& uR, const Vec2& x, const Vec2& n) {
    if (kind == FluxKind::roe_hartenyee) {
        VecM<M> out;
        if (model.roe_flux(uL, uR, x, n, out)) return out;
        model.roe_fallbacks.fetch_add(1, std::memory_order_relaxed);
    }
    const double alpha = std::max(model.max_speed(uL, x, n), model.max_speed(uR, x, n));
    return 0.5 * (model.flux_dot_n(uL, x, n) + model.flux_dot_n(uR, x, n)) -
           0.5 * alpha * (uR - uL);
}

} // namespace af
