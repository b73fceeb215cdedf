#include "models.hpp"

#include <cmath>

namespace af {

namespace {

EigenSplit<1> scalar_split(double k) {
    EigenSplit<1> s;
    s.plus(0, 0) = std::max(k, 0.0);
    s.minus(0, 0) = std::min(k, 0.0);
    s.abs(0, 0) = std::abs(k);
    s.sign(0, 0) = (k > 0.0) - (k < 0.0);
    return s;
}

double harten_yee_abs(double lam, double delta) {
    const double a = std::abs(lam);
    if (a >= delta || delta <= 0.0) return a;
    return (lam * lam + delta * delta) / (2.0 * delta);
}

// Generic scalar Roe flux: the secant slope linearization.
template <typename Model>
bool scalar_roe(const Model& model, const VecM<1>& uL, const VecM<1>& uR, const Vec2& x,
                const Vec2& n, VecM<1>& out) {
    const double du = uR[0] - uL[0];
    double a;
    if (std::abs(du) > 1e-12 * (1.0 + std::abs(uL[0]) + std::abs(uR[0]))) {
        const double fnL = model.flux_dot_n(uL, x, n)[0];
        const double fnR = model.flux_dot_n(uR, x, n)[0];
        a = (fnR - fnL) / du;
    } else {
        a = model.jacobian_dot_n(uL, x, n)(0, 0);
    }
    const double delta = 0.1 * std::max(model.wave_speed(uL, x, n), model.wave_speed(uR, x, n));
    const double aabs = harten_yee_abs(a, delta);
    out[0] = 0.5 * (model.flux_dot_n(uL, x, n)[0] + model.flux_dot_n(uR, x, n)[0]) -
             0.5 * aabs * du;
    return true;
}

} // namespace

EigenSplit<1> AdvectionModel::eigen_split(const VecM<1>& u, const Vec2& x, const Vec2& n) const {
    return scalar_split(jacobian_dot_n(u, x, n)(0, 0));
}

bool AdvectionModel::roe_flux(const VecM<1>& uL, const VecM<1>& uR, const Vec2& x, const Vec2& n,
                              VecM<1>& out) const {
    return scalar_roe(*this, uL, uR, x, n, out);
}

EigenSplit<1> KppModel::eigen_split(const VecM<1>& u, const Vec2& x, const Vec2& n) const {
    return scalar_split(jacobian_dot_n(u, x, n)(0, 0));
}

bool KppModel::roe_flux(const VecM<1>& uL, const VecM<1>& uR, const Vec2& x, const Vec2& n,
                        VecM<1>& out) const {
    return scalar_roe(*this, uL, uR, x, n, out);
}

void EulerModel::flux(const VecM<4>& u, const Vec2&, VecM<4>& fx, VecM<4>& fy) const {
    const double rho = u[0];
    const double vx = u[1] / rho, vy = u[2] / rho;
    const double p = pressure(u);
    fx << u[1], u[1] * vx + p, u[2] * vx, (u[3] + p) * vx;
    fy << u[2], u[1] * vy, u[2] * vy + p, (u[3] + p) * vy;
}

MatM<4> EulerModel::jacobian_dot_n(const VecM<4>& u, const Vec2&, const Vec2& n) const {
    const double g1 = gamma_ - 1.0;
    const double rho = u[0];
    const double vx = u[1] / rho, vy = u[2] / rho;
    const double q2 = vx * vx + vy * vy;
    const double H = (u[3] + pressure(u)) / rho;
    const double vn = vx * n.x + vy * n.y;
    const double phi2 = 0.5 * g1 * q2;

    MatM<4> K;
    K(0, 0) = 0.0;             K(0, 1) = n.x;                      K(0, 2) = n.y;                      K(0, 3) = 0.0;
    K(1, 0) = phi2 * n.x - vx * vn;
    K(1, 1) = vn + vx * n.x - g1 * vx * n.x;
    K(1, 2) = vx * n.y - g1 * vy * n.x;
    K(1, 3) = g1 * n.x;
    K(2, 0) = phi2 * n.y - vy * vn;
    K(2, 1) = vy * n.x - g1 * vx * n.y;
    K(2, 2) = vn + vy * n.y - g1 * vy * n.y;
    K(2, 3) = g1 * n.y;
    K(3, 0) = (phi2 - H) * vn;
    K(3, 1) = H * n.x - g1 * vx * vn;
    K(3, 2) = H * n.y - g1 * vy * vn;
    K(3, 3) = gamma_ * vn;
    return K;
}

VecM<4> EulerModel::jac_apply(const VecM<4>& u, const Vec2& x, const VecM<4>& gx,
                              const VecM<4>& gy) const {
    return jacobian_dot_n(u, x, {1.0, 0.0}) * gx + jacobian_dot_n(u, x, {0.0, 1.0}) * gy;
}

EigenSplit<4> EulerModel::eigen_split(const VecM<4>& u, const Vec2&, const Vec2& n) const {
    const double nn = norm(n);
    if (!(nn > 0.0)) {
        EigenSplit<4> s;
        s.plus.setZero(); s.minus.setZero(); s.abs.setZero(); s.sign.setZero();
        return s;
    }
    const Vec2 un{n.x / nn, n.y / nn};
    const Vec2 ut{-un.y, un.x};
    const double rho = u[0];
    if (!admissible(u)) throw std::runtime_error("euler eigen_split: inadmissible state");
    const double vx = u[1] / rho, vy = u[2] / rho;
    const double q2 = vx * vx + vy * vy;
    const double p = pressure(u);
    const double c = std::sqrt(gamma_ * p / rho);
    const double H = (u[3] + p) / rho;
    const double vn = vx * un.x + vy * un.y;
    const double vt = vx * ut.x + vy * ut.y;

    MatM<4> R, L;
    R.col(0) << 1.0, vx - c * un.x, vy - c * un.y, H - c * vn;
    R.col(1) << 1.0, vx, vy, 0.5 * q2;
    R.col(2) << 0.0, ut.x, ut.y, vt;
    R.col(3) << 1.0, vx + c * un.x, vy + c * un.y, H + c * vn;

    const double b1 = (gamma_ - 1.0) / (c * c);
    const double b2 = 0.5 * b1 * q2;
    L.row(0) << 0.5 * (b2 + vn / c), 0.5 * (-b1 * vx - un.x / c), 0.5 * (-b1 * vy - un.y / c), 0.5 * b1;
    L.row(1) << 1.0 - b2, b1 * vx, b1 * vy, -b1;
    L.row(2) << -vt, ut.x, ut.y, 0.0;
    L.row(3) << 0.5 * (b2 - vn / c), 0.5 * (-b1 * vx + un.x / c), 0.5 * (-b1 * vy + un.y / c), 0.5 * b1;

    const double lam[4] = {vn - c, vn, vn, vn + c};
    EigenSplit<4> s;
    Eigen::Vector4d dplus, dminus, dabs, dsign;
    for (int k = 0; k < 4; ++k) {
        dplus[k] = std::max(lam[k], 0.0) * nn;
        dminus[k] = std::min(lam[k], 0.0) * nn;
        dabs[k] = std::abs(lam[k]) * nn;
        dsign[k] = static_cast<double>((lam[k] > 0.0) - (lam[k] < 0.0));
    }
    s.plus = R * dplus.asDiagonal() * L;
    s.minus = R * dminus.asDiagonal() * L;
    s.abs = R * dabs.asDiagonal() * L;
    s.sign = R * dsign.asDiagonal() * L;
    return s;
}

bool EulerModel::roe_flux(const VecM<4>& uL, const VecM<4>& uR, const Vec2& x, const Vec2& n,
                          VecM<4>& out) const {
    const double nn = norm(n);
    if (!(nn > 0.0)) return false;
    const Vec2 un{n.x / nn, n.y / nn};
    const Vec2 ut{-un.y, un.x};

    const double rhoL = uL[0], rhoR = uR[0];
    if (!(rhoL > 0.0) || !(rhoR > 0.0)) throw std::runtime_error("roe_flux: inadmissible state");
    const double sL = std::sqrt(rhoL), sR = std::sqrt(rhoR);
    const double wL = sL / (sL + sR), wR = sR / (sL + sR);
    const double vxL = uL[1] / rhoL, vyL = uL[2] / rhoL;
    const double vxR = uR[1] / rhoR, vyR = uR[2] / rhoR;
    const double pL = pressure(uL), pR = pressure(uR);
    const double HL = (uL[3] + pL) / rhoL, HR = (uR[3] + pR) / rhoR;

    const double vx = wL * vxL + wR * vxR;
    const double vy = wL * vyL + wR * vyR;
    const double H = wL * HL + wR * HR;
    const double q2 = vx * vx + vy * vy;
    const double c2 = (gamma_ - 1.0) * (H - 0.5 * q2);
    if (!(c2 > 0.0)) return false;
    const double c = std::sqrt(c2);
    const double rho = sL * sR;

    const double vn = vx * un.x + vy * un.y;
    const double vt = vx * ut.x + vy * ut.y;
    const double dp = pR - pL;
    const double drho = rhoR - rhoL;
    const double dvn = (vxR - vxL) * un.x + (vyR - vyL) * un.y;
    const double dvt = (vxR - vxL) * ut.x + (vyR - vyL) * ut.y;

    const double a1 = (dp - rho * c * dvn) / (2.0 * c2);
    const double a2 = drho - dp / c2;
    const double a3 = rho * dvt;
    const double a4 = (dp + rho * c * dvn) / (2.0 * c2);

    MatM<4> R;
    R.col(0) << 1.0, vx - c * un.x, vy - c * un.y, H - c * vn;
    R.col(1) << 1.0, vx, vy, 0.5 * q2;
    R.col(2) << 0.0, ut.x, ut.y, vt;
    R.col(3) << 1.0, vx + c * un.x, vy + c * un.y, H + c * vn;

    const double delta = harten_yee_delta * (std::abs(vn) + c);
    const double lam[4] = {harten_yee_abs(vn - c, delta), harten_yee_abs(vn, delta),
                           harten_yee_abs(vn, delta), harten_yee_abs(vn + c, delta)};
    const double alpha[4] = {a1, a2, a3, a4};

    VecM<4> diss = VecM<4>::Zero();
    for (int k = 0; k < 4; ++k) diss += (lam[k] * alpha[k]) * R.col(k);
    out = 0.5 * (flux_dot_n(uL, x, n) + flux_dot_n(uR, x, n)) - 0.5 * nn * diss;
    return true;
}

std::unique_ptr<AdvectionModel> advection_model(std::function<Vec2(const Vec2&)> velocity,
                                                double lo, double hi) {
    return std::make_unique<AdvectionModel>(std::move(velocity), lo, hi);
}

std::unique_ptr<KppModel> kpp_model(double lo, double hi) {
    return std::make_unique<KppModel>(lo, hi);
}

std::unique_ptr<EulerModel> euler_model(double gamma) {
    return std::make_unique<EulerModel>(gamma);
}

} // namespace af
