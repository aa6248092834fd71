#include "omega/scale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omega/error.hpp"
#include "omega/numerics.hpp"

namespace omega {

double ExpSum::operator()(double t) const {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < coef.size(); ++k) acc += coef[k] * std::exp(rate[k] * t);
    return acc.real();
}

ExpSum ExpSum::shifted(double shift) const {
    ExpSum out = *this;
    for (std::size_t k = 0; k < coef.size(); ++k) out.coef[k] *= std::exp(rate[k] * shift);
    return out;
}

ExpSum ExpSum::derivative() const {
    ExpSum out = *this;
    for (std::size_t k = 0; k < coef.size(); ++k) out.coef[k] *= rate[k];
    return out;
}

ExpSum ExpSum::reflected() const {
    ExpSum out = *this;
    for (auto& r : out.rate) r = -r;
    return out;
}

double integrate(const ExpSum& a, double L) {
    if (L <= 0.0) return 0.0;
    cplx acc = 0.0;
    for (std::size_t k = 0; k < a.coef.size(); ++k) acc += a.coef[k] * L * numerics::phi1(a.rate[k] * L);
    return acc.real();
}

double integrate_product(const ExpSum& a, const ExpSum& b, double L) {
    if (L <= 0.0) return 0.0;
    cplx acc = 0.0;
    for (std::size_t k = 0; k < a.coef.size(); ++k) {
        for (std::size_t m = 0; m < b.coef.size(); ++m) {
            acc += a.coef[k] * b.coef[m] * L * numerics::phi1((a.rate[k] + b.rate[m]) * L);
        }
    }
    return acc.real();
}

ExponentialSumScale::ExponentialSumScale(double rate, std::vector<cplx> coef, std::vector<cplx> zeta,
                                         double phi_r)
    : rate_(rate), phi_r_(phi_r), coef_(std::move(coef)), zeta_(std::move(zeta)) {
    all_real_ = std::all_of(zeta_.begin(), zeta_.end(), [](cplx z) { return z.imag() == 0.0; }) &&
                std::all_of(coef_.begin(), coef_.end(), [](cplx z) { return z.imag() == 0.0; });
    if (all_real_) {
        for (std::size_t j = 0; j < zeta_.size(); ++j) {
            cr_.push_back(coef_[j].real());
            zr_.push_back(zeta_[j].real());
        }
    }
}

double ExponentialSumScale::operator()(double x, int order) const {
    if (x < 0.0) return 0.0;
    if (all_real_) {
        double acc = 0.0;
        for (std::size_t j = 0; j < cr_.size(); ++j) {
            double c = cr_[j];
            for (int k = 0; k < order; ++k) c *= zr_[j];
            acc += c * std::exp(zr_[j] * x);
        }
        return acc;
    }
    cplx acc = 0.0;
    double mag = 0.0;
    for (std::size_t j = 0; j < coef_.size(); ++j) {
        cplx c = coef_[j];
        for (int k = 0; k < order; ++k) c *= zeta_[j];
        const cplx term = c * std::exp(zeta_[j] * x);
        acc += term;
        mag += std::abs(term);
    }
    if (std::abs(acc.imag()) > 1e-9 * std::max(mag, 1e-300)) {
        throw Error(ErrorKind::NonConvergence, "exponential sum has a non-negligible imaginary part");
    }
    return acc.real();
}

ExpSum ExponentialSumScale::as_expsum() const {
    ExpSum s;
    for (std::size_t j = 0; j < coef_.size(); ++j) s.add(coef_[j], zeta_[j]);
    return s;
}

namespace {

cplx polish(const LevyModel& m, double rate, cplx z) {
    for (int it = 0; it < 4; ++it) {
        const cplx d = m.dpsi(z);
        if (std::abs(d) == 0.0) break;
        const cplx step = (m.psi(z) - rate) / d;
        const cplx nz = z - step;
        if (!(std::abs(m.psi(nz) - rate) < std::abs(m.psi(z) - rate))) break;
        z = nz;
    }
    return z;
}

}  // namespace

ExponentialSumScale build_scale(const LevyModel& model, double rate) {
    if (!(rate > 0.0)) throw Error(ErrorKind::DomainError, "build_scale: rate must be positive");
    const auto poly = model.cleared_polynomial(rate);
    const auto raw = numerics::polynomial_roots(poly);
    const double phir = phi(model, rate);

    std::vector<cplx> zeta;
    for (const auto& z : raw) {
        if (z.imag() == 0.0) {
            zeta.emplace_back(polish(model, rate, z).real(), 0.0);
        } else if (z.imag() > 0.0) {
            const cplx p = polish(model, rate, z);
            zeta.push_back(p);
            zeta.push_back(std::conj(p));
        }
    }
    // The largest real root is Phi(rate); substitute the bracketed value.
    std::size_t imax = 0;
    for (std::size_t j = 1; j < zeta.size(); ++j) {
        if (zeta[j].real() > zeta[imax].real()) imax = j;
    }
    if (zeta[imax].imag() != 0.0 || std::abs(zeta[imax].real() - phir) > 1e-7 * std::max(1.0, phir)) {
        throw Error(ErrorKind::NonConvergence, "largest scale exponent does not match Phi(rate)");
    }
    zeta[imax] = phir;

    for (std::size_t i = 0; i < zeta.size(); ++i) {
        for (std::size_t j = i + 1; j < zeta.size(); ++j) {
            if (std::abs(zeta[i] - zeta[j]) < 1e-9) {
                std::ostringstream os;
                os << "roots " << zeta[i] << " and " << zeta[j] << " coincide at rate " << rate;
                throw Error(ErrorKind::RepeatedRoot, os.str());
            }
        }
    }
    std::vector<cplx> coef;
    coef.reserve(zeta.size());
    for (std::size_t j = 0; j < zeta.size(); ++j) {
        if (zeta[j].imag() < 0.0 && j > 0 && zeta[j] == std::conj(zeta[j - 1])) {
            coef.push_back(std::conj(coef.back()));
        } else if (zeta[j].imag() == 0.0) {
            coef.emplace_back(1.0 / model.dpsi(zeta[j].real()), 0.0);
        } else {
            coef.push_back(1.0 / model.dpsi(zeta[j]));
        }
    }
    return ExponentialSumScale(rate, std::move(coef), std::move(zeta), phir);
}

double eval_W(const ExponentialSumScale& scale, double x, int order) {
    if (order < 0 || order > 2) throw Error(ErrorKind::DomainError, "eval_W: order must be 0, 1 or 2");
    return scale(x, order);
}

OccupationKernel::OccupationKernel(const ExponentialSumScale& w, double q, double phi_rq)
    : q_(q), phi_rq_(phi_rq) {
    std::vector<cplx> c;
    for (std::size_t j = 0; j < w.coef().size(); ++j) c.push_back(w.coef()[j] / (phi_rq - w.zeta()[j]));
    terms_ = ExponentialSumScale(w.rate(), std::move(c), w.zeta(), w.phi_r());
}

double OccupationKernel::operator()(double x, int order) const {
    if (x < 0.0) return std::pow(phi_rq_, order) * std::exp(phi_rq_ * x) / q_;
    return terms_(x, order);
}

double OccupationKernel::at_zero_closed_form() const { return terms_(0.0, 0); }

OccupationKernel build_I(const LevyModel& model, double r, double q) {
    if (!(q > 0.0)) throw Error(ErrorKind::DomainError, "build_I: q must be positive");
    return OccupationKernel(build_scale(model, r), q, phi(model, r + q));
}

double hazard(const ExponentialSumScale& w, const OccupationKernel& I, double x) {
    if (x < 0.0) return I.phi_rq();
    return I.phi_rq() - w(x) / I(x);
}

namespace {

void check_order(double a, double y) {
    if (a > y) throw Error(ErrorKind::DomainError, "W^(r,q)(x, a) requires a <= y");
}

}  // namespace

double eval_Wrq(const ExponentialSumScale& w, const ExponentialSumScale& wq, double q, double y, double x,
                double a) {
    check_order(a, y);
    if (x <= a) return 0.0;
    if (x <= y) return wq(x - a);
    const double L = y - a;
    const double M = x - y;
    cplx conv = 0.0;
    for (std::size_t i = 0; i < w.coef().size(); ++i) {
        const cplx zi = w.zeta()[i];
        cplx inner = 0.0;
        for (std::size_t j = 0; j < wq.coef().size(); ++j) {
            const cplx xj = wq.zeta()[j];
            // (e^{zi L} - e^{xj L}) / (zi - xj)
            inner += wq.coef()[j] * std::exp(xj * L) * L * numerics::phi1((zi - xj) * L);
        }
        conv += w.coef()[i] * std::exp(zi * M) * inner;
    }
    return w(x - a) + q * conv.real();
}

double eval_Wrq_alt(const ExponentialSumScale& w, const ExponentialSumScale& wq, double q, double y, double x,
                    double a) {
    check_order(a, y);
    if (x <= a) return 0.0;
    if (x <= y) return wq(x - a);
    const double M = x - y;
    cplx conv = 0.0;
    for (std::size_t i = 0; i < w.coef().size(); ++i) {
        const cplx zi = w.zeta()[i];
        for (std::size_t j = 0; j < wq.coef().size(); ++j) {
            const cplx xj = wq.zeta()[j];
            // int_y^x e^{zi (x-z)} e^{xj (z-a)} dz
            conv += w.coef()[i] * wq.coef()[j] * std::exp(xj * (x - a)) * M * numerics::phi1((zi - xj) * M);
        }
    }
    return wq(x - a) - q * conv.real();
}

double eval_Wrq_quadrature(const ExponentialSumScale& w, const ExponentialSumScale& wq, double q, double y,
                           double x, double a) {
    check_order(a, y);
    if (x <= a) return 0.0;
    const double hi = std::min(x, y);
    double conv = 0.0;
    if (hi > a) {
        auto f = [&](double z) { return w(x - z) * wq(z - a); };
        conv = numerics::integrate(f, a, hi, 1e-13).value;
    }
    return w(x - a) + q * conv;
}

double eval_Wrq_dx(const ExponentialSumScale& w, const ExponentialSumScale& wq, double q, double y, double x,
                   double a) {
    check_order(a, y);
    if (x <= a) return 0.0;
    if (x <= y) return wq(x - a, 1);
    const double L = y - a;
    const double M = x - y;
    cplx conv = 0.0;
    for (std::size_t i = 0; i < w.coef().size(); ++i) {
        const cplx zi = w.zeta()[i];
        cplx inner = 0.0;
        for (std::size_t j = 0; j < wq.coef().size(); ++j) {
            const cplx xj = wq.zeta()[j];
            inner += wq.coef()[j] * std::exp(xj * L) * L * numerics::phi1((zi - xj) * L);
        }
        conv += w.coef()[i] * zi * std::exp(zi * M) * inner;
    }
    return w(x - a, 1) + q * conv.real();
}

double eval_Trq(const ExponentialSumScale& wq, double q, double y, double k_under, double a) {
    if (a >= y) return std::exp(-a);
    const double lo = std::max(a, k_under);
    if (lo >= y) return std::exp(-a);
    // int_lo^y e^{-z} W^(r+q)(z - a) dz with s = z - a.
    const double s0 = lo - a;
    const double len = y - lo;
    cplx acc = 0.0;
    for (std::size_t j = 0; j < wq.coef().size(); ++j) {
        const cplx k = wq.zeta()[j] - 1.0;
        acc += wq.coef()[j] * std::exp(k * s0) * len * numerics::phi1(k * len);
    }
    return std::exp(-a) * (1.0 + q * acc.real());
}

}  // namespace omega
