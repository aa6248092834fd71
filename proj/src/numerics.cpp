#include "omega/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "omega/error.hpp"

namespace omega::numerics {

namespace {

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

}  // namespace

Bracket make_bracket(const RealFn& f, double lo, double hi) { return {lo, hi, f(lo), f(hi)}; }

double find_root(const RealFn& f, const Bracket& br, double tol_abs) {
    if (!(tol_abs > 0.0)) throw Error(ErrorKind::DomainError, "find_root: tol_abs must be positive");
    if (br.f_lo == 0.0) return br.lo;
    if (br.f_hi == 0.0) return br.hi;
    if (!(br.lo < br.hi) || !opposite(br.f_lo, br.f_hi) || !std::isfinite(br.f_lo) ||
        !std::isfinite(br.f_hi)) {
        std::ostringstream os;
        os << "bracket [" << br.lo << ", " << br.hi << "] f=(" << br.f_lo << ", " << br.f_hi << ")";
        throw Error(ErrorKind::NoSignChange, os.str());
    }
    double best_x = br.lo;
    double best_f = std::numeric_limits<double>::infinity();
    bool hit = false;
    auto g = [&](double x) {
        const double v = f(x);
        if (std::abs(v) < best_f) {
            best_f = std::abs(v);
            best_x = x;
        }
        if (std::abs(v) <= tol_abs) hit = true;
        return v;
    };
    auto stop = [&](double a, double b) { return hit || std::abs(b - a) <= tol_abs; };
    std::uintmax_t iters = kMaxIterations;
    auto [a, b] = boost::math::tools::toms748_solve(g, br.lo, br.hi, br.f_lo, br.f_hi, stop, iters);
    if (hit) return best_x;
    if (std::abs(b - a) > tol_abs) {
        throw Error(ErrorKind::MaxIterations, "find_root: no convergence in 200 iterations");
    }
    return 0.5 * (a + b);
}

double find_root(const RealFn& f, double lo, double hi, double tol_abs) {
    return find_root(f, make_bracket(f, lo, hi), tol_abs);
}

namespace {

struct Piece {
    double lo;
    double hi;
    double value;
    double error;
    double l1;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk_piece(const RealFn& f, double lo, double hi) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 0, 0.0, &err, &l1);
    // Boost returns the leaf error in [-1, 1] units; rescale to [lo, hi].
    return {lo, hi, v, std::abs(err) * 0.5 * (hi - lo), l1};
}

}  // namespace

QuadratureResult integrate(const RealFn& f, double a, double b, double tol_rel) {
    if (a > b) throw Error(ErrorKind::DomainError, "integrate: a > b");
    QuadratureResult out;
    if (a == b) return out;
    if (std::isinf(b)) {
        // x = a + t/(1-t) maps [0,1) onto [a, inf).
        auto g = [&](double t) {
            if (t >= 1.0) return 0.0;
            const double s = 1.0 - t;
            return f(a + t / s) / (s * s);
        };
        return integrate(g, 0.0, 1.0, tol_rel);
    }
    // Global adaptive bisection; each piece is one 61-point Kronrod rule.
    constexpr std::size_t kMaxPieces = 4000;
    std::priority_queue<Piece> heap;
    heap.push(gk_piece(f, a, b));
    double value = heap.top().value;
    double error = heap.top().error;
    double l1 = heap.top().l1;
    // The Kronrod error estimate bottoms out near 1e3 eps * L1; do not chase it further.
    constexpr double kRoundoff = 2e3 * std::numeric_limits<double>::epsilon();
    auto done = [&] { return error <= std::max({tol_rel * l1, kRoundoff * l1, 1e-300}); };
    while (!done() && heap.size() < kMaxPieces) {
        const Piece p = heap.top();
        const double mid = 0.5 * (p.lo + p.hi);
        if (!(mid > p.lo && mid < p.hi)) break;
        heap.pop();
        const Piece left = gk_piece(f, p.lo, mid);
        const Piece right = gk_piece(f, mid, p.hi);
        value += left.value + right.value - p.value;
        error += left.error + right.error - p.error;
        l1 += left.l1 + right.l1 - p.l1;
        heap.push(left);
        heap.push(right);
    }
    // Recompute the totals from the pieces to shed accumulated rounding.
    value = error = l1 = 0.0;
    out.subdivisions = heap.size();
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        l1 += heap.top().l1;
        heap.pop();
    }
    out.value = value;
    out.abs_error_estimate = error;
    if (!std::isfinite(value) || error > std::max({tol_rel * l1, 5.0 * kRoundoff * l1, 1e-14})) {
        std::ostringstream os;
        os << "integrate on [" << a << ", " << b << "]: error " << error << " vs L1 " << l1;
        throw Error(ErrorKind::NonConvergence, os.str());
    }
    return out;
}

QuadratureResult integrate(const RealFn& f, double a, double b, std::span<const double> breaks,
                           double tol_rel) {
    std::vector<double> pts{a};
    for (double c : breaks) {
        if (c > a && c < b) pts.push_back(c);
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    QuadratureResult out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        auto part = integrate(f, pts[i], pts[i + 1], tol_rel);
        out.value += part.value;
        out.abs_error_estimate += part.abs_error_estimate;
        out.subdivisions += part.subdivisions;
    }
    return out;
}

std::complex<double> polyval(std::span<const double> c, std::complex<double> x) {
    std::complex<double> acc{0.0, 0.0};
    for (double ck : c) acc = acc * x + ck;
    return acc;
}

namespace {

std::complex<double> polyder_val(std::span<const double> c, std::complex<double> x) {
    const std::size_t n = c.size() - 1;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) acc = acc * x + c[k] * static_cast<double>(n - k);
    return acc;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs, double tol) {
    std::size_t first = 0;
    while (first < coeffs.size() && coeffs[first] == 0.0) ++first;
    if (first == coeffs.size()) throw Error(ErrorKind::DegenerateInput, "all coefficients zero");
    std::vector<double> c(coeffs.begin() + static_cast<std::ptrdiff_t>(first), coeffs.end());
    const std::size_t n = c.size() - 1;
    if (n < 1) throw Error(ErrorKind::DegenerateInput, "polynomial of degree 0");

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) comp(0, static_cast<Eigen::Index>(j)) = -c[j + 1] / c[0];
    for (std::size_t i = 1; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> roots;
    roots.reserve(n);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()[i]);

    for (auto& z : roots) {
        for (int it = 0; it < 4; ++it) {
            const auto d = polyder_val(c, z);
            if (std::abs(d) == 0.0) break;
            const auto step = polyval(c, z) / d;
            z -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
        }
    }

    // Snap nearly-real roots and enforce exact conjugate pairing.
    std::vector<std::complex<double>> out;
    std::vector<std::complex<double>> upper;
    for (const auto& z : roots) {
        if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z))) {
            out.emplace_back(z.real(), 0.0);
        } else if (z.imag() > 0.0) {
            upper.push_back(z);
        }
    }
    for (const auto& z : upper) {
        out.push_back(z);
        out.push_back(std::conj(z));
    }
    if (out.size() != n) throw Error(ErrorKind::DegenerateInput, "unpaired complex root");
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });

    double norm = 0.0;
    for (double ck : c) norm += ck * ck;
    norm = std::sqrt(norm);
    for (const auto& z : out) {
        const double scale = std::max(1.0, std::pow(std::abs(z), static_cast<double>(n)));
        if (std::abs(polyval(c, z)) > tol * norm * scale) {
            throw Error(ErrorKind::NonConvergence, "polynomial root residual above tolerance");
        }
    }
    return out;
}

std::vector<std::complex<double>> poly_from_roots(std::span<const std::complex<double>> roots) {
    std::vector<std::complex<double>> p{1.0};
    for (const auto& z : roots) {
        std::vector<std::complex<double>> q(p.size() + 1, 0.0);
        for (std::size_t k = 0; k < p.size(); ++k) {
            q[k] += p[k];
            q[k + 1] -= p[k] * z;
        }
        p = std::move(q);
    }
    return p;
}

std::vector<double> polymul(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<double> polyadd(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = std::max(a.size(), b.size());
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[n - a.size() + i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[n - b.size() + i] += b[i];
    return out;
}

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t h = xs.size() / 2;
    return pairwise_sum(xs.first(h)) + pairwise_sum(xs.subspan(h));
}

double phi1(double z) {
    if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z / 6.0);
    return std::expm1(z) / z;
}

std::complex<double> phi1(std::complex<double> z) {
    if (z.imag() == 0.0) return {phi1(z.real()), 0.0};
    if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z / 6.0);
    return (std::exp(z) - 1.0) / z;
}

Extremum minimize(const RealFn& f, double lo, double hi, int bits) {
    std::uintmax_t iters = 500;
    auto [x, fx] = boost::math::tools::brent_find_minima(f, lo, hi, bits, iters);
    return {x, fx};
}

Extremum golden_max(const RealFn& f, double lo, double hi, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 300 && (b - a) > tol; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double fa = f(lo);
    const double fb = f(hi);
    Extremum best = fc > fd ? Extremum{c, fc} : Extremum{d, fd};
    if (fa > best.f) best = {lo, fa};
    if (fb > best.f) best = {hi, fb};
    return best;
}

}  // namespace omega::numerics
