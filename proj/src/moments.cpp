#include "memwave/moments.hpp"

#include "memwave/error.hpp"
#include "quad_complex.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <functional>
#include <cmath>
#include <sstream>

namespace memwave {

namespace {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

// int_0^tau exp(eta (s - T)) ds, finite for Re eta >= 0 and 0 <= tau <= T.
cplx shifted_exp_integral(cplx eta, double tau, double T) {
    if (std::abs(eta) < 1e-13) return tau;
    return std::exp(eta * (tau - T)) * (-expm1(-eta * tau)) / eta;
}

CMatrix scaled_gram(const MomentSystem& sys) {
    const auto m = static_cast<Eigen::Index>(sys.size());
    CMatrix g(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) g(i, j) = scaled_gram_entry(sys.exponents[i], sys.exponents[j], sys.T);
    }
    return g;
}

double one_norm(const CMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

// Index of the exponent that is the exact conjugate of exponents[i], or i itself
// for a real exponent.
std::size_t conjugate_partner(const std::vector<cplx>& exponents, std::size_t i) {
    if (exponents[i].imag() == 0.0) return i;
    for (std::size_t j = 0; j < exponents.size(); ++j) {
        if (j != i && exponents[j] == std::conj(exponents[i])) return j;
    }
    return i;
}

// Partially pivoted LU of the scaled Gram matrix and the double-precision solution.
struct ScaledSolve {
    CMatrix g;
    CVector rhs;
    Eigen::PartialPivLU<CMatrix> lu;
    CVector x;

    explicit ScaledSolve(const MomentSystem& sys) : g(scaled_gram(sys)), rhs(sys.size()) {
        for (std::size_t i = 0; i < sys.size(); ++i) {
            rhs(static_cast<Eigen::Index>(i)) = std::exp(-sys.exponents[i] * sys.T) * sys.targets[i];
        }
        lu.compute(g);
        const double norm = g.size() ? g.cwiseAbs().maxCoeff() : 1.0;
        const double min_pivot = g.size() ? lu.matrixLU().diagonal().cwiseAbs().minCoeff() : 1.0;
        if (!(min_pivot > 1e-14 * norm)) {
            std::ostringstream msg;
            msg << "mode " << sys.n << ": scaled Gram matrix singular at T = " << sys.T
                << " (condition estimate " << 1.0 / lu.rcond() << ")";
            throw SingularSystem(msg.str());
        }
        x = lu.solve(rhs);
    }
};

// Iterative refinement of the LU solution with residuals in quad precision.
std::vector<detail::qcplx> refine(const MomentSystem& sys, const ScaledSolve& solved) {
    using detail::qcplx;
    using detail::qreal;
    const std::size_t m = sys.size();
    const qreal T = sys.T;
    std::vector<qcplx> eta(m), rhs(m), x(m);
    for (std::size_t i = 0; i < m; ++i) {
        eta[i] = qcplx(sys.exponents[i]);
        rhs[i] = exp(-eta[i] * T) * qcplx(sys.targets[i]);
        x[i] = qcplx(solved.x(static_cast<Eigen::Index>(i)));
    }
    std::vector<qcplx> g(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const qcplx s = eta[i] + eta[j];
            g[i * m + j] = (std::abs(sys.exponents[i] + sys.exponents[j]) < 1e-13) ? qcplx(T) : -expm1(-s * T) / s;
        }
    }
    for (int iter = 0; iter < 10; ++iter) {
        CVector r(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            qcplx acc = rhs[i];
            for (std::size_t j = 0; j < m; ++j) acc -= g[i * m + j] * x[j];
            r(static_cast<Eigen::Index>(i)) = acc.to_double();
        }
        const CVector d = solved.lu.solve(r);
        qreal step = 0, size = 0;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] += qcplx(d(static_cast<Eigen::Index>(i)));
            step = std::max(step, abs(qcplx(d(static_cast<Eigen::Index>(i)))));
            size = std::max(size, abs(x[i]));
        }
        if (step <= size * qreal(1e-32)) break;
    }
    return x;
}

struct GaussRule {
    std::vector<detail::qreal> x;
    std::vector<detail::qreal> w;
};

// Full node and weight list of the N-point Gauss-Legendre rule on [-1, 1].
template <unsigned N>
const GaussRule& gauss_rule() {
    static const GaussRule rule = [] {
        using G = boost::math::quadrature::gauss<detail::qreal, N>;
        GaussRule r;
        const auto& a = G::abscissa();
        const auto& w = G::weights();
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] == 0) {
                r.x.push_back(0);
                r.w.push_back(w[k]);
                continue;
            }
            r.x.push_back(a[k]);
            r.w.push_back(w[k]);
            r.x.push_back(-a[k]);
            r.w.push_back(w[k]);
        }
        return r;
    }();
    return rule;
}

}  // namespace

std::string to_string(Scheme scheme) { return scheme == Scheme::Strict ? "strict" : "paper"; }

Scheme scheme_from_string(const std::string& name) {
    if (name == "strict") return Scheme::Strict;
    if (name == "paper") return Scheme::Paper;
    throw ConfigError("control.scheme: expected \"strict\" or \"paper\", got \"" + name + "\"");
}

cplx ModalControl::complex_value(double t) const {
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < exponents.size(); ++i) sum += scaled_coeffs[i] * std::exp(exponents[i] * (t - T));
    return sum;
}

double ModalControl::operator()(double t) const {
    if (!(t >= 0.0 && t <= T)) {
        throw OutOfHorizon("mode " + std::to_string(n) + ": t = " + std::to_string(t) + " outside [0, " +
                           std::to_string(T) + "]");
    }
    return complex_value(t).real();
}

double ModalControl::integral_to(double t) const {
    const double tau = std::clamp(t, 0.0, T);
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < exponents.size(); ++i) sum += scaled_coeffs[i] * shifted_exp_integral(exponents[i], tau, T);
    return sum.real();
}

MomentSystem build_moment_system(const CharacteristicRoots& roots, double phi0, double phi1, double T,
                                 Scheme scheme) {
    MomentSystem sys;
    sys.n = roots.n;
    sys.T = T;
    sys.scheme = scheme;
    for (std::size_t i = 1; i < roots.size(); ++i) {
        const cplx lambda = roots.roots[i];
        sys.exponents.push_back(-lambda);
        sys.targets.push_back(-(phi1 + lambda * phi0));
    }
    if (scheme == Scheme::Strict) {
        sys.exponents.push_back({0.0, 0.0});
        sys.targets.push_back(-phi1);
    }
    return sys;
}

cplx gram_entry(cplx eta_i, cplx eta_j, double T) {
    const cplx s = eta_i + eta_j;
    if (std::abs(s) < 1e-13) return T;
    return expm1(s * T) / s;
}

cplx scaled_gram_entry(cplx eta_i, cplx eta_j, double T) {
    const cplx s = eta_i + eta_j;
    if (std::abs(s) < 1e-13) return T;
    return -expm1(-s * T) / s;
}

std::vector<cplx> solve_scaled_system(const MomentSystem& sys) {
    const ScaledSolve solved(sys);
    return {solved.x.data(), solved.x.data() + solved.x.size()};
}

double moment_residual(const MomentSystem& sys, const ModalControl& mc) {
    using detail::qcplx;
    using detail::qreal;
    const std::size_t m = sys.size();
    if (m == 0) return 0.0;
    if (mc.scaled_coeffs.size() != m || sys.T != mc.T) {
        throw ParameterMismatch("mode " + std::to_string(sys.n) + ": control does not match its moment system");
    }
    std::vector<qcplx> eta(m), coeff(m), rhs(m);
    std::vector<qreal> tol(m), threshold(m);
    double rate = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        eta[i] = qcplx(sys.exponents[i]);
        coeff[i] = qcplx(mc.scaled_coeffs[i]);
        if (!mc.scaled_coeffs_lo.empty()) coeff[i] += qcplx(mc.scaled_coeffs_lo[i]);
        const qcplx scale = exp(-eta[i] * qreal(sys.T));
        rhs[i] = scale * qcplx(sys.targets[i]);
        threshold[i] = abs(scale) * std::max(1.0, std::abs(sys.targets[i]));
        tol[i] = threshold[i] * qreal(1e-16);
        rate = std::max(rate, std::abs(sys.exponents[i]));
    }

    // Composite Gauss-Legendre on panels of phase at most ~3 per node offset,
    // a 14-point rule on the same panel serving as the error estimate.
    const auto& fine = gauss_rule<20>();
    const auto& coarse = gauss_rule<14>();
    const qreal T = sys.T;
    const int panels = std::max(1, static_cast<int>(std::ceil(sys.T * std::max(rate, 1.0) / 1.5)));
    const qreal width = T / panels;

    // e^{eta_j d} for every node offset d of a panel of the given width.
    auto offset_table = [&](const GaussRule& rule, const qreal& h) {
        std::vector<qcplx> table(rule.x.size() * m);
        for (std::size_t k = 0; k < rule.x.size(); ++k) {
            for (std::size_t j = 0; j < m; ++j) table[k * m + j] = exp(eta[j] * (rule.x[k] * h / 2));
        }
        return table;
    };
    const auto fine_table = offset_table(fine, width);
    const auto coarse_table = offset_table(coarse, width);

    // Accumulates the rule into `out` and the absolute integrand mass into `mass`.
    auto apply_rule = [&](const GaussRule& rule, const std::vector<qcplx>& table, const std::vector<qcplx>& centre,
                          const qreal& h, std::vector<qcplx>& out, std::vector<qreal>& mass) {
        std::fill(out.begin(), out.end(), qcplx());
        std::fill(mass.begin(), mass.end(), qreal(0));
        std::vector<qcplx> e(m);
        for (std::size_t k = 0; k < rule.x.size(); ++k) {
            qcplx u;
            for (std::size_t j = 0; j < m; ++j) {
                e[j] = centre[j] * table[k * m + j];
                u += coeff[j] * e[j];
            }
            const qreal weight = rule.w[k] * h / 2 * u.re;
            for (std::size_t i = 0; i < m; ++i) {
                out[i] += e[i] * weight;
                mass[i] += abs(e[i] * weight);
            }
        }
    };

    std::vector<qcplx> total(m);
    std::function<void(const qreal&, const qreal&, int)> panel = [&](const qreal& a, const qreal& b, int depth) {
        const qreal h = b - a;
        std::vector<qcplx> centre(m);
        for (std::size_t j = 0; j < m; ++j) centre[j] = exp(eta[j] * ((a + b) / 2 - T));
        const bool standard = (depth == 0);
        const auto ft = standard ? fine_table : offset_table(fine, h);
        const auto ct = standard ? coarse_table : offset_table(coarse, h);
        std::vector<qcplx> hi(m), lo(m);
        std::vector<qreal> mass(m), unused(m);
        apply_rule(fine, ft, centre, h, hi, mass);
        apply_rule(coarse, ct, centre, h, lo, unused);
        bool converged = true;
        for (std::size_t i = 0; i < m && converged; ++i) {
            // below the rounding level of the panel sum no refinement can help
            const qreal floor = mass[i] * qreal(1e-30);
            converged = abs(hi[i] - lo[i]) <= std::max(tol[i] * (h / T), floor);
        }
        if (converged || depth >= 16) {
            for (std::size_t i = 0; i < m; ++i) total[i] += hi[i];
            return;
        }
        panel(a, (a + b) / 2, depth + 1);
        panel((a + b) / 2, b, depth + 1);
    };
    for (int p = 0; p < panels; ++p) panel(width * p, p + 1 == panels ? T : width * (p + 1), 0);

    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        worst = std::max(worst, static_cast<double>(abs(total[i] - rhs[i]) / threshold[i]));
    }
    return worst;
}

double sampled_sup(const ModalControl& mc, int samples) {
    if (mc.scaled_coeffs.empty()) return 0.0;
    const int count = std::max(samples, 3);
    const double h = mc.T / (count - 1);
    std::vector<double> values(count);
    for (int k = 0; k < count; ++k) values[k] = std::abs(mc.complex_value(k * h).real());

    double best = *std::max_element(values.begin(), values.end());
    std::vector<int> peaks;
    for (int k = 0; k < count; ++k) {
        const bool left = (k == 0) || values[k] >= values[k - 1];
        const bool right = (k + 1 == count) || values[k] >= values[k + 1];
        if (left && right) peaks.push_back(k);
    }
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return values[a] > values[b]; });
    if (peaks.size() > 8) peaks.resize(8);

    constexpr double kInvPhi = 0.6180339887498949;
    auto f = [&](double t) { return std::abs(mc.complex_value(t).real()); };
    for (int k : peaks) {
        double a = std::max(0.0, (k - 1) * h);
        double b = std::min(mc.T, (k + 1) * h);
        double c = b - kInvPhi * (b - a);
        double d = a + kInvPhi * (b - a);
        double fc = f(c);
        double fd = f(d);
        for (int iter = 0; iter < 80 && (b - a) > 1e-15 * std::max(1.0, mc.T); ++iter) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - kInvPhi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + kInvPhi * (b - a);
                fd = f(d);
            }
        }
        best = std::max({best, fc, fd});
    }
    return best;
}

ModalControl solve_modal_moments(const MomentSystem& sys, const ControlOptions& options) {
    ModalControl mc;
    mc.n = sys.n;
    mc.T = sys.T;
    mc.exponents = sys.exponents;
    const ScaledSolve solved(sys);
    auto x = refine(sys, solved);

    // The system is invariant under conjugation, so the exact solution pairs
    // conjugate exponents with conjugate coefficients; impose it on the rounded one.
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::size_t j = conjugate_partner(mc.exponents, i);
        if (j == i) {
            x[i].im = 0;
        } else if (j > i) {
            const auto avg = (x[i] + conj(x[j])) * detail::qreal(0.5);
            x[i] = avg;
            x[j] = conj(avg);
        }
    }
    for (const auto& c : x) {
        const cplx hi = c.to_double();
        mc.scaled_coeffs.push_back(hi);
        mc.scaled_coeffs_lo.push_back((c - detail::qcplx(hi)).to_double());
    }

    for (const auto& c : mc.scaled_coeffs) mc.majorant += std::abs(c);
    mc.integral = mc.integral_to(mc.T);
    mc.sup_bound = std::min(mc.majorant, sampled_sup(mc, options.sup_samples));
    if (options.check_moments) mc.moment_residual = moment_residual(sys, mc);
    return mc;
}

double eval_modal_control(const ModalControl& mc, double t) { return mc(t); }

double modal_integral(const ModalControl& mc) { return mc.integral_to(mc.T); }

double cauchy_determinant(const std::vector<double>& q) {
    double num = 1.0;
    double den = 1.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) num *= (q[i] - q[j]) * (q[i] - q[j]);
        for (std::size_t j = 0; j < q.size(); ++j) den *= q[i] + q[j];
    }
    return num / den;
}

DeterminantDiagnostics determinant_diagnostics(const MomentSystem& sys) {
    DeterminantDiagnostics diag;
    const CMatrix g = scaled_gram(sys);
    const Eigen::PartialPivLU<CMatrix> lu(g);
    diag.det_scaled = lu.determinant();
    diag.condition = one_norm(g) * one_norm(lu.inverse());

    const bool has_zero = std::any_of(sys.exponents.begin(), sys.exponents.end(),
                                      [](cplx e) { return std::abs(e) < 1e-13; });
    if (!has_zero) {
        const auto m = static_cast<Eigen::Index>(sys.size());
        CMatrix limit(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) limit(i, j) = 1.0 / (sys.exponents[i] + sys.exponents[j]);
        }
        const cplx det_limit = limit.fullPivLu().determinant();
        diag.det_limit = det_limit;
        diag.relative_gap = std::abs(diag.det_scaled - det_limit) / std::abs(det_limit);
    }

    std::vector<double> real_exponents;
    const cplx* pair = nullptr;
    for (const auto& e : sys.exponents) {
        if (e.imag() == 0.0 && std::abs(e) >= 1e-13) real_exponents.push_back(e.real());
        if (e.imag() > 0.0) pair = &e;
    }
    if (pair != nullptr) {
        const double p = cauchy_determinant(real_exponents);
        diag.cauchy_p = p;
        diag.leading_term = -p / (4.0 * pair->real() * pair->real());
    }
    return diag;
}

}  // namespace memwave
