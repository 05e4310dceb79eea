#include "smalelab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smalelab/rootfind.hpp"

namespace smalelab {

bool is_finite(Cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Polynomial::Polynomial(std::vector<Cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw std::invalid_argument("polynomial: empty coefficient sequence");
    for (const Cplx& c : coeffs_)
        if (!is_finite(c))
            throw std::invalid_argument("polynomial: non-finite coefficient");
    // trim exact trailing zeros so degree() is honest
    while (coeffs_.size() > 1 && coeffs_.back() == Cplx(0.0))
        coeffs_.pop_back();
}

bool Polynomial::is_zero() const {
    return coeffs_.size() == 1 && coeffs_[0] == Cplx(0.0);
}

Cplx Polynomial::coefficient(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size()))
        return Cplx(0.0);
    return coeffs_[static_cast<size_t>(k)];
}

double Polynomial::coefficient_scale() const {
    double m = 0.0;
    for (const Cplx& c : coeffs_)
        m = std::max(m, std::abs(c));
    return m;
}

Cplx Polynomial::operator()(Cplx z) const {
    Cplx v = coeffs_.back();
    for (size_t k = coeffs_.size() - 1; k-- > 0;)
        v = v * z + coeffs_[k];
    return v;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coefficients() == b.coefficients();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Cplx> c(std::max(a.coefficients().size(), b.coefficients().size()), Cplx(0.0));
    for (size_t k = 0; k < c.size(); ++k)
        c[k] = a.coefficient(static_cast<int>(k)) + b.coefficient(static_cast<int>(k));
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (Cplx(-1.0) * b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero())
        return Polynomial();
    const auto& ca = a.coefficients();
    const auto& cb = b.coefficients();
    std::vector<Cplx> c(ca.size() + cb.size() - 1, Cplx(0.0));
    for (size_t i = 0; i < ca.size(); ++i)
        for (size_t j = 0; j < cb.size(); ++j)
            c[i + j] += ca[i] * cb[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(Cplx s, const Polynomial& p) {
    std::vector<Cplx> c = p.coefficients();
    for (Cplx& x : c)
        x *= s;
    return Polynomial(std::move(c));
}

Polynomial from_roots(const RootConfiguration& config, Cplx leading) {
    if (leading == Cplx(0.0))
        throw std::invalid_argument("from_roots: zero leading coefficient");
    if (!is_finite(leading))
        throw std::invalid_argument("from_roots: non-finite leading coefficient");
    for (const Cplx& r : config.roots)
        if (!is_finite(r))
            throw std::invalid_argument("from_roots: non-finite root");

    std::vector<Cplx> coeffs{leading};
    auto mul_linear = [&coeffs](Cplx root) {
        // multiply by (z - root)
        std::vector<Cplx> next(coeffs.size() + 1, Cplx(0.0));
        for (size_t k = 0; k < coeffs.size(); ++k) {
            next[k] += -root * coeffs[k];
            next[k + 1] += coeffs[k];
        }
        coeffs = std::move(next);
    };
    for (const Cplx& r : config.roots)
        mul_linear(r);
    if (config.includes_origin) {
        // exact factor z: shift coefficients up, constant term exactly 0
        coeffs.insert(coeffs.begin(), Cplx(0.0));
    }
    return Polynomial(std::move(coeffs));
}

Polynomial from_roots(const std::vector<Cplx>& roots, Cplx leading) {
    RootConfiguration cfg;
    cfg.roots = roots;
    cfg.includes_origin = false;
    return from_roots(cfg, leading);
}

Polynomial derivative(const Polynomial& p) {
    if (p.degree() == 0)
        return Polynomial();
    const auto& c = p.coefficients();
    std::vector<Cplx> d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k)
        d[k - 1] = static_cast<double>(k) * c[k];
    return Polynomial(std::move(d));
}

Cplx difference_quotient(const Polynomial& p, Cplx zeta, Cplx z) {
    if (zeta == z)
        throw std::invalid_argument("difference_quotient: coincident arguments");
    return (p(zeta) - p(z)) / (zeta - z);
}

Polynomial blow_up(const Polynomial& p, double r) {
    if (!(r > 0.0))
        throw std::invalid_argument("blow_up: scale must be positive");
    const int n = p.degree();
    std::vector<Cplx> c = p.coefficients();
    // r^n p(z/r): coefficient k picks up r^(n-k)
    for (int k = 0; k <= n; ++k)
        c[static_cast<size_t>(k)] *= std::pow(r, n - k);
    return Polynomial(std::move(c));
}

Polynomial translate_to_origin(const Polynomial& p, Cplx z0) {
    // Taylor shift by repeated synthetic division: b_k = p^(k)(z0)/k!
    std::vector<Cplx> work = p.coefficients();
    const size_t n = work.size();
    std::vector<Cplx> shifted(n);
    for (size_t k = 0; k < n; ++k) {
        Cplx rem = work.back();
        for (size_t j = work.size() - 1; j-- > 0;) {
            Cplx tmp = work[j];
            work[j] = rem;
            rem = tmp + rem * z0;
        }
        shifted[k] = rem;
        work.pop_back();
        if (work.empty())
            break;
    }
    shifted[0] = Cplx(0.0);  // subtract p(z0) exactly
    return Polynomial(std::move(shifted));
}

Normalized normalize_to_class(const Polynomial& p) {
    if (p.degree() < 2)
        throw std::invalid_argument("normalize_to_class: degree must be >= 2");
    const double scale = p.coefficient_scale();
    if (std::abs(p.coefficient(0)) > 1e-12 * scale)
        throw std::invalid_argument("normalize_to_class: p(0) != 0");
    if (std::abs(p.coefficient(1)) <= 1e-12 * scale)
        throw std::invalid_argument("normalize_to_class: p'(0) == 0");

    std::vector<Cplx> c = p.coefficients();
    c[0] = Cplx(0.0);
    const Cplx lead = c.back();
    for (Cplx& x : c)
        x /= lead;
    Polynomial monic(std::move(c));

    RootFindReport roots = all_roots(monic);
    double s = 0.0;
    for (const Cplx& z : roots.roots)
        s = std::max(s, std::abs(z));
    if (!(s > 0.0))
        throw std::invalid_argument("normalize_to_class: no nonzero roots");
    return Normalized{blow_up(monic, 1.0 / s), s};
}

}  // namespace smalelab
