#pragma once

#include <complex>
#include <vector>

namespace smalelab {

using Cplx = std::complex<double>;

/// True if both components are finite (no NaN/Inf).
bool is_finite(Cplx z);

/// Univariate complex polynomial, coefficients stored in ascending degree
/// (coeffs[k] multiplies z^k). The zero polynomial is the single entry 0;
/// otherwise the last entry is nonzero. All degree bookkeeping derives from
/// the coefficient count.
class Polynomial {
public:
    Polynomial() : coeffs_{Cplx(0.0)} {}
    explicit Polynomial(std::vector<Cplx> coeffs);

    static Polynomial constant(Cplx c) { return Polynomial({c}); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const;

    const std::vector<Cplx>& coefficients() const { return coeffs_; }
    Cplx coefficient(int k) const;
    Cplx leading() const { return coeffs_.back(); }
    double coefficient_scale() const;  // max |coeff|

    /// Horner evaluation.
    Cplx operator()(Cplx z) const;

private:
    std::vector<Cplx> coeffs_;
};

bool operator==(const Polynomial& a, const Polynomial& b);

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Cplx s, const Polynomial& p);

/// The nonzero roots z_2,...,z_n plus an optional forced root at the origin.
struct RootConfiguration {
    std::vector<Cplx> roots;
    bool includes_origin = true;
};

/// Expand leading * prod (z - root) by repeated linear-factor multiplication.
Polynomial from_roots(const RootConfiguration& config, Cplx leading = Cplx(1.0));
Polynomial from_roots(const std::vector<Cplx>& roots, Cplx leading = Cplx(1.0));

Polynomial derivative(const Polynomial& p);

/// D(zeta, z) = (p(zeta) - p(z)) / (zeta - z). Throws on zeta == z.
Cplx difference_quotient(const Polynomial& p, Cplx zeta, Cplx z);

/// r^n p(z/r): scales every root by r, leaves rho unchanged. Requires r > 0.
Polynomial blow_up(const Polynomial& p, double r);

/// p(z0 + w) - p(z0); the result vanishes at w = 0 exactly.
Polynomial translate_to_origin(const Polynomial& p, Cplx z0);

struct Normalized {
    Polynomial poly;
    double scale;  // s = max |z_j| over nonzero roots of the input
};

/// Make p monic and shrink so all nonzero roots lie in the closed unit disk
/// with at least one on the boundary. Requires p(0)=0, p'(0)!=0, degree >= 2.
Normalized normalize_to_class(const Polynomial& p);

}  // namespace smalelab
