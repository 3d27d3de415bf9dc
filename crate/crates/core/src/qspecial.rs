//! Terminating basic hypergeometric series and little q-Jacobi polynomials,
//! with exact coefficients in `Q(v)`.
//!
//! Only terminating series appear here: the upper parameter is a nonpositive
//! power of the base, so every sum is finite and exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{QError, Result};
use crate::scalar::{q_pochhammer, ScalarQ};

// ---------------------------------------------------------------------------
// Symbolic polynomials in one commuting indeterminate
// ---------------------------------------------------------------------------

/// A polynomial in one commuting indeterminate `x` over `Q(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    /// coefficient of x^i
    pub coeffs: Vec<ScalarQ>,
}

impl SymPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: ScalarQ) -> Self {
        let mut p = Self::zero();
        p.set(0, c);
        p
    }

    pub fn set(&mut self, i: usize, c: ScalarQ) {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, ScalarQ::zero());
        }
        self.coeffs[i] = c;
        self.trim();
    }

    pub fn get(&self, i: usize) -> ScalarQ {
        self.coeffs.get(i).cloned().unwrap_or_else(ScalarQ::zero)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.coeffs.iter().enumerate() {
            let cur = out.get(i);
            out.set(i, &cur + c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let cur = out.get(i + j);
                out.set(i + j, &cur + &(a * b));
            }
        }
        out
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            out.set(i, a * c);
        }
        out
    }

    pub fn eval(&self, x: &ScalarQ) -> ScalarQ {
        let mut acc = ScalarQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Substitute `x -> c x`.
    pub fn scale_argument(&self, c: &ScalarQ) -> Self {
        let mut out = Self::zero();
        let mut power = ScalarQ::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            out.set(i, a * &power);
            power = &power * c;
        }
        out
    }

    /// The Jackson integral over `[0, 1]` with step `q^2`:
    /// monomial rule `x^k -> (1 - q^2)/(1 - q^{2(k+1)})`.
    pub fn jackson01(&self) -> ScalarQ {
        let one = ScalarQ::one();
        let mut acc = ScalarQ::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let num = &one - &ScalarQ::q_pow(2);
            let den = &one - &ScalarQ::q_pow(2 * (k as i64 + 1));
            acc = &acc + &(c * &(&num / &den));
        }
        acc
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial in one commuting indeterminate over `Q(v)`; used for
/// transformation identities whose two sides carry inverse powers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymLaurent {
    pub coeffs: BTreeMap<i64, ScalarQ>,
}

impl SymLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, e: i64, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(ScalarQ::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn from_sympoly(p: &SymPoly) -> Self {
        let mut out = Self::zero();
        for (i, c) in p.coeffs.iter().enumerate() {
            out.add_term(i as i64, c.clone());
        }
        out
    }

    pub fn mul_monomial(&self, e: i64, c: &ScalarQ) -> Self {
        let mut out = Self::zero();
        for (ee, cc) in &self.coeffs {
            out.add_term(ee + e, cc * c);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Terminating 2phi1
// ---------------------------------------------------------------------------

/// Parameters of a terminating basic hypergeometric series
/// `2phi1(a, b; c; base, x) = sum_k (a;base)_k (b;base)_k /
/// ((c;base)_k (base;base)_k) x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phi21Spec {
    pub a: ScalarQ,
    pub b: ScalarQ,
    pub c: ScalarQ,
    /// The base as an integer power of `q` (the exponent `e` in `q^e`);
    /// every use here has `e = 2` or `e = -2`.
    pub base_exp: i64,
    /// Termination index: `(a; base)_{N+1} = 0`.
    pub termination: usize,
}

impl Phi21Spec {
    /// Detects the termination index from `a = base^{-N}`.
    pub fn new(a: ScalarQ, b: ScalarQ, c: ScalarQ, base_exp: i64) -> Result<Self> {
        let Some(pow) = a.as_q_power() else {
            return Err(QError::NonTerminating);
        };
        if base_exp == 0 || pow % base_exp != 0 || -(pow / base_exp) < 0 {
            return Err(QError::NonTerminating);
        }
        let termination = (-(pow / base_exp)) as usize;
        let spec = Self {
            a,
            b,
            c,
            base_exp,
            termination,
        };
        spec.check_denominators()?;
        Ok(spec)
    }

    /// Builds from integer exponents of `q`: `a = q^ea`, `b = q^eb`, `c = q^ec`.
    pub fn from_q_exponents(ea: i64, eb: i64, ec: i64, base_exp: i64) -> Result<Self> {
        Self::new(
            ScalarQ::q_pow(ea),
            ScalarQ::q_pow(eb),
            ScalarQ::q_pow(ec),
            base_exp,
        )
    }

    fn check_denominators(&self) -> Result<()> {
        // (c; base)_k must be nonzero for k <= N.
        let one = ScalarQ::one();
        let mut cq = self.c.clone();
        for _ in 0..self.termination {
            if cq == one {
                return Err(QError::SeriesDenominatorZero);
            }
            cq = &cq * &ScalarQ::q_pow(self.base_exp);
        }
        Ok(())
    }

    fn term_coeff(&self, k: i64) -> Result<ScalarQ> {
        let e = self.base_exp;
        let num = &q_pochhammer(&self.a, e, k)? * &q_pochhammer(&self.b, e, k)?;
        let den =
            &q_pochhammer(&self.c, e, k)? * &q_pochhammer(&ScalarQ::q_pow(e), e, k)?;
        if den.is_zero() {
            return Err(QError::SeriesDenominatorZero);
        }
        Ok(&num / &den)
    }
}

/// Exact value of the terminating series at `x`.
pub fn phi21_eval(spec: &Phi21Spec, x: &ScalarQ) -> Result<ScalarQ> {
    let p = phi21_symbolic(spec)?;
    Ok(p.eval(x))
}

/// The series with the argument left symbolic; degree equals the
/// termination index (when the leading coefficient survives).
pub fn phi21_symbolic(spec: &Phi21Spec) -> Result<SymPoly> {
    let mut out = SymPoly::zero();
    for k in 0..=spec.termination as i64 {
        out.set(k as usize, spec.term_coeff(k)?);
    }
    Ok(out)
}

/// Evaluate the series at a monomial argument `coeff * x^exp` as a Laurent
/// polynomial in `x` (for transformation checks with `exp = -1`).
pub fn phi21_at_monomial(spec: &Phi21Spec, coeff: &ScalarQ, exp: i64) -> Result<SymLaurent> {
    let p = phi21_symbolic(spec)?;
    let mut out = SymLaurent::zero();
    let mut pw = ScalarQ::one();
    for (k, c) in p.coeffs.iter().enumerate() {
        out.add_term(exp * k as i64, c * &pw);
        pw = &pw * coeff;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Little q-Jacobi polynomials
// ---------------------------------------------------------------------------

/// Parameters of a little q-Jacobi polynomial `P_k^{(alpha,beta)}(x; base)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QJacobiSpec {
    pub k: i64,
    pub alpha: i64,
    pub beta: i64,
    /// Base as an integer power of `q` (every use here has base `q^2`).
    pub base_exp: i64,
}

impl QJacobiSpec {
    pub fn new(k: i64, alpha: i64, beta: i64, base_exp: i64) -> Result<Self> {
        if k < 0 {
            return Err(QError::InvalidArgument(format!(
                "q-Jacobi degree must be nonnegative, got {k}"
            )));
        }
        Ok(Self {
            k,
            alpha,
            beta,
            base_exp,
        })
    }
}

/// `P_k^{(alpha,beta)}(x; b) = 2phi1(b^{-k}, b^{alpha+beta+k+1}; b^{alpha+1}; b, b x)`
/// as an exact polynomial in `x` of degree `k`, with `P_0 = 1` and value 1 at
/// `x = 0`.
pub fn little_q_jacobi(spec: &QJacobiSpec) -> Result<SymPoly> {
    let e = spec.base_exp;
    let phi = Phi21Spec::new(
        ScalarQ::q_pow(-e * spec.k),
        ScalarQ::q_pow(e * (spec.alpha + spec.beta + spec.k + 1)),
        ScalarQ::q_pow(e * (spec.alpha + 1)),
        e,
    )?;
    let sym = phi21_symbolic(&phi)?;
    // substitute x -> (base) x
    Ok(sym.scale_argument(&ScalarQ::q_pow(e)))
}

// ---------------------------------------------------------------------------
// Orthogonality norms
// ---------------------------------------------------------------------------

/// The little q-Jacobi orthogonality integral in base `q^2`:
///
/// ```text
/// N_k^{(alpha,beta)} = integral_0^1 x^alpha (q^2 x; q^2)_beta
///                      [P_k^{(alpha,beta)}(x; q^2)]^2 d_{q^2} x
/// ```
///
/// in closed form (mass of the measure times the degree-k norm ratio).
pub fn jacobi_norm(alpha: i64, beta: i64, k: i64) -> Result<ScalarQ> {
    if alpha < 0 || beta < 0 || k < 0 {
        return Err(QError::InvalidArgument(format!(
            "jacobi_norm indices must be nonnegative: alpha={alpha} beta={beta} k={k}"
        )));
    }
    let one = ScalarQ::one();
    let poch = |shift: i64, s: i64| q_pochhammer(&ScalarQ::q_pow(2 * shift), 2, s).unwrap();
    let mass = &(&(&one - &ScalarQ::q_pow(2)) * &(&poch(1, alpha) * &poch(1, beta)))
        / &poch(1, alpha + beta + 1);
    let ratio_num = &(&ScalarQ::q_pow(2 * k * (alpha + 1))
        * &(&one - &ScalarQ::q_pow(2 * (alpha + beta + 1))))
        * &(&poch(1, k) * &poch(beta + 1, k));
    let ratio_den = &(&(&one - &ScalarQ::q_pow(2 * (alpha + beta + 2 * k + 1)))
        * &poch(alpha + 1, k))
        * &poch(alpha + beta + 1, k);
    Ok(&mass * &(&ratio_num / &ratio_den))
}

/// Direct-summation oracle for [`jacobi_norm`]: expand the polynomial, the
/// weight, and Jackson-integrate term by term.
pub fn jacobi_norm_by_integration(alpha: i64, beta: i64, k: i64) -> Result<ScalarQ> {
    jacobi_cross_integral(alpha, beta, k, k)
}

/// Orthogonality integral for two degrees against the same weight.
pub fn jacobi_cross_integral(alpha: i64, beta: i64, k1: i64, k2: i64) -> Result<ScalarQ> {
    let p1 = little_q_jacobi(&QJacobiSpec::new(k1, alpha, beta, 2)?)?;
    let p2 = little_q_jacobi(&QJacobiSpec::new(k2, alpha, beta, 2)?)?;
    let mut integrand = p1.mul(&p2);
    // weight (q^2 x; q^2)_beta = prod_{j=1..beta} (1 - q^{2j} x)
    for j in 1..=beta {
        let mut factor = SymPoly::constant(ScalarQ::one());
        factor.set(1, -ScalarQ::q_pow(2 * j));
        integrand = integrand.mul(&factor);
    }
    // weight x^alpha
    let mut shifted = SymPoly::zero();
    for (i, c) in integrand.coeffs.iter().enumerate() {
        shifted.set(i + alpha as usize, c.clone());
    }
    Ok(shifted.jackson01())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q2_pochhammer;

    #[test]
    fn phi21_termination_detection() {
        // a = q^0 terminates at N = 0: the series is identically 1.
        let spec = Phi21Spec::from_q_exponents(0, 4, 2, 2).unwrap();
        assert_eq!(spec.termination, 0);
        let val = phi21_eval(&spec, &ScalarQ::q_pow(5)).unwrap();
        assert!(val.is_one());
        // a = q^-4 with base q^2 terminates at N = 2.
        let spec = Phi21Spec::from_q_exponents(-4, 4, 2, 2).unwrap();
        assert_eq!(spec.termination, 2);
        assert_eq!(phi21_symbolic(&spec).unwrap().degree(), Some(2));
        // a not a power of the base: rejected.
        assert!(Phi21Spec::new(
            crate::scalar::q_number(2),
            ScalarQ::one(),
            ScalarQ::q_pow(2),
            2
        )
        .is_err());
        // a = q^2 (positive power): rejected.
        assert!(Phi21Spec::from_q_exponents(2, 0, 2, 2).is_err());
    }

    #[test]
    fn phi21_denominator_guard() {
        // c = q^-2 with base q^2 and N = 2 hits (c;base)_2 = 0.
        assert!(Phi21Spec::from_q_exponents(-4, 4, -2, 2).is_err());
    }

    #[test]
    fn phi21_two_term_example() {
        // 2phi1(q^-2, q^4; q^2; q^2, q^2 t) = 1 - (1+q^2) t
        let spec = Phi21Spec::from_q_exponents(-2, 4, 2, 2).unwrap();
        let sym = phi21_symbolic(&spec)
            .unwrap()
            .scale_argument(&ScalarQ::q_pow(2));
        let mut expect = SymPoly::constant(ScalarQ::one());
        expect.set(1, -(&ScalarQ::one() + &ScalarQ::q_pow(2)));
        assert_eq!(sym, expect);
    }

    #[test]
    fn phi21_q_gauss_value() {
        // 2phi1(q^-2, q^-2; q^-4; q^2, q^2) = 1/(1+q^2)
        let spec = Phi21Spec::from_q_exponents(-2, -2, -4, 2).unwrap();
        let got = phi21_eval(&spec, &ScalarQ::q_pow(2)).unwrap();
        let expect = (&ScalarQ::one() + &ScalarQ::q_pow(2)).recip().unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn q_gauss_closed_form_family() {
        // 2phi1(q^{-2m}, q^{-2m'+2nu}; q^{-2(m+m'+n-2)}; q^2, q^2)
        //   = q^{-2mm'+2m nu} (q^{-2m'-2n+4};q^2)_{m'-nu}
        //     / (q^{-2(m+m'+n-2)};q^2)_{m'-nu}
        for n in 2i64..=3 {
            for m in 0i64..=3 {
                for mp in 0i64..=3 {
                    for nu in 0..=mp {
                        let spec = Phi21Spec::from_q_exponents(
                            -2 * m,
                            -2 * mp + 2 * nu,
                            -2 * (m + mp + n - 2),
                            2,
                        );
                        let spec = match spec {
                            Ok(s) => s,
                            Err(_) => continue,
                        };
                        let got = phi21_eval(&spec, &ScalarQ::q_pow(2)).unwrap();
                        let expect = &(&ScalarQ::q_pow(-2 * m * mp + 2 * m * nu)
                            * &q2_pochhammer(-mp - n + 2, mp - nu))
                            / &q2_pochhammer(-(m + mp + n - 2), mp - nu);
                        assert_eq!(got, expect, "n={n} m={m} m'={mp} nu={nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn little_q_jacobi_examples() {
        // P_0 = 1
        let p = little_q_jacobi(&QJacobiSpec::new(0, 0, 0, 2).unwrap()).unwrap();
        assert_eq!(p, SymPoly::constant(ScalarQ::one()));
        // P_1^{(0,0)}(x; q^2) = 1 - (1+q^2) x
        let p = little_q_jacobi(&QJacobiSpec::new(1, 0, 0, 2).unwrap()).unwrap();
        let mut expect = SymPoly::constant(ScalarQ::one());
        expect.set(1, -(&ScalarQ::one() + &ScalarQ::q_pow(2)));
        assert_eq!(p, expect);
        // value 1 at x = 0 for all k <= 4
        for k in 0..=4 {
            for (alpha, beta) in [(0, 0), (1, 0), (2, 1), (1, 3)] {
                let p = little_q_jacobi(&QJacobiSpec::new(k, alpha, beta, 2).unwrap()).unwrap();
                assert!(
                    p.eval(&ScalarQ::zero()).is_one(),
                    "k={k} a={alpha} b={beta}"
                );
                assert_eq!(p.degree(), Some(k as usize));
            }
        }
        // negative degree rejected
        assert!(QJacobiSpec::new(-1, 0, 0, 2).is_err());
    }

    #[test]
    fn jacobi_norm_matches_direct_integration() {
        for alpha in 0i64..=3 {
            for beta in 0i64..=3 {
                for k in 0i64..=3 {
                    let closed = jacobi_norm(alpha, beta, k).unwrap();
                    let direct = jacobi_norm_by_integration(alpha, beta, k).unwrap();
                    assert_eq!(closed, direct, "alpha={alpha} beta={beta} k={k}");
                }
            }
        }
    }

    #[test]
    fn jacobi_orthogonality() {
        for alpha in 0i64..=2 {
            for beta in 0i64..=2 {
                for k1 in 0i64..=3 {
                    for k2 in 0..k1 {
                        let cross = jacobi_cross_integral(alpha, beta, k1, k2).unwrap();
                        assert!(cross.is_zero(), "alpha={alpha} beta={beta} k1={k1} k2={k2}");
                    }
                }
            }
        }
    }

    #[test]
    fn heine_type_transformation() {
        // 2phi1(b^-u, B; C; b, z) = b^{-u(u+1)/2} (-z)^u (B;b)_u/(C;b)_u
        //   * 2phi1(b^-u, b^{1-u}/C; b^{1-u}/B; b, C b^{u+1}/(B z))
        // in base b = q^2, for the parameter families of the split
        // projection: B = q^{-2(r+r'+p+u-1)}, C = q^{-2(m+m'+n-2)}.
        let base = 2i64;
        for u in 0i64..=3 {
            for (nn, p, r, rp, s, sp) in [
                (2i64, 1i64, 0i64, 0i64, 0i64, 0i64),
                (3, 1, 1, 0, 0, 1),
                (3, 2, 0, 1, 1, 0),
                (3, 1, 1, 1, 1, 1),
            ] {
                let m = r + s + u;
                let mp = rp + sp + u;
                let cap_b = -2 * (r + rp + p + u - 1);
                let cap_c = -2 * (m + mp + nn - 2);
                let spec_l = match Phi21Spec::from_q_exponents(-2 * u, cap_b, cap_c, base) {
                    Ok(sp) => sp,
                    Err(_) => continue,
                };
                let lhs = phi21_at_monomial(&spec_l, &ScalarQ::one(), 1).unwrap();
                let spec_r = Phi21Spec::from_q_exponents(
                    -2 * u,
                    2 * (1 - u) - cap_c,
                    2 * (1 - u) - cap_b,
                    base,
                )
                .unwrap();
                // argument C b^{u+1} / (B z) = q^{cap_c + 2(u+1) - cap_b} z^-1
                let rhs_series = phi21_at_monomial(
                    &spec_r,
                    &ScalarQ::q_pow(cap_c + 2 * (u + 1) - cap_b),
                    -1,
                )
                .unwrap();
                let sign = if u % 2 == 0 {
                    ScalarQ::one()
                } else {
                    -ScalarQ::one()
                };
                let prefactor = &(&(&sign * &ScalarQ::q_pow(-u * (u + 1)))
                    * &q2_pochhammer(cap_b / 2, u))
                    / &q2_pochhammer(cap_c / 2, u);
                let rhs = rhs_series.mul_monomial(u, &prefactor);
                assert_eq!(lhs, rhs, "u={u} n={nn} p={p} r={r} r'={rp} s={s} s'={sp}");
            }
        }
    }
}
