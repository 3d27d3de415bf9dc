//! The invariant functional on the quantum sphere, the scalar product it
//! induces, and restriction of polynomials to the sphere.
//!
//! The sphere is the quotient of the algebra by the relation `Q = 1`.  The
//! invariant functional `h` kills every monomial of nonzero weight and takes
//! an explicit q-Pochhammer product value on zero-weight monomials; a nested
//! Jackson-integral form over the commuting partial radii `Q_1..Q_{n-1}`
//! computes the same values and is kept as an independent oracle.

use std::collections::BTreeMap;

use crate::algebra::{bidegree_basis, Monomial, NCPoly, Order};
use crate::error::{QError, Result};
use crate::harmonics;
use crate::linalg::QMatrix;
use crate::scalar::{q2_pochhammer, ScalarQ};

// ---------------------------------------------------------------------------
// The invariant functional
// ---------------------------------------------------------------------------

/// The invariant functional `h` on the sphere, precomposed with restriction
/// (so `Q` is implicitly 1).
///
/// A w-first zero-weight monomial `w_1^{u1}..w_n^{un} z_1^{u1}..z_n^{un}`
/// differs from the evaluation shape `w_1^{u1}..w_n^{un} z_n^{un}..z_1^{u1}`
/// by resorting the z block, which costs `q^{+sum_{i<j} u_i u_j}`; the shape
/// itself evaluates to
/// `(q^2;q^2)_{u1} .. (q^2;q^2)_{un} (q^2;q^2)_{n-1} / (q^2;q^2)_{u1+..+un+n-1}`.
pub fn h_functional(p: &NCPoly) -> ScalarQ {
    let n = p.rank();
    let wfirst = p.convert_order(Order::WFirst);
    let mut acc = ScalarQ::zero();
    for (mono, c) in wfirst.terms() {
        if !mono.is_zero_weight() {
            continue;
        }
        let mu = &mono.w;
        let mut cross = 0i64;
        let mut suffix: i64 = mu.iter().map(|&x| x as i64).sum();
        let total = suffix;
        for &x in mu {
            suffix -= x as i64;
            cross += x as i64 * suffix;
        }
        let mut val = &ScalarQ::q_pow(cross) * &q2_pochhammer(1, n as i64 - 1);
        for &u in mu {
            val = &val * &q2_pochhammer(1, u as i64);
        }
        val = &val / &q2_pochhammer(1, total + n as i64 - 1);
        acc = &acc + &(c * &val);
    }
    acc
}

// ---------------------------------------------------------------------------
// Commutative polynomials in the partial radii
// ---------------------------------------------------------------------------

/// A polynomial in the commuting elements `Q_1, .., Q_n` (exponent vectors of
/// length `n`; the last slot is the full radius, set to 1 on the sphere).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RadiusPoly {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, ScalarQ>,
}

impl RadiusPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(ScalarQ::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Substitute `Q_n = 1`, leaving a polynomial in `Q_1..Q_{n-1}`.
    pub fn on_sphere(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[self.n - 1] = 0;
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Expand into the algebra (each `Q_j` as the explicit sum of `z_i w_i`).
    pub fn expand(&self) -> Result<NCPoly> {
        let mut out = NCPoly::zero(self.n, Order::ZFirst);
        for (e, c) in &self.terms {
            let mut term = NCPoly::constant(self.n, Order::ZFirst, c.clone());
            for (j, &a) in e.iter().enumerate() {
                let qj = NCPoly::q_radius(self.n, j + 1)?;
                term = term.mul(&qj.pow(a));
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

/// The iterated Jackson q^2-integral form of `h` on a polynomial in
/// `Q_1..Q_{n-1}` (the `Q_n` slot must be trivial):
///
/// ```text
/// h(f) = (q^2;q^2)_{n-1} / (1-q^2)^{n-1}
///        * ∫_0^1 ∫_0^{Q_{n-1}} .. ∫_0^{Q_2} f dQ_1 .. dQ_{n-1}
/// ```
///
/// with the monomial rule `∫_0^a x^k d_{q^2}x = a^{k+1} (1-q^2)/(1-q^{2(k+1)})`.
/// For the monomial `Q_1^{a_1} .. Q_{n-1}^{a_{n-1}}` the nested integral gives
/// `prod_j (1-q^{2j}) / (1 - q^{2(A_j + j)})` with `A_j = a_1 + .. + a_j`.
pub fn h_jackson(f: &RadiusPoly) -> Result<ScalarQ> {
    let n = f.n;
    if n < 1 {
        return Err(QError::InvalidArgument("rank must be >= 1".into()));
    }
    let one = ScalarQ::one();
    let mut acc = ScalarQ::zero();
    for (e, c) in &f.terms {
        if e[n - 1] != 0 {
            return Err(QError::InvalidArgument(
                "Jackson form needs Q_n eliminated (restrict to the sphere first)".into(),
            ));
        }
        let mut val = ScalarQ::one();
        let mut partial = 0i64;
        for j in 1..n {
            partial += e[j - 1] as i64;
            let num = &one - &ScalarQ::q_pow(2 * j as i64);
            let den = &one - &ScalarQ::q_pow(2 * (partial + j as i64));
            val = &val * &(&num / &den);
        }
        acc = &acc + &(c * &val);
    }
    Ok(acc)
}

/// Express a zero-weight element in the commuting generators `Q_1..Q_n` by an
/// exact linear solve, one bidegree at a time.
pub fn zero_weight_to_radius(p: &NCPoly) -> Result<RadiusPoly> {
    let n = p.rank();
    let zp = p.convert_order(Order::ZFirst);
    for (mono, _) in zp.terms() {
        if !mono.is_zero_weight() {
            return Err(QError::InvalidArgument(
                "input has monomials of nonzero weight".into(),
            ));
        }
    }
    let mut out = RadiusPoly::zero(n);
    for (m, mp) in zp.bidegrees() {
        debug_assert_eq!(m, mp);
        let component = zp.bidegree_component(m, mp);
        // Zero-weight monomial basis of bidegree (d, d):
        let basis: Vec<Monomial> = bidegree_basis(n, m, mp)
            .into_iter()
            .filter(|mo| mo.is_zero_weight())
            .collect();
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, mo)| (mo, i)).collect();
        // Q-monomials of total degree d
        let q_monos = crate::algebra::compositions(m, n);
        let mut cols = Vec::new();
        for qe in &q_monos {
            let mut rp = RadiusPoly::zero(n);
            rp.add_term(qe.clone(), ScalarQ::one());
            let expanded = rp.expand()?;
            let mut col = vec![ScalarQ::zero(); basis.len()];
            for (mono, c) in expanded.terms() {
                let idx = index
                    .get(mono)
                    .ok_or_else(|| QError::LinearSolve("unexpected monomial".into()))?;
                col[*idx] = c.clone();
            }
            cols.push(col);
        }
        let mat = QMatrix::from_columns(basis.len(), cols);
        let mut rhs = vec![ScalarQ::zero(); basis.len()];
        for (mono, c) in component.terms() {
            let idx = index
                .get(mono)
                .ok_or_else(|| QError::LinearSolve("unexpected monomial".into()))?;
            rhs[*idx] = c.clone();
        }
        let sol = mat.solve(&rhs)?;
        for (qe, c) in q_monos.into_iter().zip(sol) {
            out.add_term(qe, c);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Scalar product and restriction
// ---------------------------------------------------------------------------

/// The invariant scalar product `<p1, p2> = h(p1 p2*)`.
pub fn inner_product(p1: &NCPoly, p2: &NCPoly) -> Result<ScalarQ> {
    if p1.rank() != p2.rank() {
        return Err(QError::RankMismatch {
            expected: p1.rank(),
            got: p2.rank(),
        });
    }
    Ok(h_functional(&p1.multiply(&p2.star())?))
}

/// Restriction to the sphere, represented by the unique harmonic element with
/// the same restriction: every bidegree component is harmonically decomposed
/// and the radius powers are set to 1.
pub fn restrict(p: &NCPoly) -> Result<NCPoly> {
    let n = p.rank();
    let mut out = NCPoly::zero(n, p.order());
    for (m, mp) in p.bidegrees() {
        let comp = p.bidegree_component(m, mp);
        for (_, h) in harmonics::harmonic_decompose(&comp)? {
            out = out.add(&h);
        }
    }
    Ok(out)
}

/// Gram matrix of a family of polynomials under [`inner_product`].
pub fn gram_matrix(polys: &[NCPoly]) -> Result<QMatrix> {
    let k = polys.len();
    let mut g = QMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..=i {
            let val = inner_product(&polys[i], &polys[j])?;
            g[(i, j)] = val.clone();
            g[(j, i)] = val;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Signed;

    fn z(n: usize, i: usize) -> NCPoly {
        NCPoly::z_gen(n, Order::ZFirst, i).unwrap()
    }

    fn w(n: usize, i: usize) -> NCPoly {
        NCPoly::w_gen(n, Order::ZFirst, i).unwrap()
    }

    #[test]
    fn h_basics() {
        let n = 2;
        assert!(h_functional(&NCPoly::one(n, Order::ZFirst)).is_one());
        assert!(h_functional(&z(n, 1)).is_zero());
        // h(w1 z1) = 1/(1+q^2) at n = 2
        let p = w(n, 1).mul(&z(n, 1));
        let expect = (&ScalarQ::one() + &ScalarQ::q_pow(2)).recip().unwrap();
        assert_eq!(h_functional(&p), expect);
    }

    #[test]
    fn jackson_basics() {
        let n = 2;
        // f = 1 -> 1 (normalization)
        let mut f = RadiusPoly::zero(n);
        f.add_term(vec![0, 0], ScalarQ::one());
        assert!(h_jackson(&f).unwrap().is_one());
        // f = Q1 -> 1/(1+q^2)
        let mut f = RadiusPoly::zero(n);
        f.add_term(vec![1, 0], ScalarQ::one());
        let expect = (&ScalarQ::one() + &ScalarQ::q_pow(2)).recip().unwrap();
        assert_eq!(h_jackson(&f).unwrap(), expect);
        // f = Q1^2 -> (1-q^2)/(1-q^6)
        let mut f = RadiusPoly::zero(n);
        f.add_term(vec![2, 0], ScalarQ::one());
        let expect = &(&ScalarQ::one() - &ScalarQ::q_pow(2))
            / &(&ScalarQ::one() - &ScalarQ::q_pow(6));
        assert_eq!(h_jackson(&f).unwrap(), expect);
    }

    #[test]
    fn radius_conversion_examples() {
        let n = 2;
        // z1 w1 = Q1
        let rp = zero_weight_to_radius(&z(n, 1).mul(&w(n, 1))).unwrap();
        let mut expect = RadiusPoly::zero(n);
        expect.add_term(vec![1, 0], ScalarQ::one());
        assert_eq!(rp, expect);
        // z2 w2 = Q2 - Q1
        let rp = zero_weight_to_radius(&z(n, 2).mul(&w(n, 2))).unwrap();
        let mut expect = RadiusPoly::zero(n);
        expect.add_term(vec![0, 1], ScalarQ::one());
        expect.add_term(vec![1, 0], -ScalarQ::one());
        assert_eq!(rp, expect);
        // w2 z2 = Q2 - q^2 Q1
        let rp = zero_weight_to_radius(&w(n, 2).mul(&z(n, 2))).unwrap();
        let mut expect = RadiusPoly::zero(n);
        expect.add_term(vec![0, 1], ScalarQ::one());
        expect.add_term(vec![1, 0], -ScalarQ::q_pow(2));
        assert_eq!(rp, expect);
        // nonzero weight rejected
        assert!(zero_weight_to_radius(&z(n, 1)).is_err());
    }

    #[test]
    fn dual_oracle_small_degrees() {
        // monomial-formula h equals the Jackson-integral h on all zero-weight
        // monomials of degree <= 3, n in {2, 3}
        for n in 2..=3usize {
            for d in 0..=3u32 {
                for mono in bidegree_basis(n, d, d) {
                    if !mono.is_zero_weight() {
                        continue;
                    }
                    let p = NCPoly::monomial(n, Order::ZFirst, mono.clone(), ScalarQ::one());
                    let direct = h_functional(&p);
                    let rp = zero_weight_to_radius(&p).unwrap().on_sphere();
                    let via_jackson = h_jackson(&rp).unwrap();
                    assert_eq!(direct, via_jackson, "n={n} mono={mono:?}");
                }
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let n = 2;
        // <z1, z2> = 0 (weights differ)
        assert!(inner_product(&z(n, 1), &z(n, 2)).unwrap().is_zero());
        // <z1, z1> = 1/(1+q^2)
        let expect = (&ScalarQ::one() + &ScalarQ::q_pow(2)).recip().unwrap();
        assert_eq!(inner_product(&z(n, 1), &z(n, 1)).unwrap(), expect);
        // <z2, z2> = q^2/(1+q^2)
        let expect = &ScalarQ::q_pow(2) / &(&ScalarQ::one() + &ScalarQ::q_pow(2));
        assert_eq!(inner_product(&z(n, 2), &z(n, 2)).unwrap(), expect);
    }

    #[test]
    fn restrict_examples() {
        let n = 2;
        // Q restricts to 1
        let q_el = NCPoly::q_radius(n, n).unwrap();
        assert_eq!(restrict(&q_el).unwrap(), NCPoly::one(n, Order::ZFirst));
        // z1 w1 restricts to its harmonic part plus the constant 1/(1+q^2)
        let p = z(n, 1).mul(&w(n, 1));
        let denom = (&ScalarQ::one() + &ScalarQ::q_pow(2)).recip().unwrap();
        let h11 = z(n, 1)
            .mul(&w(n, 1))
            .scale(&ScalarQ::q_pow(2))
            .sub(&z(n, 2).mul(&w(n, 2)))
            .scale(&denom);
        let expect = h11.add(&NCPoly::constant(n, Order::ZFirst, denom));
        assert_eq!(restrict(&p).unwrap(), expect);
        // idempotent on harmonics, and Q-multiples drop their radius factor
        let h = crate::harmonics::zonal(n, 1, 1).unwrap();
        assert_eq!(restrict(&h).unwrap(), h);
        let qh = q_el.mul(&h);
        assert_eq!(restrict(&qh).unwrap(), h);
    }

    #[test]
    fn self_inner_products_are_positive() {
        let q0 = BigRational::new(BigInt::from(7), BigInt::from(10));
        for n in 2..=3usize {
            for mono in bidegree_basis(n, 2, 1) {
                let p = NCPoly::monomial(n, Order::ZFirst, mono, ScalarQ::one());
                let val = inner_product(&p, &p).unwrap().eval_q(&q0).unwrap();
                assert!(val.is_positive());
            }
        }
    }
}
