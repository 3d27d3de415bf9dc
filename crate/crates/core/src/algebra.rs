//! The noncommutative algebra `A = C_q[z_1..z_n, w_1..w_n]`.
//!
//! Generators satisfy
//!
//! ```text
//! z_i z_j = q z_j z_i           (i < j)
//! w_i w_j = q^-1 w_j w_i        (i < j)
//! w_j z_i = q z_i w_j           (i != j)
//! w_k z_k = z_k w_k + (1 - q^2) (z_1 w_1 + ... + z_{k-1} w_{k-1})
//! ```
//!
//! Ordered monomials with all `z` letters before all `w` letters (both blocks
//! ascending by index) form one PBW basis; the `w`-before-`z` monomials form a
//! second one.  [`NCPoly`] keeps every element normal ordered in one of these
//! two bases, with coefficients in `Q(v)`.  Multiplication rewrites words back
//! to normal order; each swap of a `w` past a `z` at the same index spawns the
//! correction sum from the defining relation, which strictly decreases the
//! number of `wz` inversions, so the rewriting terminates.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::scalar::ScalarQ;

/// Which PBW basis a polynomial is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    /// `z_1^{a_1}..z_n^{a_n} w_1^{b_1}..w_n^{b_n}`
    #[serde(rename = "z-first")]
    ZFirst,
    /// `w_1^{b_1}..w_n^{b_n} z_1^{a_1}..z_n^{a_n}`
    #[serde(rename = "w-first")]
    WFirst,
}

/// An ordered monomial: exponents of the `z` letters and of the `w` letters.
///
/// Which block comes first is a property of the containing [`NCPoly`].
/// The bidegree `(m, m') = (sum z, sum w)` and the weight `z - w` (as a vector
/// in Z^n) do not depend on the block order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub z: Vec<u32>,
    pub w: Vec<u32>,
}

impl Monomial {
    pub fn new(z: Vec<u32>, w: Vec<u32>) -> Self {
        debug_assert_eq!(z.len(), w.len());
        Self { z, w }
    }

    pub fn one(n: usize) -> Self {
        Self {
            z: vec![0; n],
            w: vec![0; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.z.len()
    }

    /// Total degree in the `z` letters.
    pub fn z_degree(&self) -> u32 {
        self.z.iter().sum()
    }

    /// Total degree in the `w` letters.
    pub fn w_degree(&self) -> u32 {
        self.w.iter().sum()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.z_degree(), self.w_degree())
    }

    /// The weight `lambda_i = z_i - w_i`.
    pub fn weight(&self) -> Vec<i64> {
        self.z
            .iter()
            .zip(&self.w)
            .map(|(a, b)| *a as i64 - *b as i64)
            .collect()
    }

    pub fn is_zero_weight(&self) -> bool {
        self.z == self.w
    }
}

// Graded lexicographic order on (m, m', z, w): deterministic serialization.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bidegree()
            .cmp(&other.bidegree())
            .then_with(|| self.z.cmp(&other.z))
            .then_with(|| self.w.cmp(&other.w))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A normal-ordered polynomial of the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    n: usize,
    order: Order,
    terms: BTreeMap<Monomial, ScalarQ>,
}

impl NCPoly {
    pub fn zero(n: usize, order: Order) -> Self {
        Self {
            n,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, order: Order) -> Self {
        Self::monomial(n, order, Monomial::one(n), ScalarQ::one())
    }

    pub fn constant(n: usize, order: Order, c: ScalarQ) -> Self {
        Self::monomial(n, order, Monomial::one(n), c)
    }

    pub fn monomial(n: usize, order: Order, m: Monomial, c: ScalarQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { n, order, terms }
    }

    /// The generator `z_i` (1-based index).
    pub fn z_gen(n: usize, order: Order, i: usize) -> Result<Self> {
        check_index(i, n)?;
        let mut m = Monomial::one(n);
        m.z[i - 1] = 1;
        Ok(Self::monomial(n, order, m, ScalarQ::one()))
    }

    /// The generator `w_i` (1-based index).
    pub fn w_gen(n: usize, order: Order, i: usize) -> Result<Self> {
        check_index(i, n)?;
        let mut m = Monomial::one(n);
        m.w[i - 1] = 1;
        Ok(Self::monomial(n, order, m, ScalarQ::one()))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarQ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ScalarQ {
        self.terms.get(m).cloned().unwrap_or_else(ScalarQ::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.rank(), self.n);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(QError::RankMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let rhs = other.convert_order(self.order);
        let mut out = self.clone();
        for (m, c) in rhs.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("rank mismatch in add")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.order);
        }
        Self {
            n: self.n,
            order: self.order,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Product in the algebra, normal ordered in `self`'s basis.
    /// A mixed-order right operand is converted to the left operand's order
    /// first.  Rank mismatch is rejected.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(QError::RankMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let rhs = other.convert_order(self.order);
        let mut out = Self::zero(self.n, self.order);
        for (ml, cl) in &self.terms {
            for (mr, cr) in &rhs.terms {
                let c = cl * cr;
                match self.order {
                    Order::ZFirst => mono_mul_zfirst(self.n, ml, mr, &c, &mut out),
                    Order::WFirst => mono_mul_wfirst(self.n, ml, mr, &c, &mut out),
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.multiply(other).expect("rank mismatch in mul")
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n, self.order);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Re-express the same algebra element in the target PBW basis.
    pub fn convert_order(&self, target: Order) -> Self {
        if self.order == target {
            return self.clone();
        }
        let mut out = Self::zero(self.n, target);
        for (m, c) in &self.terms {
            match target {
                Order::WFirst => {
                    // z^a w^b  ->  w-first normal form
                    for (mono, k) in zw_normal(self.n, &m.z, &m.w) {
                        out.add_term(mono, &k * c);
                    }
                }
                Order::ZFirst => {
                    // w^b z^a  ->  z-first normal form
                    for (mono, k) in wz_normal(self.n, &m.w, &m.z) {
                        out.add_term(mono, &k * c);
                    }
                }
            }
        }
        out
    }

    /// The conjugation `p -> p*` with `z_i* = w_i`, `w_i* = z_i`, extended as
    /// an antihomomorphism; coefficients are fixed.
    pub fn star(&self) -> Self {
        let z = self.convert_order(Order::ZFirst);
        let mut out = Self::zero(self.n, Order::ZFirst);
        for (m, c) in &z.terms {
            // (z^a w^b)* = z^b w^a up to the q-power from resorting each block.
            let e: i64 = cross_sum(&m.z) - cross_sum(&m.w);
            let mono = Monomial::new(m.w.clone(), m.z.clone());
            out.add_term(mono, &ScalarQ::q_pow(e) * c);
        }
        out.convert_order(self.order)
    }

    /// The component of bidegree `(m, m')`.
    pub fn bidegree_component(&self, m: u32, mp: u32) -> Self {
        Self {
            n: self.n,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(mono, _)| mono.bidegree() == (m, mp))
                .map(|(mono, c)| (mono.clone(), c.clone()))
                .collect(),
        }
    }

    /// All bidegrees with a nonzero component, ascending.
    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self.terms.keys().map(|m| m.bidegree()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_homogeneous(&self) -> Option<(u32, u32)> {
        let degs = self.bidegrees();
        match degs.len() {
            0 => Some((0, 0)),
            1 => Some(degs[0]),
            _ => None,
        }
    }

    /// Keeps exactly the monomials of weight zero (`z` and `w` exponents
    /// agree componentwise).
    pub fn zero_weight_part(&self) -> Self {
        Self {
            n: self.n,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(mono, _)| mono.is_zero_weight())
                .map(|(mono, c)| (mono.clone(), c.clone()))
                .collect(),
        }
    }

    /// The partial squared q-radius `Q_j = z_1 w_1 + ... + z_j w_j`.
    pub fn q_radius(n: usize, j: usize) -> Result<Self> {
        check_index(j, n)?;
        let mut out = Self::zero(n, Order::ZFirst);
        for i in 0..j {
            let mut m = Monomial::one(n);
            m.z[i] = 1;
            m.w[i] = 1;
            out.add_term(m, ScalarQ::one());
        }
        Ok(out)
    }

    /// Evaluate every coefficient at a rational `q0` (requires all
    /// coefficients to be rational functions of `q` alone).
    pub fn eval_coeffs_q(
        &self,
        q0: &num_rational::BigRational,
    ) -> Result<Vec<(Monomial, num_rational::BigRational)>> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            out.push((m.clone(), c.eval_q(q0)?));
        }
        Ok(out)
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(QError::IndexOutOfRange { index: i, max: n })
    } else {
        Ok(())
    }
}

/// `sum_{i<j} a_i a_j`.
fn cross_sum(a: &[u32]) -> i64 {
    let mut total = 0i64;
    let mut suffix: i64 = a.iter().map(|&x| x as i64).sum();
    for &x in a {
        suffix -= x as i64;
        total += x as i64 * suffix;
    }
    total
}

// ---------------------------------------------------------------------------
// Normal ordering
// ---------------------------------------------------------------------------

type TermList = Vec<(Monomial, ScalarQ)>;

/// Right-multiply a z-first monomial `z^c w^f` by `w_s` (0-based `s`):
/// `w_s` bubbles left past the higher-index letters of the `w` block with a
/// factor `q` per crossing.  Returns the accumulated q-exponent.
fn append_w(m: &mut Monomial, s: usize) -> i64 {
    let cross: i64 = m.w[s + 1..].iter().map(|&x| x as i64).sum();
    m.w[s] += 1;
    cross
}

/// Right-multiply a w-first monomial `w^b z^f` by `z_s` (0-based `s`):
/// factor `q^-1` per crossing of a higher-index `z`.
fn append_z(m: &mut Monomial, s: usize) -> i64 {
    let cross: i64 = m.z[s + 1..].iter().map(|&x| x as i64).sum();
    m.z[s] += 1;
    -cross
}

/// Normal form of the word `W(b) Z(c)` in the z-first basis.
fn wz_normal(n: usize, b: &[u32], c: &[u32]) -> TermList {
    let Some(k) = b.iter().rposition(|&x| x > 0) else {
        return vec![(Monomial::new(c.to_vec(), vec![0; n]), ScalarQ::one())];
    };
    let mut b_rest = b.to_vec();
    b_rest[k] -= 1;

    let mut results: TermList = Vec::new();
    // Straight-through term: w_k crosses every z letter of other indices with
    // a factor q each.
    {
        let cross: i64 = c
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, &x)| x as i64)
            .sum();
        for (mono, coeff) in wz_normal(n, &b_rest, c) {
            let mut mono = mono;
            let extra = append_w(&mut mono, k);
            results.push((mono, &coeff * &ScalarQ::q_pow(cross + extra)));
        }
    }
    // Correction: w_k z_k^t = z_k^t w_k + (1 - q^{2t}) z_k^{t-1} (sum_{s<k} z_s w_s).
    if c[k] > 0 {
        let t = c[k] as i64;
        let low: i64 = c[..k].iter().map(|&x| x as i64).sum();
        let high: i64 = c[k + 1..].iter().map(|&x| x as i64).sum();
        let front =
            &(&ScalarQ::one() - &ScalarQ::q_pow(2 * t)) * &ScalarQ::q_pow(low + 2 * high);
        let mut c_base = c.to_vec();
        c_base[k] -= 1;
        for s in 0..k {
            // z_s arrives from the right of the z block and bubbles left
            let bubble: i64 = c_base[s + 1..].iter().map(|&x| x as i64).sum();
            let mut c_new = c_base.clone();
            c_new[s] += 1;
            let factor = &front * &ScalarQ::q_pow(-bubble);
            for (mono, coeff) in wz_normal(n, &b_rest, &c_new) {
                let mut mono = mono;
                let extra = append_w(&mut mono, s);
                results.push((mono, &(&coeff * &factor) * &ScalarQ::q_pow(extra)));
            }
        }
    }
    merge(results)
}

/// Normal form of the word `Z(a) W(b)` in the w-first basis.
fn zw_normal(n: usize, a: &[u32], b: &[u32]) -> TermList {
    let Some(k) = a.iter().rposition(|&x| x > 0) else {
        return vec![(Monomial::new(vec![0; n], b.to_vec()), ScalarQ::one())];
    };
    let mut a_rest = a.to_vec();
    a_rest[k] -= 1;

    let mut results: TermList = Vec::new();
    {
        let cross: i64 = b
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, &x)| x as i64)
            .sum();
        for (mono, coeff) in zw_normal(n, &a_rest, b) {
            let mut mono = mono;
            let extra = append_z(&mut mono, k);
            results.push((mono, &coeff * &ScalarQ::q_pow(-cross + extra)));
        }
    }
    // z_k w_k^t = w_k^t z_k - (1-q^{-2t})/(1-q^{-2}) (1-q^2) w_k^{t-1}
    //             (sum_{s<k} q^{2(k-s-1)} w_s z_s)
    if b[k] > 0 {
        let t = b[k] as i64;
        let low: i64 = b[..k].iter().map(|&x| x as i64).sum();
        let high: i64 = b[k + 1..].iter().map(|&x| x as i64).sum();
        // -(1-q^2) * (1-q^{-2t})/(1-q^{-2}) = q^2 (1 - q^{-2t}); the w_s z_s
        // pair then crosses the higher-index w block with q^-2 per letter,
        // and w_s bubbles back left with q per crossing (in `bubble` below).
        let front = &(&ScalarQ::one() - &ScalarQ::q_pow(-2 * t))
            * &ScalarQ::q_pow(2 - low - 2 * high);
        let mut b_base = b.to_vec();
        b_base[k] -= 1;
        for s in 0..k {
            let bubble: i64 = b_base[s + 1..].iter().map(|&x| x as i64).sum();
            let mut b_new = b_base.clone();
            b_new[s] += 1;
            let factor = &front * &ScalarQ::q_pow(2 * (k as i64 - s as i64 - 1) + bubble);
            for (mono, coeff) in zw_normal(n, &a_rest, &b_new) {
                let mut mono = mono;
                let extra = append_z(&mut mono, s);
                results.push((mono, &(&coeff * &factor) * &ScalarQ::q_pow(extra)));
            }
        }
    }
    merge(results)
}

fn merge(terms: TermList) -> TermList {
    let mut map: BTreeMap<Monomial, ScalarQ> = BTreeMap::new();
    for (m, c) in terms {
        let entry = map.entry(m).or_insert_with(ScalarQ::zero);
        *entry = &*entry + &c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Multiply two z-first monomials and accumulate into `out`.
fn mono_mul_zfirst(n: usize, l: &Monomial, r: &Monomial, c: &ScalarQ, out: &mut NCPoly) {
    // (z^a w^b)(z^e w^d) = z^a [W(b) Z(e)] w^d
    for (mid, k) in wz_normal(n, &l.w, &r.z) {
        // prefix z^a: each z of the middle block crosses the higher-index
        // letters of a with q^-1 per crossing
        let mut zc: i64 = 0;
        let mut suffix_a: i64 = l.z.iter().map(|&x| x as i64).sum();
        for i in 0..n {
            suffix_a -= l.z[i] as i64;
            zc += mid.z[i] as i64 * suffix_a;
        }
        // suffix w^d: each w of d crosses the higher-index letters of the
        // middle w block with q per crossing
        let mut wc: i64 = 0;
        let mut suffix_mid: i64 = mid.w.iter().map(|&x| x as i64).sum();
        for i in 0..n {
            suffix_mid -= mid.w[i] as i64;
            wc += r.w[i] as i64 * suffix_mid;
        }
        let z: Vec<u32> = l.z.iter().zip(&mid.z).map(|(x, y)| x + y).collect();
        let w: Vec<u32> = mid.w.iter().zip(&r.w).map(|(x, y)| x + y).collect();
        out.add_term(Monomial::new(z, w), &(&k * c) * &ScalarQ::q_pow(-zc + wc));
    }
}

/// Multiply two w-first monomials and accumulate into `out`.
fn mono_mul_wfirst(n: usize, l: &Monomial, r: &Monomial, c: &ScalarQ, out: &mut NCPoly) {
    // (w^b z^a)(w^d z^e) = w^b [Z(a) W(d)] z^e
    for (mid, k) in zw_normal(n, &l.z, &r.w) {
        // prefix w^b: middle w letters cross higher-index letters of b with q
        let mut wc: i64 = 0;
        let mut suffix_b: i64 = l.w.iter().map(|&x| x as i64).sum();
        for i in 0..n {
            suffix_b -= l.w[i] as i64;
            wc += mid.w[i] as i64 * suffix_b;
        }
        // suffix z^e: letters of e cross higher-index middle z with q^-1
        let mut zc: i64 = 0;
        let mut suffix_mid: i64 = mid.z.iter().map(|&x| x as i64).sum();
        for i in 0..n {
            suffix_mid -= mid.z[i] as i64;
            zc += r.z[i] as i64 * suffix_mid;
        }
        let w: Vec<u32> = l.w.iter().zip(&mid.w).map(|(x, y)| x + y).collect();
        let z: Vec<u32> = mid.z.iter().zip(&r.z).map(|(x, y)| x + y).collect();
        out.add_term(Monomial::new(z, w), &(&k * c) * &ScalarQ::q_pow(wc - zc));
    }
}

// ---------------------------------------------------------------------------
// Monomial bases
// ---------------------------------------------------------------------------

/// All exponent vectors of length `n` with entries summing to `total`.
pub fn compositions(total: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// The canonical monomial basis of the bidegree-(m, m') subspace, ascending.
pub fn bidegree_basis(n: usize, m: u32, mp: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for z in compositions(m, n) {
        for w in compositions(mp, n) {
            out.push(Monomial::new(z.clone(), w));
        }
    }
    out.sort();
    out
}

pub fn bidegree_dim(n: usize, m: u32, mp: u32) -> usize {
    fn comps(total: u32, n: usize) -> usize {
        // C(total + n - 1, n - 1)
        let mut acc = 1usize;
        for i in 0..n - 1 {
            acc = acc * (total as usize + i + 1) / (i + 1);
        }
        acc
    }
    comps(m, n) * comps(mp, n)
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermJson {
    z: Vec<u32>,
    w: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    order: Order,
    terms: Vec<TermJson>,
}

impl NCPoly {
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                z: m.z.clone(),
                w: m.w.clone(),
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_value(PolyJson {
            n: self.n,
            order: self.order,
            terms,
        })
        .expect("polynomial serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: PolyJson = serde_json::from_value(v.clone())
            .map_err(|e| QError::Parse(format!("polynomial JSON: {e}")))?;
        if parsed.n == 0 {
            return Err(QError::Parse("rank n must be positive".into()));
        }
        let mut out = Self::zero(parsed.n, parsed.order);
        for t in parsed.terms {
            if t.z.len() != parsed.n || t.w.len() != parsed.n {
                return Err(QError::Parse(format!(
                    "term exponent vectors must have length n = {}",
                    parsed.n
                )));
            }
            let coeff: ScalarQ = t.coeff.parse()?;
            out.add_term(Monomial::new(t.z, t.w), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            let blocks: [(&[u32], char); 2] = match self.order {
                Order::ZFirst => [(&m.z, 'z'), (&m.w, 'w')],
                Order::WFirst => [(&m.w, 'w'), (&m.z, 'z')],
            };
            for (exps, letter) in blocks {
                for (i, &e) in exps.iter().enumerate() {
                    if e == 1 {
                        write!(f, " {}{}", letter, i + 1)?;
                    } else if e > 1 {
                        write!(f, " {}{}^{}", letter, i + 1, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: usize, i: usize) -> NCPoly {
        NCPoly::z_gen(n, Order::ZFirst, i).unwrap()
    }

    fn w(n: usize, i: usize) -> NCPoly {
        NCPoly::w_gen(n, Order::ZFirst, i).unwrap()
    }

    fn q_pow(k: i64) -> ScalarQ {
        ScalarQ::q_pow(k)
    }

    #[test]
    fn defining_relations_on_generators() {
        for n in 2..=4usize {
            for i in 1..=n {
                for j in 1..=n {
                    if i < j {
                        // z_i z_j = q z_j z_i
                        let lhs = z(n, i).mul(&z(n, j));
                        let rhs = z(n, j).mul(&z(n, i)).scale(&q_pow(1));
                        assert_eq!(lhs, rhs, "z relation n={n} i={i} j={j}");
                        // w_i w_j = q^-1 w_j w_i
                        let lhs = w(n, i).mul(&w(n, j));
                        let rhs = w(n, j).mul(&w(n, i)).scale(&q_pow(-1));
                        assert_eq!(lhs, rhs, "w relation n={n} i={i} j={j}");
                    }
                    if i != j {
                        // w_j z_i = q z_i w_j
                        let lhs = w(n, j).mul(&z(n, i));
                        let rhs = z(n, i).mul(&w(n, j)).scale(&q_pow(1));
                        assert_eq!(lhs, rhs, "wz relation n={n} i={i} j={j}");
                    }
                }
                // w_k z_k = z_k w_k + (1-q^2) Q_{k-1}
                let mut rhs = z(n, i).mul(&w(n, i));
                if i > 1 {
                    let corr = NCPoly::q_radius(n, i - 1)
                        .unwrap()
                        .scale(&(&ScalarQ::one() - &q_pow(2)));
                    rhs = rhs.add(&corr);
                }
                assert_eq!(w(n, i).mul(&z(n, i)), rhs, "diagonal relation n={n} k={i}");
            }
        }
    }

    #[test]
    fn spec_product_examples() {
        // z2 z1 = q^-1 z1 z2
        let lhs = z(2, 2).mul(&z(2, 1));
        assert_eq!(lhs, z(2, 1).mul(&z(2, 2)).scale(&q_pow(-1)));
        // w1 z2 = q z2 w1
        let lhs = w(2, 1).mul(&z(2, 2));
        assert_eq!(lhs, z(2, 2).mul(&w(2, 1)).scale(&q_pow(1)));
        // w2 z2 = z2 w2 + (1-q^2) z1 w1  (n = 2)
        let lhs = w(2, 2).mul(&z(2, 2));
        let rhs = z(2, 2)
            .mul(&w(2, 2))
            .add(&z(2, 1).mul(&w(2, 1)).scale(&(&ScalarQ::one() - &q_pow(2))));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conversion_examples() {
        // z1 converts to itself
        let p = z(2, 1);
        assert_eq!(
            p.convert_order(Order::WFirst).convert_order(Order::ZFirst),
            p
        );
        // z1 w2 -> q^-1 w2 z1
        let p = z(2, 1).mul(&w(2, 2));
        let conv = p.convert_order(Order::WFirst);
        let mut expect = NCPoly::zero(2, Order::WFirst);
        expect.add_term(Monomial::new(vec![1, 0], vec![0, 1]), q_pow(-1));
        assert_eq!(conv, expect);
        // z2 w2 -> w2 z2 - (1-q^2) w1 z1
        let p = z(2, 2).mul(&w(2, 2));
        let conv = p.convert_order(Order::WFirst);
        let mut expect = NCPoly::zero(2, Order::WFirst);
        expect.add_term(Monomial::new(vec![0, 1], vec![0, 1]), ScalarQ::one());
        expect.add_term(
            Monomial::new(vec![1, 0], vec![1, 0]),
            -&(&ScalarQ::one() - &q_pow(2)),
        );
        assert_eq!(conv, expect);
    }

    #[test]
    fn star_examples() {
        // star(z1) = w1
        assert_eq!(z(2, 1).star(), w(2, 1));
        // star(z1 z2) = w2 w1 = q w1 w2
        let p = z(2, 1).mul(&z(2, 2));
        assert_eq!(p.star(), w(2, 1).mul(&w(2, 2)).scale(&q_pow(1)));
        // Q is self-adjoint
        let q_el = NCPoly::q_radius(2, 2).unwrap();
        assert_eq!(q_el.star(), q_el);
    }

    #[test]
    fn q_radius_forms_agree() {
        // Q_j = sum z_i w_i = sum q^{2(j-i)} w_i z_i
        for n in 1..=3usize {
            for j in 1..=n {
                let qj = NCPoly::q_radius(n, j).unwrap();
                let mut alt = NCPoly::zero(n, Order::ZFirst);
                for i in 1..=j {
                    alt = alt.add(
                        &w(n, i)
                            .mul(&z(n, i))
                            .scale(&q_pow(2 * (j as i64 - i as i64))),
                    );
                }
                assert_eq!(qj, alt, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn q_is_central() {
        for n in 1..=4usize {
            let q_el = NCPoly::q_radius(n, n).unwrap();
            for i in 1..=n {
                assert_eq!(q_el.mul(&z(n, i)), z(n, i).mul(&q_el), "z_{i} n={n}");
                assert_eq!(q_el.mul(&w(n, i)), w(n, i).mul(&q_el), "w_{i} n={n}");
            }
        }
    }

    #[test]
    fn q_j_relation_list() {
        for n in 1..=3usize {
            for j in 1..=n {
                let qj = NCPoly::q_radius(n, j).unwrap();
                for i in 1..=n {
                    let qi = NCPoly::q_radius(n, i).unwrap();
                    assert_eq!(qj.mul(&qi), qi.mul(&qj));
                    let (zq, qz) = (z(n, i).mul(&qj), qj.mul(&z(n, i)));
                    let (wq, qw) = (w(n, i).mul(&qj), qj.mul(&w(n, i)));
                    if i > j {
                        assert_eq!(zq, qz.scale(&q_pow(-2)));
                        assert_eq!(wq, qw.scale(&q_pow(2)));
                    } else {
                        assert_eq!(zq, qz);
                        assert_eq!(wq, qw);
                    }
                }
                // z_i w_i = Q_i - Q_{i-1}; w_i z_i = Q_i - q^2 Q_{i-1}
                let prev = if j > 1 {
                    NCPoly::q_radius(n, j - 1).unwrap()
                } else {
                    NCPoly::zero(n, Order::ZFirst)
                };
                assert_eq!(z(n, j).mul(&w(n, j)), qj.sub(&prev));
                assert_eq!(w(n, j).mul(&z(n, j)), qj.sub(&prev.scale(&q_pow(2))));
            }
        }
    }

    #[test]
    fn product_identities_z_w_powers() {
        // z_i^k w_i^k and w_i^k z_i^k expand to Pochhammer-type products in
        // the partial radii, exact for n <= 3, i <= n, k <= 3.
        for n in 1..=3usize {
            for i in 1..=n {
                let qi = NCPoly::q_radius(n, i).unwrap();
                let qprev = if i > 1 {
                    NCPoly::q_radius(n, i - 1).unwrap()
                } else {
                    NCPoly::zero(n, Order::ZFirst)
                };
                for k in 1..=3u32 {
                    let lhs = z(n, i).pow(k).mul(&w(n, i).pow(k));
                    let mut rhs = NCPoly::one(n, Order::ZFirst);
                    for jj in 0..k as i64 {
                        rhs = rhs.mul(&qi.sub(&qprev.scale(&q_pow(-2 * jj))));
                    }
                    assert_eq!(lhs, rhs, "zw identity n={n} i={i} k={k}");

                    let lhs = w(n, i).pow(k).mul(&z(n, i).pow(k));
                    let mut rhs = NCPoly::one(n, Order::ZFirst);
                    for jj in 0..k as i64 {
                        rhs = rhs.mul(&qi.sub(&qprev.scale(&q_pow(2 * (jj + 1)))));
                    }
                    assert_eq!(lhs, rhs, "wz identity n={n} i={i} k={k}");
                }
            }
        }
    }

    #[test]
    fn bidegree_and_weight_bookkeeping() {
        let p = z(2, 1).mul(&w(2, 2)).add(&NCPoly::one(2, Order::ZFirst));
        assert_eq!(p.bidegree_component(1, 1), z(2, 1).mul(&w(2, 2)));
        assert_eq!(p.bidegree_component(0, 0), NCPoly::one(2, Order::ZFirst));
        assert!(p.bidegree_component(2, 0).is_zero());
        let zw = z(2, 1).mul(&w(2, 1));
        assert_eq!(zw.zero_weight_part(), zw);
        assert!(z(2, 1).mul(&w(2, 2)).zero_weight_part().is_zero());
        let p = NCPoly::one(2, Order::ZFirst).add(&z(2, 1));
        assert_eq!(p.zero_weight_part(), NCPoly::one(2, Order::ZFirst));
    }

    #[test]
    fn rank_one_is_commutative() {
        let a = z(1, 1).mul(&w(1, 1));
        let b = w(1, 1).mul(&z(1, 1));
        assert_eq!(a, b);
    }

    #[test]
    fn rank_mismatch_rejected() {
        let a = z(2, 1);
        let b = z(3, 1);
        assert!(a.multiply(&b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = z(2, 1)
            .mul(&w(2, 2))
            .scale(&(&q_pow(2) - &ScalarQ::one()))
            .add(&NCPoly::one(2, Order::ZFirst));
        let j = p.to_json();
        let back = NCPoly::from_json(&j).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn basis_counts() {
        assert_eq!(bidegree_basis(2, 1, 1).len(), 4);
        assert_eq!(bidegree_dim(2, 1, 1), 4);
        assert_eq!(bidegree_dim(3, 2, 1), 18);
        assert_eq!(bidegree_basis(3, 2, 1).len(), 18);
    }

    fn arb_monomial(n: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
        let exps = proptest::collection::vec(0..=max_deg, n);
        (exps.clone(), exps).prop_filter_map("degree bound", move |(z, w)| {
            let m = Monomial::new(z, w);
            if m.z_degree() + m.w_degree() <= max_deg {
                Some(m)
            } else {
                None
            }
        })
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = NCPoly> {
        let coeff =
            (-4i64..=4, -3i64..=3).prop_map(|(c, e)| &ScalarQ::from_int(c) * &ScalarQ::q_pow(e));
        proptest::collection::vec((arb_monomial(n, 4), coeff), 1..4).prop_map(move |terms| {
            let mut p = NCPoly::zero(n, Order::ZFirst);
            for (m, c) in terms {
                p.add_term(m, c);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn associativity(a in arb_monomial(3, 4), b in arb_monomial(3, 4), c in arb_monomial(3, 4)) {
            let pa = NCPoly::monomial(3, Order::ZFirst, a, ScalarQ::one());
            let pb = NCPoly::monomial(3, Order::ZFirst, b, ScalarQ::one());
            let pc = NCPoly::monomial(3, Order::ZFirst, c, ScalarQ::one());
            let left = pa.mul(&pb).mul(&pc);
            let right = pa.mul(&pb.mul(&pc));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn pbw_round_trip(p in arb_poly(3)) {
            let back = p.convert_order(Order::WFirst).convert_order(Order::ZFirst);
            prop_assert_eq!(back, p);
        }

        #[test]
        fn wfirst_multiplication_agrees(a in arb_monomial(3, 3), b in arb_monomial(3, 3)) {
            let pa = NCPoly::monomial(3, Order::ZFirst, a, ScalarQ::one());
            let pb = NCPoly::monomial(3, Order::ZFirst, b, ScalarQ::one());
            let in_z = pa.mul(&pb);
            let in_w = pa
                .convert_order(Order::WFirst)
                .mul(&pb.convert_order(Order::WFirst));
            prop_assert_eq!(in_w.convert_order(Order::ZFirst), in_z);
        }

        #[test]
        fn star_is_an_antihomomorphic_involution(a in arb_poly(2), b in arb_poly(2)) {
            prop_assert_eq!(a.star().star(), a.clone());
            prop_assert_eq!(a.mul(&b).star(), b.star().mul(&a.star()));
        }

        #[test]
        fn bidegrees_add_under_multiplication(a in arb_monomial(3, 3), b in arb_monomial(3, 3)) {
            let pa = NCPoly::monomial(3, Order::ZFirst, a.clone(), ScalarQ::one());
            let pb = NCPoly::monomial(3, Order::ZFirst, b.clone(), ScalarQ::one());
            let prod = pa.mul(&pb);
            let (m1, mp1) = a.bidegree();
            let (m2, mp2) = b.bidegree();
            for (mono, _) in prod.terms() {
                prop_assert_eq!(mono.bidegree(), (m1 + m2, mp1 + mp2));
            }
        }
    }
}
