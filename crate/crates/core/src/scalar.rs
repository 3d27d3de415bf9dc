//! Exact arithmetic in the field `Q(v)` of rational functions in `v`, where
//! `v^2 = q`, plus the q-combinatorics built on top of it.
//!
//! Working over `Q(v)` rather than `Q(q)` lets half-integer powers of `q`
//! (needed by the square roots of gradation operators in the quantum-group
//! action) live in the same coefficient field as everything else.  `v` is
//! treated as transcendental, which models the standing assumption that `q`
//! is not a root of unity.
//!
//! [`ScalarQ`] keeps a unique canonical representation at all times, so
//! equality of values is equality of representations and "is zero" is a
//! representation check.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{QError, Result};

// ---------------------------------------------------------------------------
// Dense integer polynomials (internal representation)
// ---------------------------------------------------------------------------

/// Little-endian dense polynomial over Z, no trailing zeros, `vec![]` is zero.
type ZPoly = Vec<BigInt>;

fn zp_trim(p: &mut ZPoly) {
    while let Some(last) = p.last() {
        if last.is_zero() {
            p.pop();
        } else {
            break;
        }
    }
}

fn zp_is_zero(p: &ZPoly) -> bool {
    p.is_empty()
}

fn zp_one() -> ZPoly {
    vec![BigInt::one()]
}

fn zp_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if zp_is_zero(a) || zp_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    zp_trim(&mut out);
    out
}

fn zp_add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] += bi;
    }
    zp_trim(&mut out);
    out
}

fn zp_neg(a: &ZPoly) -> ZPoly {
    a.iter().map(|c| -c).collect()
}

fn zp_content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divide every coefficient by `d` (must divide exactly).
fn zp_scale_down(p: &ZPoly, d: &BigInt) -> ZPoly {
    p.iter().map(|c| c / d).collect()
}

fn zp_scale(p: &ZPoly, c: &BigInt) -> ZPoly {
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|x| x * c).collect()
}

/// Pseudo-remainder of `a` by `b` (deg a >= deg b, b nonzero):
/// lc(b)^(deg a - deg b + 1) * a = q*b + r, returns r.
fn zp_prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while !zp_is_zero(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // r <- lb * r - lr * x^(dr-db) * b
        let mut nr = zp_scale(&r, &lb);
        for (j, bj) in b.iter().enumerate() {
            nr[dr - db + j] -= &lr * bj;
        }
        zp_trim(&mut nr);
        r = nr;
        if db == 0 {
            return Vec::new();
        }
    }
    r
}

/// Gcd of two integer polynomials, returned primitive with positive leading
/// coefficient.  Primitive PRS keeps intermediate coefficient growth in check.
fn zp_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if zp_is_zero(a) {
        return zp_primitive_pos(b);
    }
    if zp_is_zero(b) {
        return zp_primitive_pos(a);
    }
    let mut f = zp_primitive_pos(a);
    let mut g = zp_primitive_pos(b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = zp_prem(&f, &g);
        if zp_is_zero(&r) {
            return zp_primitive_pos(&g);
        }
        f = g;
        g = zp_primitive_pos(&r);
        if f.len() < g.len() {
            std::mem::swap(&mut f, &mut g);
        }
    }
}

fn zp_primitive_pos(p: &ZPoly) -> ZPoly {
    if zp_is_zero(p) {
        return Vec::new();
    }
    let mut c = zp_content(p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    zp_scale_down(p, &c)
}

/// Exact division `a / b` assuming it is exact over Q; result has rational
/// scaling folded back to integers by the caller's canonicalization.
fn zp_divexact(a: &ZPoly, b: &ZPoly) -> ZPoly {
    // Synthetic division over Q, then clear denominators; exactness is
    // guaranteed when b is a gcd factor of a.
    let db = b.len() - 1;
    let lb = BigRational::from(b.last().unwrap().clone());
    let mut rem: Vec<BigRational> = a.iter().map(|c| BigRational::from(c.clone())).collect();
    if rem.len() < b.len() {
        return Vec::new();
    }
    let dq = rem.len() - 1 - db;
    let mut quo = vec![BigRational::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let coef = rem[k + db].clone() / lb.clone();
        quo[k] = coef.clone();
        if !coef.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &coef * BigRational::from(bj.clone());
                rem[k + j] -= t;
            }
        }
    }
    // Clear rational content.
    let mut lcm = BigInt::one();
    for c in &quo {
        lcm = lcm.lcm(c.denom());
    }
    let mut out: ZPoly = quo.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    zp_trim(&mut out);
    out
}

fn zp_eval(p: &ZPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from(c.clone());
    }
    acc
}

// ---------------------------------------------------------------------------
// LaurentV
// ---------------------------------------------------------------------------

/// A Laurent polynomial in `v` with exact rational coefficients.
///
/// No zero coefficients are stored, so equal values have equal term maps.
/// This is the construction-time carrier; [`ScalarQ`] holds the canonical
/// fraction form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentV {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentV {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::v_pow(0)
    }

    /// The monomial `v^k`.
    pub fn v_pow(k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, BigRational::one());
        Self { coeffs }
    }

    /// The monomial `q^k = v^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        Self::v_pow(2 * k)
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        Self { coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn insert_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.insert_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.insert_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Shift so the minimum exponent is zero and clear rational denominators;
    /// returns `(shift, integer polynomial)`.
    fn to_zpoly(&self) -> (i64, ZPoly) {
        if self.is_zero() {
            return (0, Vec::new());
        }
        let shift = self.min_exp().unwrap();
        let max = *self.coeffs.keys().last().unwrap();
        let mut lcm = BigInt::one();
        for c in self.coeffs.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut out = vec![BigInt::zero(); (max - shift + 1) as usize];
        for (e, c) in &self.coeffs {
            out[(e - shift) as usize] = c.numer() * (&lcm / c.denom());
        }
        (shift, out)
    }
}

// ---------------------------------------------------------------------------
// ScalarQ
// ---------------------------------------------------------------------------

/// An element of `Q(v)`, `v^2 = q`, in canonical form.
///
/// Canonical form: numerator and denominator are coprime integer-coefficient
/// polynomials in `v`, at least one of them has a nonzero constant term,
/// their integer contents share no common factor, and the denominator has a
/// positive leading coefficient.  The form is unique, so derived equality and
/// hashing are value equality and hashing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    num: ZPoly,
    den: ZPoly,
}

impl ScalarQ {
    fn canonical(num: ZPoly, den: ZPoly, vshift: i64) -> Self {
        assert!(!zp_is_zero(&den), "zero denominator in Q(v)");
        if zp_is_zero(&num) {
            return Self {
                num: Vec::new(),
                den: zp_one(),
            };
        }
        // Extract powers of v from both sides.
        let ord_n = num.iter().position(|c| !c.is_zero()).unwrap();
        let ord_d = den.iter().position(|c| !c.is_zero()).unwrap();
        let mut n: ZPoly = num[ord_n..].to_vec();
        let mut d: ZPoly = den[ord_d..].to_vec();
        let shift = vshift + ord_n as i64 - ord_d as i64;

        // Reduce by the polynomial gcd (both parts now have nonzero constant
        // terms, so the gcd does too).
        let g = zp_gcd(&n, &d);
        if g.len() > 1 {
            n = zp_divexact(&n, &g);
            d = zp_divexact(&d, &g);
        }
        // Joint integer content 1, positive leading denominator coefficient.
        let cn = zp_content(&n);
        let cd = zp_content(&d);
        let g = cn.gcd(&cd);
        if !g.is_one() {
            n = zp_scale_down(&n, &g);
            d = zp_scale_down(&d, &g);
        }
        if d.last().unwrap().is_negative() {
            n = zp_neg(&n);
            d = zp_neg(&d);
        }
        // Fold the v-shift back in.
        match shift.cmp(&0) {
            Ordering::Greater => {
                let mut shifted = vec![BigInt::zero(); shift as usize];
                shifted.extend(n);
                n = shifted;
            }
            Ordering::Less => {
                let mut shifted = vec![BigInt::zero(); (-shift) as usize];
                shifted.extend(d);
                d = shifted;
            }
            Ordering::Equal => {}
        }
        Self { num: n, den: d }
    }

    pub fn zero() -> Self {
        Self {
            num: Vec::new(),
            den: zp_one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: zp_one(),
            den: zp_one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Self {
            num: vec![BigInt::from(n)],
            den: zp_one(),
        }
    }

    pub fn from_big_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            num: vec![r.numer().clone()],
            den: vec![r.denom().clone()],
        }
    }

    /// `v^k` (negative `k` allowed).
    pub fn v_pow(k: i64) -> Self {
        Self::canonical(zp_one(), zp_one(), k)
    }

    /// `q^k = v^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        Self::v_pow(2 * k)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// Build from a numerator/denominator pair of Laurent polynomials.
    pub fn from_laurent(num: &LaurentV, den: &LaurentV) -> Result<Self> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        let (sn, n) = num.to_zpoly();
        let (sd, d) = den.to_zpoly();
        Ok(Self::canonical(n, d, sn - sd))
    }

    pub fn is_zero(&self) -> bool {
        zp_is_zero(&self.num)
    }

    pub fn is_one(&self) -> bool {
        self.num == zp_one() && self.den == zp_one()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone(), 0))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one());
        }
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// If the value is exactly `q^k` for an integer `k`, return `k`.
    pub fn as_q_power(&self) -> Option<i64> {
        let single = |p: &ZPoly| -> Option<usize> {
            let nz: Vec<usize> = p
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i)
                .collect();
            if nz.len() == 1 && p[nz[0]].is_one() {
                Some(nz[0])
            } else {
                None
            }
        };
        let en = single(&self.num)?;
        let ed = single(&self.den)?;
        let e = en as i64 - ed as i64;
        if e % 2 == 0 {
            Some(e / 2)
        } else {
            None
        }
    }

    /// Exact evaluation at a rational `q0`.  Fails if the value is not a
    /// rational function of `q` alone (odd powers of `v` survive reduction)
    /// or the denominator vanishes at `q0`.
    pub fn eval_q(&self, q0: &BigRational) -> Result<BigRational> {
        let even = |p: &ZPoly| p.iter().enumerate().all(|(i, c)| i % 2 == 0 || c.is_zero());
        if !even(&self.num) || !even(&self.den) {
            return Err(QError::NotInQ);
        }
        let compress = |p: &ZPoly| -> ZPoly { p.iter().step_by(2).cloned().collect() };
        let den = zp_eval(&compress(&self.den), q0);
        if den.is_zero() {
            return Err(QError::EvalDenominatorZero);
        }
        Ok(zp_eval(&compress(&self.num), q0) / den)
    }

    /// Exact evaluation at a rational `v0` (so `q = v0^2`).
    pub fn eval_v(&self, v0: &BigRational) -> Result<BigRational> {
        let den = zp_eval(&self.den, v0);
        if den.is_zero() {
            return Err(QError::EvalDenominatorZero);
        }
        Ok(zp_eval(&self.num, v0) / den)
    }

    /// Numerator as a Laurent polynomial (canonical form exposed for tests).
    pub fn numerator(&self) -> LaurentV {
        let mut l = LaurentV::zero();
        for (i, c) in self.num.iter().enumerate() {
            l.insert_term(i as i64, BigRational::from(c.clone()));
        }
        l
    }

    pub fn denominator(&self) -> LaurentV {
        let mut l = LaurentV::zero();
        for (i, c) in self.den.iter().enumerate() {
            l.insert_term(i as i64, BigRational::from(c.clone()));
        }
        l
    }
}

impl Default for ScalarQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return ScalarQ::canonical(zp_add(&self.num, &rhs.num), self.den.clone(), 0);
        }
        let num = zp_add(&zp_mul(&self.num, &rhs.den), &zp_mul(&rhs.num, &self.den));
        let den = zp_mul(&self.den, &rhs.den);
        ScalarQ::canonical(num, den, 0)
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        self + &(-rhs)
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() || rhs.is_zero() {
            return ScalarQ::zero();
        }
        ScalarQ::canonical(zp_mul(&self.num, &rhs.num), zp_mul(&self.den, &rhs.den), 0)
    }
}

impl Div for &ScalarQ {
    type Output = ScalarQ;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &ScalarQ) -> ScalarQ {
        self * &rhs.recip().expect("division by zero in Q(v)")
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ {
            num: zp_neg(&self.num),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: ScalarQ) -> ScalarQ {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: &ScalarQ) -> ScalarQ {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl AddAssign<&ScalarQ> for ScalarQ {
    fn add_assign(&mut self, rhs: &ScalarQ) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ScalarQ> for ScalarQ {
    fn sub_assign(&mut self, rhs: &ScalarQ) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&ScalarQ> for ScalarQ {
    fn mul_assign(&mut self, rhs: &ScalarQ) {
        *self = &*self * rhs;
    }
}

// ---------------------------------------------------------------------------
// q-combinatorics
// ---------------------------------------------------------------------------

/// The q-number `[a] = (q^a - q^-a)/(q - q^-1)`, exact in `Q(v)`.
pub fn q_number(a: i64) -> ScalarQ {
    // [a] = q^(a-1) + q^(a-3) + ... + q^(1-a) for a > 0, and [-a] = -[a].
    if a == 0 {
        return ScalarQ::zero();
    }
    let m = a.abs();
    let mut l = LaurentV::zero();
    for i in 0..m {
        l.insert_term(2 * (m - 1 - 2 * i), BigRational::one());
    }
    let s = ScalarQ::from_laurent(&l, &LaurentV::one()).unwrap();
    if a < 0 {
        -s
    } else {
        s
    }
}

/// `[s]! = [s][s-1]...[1]`, with `[0]! = 1`.  Negative `s` is rejected.
pub fn q_factorial(s: i64) -> Result<ScalarQ> {
    if s < 0 {
        return Err(QError::InvalidArgument(format!(
            "q-factorial of negative argument {s}"
        )));
    }
    let mut acc = ScalarQ::one();
    for i in 1..=s {
        acc = &acc * &q_number(i);
    }
    Ok(acc)
}

/// The q-Pochhammer symbol `(a; q^e)_s = prod_{j=0}^{s-1} (1 - a q^(e j))`.
pub fn q_pochhammer(a: &ScalarQ, base_exp: i64, s: i64) -> Result<ScalarQ> {
    if s < 0 {
        return Err(QError::InvalidArgument(format!(
            "q-Pochhammer of negative order {s}"
        )));
    }
    let one = ScalarQ::one();
    let mut acc = ScalarQ::one();
    let mut aq = a.clone();
    let step = ScalarQ::q_pow(base_exp);
    for _ in 0..s {
        acc = &acc * &(&one - &aq);
        aq = &aq * &step;
    }
    Ok(acc)
}

/// `(q^(2k); q^2)_s`, the most common Pochhammer shape here.
pub fn q2_pochhammer(k: i64, s: i64) -> ScalarQ {
    q_pochhammer(&ScalarQ::q_pow(2 * k), 2, s).unwrap()
}

/// The braced bracket `{q^r gamma-like scalar}`: `(x - x^-1)/(q - q^-1)`.
pub fn brace(x: &ScalarQ) -> Result<ScalarQ> {
    let num = x - &x.recip()?;
    let den = &ScalarQ::q() - &ScalarQ::q_pow(-1);
    Ok(&num / &den)
}

// ---------------------------------------------------------------------------
// Display / parsing
// ---------------------------------------------------------------------------

fn fmt_zpoly(p: &ZPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if zp_is_zero(p) {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (sign, mag) = if c.is_negative() {
            ("-", -c)
        } else {
            ("+", c.clone())
        };
        if first {
            if sign == "-" {
                write!(f, "-")?;
            }
            first = false;
        } else {
            write!(f, " {} ", sign)?;
        }
        if i == 0 {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if i == 1 {
                write!(f, "v")?;
            } else {
                write!(f, "v^{i}")?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == zp_one() {
            fmt_zpoly(&self.num, f)
        } else {
            write!(f, "(")?;
            fmt_zpoly(&self.num, f)?;
            write!(f, ")/(")?;
            fmt_zpoly(&self.den, f)?;
            write!(f, ")")
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            chars: s.chars().peekable(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.next()
    }

    fn parse_integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let mut s = String::new();
        if matches!(self.chars.peek(), Some('-')) {
            s.push('-');
            self.chars.next();
        }
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.chars.next().unwrap());
        }
        s.parse::<BigInt>()
            .map_err(|_| QError::Parse(format!("expected integer, found {s:?}")))
    }

    /// factor := integer | ('v'|'q') ['^' integer] | '(' sum ')'
    fn parse_factor(&mut self) -> Result<LaurentV> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.parse_sum()?;
                if self.bump() != Some(')') {
                    return Err(QError::Parse("expected ')'".into()));
                }
                Ok(inner)
            }
            Some(c) if c == 'v' || c == 'q' => {
                self.bump();
                let mut exp = 1i64;
                if self.peek() == Some('^') {
                    self.bump();
                    let e = self.parse_integer()?;
                    exp = i64::try_from(&e)
                        .map_err(|_| QError::Parse("exponent out of range".into()))?;
                }
                Ok(if c == 'q' {
                    LaurentV::q_pow(exp)
                } else {
                    LaurentV::v_pow(exp)
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_integer()?;
                Ok(LaurentV::from_rational(BigRational::from(n)))
            }
            other => Err(QError::Parse(format!("unexpected token {other:?}"))),
        }
    }

    /// term := ['+'|'-'] factor {'*' factor}
    fn parse_term(&mut self) -> Result<LaurentV> {
        let mut sign = false;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                }
                Some('-') => {
                    self.bump();
                    sign = !sign;
                }
                _ => break,
            }
        }
        let mut acc = self.parse_factor()?;
        while self.peek() == Some('*') {
            self.bump();
            acc = acc.mul(&self.parse_factor()?);
        }
        if sign {
            acc = acc.neg();
        }
        Ok(acc)
    }

    fn parse_sum(&mut self) -> Result<LaurentV> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some('+') | Some('-') => {
                    acc = acc.add(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }
}

impl FromStr for ScalarQ {
    type Err = QError;

    /// Parses the canonical text form: a polynomial in `v` (with `q^k`
    /// accepted as sugar for `v^(2k)`), optionally followed by `/` and a
    /// denominator polynomial.  The fraction bar must separate two complete
    /// polynomials (parenthesize them if they have more than one term).
    fn from_str(s: &str) -> Result<Self> {
        // Split at the first '/' that sits at parenthesis depth 0.
        let mut depth = 0usize;
        let mut split = None;
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| QError::Parse("unbalanced ')'".into()))?
                }
                '/' if depth == 0 => {
                    split = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let (num_str, den_str) = match split {
            Some(i) => (&s[..i], Some(&s[i + 1..])),
            None => (s, None),
        };
        let parse_poly = |text: &str| -> Result<LaurentV> {
            let mut p = Parser::new(text);
            let val = p.parse_sum()?;
            if p.peek().is_some() {
                return Err(QError::Parse(format!(
                    "trailing input in {text:?} at {:?}",
                    p.peek()
                )));
            }
            Ok(val)
        };
        let num = parse_poly(num_str)?;
        let den = match den_str {
            Some(d) => parse_poly(d)?,
            None => LaurentV::one(),
        };
        ScalarQ::from_laurent(&num, &den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> ScalarQ {
        ScalarQ::q()
    }

    #[test]
    fn q_number_basics() {
        assert!(q_number(0).is_zero());
        assert!(q_number(1).is_one());
        // [2] = q + q^-1
        let expect = &q() + &ScalarQ::q_pow(-1);
        assert_eq!(q_number(2), expect);
        // antisymmetry
        for a in -6..=6 {
            assert_eq!(q_number(-a), -&q_number(a));
        }
    }

    #[test]
    fn q_number_addition_law() {
        // [a+b](q - q^-1) = q^a [b](q-q^-1) + q^-b [a](q-q^-1)
        let d = &q() - &ScalarQ::q_pow(-1);
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                let lhs = &q_number(a + b) * &d;
                let rhs = &(&ScalarQ::q_pow(a) * &(&q_number(b) * &d))
                    + &(&ScalarQ::q_pow(-b) * &(&q_number(a) * &d));
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn q_factorial_basics() {
        assert!(q_factorial(0).unwrap().is_one());
        assert_eq!(q_factorial(2).unwrap(), q_number(2));
        let expect = &q_number(3) * &q_number(2);
        assert_eq!(q_factorial(3).unwrap(), expect);
        assert!(q_factorial(-1).is_err());
    }

    #[test]
    fn q_pochhammer_basics() {
        let a = ScalarQ::q_pow(3);
        assert!(q_pochhammer(&a, 2, 0).unwrap().is_one());
        // (q^2; q^2)_1 = 1 - q^2
        let expect = &ScalarQ::one() - &ScalarQ::q_pow(1);
        assert_eq!(
            q_pochhammer(&q(), 2, 1).unwrap(),
            expect.clone() * (ScalarQ::one())
        );
        // (q^-2; q^2)_2 = 0 (second factor vanishes)
        assert!(q_pochhammer(&ScalarQ::q_pow(-2), 2, 2).unwrap().is_zero());
    }

    #[test]
    fn pochhammer_shift_identity() {
        // (q^{-2(m'-s)}; q^2)_nu * (q^{-2m'};q^2)_s ==
        //   (-1)^nu q^{-2m'nu} q^{nu(nu-1)} (q^{2m'-2nu+2};q^2)_nu (q^{-2m'+2nu};q^2)_s
        for mp in 0i64..=4 {
            for s in 0..=mp {
                for nu in 0i64..=4 {
                    let lhs = &q2_pochhammer(-(mp - s), nu) * &q2_pochhammer(-mp, s);
                    let sign = if nu % 2 == 0 {
                        ScalarQ::one()
                    } else {
                        -ScalarQ::one()
                    };
                    let rhs = &(&(&sign * &ScalarQ::q_pow(-2 * mp * nu + nu * (nu - 1)))
                        * &q2_pochhammer(mp - nu + 1, nu))
                        * &q2_pochhammer(-mp + nu, s);
                    assert_eq!(lhs, rhs, "m'={mp} s={s} nu={nu}");
                }
            }
        }
    }

    #[test]
    fn as_q_power() {
        assert_eq!(ScalarQ::q_pow(3).as_q_power(), Some(3));
        assert_eq!(ScalarQ::q_pow(-2).as_q_power(), Some(-2));
        assert_eq!(ScalarQ::one().as_q_power(), Some(0));
        assert_eq!(ScalarQ::v_pow(1).as_q_power(), None);
        assert_eq!(q_number(2).as_q_power(), None);
    }

    #[test]
    fn eval_q_matches_direct() {
        let q0 = BigRational::new(BigInt::from(7), BigInt::from(10));
        let x = q_number(3); // q^2 + 1 + q^-2
        let got = x.eval_q(&q0).unwrap();
        let expect = &q0 * &q0 + BigRational::one() + (&q0 * &q0).recip();
        assert_eq!(got, expect);
        assert!(ScalarQ::v_pow(1).eval_q(&q0).is_err());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let vals = [
            ScalarQ::zero(),
            ScalarQ::one(),
            -ScalarQ::one(),
            q_number(2),
            q_number(5),
            &q_number(3) / &q_number(4),
            ScalarQ::v_pow(-3),
            &(&ScalarQ::q_pow(2) - &ScalarQ::one()) / &(&ScalarQ::q_pow(1) + &ScalarQ::one()),
        ];
        for x in &vals {
            let text = x.to_string();
            let back: ScalarQ = text.parse().unwrap();
            assert_eq!(&back, x, "round trip of {text}");
        }
        // q^k sugar
        let parsed: ScalarQ = "q^2 - 1".parse().unwrap();
        assert_eq!(parsed, &ScalarQ::q_pow(2) - &ScalarQ::one());
        let parsed: ScalarQ = "(v^4 - 1)/(v^2 + 1)".parse().unwrap();
        assert_eq!(
            parsed,
            &(&ScalarQ::q_pow(2) - &ScalarQ::one()) / &(&ScalarQ::q_pow(1) + &ScalarQ::one())
        );
    }

    fn arb_scalar() -> impl Strategy<Value = ScalarQ> {
        let term = (any::<i8>(), -6i64..6).prop_map(|(c, e)| {
            let mut l = LaurentV::zero();
            l.insert_term(e, BigRational::from(BigInt::from(c as i64)));
            l
        });
        let poly = proptest::collection::vec(term, 1..4).prop_map(|ts| {
            let mut acc = LaurentV::zero();
            for t in ts {
                acc = acc.add(&t);
            }
            acc
        });
        (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| {
            if d.is_zero() {
                None
            } else {
                Some(ScalarQ::from_laurent(&n, &d).unwrap())
            }
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            let ab_c = &(&a + &b) + &c;
            let a_bc = &a + &(&b + &c);
            prop_assert_eq!(&ab_c, &a_bc);
            let ab_c = &(&a * &b) * &c;
            let a_bc = &a * &(&b * &c);
            prop_assert_eq!(&ab_c, &a_bc);
            let distr = &a * &(&b + &c);
            let distr2 = &(&a * &b) + &(&a * &c);
            prop_assert_eq!(&distr, &distr2);
            if !a.is_zero() {
                let inv = a.recip().unwrap();
                prop_assert!((&a * &inv).is_one());
            }
        }

        #[test]
        fn normalization_is_idempotent(a in arb_scalar()) {
            // Rebuilding from the canonical parts must reproduce the value.
            let again = ScalarQ::from_laurent(&a.numerator(), &a.denominator()).unwrap();
            prop_assert_eq!(&again, &a);
        }

        #[test]
        fn eval_q_is_homomorphic(a in arb_scalar(), b in arb_scalar()) {
            let q0 = BigRational::new(BigInt::from(7), BigInt::from(10));
            let sum = &a + &b;
            if let (Ok(ea), Ok(eb), Ok(es)) = (a.eval_q(&q0), b.eval_q(&q0), sum.eval_q(&q0)) {
                prop_assert_eq!(es, ea + eb);
            }
        }
    }
}
