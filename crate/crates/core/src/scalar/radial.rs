//! The radial coefficient ring: finite sums of terms
//! `c * x^alpha * r^e * (log r)^k` over `R^m`, with `r^2 = (x^1)^2 + ... + (x^m)^2`.
//!
//! Elements are kept in a canonical form that makes zero-testing (and hence
//! every harmonicity assertion) decidable: within each residue class of
//! `e mod 2` and each log power `k`, even powers of `r` are rewritten as
//! polynomials, and for exponents below the class representative every factor
//! of `(x^1)^2 + ... + (x^m)^2` is divided out of the polynomial part back
//! into the radial exponent. Two equal functions always have identical term
//! maps.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{as_i64, mod2_split, rat, rational_sqrt};
use super::{Rational, ScalarError};

/// Exponent data of a single radial term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RadialKey {
    /// Exponents of `x^1 .. x^m`; always of length `m`.
    pub alpha: Vec<u32>,
    /// Radial exponent of `r`.
    pub e: Rational,
    /// Power of `log r`.
    pub k: u32,
}

impl RadialKey {
    fn monomial(alpha: Vec<u32>) -> Self {
        RadialKey {
            alpha,
            e: Rational::zero(),
            k: 0,
        }
    }

    fn degree(&self) -> Rational {
        let total: u64 = self.alpha.iter().map(|a| *a as u64).sum();
        rat(total as i64) + &self.e
    }
}

type Poly = BTreeMap<Vec<u32>, Rational>;

/// An element of the radial coefficient ring over `R^m`, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialCoeff {
    m: usize,
    terms: BTreeMap<RadialKey, Rational>,
}

impl RadialCoeff {
    pub fn zero(m: usize) -> Self {
        RadialCoeff {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, Rational::one())
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        Self::from_raw_terms(m, [(RadialKey::monomial(vec![0; m]), c)])
    }

    /// The coordinate function `x^i`, `i` one-based.
    pub fn coordinate(m: usize, i: usize) -> Result<Self, ScalarError> {
        if i == 0 || i > m {
            return Err(ScalarError::AxisOutOfRange { axis: i, m });
        }
        let mut alpha = vec![0; m];
        alpha[i - 1] = 1;
        Ok(Self::from_raw_terms(
            m,
            [(RadialKey::monomial(alpha), Rational::one())],
        ))
    }

    /// `r^e` for a rational exponent.
    pub fn r_power(m: usize, e: Rational) -> Self {
        Self::from_raw_terms(
            m,
            [(
                RadialKey {
                    alpha: vec![0; m],
                    e,
                    k: 0,
                },
                Rational::one(),
            )],
        )
    }

    /// `log r`.
    pub fn log_r(m: usize) -> Self {
        Self::from_raw_terms(
            m,
            [(
                RadialKey {
                    alpha: vec![0; m],
                    e: Rational::zero(),
                    k: 1,
                },
                Rational::one(),
            )],
        )
    }

    /// A single term `c * x^alpha * r^e * (log r)^k`, canonicalized.
    pub fn term(m: usize, alpha: Vec<u32>, e: Rational, k: u32, c: Rational) -> Self {
        assert_eq!(alpha.len(), m, "multi-index length must equal m");
        Self::from_raw_terms(m, [(RadialKey { alpha, e, k }, c)])
    }

    /// Build from raw (possibly non-canonical) terms.
    pub fn from_raw_terms(
        m: usize,
        terms: impl IntoIterator<Item = (RadialKey, Rational)>,
    ) -> Self {
        RadialCoeff {
            m,
            terms: canonicalize(m, terms),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RadialKey, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of the lex-largest term.
    pub fn lead_coeff(&self) -> Option<Rational> {
        self.terms.iter().next_back().map(|(_, c)| c.clone())
    }

    /// `Some(c)` when the element is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() > 1 {
            return None;
        }
        let (key, c) = self.terms.iter().next().unwrap();
        if key.alpha.iter().all(|a| *a == 0) && key.e.is_zero() && key.k == 0 {
            Some(c.clone())
        } else {
            None
        }
    }

    /// Detects `c * r^e` (including polynomial powers of `r^2`); returns `(c, e)`.
    pub fn as_radial_power(&self) -> Option<(Rational, Rational)> {
        if self.terms.is_empty() {
            return None;
        }
        if self.terms.len() == 1 {
            let (key, c) = self.terms.iter().next().unwrap();
            if key.alpha.iter().all(|a| *a == 0) && key.k == 0 {
                return Some((c.clone(), key.e.clone()));
            }
        }
        // Try c * q^j * r^e: all terms share e and k = 0, homogeneous degree.
        let mut iter = self.terms.iter();
        let (first, _) = iter.next().unwrap();
        if first.k != 0 {
            return None;
        }
        let e = first.e.clone();
        let deg: u64 = first.alpha.iter().map(|a| *a as u64).sum();
        if deg == 0 || !deg.is_multiple_of(2) {
            return None;
        }
        for key in self.terms.keys() {
            if key.k != 0 || key.e != e {
                return None;
            }
        }
        // coefficient of x1^(2j) in c * q^j is c
        let mut lead = vec![0u32; self.m];
        lead[0] = deg as u32;
        let c = self
            .terms
            .get(&RadialKey {
                alpha: lead,
                e: e.clone(),
                k: 0,
            })?
            .clone();
        let target = e + rat(deg as i64);
        let candidate = Self::r_power(self.m, target.clone()).scale(&c);
        if candidate == *self {
            Some((c, target))
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "dimension mismatch in radial arithmetic");
        Self::from_raw_terms(
            self.m,
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        RadialCoeff {
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "dimension mismatch in radial arithmetic");
        let mut raw: Vec<(RadialKey, Rational)> = Vec::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let alpha = ka.alpha.iter().zip(&kb.alpha).map(|(a, b)| a + b).collect();
                raw.push((
                    RadialKey {
                        alpha,
                        e: &ka.e + &kb.e,
                        k: ka.k + kb.k,
                    },
                    ca * cb,
                ));
            }
        }
        Self::from_raw_terms(self.m, raw)
    }

    /// Partial derivative along `x^i`, `i` one-based. Term-wise Leibniz:
    /// `d_i(x^a r^e log^k) = a_i x^{a-d_i} r^e log^k + e x^{a+d_i} r^{e-2} log^k
    ///  + k x^{a+d_i} r^{e-2} log^{k-1}`.
    pub fn derive(&self, i: usize) -> Result<Self, ScalarError> {
        if i == 0 || i > self.m {
            return Err(ScalarError::AxisOutOfRange { axis: i, m: self.m });
        }
        let idx = i - 1;
        let mut raw: Vec<(RadialKey, Rational)> = Vec::new();
        for (key, c) in &self.terms {
            if key.alpha[idx] > 0 {
                let mut alpha = key.alpha.clone();
                alpha[idx] -= 1;
                raw.push((
                    RadialKey {
                        alpha,
                        e: key.e.clone(),
                        k: key.k,
                    },
                    c * rat(key.alpha[idx] as i64),
                ));
            }
            if !key.e.is_zero() || key.k > 0 {
                let mut alpha = key.alpha.clone();
                alpha[idx] += 1;
                if !key.e.is_zero() {
                    raw.push((
                        RadialKey {
                            alpha: alpha.clone(),
                            e: &key.e - rat(2),
                            k: key.k,
                        },
                        c * &key.e,
                    ));
                }
                if key.k > 0 {
                    raw.push((
                        RadialKey {
                            alpha,
                            e: &key.e - rat(2),
                            k: key.k - 1,
                        },
                        c * rat(key.k as i64),
                    ));
                }
            }
        }
        Ok(Self::from_raw_terms(self.m, raw))
    }

    /// Value of the underlying function at the origin.
    pub fn eval_zero(&self) -> Result<Rational, ScalarError> {
        let mut acc = Rational::zero();
        for (key, c) in &self.terms {
            let plain = key.alpha.iter().all(|a| *a == 0) && key.e.is_zero() && key.k == 0;
            if plain {
                acc += c;
            } else if !key.degree().is_positive() {
                return Err(ScalarError::EvalSingular(self.to_string()));
            }
        }
        Ok(acc)
    }

    /// Exact square root of a theta-free element, when one exists in the ring.
    pub fn sqrt(&self) -> Option<Self> {
        if self.terms.is_empty() {
            return Some(self.clone());
        }
        if let Some((c, e)) = self.as_radial_power() {
            let half = e / rat(2);
            let root = rational_sqrt(&c)?;
            return Some(Self::r_power(self.m, half).scale(&root));
        }
        // general case: common radial factor r^e (even e), square polynomial part
        let mut e = None;
        let mut poly: Poly = BTreeMap::new();
        for (key, c) in &self.terms {
            if key.k != 0 {
                return None;
            }
            match &e {
                None => e = Some(key.e.clone()),
                Some(prev) if *prev == key.e => {}
                _ => return None,
            }
            poly.insert(key.alpha.clone(), c.clone());
        }
        let e = e.unwrap();
        let half_e = &e / rat(2);
        if !(&e - rat(2) * half_e.floor()).is_zero() {
            return None;
        }
        let root = sqrt_poly(&poly, self.m)?;
        Some(Self::from_raw_terms(
            self.m,
            root.into_iter().map(|(alpha, c)| {
                (
                    RadialKey {
                        alpha,
                        e: half_e.clone(),
                        k: 0,
                    },
                    c,
                )
            }),
        ))
    }

    /// Term strings for rendering: `(is_negative, factor_string)`.
    pub fn term_strings(&self) -> Vec<(bool, String)> {
        self.terms
            .iter()
            .map(|(key, c)| {
                let mut factors: Vec<String> = Vec::new();
                let abs = c.abs();
                if !abs.is_one() {
                    factors.push(abs.to_string());
                }
                for (i, a) in key.alpha.iter().enumerate() {
                    match a {
                        0 => {}
                        1 => factors.push(format!("x{}", i + 1)),
                        _ => factors.push(format!("x{}^{}", i + 1, a)),
                    }
                }
                if !key.e.is_zero() {
                    if key.e.is_one() {
                        factors.push("r".to_string());
                    } else if let Some(int_e) = as_i64(&key.e) {
                        factors.push(format!("r^{int_e}"));
                    } else {
                        factors.push(format!("r^({})", key.e));
                    }
                }
                match key.k {
                    0 => {}
                    1 => factors.push("log(r)".to_string()),
                    _ => factors.push(format!("log(r)^{}", key.k)),
                }
                if factors.is_empty() {
                    factors.push("1".to_string());
                }
                (c.is_negative(), factors.join("*"))
            })
            .collect()
    }
}

impl fmt::Display for RadialCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, body)) in self.term_strings().into_iter().enumerate() {
            if i == 0 {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

/// `q = (x^1)^2 + ... + (x^m)^2` as a polynomial.
fn q_poly(m: usize) -> Poly {
    let mut p = Poly::new();
    for i in 0..m {
        let mut alpha = vec![0u32; m];
        alpha[i] = 2;
        p.insert(alpha, Rational::one());
    }
    p
}

fn poly_add_term(p: &mut Poly, alpha: Vec<u32>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(alpha).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        p.retain(|_, v| !v.is_zero());
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let alpha = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            poly_add_term(&mut out, alpha, ca * cb);
        }
    }
    out
}

/// Exact division by `q`; `None` when `q` does not divide `p`.
///
/// Division with remainder against the single divisor `q` under lex order:
/// the leading term of any nonzero multiple of `q` is divisible by
/// `LT(q) = (x^1)^2`, so a non-divisible leading term proves non-membership.
fn exact_div_q(p: &Poly, m: usize) -> Option<Poly> {
    let q = q_poly(m);
    let mut rem = p.clone();
    let mut quot = Poly::new();
    while let Some((lead, c)) = rem.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
        if lead[0] < 2 {
            return None;
        }
        let mut t = lead.clone();
        t[0] -= 2;
        for (kq, cq) in &q {
            let alpha = t.iter().zip(kq).map(|(x, y)| x + y).collect();
            poly_add_term(&mut rem, alpha, -(&c * cq));
        }
        poly_add_term(&mut quot, t, c);
    }
    Some(quot)
}

/// Exact polynomial square root under lex order; `None` if not a square.
fn sqrt_poly(p: &Poly, _m: usize) -> Option<Poly> {
    if p.is_empty() {
        return Some(Poly::new());
    }
    let (lead, lead_c) = p.iter().next_back().unwrap();
    if lead.iter().any(|a| a % 2 != 0) {
        return None;
    }
    let s0 = rational_sqrt(lead_c)?;
    let v_lead: Vec<u32> = lead.iter().map(|a| a / 2).collect();
    let mut v = Poly::new();
    v.insert(v_lead.clone(), s0.clone());
    let two_s0 = rat(2) * &s0;
    let mut last_inserted = v_lead.clone();
    loop {
        let mut rem = p.clone();
        for (k, c) in poly_mul(&v, &v) {
            poly_add_term(&mut rem, k, -c);
        }
        let Some((t_alpha, t_c)) = rem.iter().next_back() else {
            return Some(v);
        };
        let mut u_alpha = Vec::with_capacity(t_alpha.len());
        for (t, l) in t_alpha.iter().zip(&v_lead) {
            u_alpha.push(t.checked_sub(*l)?);
        }
        if u_alpha >= last_inserted {
            return None;
        }
        last_inserted = u_alpha.clone();
        v.insert(u_alpha, t_c / &two_s0);
    }
}

/// Canonicalization: group by `(e mod 2, k)`, clear denominators of the
/// localization at `q`, reduce the fraction, and re-emit.
fn canonicalize(
    m: usize,
    raw: impl IntoIterator<Item = (RadialKey, Rational)>,
) -> BTreeMap<RadialKey, Rational> {
    type Group = Vec<(Vec<u32>, i64, Rational)>;
    let mut groups: BTreeMap<(Rational, u32), Group> = BTreeMap::new();
    for (key, c) in raw {
        if c.is_zero() {
            continue;
        }
        assert_eq!(key.alpha.len(), m, "multi-index length must equal m");
        let (residue, j) = mod2_split(&key.e);
        let j = j.to_i64().expect("radial exponent out of range");
        groups
            .entry((residue, key.k))
            .or_default()
            .push((key.alpha, j, c));
    }

    let mut out = BTreeMap::new();
    for ((residue, k), items) in groups {
        let j_min = items.iter().map(|(_, j, _)| *j).min().unwrap();
        let s0 = (-j_min).max(0) as u32;
        // numerator polynomial sum c * x^alpha * q^(j + s0)
        let mut numerator = Poly::new();
        for (alpha, j, c) in items {
            let pow = (j + s0 as i64) as u32;
            let mut contrib = Poly::new();
            contrib.insert(alpha, c);
            for _ in 0..pow {
                contrib = poly_mul(&contrib, &q_poly(m));
            }
            for (a, c) in contrib {
                poly_add_term(&mut numerator, a, c);
            }
        }
        if numerator.is_empty() {
            continue;
        }
        let mut s = s0;
        while s > 0 {
            match exact_div_q(&numerator, m) {
                Some(quot) => {
                    numerator = quot;
                    s -= 1;
                }
                None => break,
            }
        }
        let e_final = residue - rat(2 * s as i64);
        for (alpha, c) in numerator {
            out.insert(
                RadialKey {
                    alpha,
                    e: e_final.clone(),
                    k,
                },
                c,
            );
        }
    }
    out
}
