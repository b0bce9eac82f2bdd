//! Univariate integer polynomials in `t = 1/q`, plus Laurent polynomials in
//! `q` for the BZL-side coefficient.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense coefficients of `t^0, t^1, ...`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TPoly {
    coeffs: Vec<BigInt>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        TPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        TPoly::from_coeffs(vec![c])
    }

    /// `c * t^deg`.
    pub fn monomial(deg: usize, c: i64) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        TPoly::from_coeffs(coeffs)
    }

    pub fn t() -> Self {
        TPoly::monomial(1, 1)
    }

    /// `1 - t`.
    pub fn one_minus_t() -> Self {
        TPoly::from_coeffs(vec![1, -1])
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        TPoly::from_big(coeffs.into_iter().map(BigInt::from).collect())
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> BigInt {
        self.coeffs.get(deg).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, n: u32) -> TPoly {
        (0..n).fold(TPoly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }

    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * t + BigRational::from_integer(c.clone())
            })
    }

    pub fn scale(&self, c: &BigInt) -> TPoly {
        TPoly::from_big(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Expanded form in `q^{-1}` for LaTeX, e.g. `-2q^{-1} + 2q^{-2}`.
    pub fn to_latex_q(&self) -> String {
        self.render(|d| match d {
            0 => String::new(),
            d => format!("q^{{-{d}}}"),
        })
    }

    fn render(&self, var: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let v = var(d);
            if v.is_empty() || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&v);
        }
        out
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|d| match d {
            0 => String::new(),
            1 => "t".into(),
            d => format!("t^{d}"),
        }))
    }
}

fn zip_coeffs(a: &[BigInt], b: &[BigInt], f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Vec<BigInt> {
    let zero = BigInt::zero();
    (0..a.len().max(b.len()))
        .map(|k| f(a.get(k).unwrap_or(&zero), b.get(k).unwrap_or(&zero)))
        .collect()
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        TPoly::from_big(zip_coeffs(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Add for TPoly {
    type Output = TPoly;
    fn add(self, rhs: TPoly) -> TPoly {
        &self + &rhs
    }
}

impl AddAssign<&TPoly> for TPoly {
    fn add_assign(&mut self, rhs: &TPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        TPoly::from_big(zip_coeffs(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Sub for TPoly {
    type Output = TPoly;
    fn sub(self, rhs: TPoly) -> TPoly {
        &self - &rhs
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        -&self
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::from_big(out)
    }
}

impl Mul for TPoly {
    type Output = TPoly;
    fn mul(self, rhs: TPoly) -> TPoly {
        &self * &rhs
    }
}

/// A coefficient as a JSON integer when it fits in `i64`, else as a decimal string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireInt {
    Small(i64),
    Big(String),
}

impl WireInt {
    fn from_big(c: &BigInt) -> Self {
        c.to_i64()
            .map_or_else(|| WireInt::Big(c.to_string()), WireInt::Small)
    }

    fn into_big(self) -> Result<BigInt> {
        match self {
            WireInt::Small(v) => Ok(BigInt::from(v)),
            WireInt::Big(s) => s
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        }
    }
}

impl Serialize for TPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(WireInt::from_big))
    }
}

impl<'de> Deserialize<'de> for TPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<WireInt>::deserialize(d)?;
        let coeffs = raw
            .into_iter()
            .map(WireInt::into_big)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(TPoly::from_big(coeffs))
    }
}

/// A Laurent polynomial in `q`: `sum_k coeffs[k] q^(low + k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QLaurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        QLaurent::monomial(0, 1)
    }

    /// `c * q^exp`.
    pub fn monomial(exp: i64, c: i64) -> Self {
        QLaurent::normalized(exp, vec![BigInt::from(c)])
    }

    fn normalized(mut low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        low += lead as i64;
        if coeffs.is_empty() {
            low = 0;
        }
        QLaurent { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> QLaurent {
        if self.is_zero() {
            return self.clone();
        }
        QLaurent {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Rewrites `sum c_k q^k` with all `k <= 0` as a polynomial in `t = 1/q`;
    /// `None` if a positive power of `q` remains.
    pub fn to_tpoly(&self) -> Option<TPoly> {
        if self.is_zero() {
            return Some(TPoly::zero());
        }
        let high = self.low + self.coeffs.len() as i64 - 1;
        if high > 0 {
            return None;
        }
        let mut out = vec![BigInt::zero(); (-self.low) as usize + 1];
        for (e, c) in self.terms() {
            out[(-e) as usize] = c.clone();
        }
        Some(TPoly::from_big(out))
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() || rhs.is_zero() {
            return QLaurent::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QLaurent::normalized(self.low + rhs.low, out)
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = (self.low + self.coeffs.len() as i64).max(rhs.low + rhs.coeffs.len() as i64);
        let mut out = vec![BigInt::zero(); (high - low) as usize];
        for p in [self, rhs] {
            for (k, c) in p.coeffs.iter().enumerate() {
                out[(p.low - low) as usize + k] += c;
            }
        }
        QLaurent::normalized(low, out)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let var = match e {
                0 => String::new(),
                1 => "q".into(),
                e => format!("q^{e}"),
            };
            if var.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(&var)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic() {
        let x = TPoly::one_minus_t();
        assert_eq!(x.pow(2), TPoly::from_coeffs(vec![1, -2, 1]));
        assert_eq!(x.pow(2).eval_i64(-1), BigInt::from(4));
        assert_eq!(&x - &x, TPoly::zero());
        assert_eq!((&x + &TPoly::t()), TPoly::one());
        assert_eq!(TPoly::from_coeffs(vec![0, 0, 0]).degree(), None);
        assert_eq!(TPoly::from_coeffs(vec![0, -1, 1]).to_string(), "-t + t^2");
        assert_eq!(
            TPoly::from_coeffs(vec![1, -2, 1]).to_string(),
            "1 - 2t + t^2"
        );
        assert_eq!(
            TPoly::from_coeffs(vec![0, -2, 2]).to_latex_q(),
            "-2q^{-1} + 2q^{-2}"
        );
    }

    #[test]
    fn json_is_a_plain_integer_list() {
        let p = TPoly::from_coeffs(vec![0, -2, 2]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[0,-2,2]");
        assert_eq!(serde_json::from_str::<TPoly>(&s).unwrap(), p);
        let huge = TPoly::from_big(vec![BigInt::from(i64::MAX) * 4]);
        let s = serde_json::to_string(&huge).unwrap();
        assert_eq!(serde_json::from_str::<TPoly>(&s).unwrap(), huge);
    }

    #[test]
    fn q_laurent() {
        // (q - 1) q * (-q) = -q^3 + q^2
        let g =
            &(&QLaurent::monomial(2, 1) + &QLaurent::monomial(1, -1)) * &QLaurent::monomial(1, -1);
        assert_eq!(g.to_string(), "-q^3 + q^2");
        assert_eq!(g.to_tpoly(), None);
        let c = g.shift(-4).to_tpoly().unwrap();
        assert_eq!(c, TPoly::from_coeffs(vec![0, -1, 1]));
        assert!((&g + &(&g * &QLaurent::monomial(0, -1))).is_zero());
        assert_eq!(
            QLaurent::monomial(-1, -1).to_tpoly(),
            Some(TPoly::from_coeffs(vec![0, -1]))
        );
    }

    fn small_poly() -> impl Strategy<Value = TPoly> {
        proptest::collection::vec(-5i64..6, 0..5).prop_map(TPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly(), x in -4i64..5) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).eval_i64(x), a.eval_i64(x) * b.eval_i64(x));
            let mut acc = a.clone();
            acc += &b;
            prop_assert_eq!(acc, &a + &b);
        }
    }
}
