//! Weight-lattice arithmetic for `GL_{r+1}`.
//!
//! Weights are integer vectors of length `r+1` (coefficients of `e_1..e_{r+1}`).
//! Conventions: `alpha_i = e_i - e_{i+1}`, `omega_i = e_1 + ... + e_i`,
//! `rho = (r, r-1, ..., 1, 0)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_rank(rank: usize) -> Result<()> {
    if rank < 1 {
        return Err(Error::Rank(format!("rank must be at least 1, got {rank}")));
    }
    Ok(())
}

/// An integral weight in GL coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GLWeight {
    coords: Vec<i64>,
}

impl GLWeight {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Rank(format!(
                "a weight needs at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        Ok(GLWeight { coords })
    }

    pub fn zero(rank: usize) -> Self {
        GLWeight {
            coords: vec![0; rank + 1],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub fn total(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// Pairing with the coroot `h_i`: `coords[i] - coords[i+1]` (1-based `i`).
    pub fn pair_coroot(&self, i: usize) -> i64 {
        self.coords[i - 1] - self.coords[i]
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }

    /// Coordinate reversal, the action of the longest Weyl element.
    pub fn reversed(&self) -> Self {
        GLWeight {
            coords: self.coords.iter().rev().copied().collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(
            self.coords.len(),
            other.coords.len(),
            "weight rank mismatch"
        );
        GLWeight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Writes `self` as `sum c_i alpha_i` when that is possible with
    /// nonnegative integers.
    pub fn to_alpha(&self) -> Option<AlphaVector> {
        if self.total() != 0 {
            return None;
        }
        let mut acc = 0i64;
        let mut c = Vec::with_capacity(self.rank());
        for &x in &self.coords[..self.rank()] {
            acc += x;
            if acc < 0 {
                return None;
            }
            c.push(acc as u64);
        }
        Some(AlphaVector(c))
    }
}

impl Add for &GLWeight {
    type Output = GLWeight;
    fn add(self, rhs: &GLWeight) -> GLWeight {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &GLWeight {
    type Output = GLWeight;
    fn sub(self, rhs: &GLWeight) -> GLWeight {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &GLWeight {
    type Output = GLWeight;
    fn neg(self) -> GLWeight {
        GLWeight {
            coords: self.coords.iter().map(|&a| -a).collect(),
        }
    }
}

impl fmt::Display for GLWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().join(","))
    }
}

/// A partition with exactly `r+1` parts (trailing zeros allowed).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    parts: Vec<usize>,
}

impl Shape {
    pub fn new(mut parts: Vec<usize>, rank: usize) -> Result<Self> {
        check_rank(rank)?;
        while parts.len() > rank + 1 && parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.len() > rank + 1 {
            return Err(Error::Shape(format!(
                "{} nonzero rows exceed rank {} + 1",
                parts.len(),
                rank
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Shape(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        parts.resize(rank + 1, 0);
        Ok(Shape { parts })
    }

    pub fn from_weight(w: &GLWeight) -> Result<Self> {
        if w.coords().iter().any(|&x| x < 0) || !w.is_dominant() {
            return Err(Error::Domain(format!(
                "{w} is not a dominant polynomial weight"
            )));
        }
        Shape::new(w.coords().iter().map(|&x| x as usize).collect(), w.rank())
    }

    pub fn rank(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Row length, 1-based; rows beyond `r+1` have length 0.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    /// Strictly decreasing down to a zero last part, i.e. of the form `lambda + rho`.
    pub fn is_rho_shifted(&self) -> bool {
        self.parts.last() == Some(&0) && self.parts.windows(2).all(|w| w[0] > w[1])
    }

    pub fn to_weight(&self) -> GLWeight {
        GLWeight {
            coords: self.parts.iter().map(|&p| p as i64).collect(),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// Coefficients `c_i >= 0` of `mu = sum c_i alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaVector(pub Vec<u64>);

impl AlphaVector {
    pub fn zero(rank: usize) -> Self {
        AlphaVector(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for AlphaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| match c {
                1 => format!("a{}", i + 1),
                _ => format!("{c}a{}", i + 1),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

pub fn simple_root(i: usize, rank: usize) -> Result<GLWeight> {
    check_rank(rank)?;
    if i < 1 || i > rank {
        return Err(Error::Rank(format!(
            "simple root index {i} outside 1..={rank}"
        )));
    }
    let mut coords = vec![0; rank + 1];
    coords[i - 1] = 1;
    coords[i] = -1;
    Ok(GLWeight { coords })
}

pub fn rho(rank: usize) -> Result<GLWeight> {
    check_rank(rank)?;
    Ok(GLWeight {
        coords: (0..=rank as i64).rev().collect(),
    })
}

/// `sum_i coeffs[i] * omega_i` as a partition.
pub fn lambda_from_fundamental(coeffs: &[i64], rank: usize) -> Result<GLWeight> {
    check_rank(rank)?;
    if coeffs.len() != rank {
        return Err(Error::Domain(format!(
            "expected {rank} fundamental-weight coefficients, got {}",
            coeffs.len()
        )));
    }
    if let Some(c) = coeffs.iter().find(|&&c| c < 0) {
        return Err(Error::Domain(format!(
            "negative fundamental-weight coefficient {c}"
        )));
    }
    let mut coords = vec![0; rank + 1];
    for j in (0..rank).rev() {
        coords[j] = coords[j + 1] + coeffs[j];
    }
    Ok(GLWeight { coords })
}

/// Successive gaps `l_i - l_{i+1}` of a rho-shifted shape.
pub fn theta(shape: &Shape) -> Result<Vec<usize>> {
    if !shape.is_rho_shifted() {
        return Err(Error::Shape(format!(
            "{shape} is not strictly decreasing to 0"
        )));
    }
    Ok(shape.parts().windows(2).map(|w| w[0] - w[1]).collect())
}

pub fn alpha_to_gl(a: &AlphaVector, rank: usize) -> Result<GLWeight> {
    check_rank(rank)?;
    if a.rank() != rank {
        return Err(Error::RankMismatch(a.rank(), rank));
    }
    let mut coords = vec![0i64; rank + 1];
    for (k, &c) in a.0.iter().enumerate() {
        coords[k] += c as i64;
        coords[k + 1] -= c as i64;
    }
    Ok(GLWeight { coords })
}

/// A permutation of `{1..n}` in one-line notation (stored 0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// From one-line notation with letters `1..=n`.
    pub fn from_one_line(letters: &[usize]) -> Result<Self> {
        let n = letters.len();
        let mut seen = vec![false; n];
        for &l in letters {
            if l < 1 || l > n || seen[l - 1] {
                return Err(Error::Domain(format!(
                    "{letters:?} is not a permutation of 1..={n}"
                )));
            }
            seen[l - 1] = true;
        }
        Ok(Permutation(letters.iter().map(|&l| l - 1).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x + 1).collect()
    }

    pub fn inversions(&self) -> usize {
        self.0
            .iter()
            .tuple_combinations()
            .filter(|(a, b)| a > b)
            .count()
    }

    pub fn sign(&self) -> i8 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&k| self.0[k]).collect())
    }

    /// `(w v)_{w(k)} = v_k`.
    pub fn act(&self, v: &GLWeight) -> GLWeight {
        assert_eq!(self.len(), v.coords().len(), "permutation size mismatch");
        let mut coords = vec![0; self.len()];
        for (k, &x) in v.coords().iter().enumerate() {
            coords[self.0[k]] = x;
        }
        GLWeight { coords }
    }

    /// All permutations of `n` letters, in lexicographic one-line order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n).permutations(n).map(Permutation)
    }
}

/// `w ∘ lambda = w(lambda + rho) - rho`.
pub fn dot_action(perm: &Permutation, lam: &GLWeight, rank: usize) -> Result<GLWeight> {
    if perm.len() != rank + 1 {
        return Err(Error::Domain(format!(
            "permutation on {} letters used at rank {rank}",
            perm.len()
        )));
    }
    if lam.rank() != rank {
        return Err(Error::RankMismatch(lam.rank(), rank));
    }
    let rho = rho(rank)?;
    Ok(&perm.act(&(lam + &rho)) - &rho)
}

/// `sign(w)` if some `w` satisfies `w ∘ lambda = lambda - mu`, else 0.
///
/// For dominant `lambda` the shifted weight `lambda + rho` is regular, so at
/// most one permutation can match; the scan returns the first hit.
pub fn dot_orbit_sign(lam: &GLWeight, mu: &AlphaVector, rank: usize) -> Result<i8> {
    let target = lam - &alpha_to_gl(mu, rank)?;
    for w in Permutation::all(rank + 1) {
        if dot_action(&w, lam, rank)? == target {
            return Ok(w.sign());
        }
    }
    Ok(0)
}
