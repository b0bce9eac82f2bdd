//! Deformed weight multiplicities `H_{lambda+rho}(mu; q)`.
//!
//! `H` is the sum of the coefficients `C(b)` over the elements of
//! `B(lambda+rho)` of weight `lambda + rho - mu`. It is computed directly and
//! again from `B(lambda) ⊗ B(rho)`, where only the `rho` factor contributes
//! a coefficient. Its values at `t = 0, -1, 1` (that is `q = inf, -1, 1`)
//! are compared against weight multiplicities, tensor-product weight
//! multiplicities and dot-orbit signs computed without any coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::bzl::c_coefficient;
use crate::crystal::enumerate_crystal;
use crate::error::{Error, Result};
use crate::laurent::shifted_shape;
use crate::par::{self, Strategy};
use crate::rootsys::{alpha_to_gl, dot_orbit_sign, rho, AlphaVector, GLWeight, Shape};
use crate::tpoly::TPoly;

/// Where `H` is evaluated. `QInf` is `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SpecialPoint {
    QInf,
    QMinusOne,
    QOne,
}

impl SpecialPoint {
    pub const ALL: [SpecialPoint; 3] = [
        SpecialPoint::QInf,
        SpecialPoint::QMinusOne,
        SpecialPoint::QOne,
    ];

    pub fn t_value(self) -> i64 {
        match self {
            SpecialPoint::QInf => 0,
            SpecialPoint::QMinusOne => -1,
            SpecialPoint::QOne => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SpecialPoint::QInf => "inf",
            SpecialPoint::QMinusOne => "-1",
            SpecialPoint::QOne => "1",
        }
    }
}

impl FromStr for SpecialPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "q=inf" => Ok(SpecialPoint::QInf),
            "-1" | "q=-1" => Ok(SpecialPoint::QMinusOne),
            "1" | "q=1" => Ok(SpecialPoint::QOne),
            _ => Err(Error::Parse(format!(
                "unknown specialization {s:?}; expected inf, -1 or 1"
            ))),
        }
    }
}

impl fmt::Display for SpecialPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn specialize(h: &TPoly, point: SpecialPoint) -> BigInt {
    h.eval_i64(point.t_value())
}

/// `H_{lambda+rho}(mu)` for every `mu` with `lambda + rho - mu` a weight of
/// `B(lambda+rho)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTable {
    lam: GLWeight,
    rows: BTreeMap<AlphaVector, TPoly>,
}

impl HTable {
    pub fn new(lam: GLWeight, rows: BTreeMap<AlphaVector, TPoly>) -> Self {
        HTable { lam, rows }
    }

    pub fn lambda(&self) -> &GLWeight {
        &self.lam
    }

    pub fn rank(&self) -> usize {
        self.lam.rank()
    }

    pub fn rows(&self) -> &BTreeMap<AlphaVector, TPoly> {
        &self.rows
    }

    pub fn get(&self, mu: &AlphaVector) -> Option<&TPoly> {
        self.rows.get(mu)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows by height of `mu`, then by decreasing `c_1, c_2, ...`.
    pub fn rows_by_height(&self) -> Vec<(&AlphaVector, &TPoly)> {
        let mut rows: Vec<_> = self.rows.iter().collect();
        rows.sort_by(|a, b| a.0.height().cmp(&b.0.height()).then_with(|| b.0.cmp(a.0)));
        rows
    }
}

fn shapes(lam: &GLWeight, rank: usize) -> Result<(Shape, Shape)> {
    if lam.rank() != rank {
        return Err(Error::RankMismatch(lam.rank(), rank));
    }
    let lambda_shape = Shape::from_weight(lam)?;
    Ok((lambda_shape, shifted_shape(lam)?))
}

fn mu_of(top: &GLWeight, wt: &GLWeight) -> AlphaVector {
    (top - wt)
        .to_alpha()
        .expect("crystal weights lie below the highest weight")
}

fn merge_rows(
    mut a: BTreeMap<AlphaVector, TPoly>,
    b: BTreeMap<AlphaVector, TPoly>,
) -> BTreeMap<AlphaVector, TPoly> {
    for (mu, c) in b {
        *a.entry(mu).or_default() += &c;
    }
    a
}

/// The table by summing `C(b)` over `B(lambda+rho)`.
pub fn h_table(lam: &GLWeight, rank: usize, strategy: Strategy) -> Result<HTable> {
    let (_, shape) = shapes(lam, rank)?;
    let top = shape.to_weight();
    let elements = enumerate_crystal(&shape, strategy);
    let rows = par::fold(
        &elements,
        strategy,
        BTreeMap::new,
        |mut acc, b| {
            let c = c_coefficient(b).expect("rho-shifted shape");
            *acc.entry(mu_of(&top, &b.content()))
                .or_insert_with(TPoly::zero) += &c;
            acc
        },
        merge_rows,
    );
    Ok(HTable {
        lam: lam.clone(),
        rows,
    })
}

/// The table by summing `C(b)` of the `rho` factor over `B(lambda) ⊗ B(rho)`.
pub fn h_table_tensor(lam: &GLWeight, rank: usize, strategy: Strategy) -> Result<HTable> {
    let (lambda_shape, shifted) = shapes(lam, rank)?;
    let top = shifted.to_weight();
    let left = enumerate_crystal(&lambda_shape, strategy);
    let rho_shape = Shape::from_weight(&rho(rank)?)?;
    let right: Vec<(GLWeight, TPoly)> = enumerate_crystal(&rho_shape, strategy)
        .iter()
        .map(|b| (b.content(), c_coefficient(b).expect("rho is rho-shifted")))
        .collect();
    let rows = par::fold(
        &left,
        strategy,
        BTreeMap::new,
        |mut acc, b1| {
            let w1 = b1.content();
            for (w2, c) in &right {
                *acc.entry(mu_of(&top, &(&w1 + w2)))
                    .or_insert_with(TPoly::zero) += c;
            }
            acc
        },
        merge_rows,
    );
    Ok(HTable {
        lam: lam.clone(),
        rows,
    })
}

/// Single entry of the direct table; the zero polynomial when
/// `lambda + rho - mu` is not a weight of `B(lambda+rho)`.
pub fn h_direct(
    lam: &GLWeight,
    mu: &AlphaVector,
    rank: usize,
    strategy: Strategy,
) -> Result<TPoly> {
    let (_, shape) = shapes(lam, rank)?;
    let target = &shape.to_weight() - &alpha_to_gl(mu, rank)?;
    let elements = enumerate_crystal(&shape, strategy);
    Ok(elements
        .iter()
        .filter(|b| b.content() == target)
        .fold(TPoly::zero(), |acc, b| {
            acc + c_coefficient(b).expect("rho-shifted shape")
        }))
}

pub fn h_tensor(
    lam: &GLWeight,
    mu: &AlphaVector,
    rank: usize,
    strategy: Strategy,
) -> Result<TPoly> {
    let (lambda_shape, shifted) = shapes(lam, rank)?;
    let target = &shifted.to_weight() - &alpha_to_gl(mu, rank)?;
    let rho_shape = Shape::from_weight(&rho(rank)?)?;
    let right = enumerate_crystal(&rho_shape, strategy);
    let mut acc = TPoly::zero();
    for b1 in enumerate_crystal(&lambda_shape, strategy) {
        let w1 = b1.content();
        for b2 in &right {
            if &w1 + &b2.content() == target {
                acc += &c_coefficient(b2).expect("rho is rho-shifted");
            }
        }
    }
    Ok(acc)
}

/// Whether `lambda + rho - mu` is a weight of `B(lambda+rho)`.
pub fn in_weight_support(lam: &GLWeight, mu: &AlphaVector, rank: usize) -> Result<bool> {
    let (_, shape) = shapes(lam, rank)?;
    let target = &shape.to_weight() - &alpha_to_gl(mu, rank)?;
    Ok(weight_multiplicities(&shape.to_weight(), rank, Strategy::default())?.contains_key(&target))
}

/// Content histogram of `B(lambda)`.
pub fn weight_multiplicities(
    lam: &GLWeight,
    rank: usize,
    strategy: Strategy,
) -> Result<HashMap<GLWeight, u64>> {
    if lam.rank() != rank {
        return Err(Error::RankMismatch(lam.rank(), rank));
    }
    let shape = Shape::from_weight(lam)?;
    let mut out = HashMap::new();
    for b in enumerate_crystal(&shape, strategy) {
        *out.entry(b.content()).or_insert(0) += 1;
    }
    Ok(out)
}

pub fn weight_multiplicity(lam: &GLWeight, nu: &GLWeight, rank: usize) -> Result<u64> {
    Ok(weight_multiplicities(lam, rank, Strategy::default())?
        .get(nu)
        .copied()
        .unwrap_or(0))
}

/// Multiplicity of `nu` in `V(lambda) ⊗ V(rho)` by convolving the two
/// weight histograms.
pub fn tensor_weight_multiplicity(lam: &GLWeight, nu: &GLWeight, rank: usize) -> Result<u64> {
    Ok(tensor_histogram(lam, rank)?.get(nu).copied().unwrap_or(0))
}

fn tensor_histogram(lam: &GLWeight, rank: usize) -> Result<HashMap<GLWeight, u64>> {
    let left = weight_multiplicities(lam, rank, Strategy::default())?;
    let right = weight_multiplicities(&rho(rank)?, rank, Strategy::default())?;
    let mut out = HashMap::new();
    for (eta, m1) in &left {
        for (w, m2) in &right {
            *out.entry(eta + w).or_insert(0) += m1 * m2;
        }
    }
    Ok(out)
}

/// Result of comparing one specialization of one row with its oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub mu: AlphaVector,
    pub point: SpecialPoint,
    pub value: BigInt,
    pub expected: BigInt,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.value == self.expected
    }
}

/// Evaluates every row at each requested point and pairs the value with the
/// oracle: weight multiplicity of `lambda - mu` (`inf`), multiplicity of
/// `lambda + rho - mu` in `V(lambda) ⊗ V(rho)` (`-1`), dot-orbit sign (`1`).
pub fn oracle_checks(table: &HTable, points: &[SpecialPoint]) -> Result<Vec<OracleCheck>> {
    let lam = table.lambda();
    let rank = table.rank();
    let top = &lam.clone() + &rho(rank)?;
    let weights = weight_multiplicities(lam, rank, Strategy::default())?;
    let tensor = tensor_histogram(lam, rank)?;
    let mut out = Vec::new();
    for (mu, h) in table.rows_by_height() {
        let shift = alpha_to_gl(mu, rank)?;
        for &point in points {
            let expected: BigInt = match point {
                SpecialPoint::QInf => weights.get(&(lam - &shift)).copied().unwrap_or(0).into(),
                SpecialPoint::QMinusOne => {
                    tensor.get(&(&top - &shift)).copied().unwrap_or(0).into()
                }
                SpecialPoint::QOne => dot_orbit_sign(lam, mu, rank)?.into(),
            };
            out.push(OracleCheck {
                mu: mu.clone(),
                point,
                value: specialize(h, point),
                expected,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::lambda_from_fundamental;

    fn tp(c: &[i64]) -> TPoly {
        TPoly::from_coeffs(c.to_vec())
    }
    fn a(c: &[u64]) -> AlphaVector {
        AlphaVector(c.to_vec())
    }
    fn w(c: &[i64]) -> GLWeight {
        GLWeight::new(c.to_vec()).unwrap()
    }
    fn omega2() -> GLWeight {
        lambda_from_fundamental(&[0, 1], 2).unwrap()
    }
    const S: Strategy = Strategy::Sequential;

    #[test]
    fn direct_entries() {
        assert_eq!(
            h_direct(&omega2(), &a(&[2, 2]), 2, S).unwrap(),
            tp(&[0, -1, 2, -1])
        );
        assert_eq!(
            h_direct(&omega2(), &a(&[1, 0]), 2, S).unwrap(),
            tp(&[0, -1])
        );
        assert_eq!(h_direct(&omega2(), &a(&[0, 0]), 2, S).unwrap(), tp(&[1]));
        assert!(h_direct(&omega2(), &a(&[5, 0]), 2, S).unwrap().is_zero());
        assert!(!in_weight_support(&omega2(), &a(&[5, 0]), 2).unwrap());
        assert!(in_weight_support(&omega2(), &a(&[2, 2]), 2).unwrap());
    }

    #[test]
    fn tensor_entries() {
        assert_eq!(
            h_tensor(&omega2(), &a(&[2, 2]), 2, S).unwrap(),
            tp(&[0, -1, 2, -1])
        );
        let zero = lambda_from_fundamental(&[0, 0], 2).unwrap();
        for mu in h_table(&zero, 2, S).unwrap().rows().keys() {
            assert_eq!(
                h_tensor(&zero, mu, 2, S).unwrap(),
                h_direct(&zero, mu, 2, S).unwrap()
            );
        }
    }

    #[test]
    fn rank_one_table() {
        let t = h_table(&w(&[0, 0]), 1, S).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.get(&a(&[0])), Some(&tp(&[1])));
        assert_eq!(t.get(&a(&[1])), Some(&tp(&[0, -1])));
    }

    #[test]
    fn omega2_table_shape() {
        let t = h_table(&omega2(), 2, S).unwrap();
        assert_eq!(t.len(), 12);
        assert_eq!(t.get(&a(&[1, 2])), Some(&tp(&[0, -2, 2])));
        assert_eq!(t.get(&a(&[3, 3])), Some(&tp(&[0, 0, 0, -1])));
        assert_eq!(t, h_table_tensor(&omega2(), 2, Strategy::Parallel).unwrap());
        let order: Vec<String> = t
            .rows_by_height()
            .iter()
            .map(|(m, _)| m.to_string())
            .collect();
        assert_eq!(&order[..4], &["0", "a1", "a2", "a1+a2"]);
    }

    #[test]
    fn specializations() {
        let h = tp(&[0, -2, 2]);
        assert_eq!(specialize(&h, SpecialPoint::QMinusOne), BigInt::from(4));
        assert_eq!(
            specialize(&tp(&[1, -1]), SpecialPoint::QInf),
            BigInt::from(1)
        );
        assert_eq!(
            specialize(&tp(&[0, -1]), SpecialPoint::QOne),
            BigInt::from(-1)
        );
        assert_eq!("inf".parse::<SpecialPoint>().unwrap(), SpecialPoint::QInf);
        assert!("2".parse::<SpecialPoint>().is_err());
    }

    #[test]
    fn multiplicities() {
        assert_eq!(
            weight_multiplicity(&omega2(), &w(&[1, 0, 1]), 2).unwrap(),
            1
        );
        assert_eq!(
            weight_multiplicity(&omega2(), &w(&[0, 2, 0]), 2).unwrap(),
            0
        );
        assert_eq!(
            weight_multiplicity(&w(&[2, 1, 0]), &w(&[1, 1, 1]), 2).unwrap(),
            2
        );
        // omega_2 + rho - a1 - 2 a2 = (3,2,0) - (1,1,-2)
        assert_eq!(
            tensor_weight_multiplicity(&omega2(), &w(&[2, 1, 2]), 2).unwrap(),
            4
        );
        assert_eq!(
            tensor_weight_multiplicity(&w(&[0, 0, 0]), &w(&[2, 1, 0]), 2).unwrap(),
            1
        );
        assert_eq!(
            tensor_weight_multiplicity(&omega2(), &w(&[3, 2, 0]), 2).unwrap(),
            1
        );
    }

    #[test]
    fn oracles_agree_on_omega2() {
        let t = h_table(&omega2(), 2, S).unwrap();
        let checks = oracle_checks(&t, &SpecialPoint::ALL).unwrap();
        assert_eq!(checks.len(), 36);
        assert!(checks.iter().all(OracleCheck::passed), "{checks:?}");
    }
}
