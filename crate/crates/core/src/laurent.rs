//! Sparse Laurent polynomials in `z_1..z_{r+1}` with coefficients in `Z[t]`,
//! and the two sides of the deformed character identity.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bzl::{c_coefficient, decorate_via_operators, g_coefficient};
use crate::crystal::enumerate_crystal;
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::rootsys::{rho, GLWeight, Shape};
use crate::tpoly::TPoly;

pub type Exponent = Vec<i64>;

/// `sum_e coeff_e(t) z^e`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    rank: usize,
    terms: HashMap<Exponent, TPoly>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: HashMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        LaurentPoly::monomial(vec![0; rank + 1], TPoly::one())
    }

    /// `coeff * z^exp`; the rank is `exp.len() - 1`.
    pub fn monomial(exp: Exponent, coeff: TPoly) -> Self {
        assert!(
            exp.len() >= 2,
            "exponent vectors need at least 2 coordinates"
        );
        let mut p = LaurentPoly::zero(exp.len() - 1);
        p.add_term(exp, &coeff);
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[i64]) -> TPoly {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms_sorted(&self) -> Vec<(&Exponent, &TPoly)> {
        self.terms.iter().sorted_by(|a, b| a.0.cmp(b.0)).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &TPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: &TPoly) {
        assert_eq!(
            exp.len(),
            self.rank + 1,
            "exponent length does not match rank"
        );
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
        }
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut acc: HashMap<Exponent, TPoly> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += &(c1 * c2);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            rank: self.rank,
            terms: acc,
        })
    }

    /// Multiplication by `z^exp`.
    pub fn shift(&self, exp: &[i64]) -> LaurentPoly {
        assert_eq!(exp.len(), self.rank + 1);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly {
            rank: self.rank,
            terms,
        }
    }

    /// Relabels variables: `z_k` becomes `z_{perm[k]}` (0-based one-line form).
    pub fn permute_vars(&self, perm: &[usize]) -> LaurentPoly {
        assert_eq!(perm.len(), self.rank + 1);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0; e.len()];
                for (k, &x) in e.iter().enumerate() {
                    out[perm[k]] = x;
                }
                (out, c.clone())
            })
            .collect();
        LaurentPoly {
            rank: self.rank,
            terms,
        }
    }

    /// `z_k -> z_{r+2-k}`, the longest Weyl element.
    pub fn reversed(&self) -> LaurentPoly {
        let n = self.rank + 1;
        self.permute_vars(&(0..n).rev().collect::<Vec<_>>())
    }

    /// Substitutes a number for `t`.
    pub fn eval_t(&self, t: &BigInt) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &TPoly::from_big(vec![c.eval(t)]));
        }
        out
    }

    /// Full evaluation at nonzero rational `z` and rational `t`.
    pub fn eval(&self, z: &[BigRational], t: &BigRational) -> Result<BigRational> {
        if z.len() != self.rank + 1 {
            return Err(Error::RankMismatch(self.rank, z.len().saturating_sub(1)));
        }
        if z.iter().any(Zero::is_zero) {
            return Err(Error::Domain(
                "Laurent polynomials cannot be evaluated at z_k = 0".into(),
            ));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mono = e.iter().zip(z).fold(BigRational::one(), |m, (&k, zk)| {
                m * num_traits::pow::Pow::pow(zk, k as i32)
            });
            acc += mono * c.eval_rational(t);
        }
        Ok(acc)
    }

    /// Exponents all nonnegative with coordinate sum `degree`.
    pub fn is_homogeneous_polynomial(&self, degree: i64) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().all(|&x| x >= 0) && e.iter().sum::<i64>() == degree)
    }

    pub fn to_wire(&self) -> Vec<WireTerm> {
        self.terms_sorted()
            .into_iter()
            .map(|(e, c)| WireTerm {
                exp: e.clone(),
                coeff: c.clone(),
            })
            .collect()
    }

    pub fn from_wire(rank: usize, terms: Vec<WireTerm>) -> Result<Self> {
        let mut out = LaurentPoly::zero(rank);
        for WireTerm { exp, coeff } in terms {
            if exp.len() != rank + 1 {
                return Err(Error::RankMismatch(rank, exp.len().saturating_sub(1)));
            }
            out.add_term(exp, &coeff);
        }
        Ok(out)
    }
}

/// One term of the JSON form: `{"exp": [...], "coeff": [t^0, t^1, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireTerm {
    pub exp: Exponent,
    pub coeff: TPoly,
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts = self.terms_sorted().into_iter().map(|(e, c)| {
            let mono = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        format!("z{}", v + 1)
                    } else {
                        format!("z{}^{k}", v + 1)
                    }
                })
                .join("*");
            match (mono.is_empty(), c.coeffs().len()) {
                (true, _) => format!("({c})"),
                (false, _) if *c == TPoly::one() => mono,
                _ => format!("({c})*{mono}"),
            }
        });
        f.write_str(&parts.format(" + ").to_string())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    /// # Panics
    /// On rank mismatch; use [`LaurentPoly::checked_add`] to get an error instead.
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("rank mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(&-rhs).expect("rank mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        LaurentPoly {
            rank: self.rank,
            terms,
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("rank mismatch")
    }
}

/// `lambda + rho` as a shape; `lambda` must be a partition with last part 0.
pub fn shifted_shape(lam: &GLWeight) -> Result<Shape> {
    let rank = lam.rank();
    if lam.coords()[rank] != 0 {
        return Err(Error::Domain(format!("{lam} must have last coordinate 0")));
    }
    Shape::from_weight(&(lam + &rho(rank)?))
}

fn check_lambda(lam: &GLWeight, rank: usize) -> Result<Shape> {
    if lam.rank() != rank {
        return Err(Error::RankMismatch(lam.rank(), rank));
    }
    Shape::from_weight(lam)
}

/// `sum_{b in B(lambda)} z^{wt(b)}`.
pub fn character(lam: &GLWeight, rank: usize, strategy: Strategy) -> Result<LaurentPoly> {
    let shape = check_lambda(lam, rank)?;
    let elements = enumerate_crystal(&shape, strategy);
    Ok(sum_terms(&elements, rank, strategy, |b| {
        Some((b.content().into_coords(), TPoly::one()))
    }))
}

fn sum_terms<T: Sync>(
    items: &[T],
    rank: usize,
    strategy: Strategy,
    term: impl Fn(&T) -> Option<(Exponent, TPoly)> + Sync + Send,
) -> LaurentPoly {
    par::fold(
        items,
        strategy,
        || LaurentPoly::zero(rank),
        |mut acc, item| {
            if let Some((e, c)) = term(item) {
                acc.add_term(e, &c);
            }
            acc
        },
        |a, b| &a + &b,
    )
}

/// `prod_{i<j} (1 - t z_j / z_i)`, one factor per positive root `e_i - e_j`
/// with the root entering as `z^{-alpha}`.
pub fn deformed_product(rank: usize) -> LaurentPoly {
    root_product(rank, -1)
}

/// `prod_{i<j} (1 - t z_i / z_j)`.
pub fn positive_root_product(rank: usize) -> LaurentPoly {
    root_product(rank, 1)
}

fn root_product(rank: usize, sign: i64) -> LaurentPoly {
    let n = rank + 1;
    let mut acc = LaurentPoly::one(rank);
    for (i, j) in (0..n).tuple_combinations() {
        let mut e = vec![0; n];
        e[i] = sign;
        e[j] = -sign;
        let factor = &LaurentPoly::one(rank) + &LaurentPoly::monomial(e, TPoly::monomial(1, -1));
        acc = &acc * &factor;
    }
    acc
}

/// `z^rho * s_lambda(z) * prod_{a>0} (1 - t z^{-a})`.
pub fn cs_lhs(lam: &GLWeight, rank: usize, strategy: Strategy) -> Result<LaurentPoly> {
    let ch = character(lam, rank, strategy)?;
    Ok((&ch * &deformed_product(rank)).shift(rho(rank)?.coords()))
}

/// `sum_{b in B(lambda+rho)} C(b) z^{wt(b)}`.
pub fn cs_rhs(lam: &GLWeight, rank: usize, strategy: Strategy) -> Result<LaurentPoly> {
    check_lambda(lam, rank)?;
    let shape = shifted_shape(lam)?;
    let elements = enumerate_crystal(&shape, strategy);
    Ok(sum_terms(&elements, rank, strategy, |b| {
        let c = c_coefficient(b).expect("rho-shifted shape");
        Some((b.content().into_coords(), c))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exp: Exponent,
    pub lhs: TPoly,
    pub rhs: TPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub equal: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub first_mismatch: Option<Mismatch>,
}

/// First exponent (lexicographically) where the two sides differ.
pub fn first_difference(lhs: &LaurentPoly, rhs: &LaurentPoly) -> Option<Mismatch> {
    lhs.terms
        .keys()
        .chain(rhs.terms.keys())
        .filter(|e| lhs.coeff(e) != rhs.coeff(e))
        .min()
        .map(|e| Mismatch {
            exp: e.clone(),
            lhs: lhs.coeff(e),
            rhs: rhs.coeff(e),
        })
}

pub fn verify_identity(lam: &GLWeight, rank: usize, strategy: Strategy) -> Result<IdentityReport> {
    let lhs = cs_lhs(lam, rank, strategy)?;
    let rhs = cs_rhs(lam, rank, strategy)?;
    let first_mismatch = first_difference(&lhs, &rhs);
    Ok(IdentityReport {
        equal: first_mismatch.is_none(),
        lhs_terms: lhs.num_terms(),
        rhs_terms: rhs.num_terms(),
        first_mismatch,
    })
}

/// Outcome of checking the `w_0`-twisted form built from BZL data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BnReport {
    /// `G(b) q^{-S(b)} == C(b)` for every element.
    pub scalar_relation: bool,
    /// The BZL entry sum equals the height of `lambda + rho - wt(b)`.
    pub entry_sums_match: bool,
    /// `s_lambda(z) prod_{a>0}(1 - t z^a) == sum G(b) q^{-S(b)} z^{w_0(wt(b) - rho)}`.
    pub twisted_identity: bool,
    pub first_mismatch: Option<Mismatch>,
}

impl BnReport {
    pub fn holds(&self) -> bool {
        self.scalar_relation && self.entry_sums_match && self.twisted_identity
    }
}

/// Checks the form of the identity indexed by BZL paths: `G` is computed from
/// operator-side decorations, the power of `q` from the weight, and the
/// monomial is twisted by the coordinate reversal `w_0`.
pub fn bn_report(lam: &GLWeight, rank: usize, strategy: Strategy) -> Result<BnReport> {
    let shape = {
        check_lambda(lam, rank)?;
        shifted_shape(lam)?
    };
    let top = shape.to_weight();
    let rho = rho(rank)?;
    let elements = enumerate_crystal(&shape, strategy);

    let per_element = par::map(&elements, strategy, |b| {
        let wt = b.content();
        let height = (&top - &wt).to_alpha().map(|a| a.height() as i64);
        let tri = decorate_via_operators(b);
        let sums_match = height == Some(tri.entry_sum() as i64);
        let coeff = height.and_then(|h| g_coefficient(&tri).shift(-h).to_tpoly());
        let scalar_ok = coeff.as_ref() == Some(&c_coefficient(b).expect("rho-shifted shape"));
        let exp = (&wt - &rho).reversed().into_coords();
        (sums_match, scalar_ok, exp, coeff.unwrap_or_default())
    });

    let mut rhs = LaurentPoly::zero(rank);
    for (_, _, exp, coeff) in &per_element {
        rhs.add_term(exp.clone(), coeff);
    }
    let lhs = &character(lam, rank, strategy)? * &positive_root_product(rank);
    let first_mismatch = first_difference(&lhs, &rhs);
    Ok(BnReport {
        scalar_relation: per_element.iter().all(|p| p.1),
        entry_sums_match: per_element.iter().all(|p| p.0),
        twisted_identity: first_mismatch.is_none(),
        first_mismatch,
    })
}

pub fn verify_bn_form(lam: &GLWeight, rank: usize, strategy: Strategy) -> Result<bool> {
    Ok(bn_report(lam, rank, strategy)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::Strategy;
    use crate::rootsys::lambda_from_fundamental;
    use proptest::prelude::*;
    use proptest::strategy::Strategy as _;

    fn tp(c: &[i64]) -> TPoly {
        TPoly::from_coeffs(c.to_vec())
    }

    fn mono(e: &[i64], c: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(e.to_vec(), tp(c))
    }

    fn lam(c: &[i64], r: usize) -> GLWeight {
        lambda_from_fundamental(c, r).unwrap()
    }

    const S: Strategy = Strategy::Sequential;

    #[test]
    fn cancellation_leaves_no_terms() {
        let p = &mono(&[1, 0, 0], &[1]) + &mono(&[1, 0, 0], &[-1]);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = mono(&[1, 0], &[1]);
        let b = mono(&[1, 0, 0], &[1]);
        assert!(matches!(a.checked_add(&b), Err(Error::RankMismatch(1, 2))));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn characters() {
        let e1 = character(&lam(&[1, 0], 2), 2, S).unwrap();
        let expected =
            &(&mono(&[1, 0, 0], &[1]) + &mono(&[0, 1, 0], &[1])) + &mono(&[0, 0, 1], &[1]);
        assert_eq!(e1, expected);
        let e2 = character(&lam(&[0, 1], 2), 2, S).unwrap();
        let expected =
            &(&mono(&[1, 1, 0], &[1]) + &mono(&[1, 0, 1], &[1])) + &mono(&[0, 1, 1], &[1]);
        assert_eq!(e2, expected);
        let adj = character(&lam(&[1, 1], 2), 2, S).unwrap();
        assert_eq!(adj.num_terms(), 7);
        assert_eq!(adj.coeff(&[1, 1, 1]), tp(&[2]));
        assert!(character(&GLWeight::new(vec![0, 1, 0]).unwrap(), 2, S).is_err());
    }

    #[test]
    fn deformed_products() {
        let p1 = deformed_product(1);
        assert_eq!(p1, &LaurentPoly::one(1) + &mono(&[-1, 1], &[0, -1]));
        let p2 = deformed_product(2);
        let direct = [[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]
            .iter()
            .map(|e| &LaurentPoly::one(2) + &mono(e, &[0, -1]))
            .fold(LaurentPoly::one(2), |a, f| &a * &f);
        assert_eq!(p2, direct);
        for r in 1..4 {
            assert_eq!(
                deformed_product(r).eval_t(&BigInt::from(0)),
                LaurentPoly::one(r)
            );
        }
    }

    #[test]
    fn rank_one_sides() {
        let zero = lam(&[0], 1);
        let expected = &mono(&[1, 0], &[1]) + &mono(&[0, 1], &[0, -1]);
        assert_eq!(cs_lhs(&zero, 1, S).unwrap(), expected);
        assert_eq!(cs_rhs(&zero, 1, S).unwrap(), expected);
        assert!(verify_identity(&zero, 1, S).unwrap().equal);
        assert!(verify_bn_form(&zero, 1, S).unwrap());
    }

    #[test]
    fn rank_two_trivial_lambda_fixture() {
        // expansion of z1^2 z2 (1 - t z2/z1)(1 - t z3/z1)(1 - t z3/z2)
        let expected = [
            (vec![2, 1, 0], tp(&[1])),
            (vec![2, 0, 1], tp(&[0, -1])),
            (vec![1, 2, 0], tp(&[0, -1])),
            (vec![1, 1, 1], tp(&[0, -1, 1])),
            (vec![1, 0, 2], tp(&[0, 0, 1])),
            (vec![0, 2, 1], tp(&[0, 0, 1])),
            (vec![0, 1, 2], tp(&[0, 0, 0, -1])),
        ];
        let lhs = cs_lhs(&lam(&[0, 0], 2), 2, S).unwrap();
        assert_eq!(lhs.num_terms(), 7);
        for (e, c) in expected {
            assert_eq!(lhs.coeff(&e), c, "coefficient of {e:?}");
        }
    }

    #[test]
    fn omega_2_rhs_coefficients() {
        let rhs = cs_rhs(&lam(&[0, 1], 2), 2, S).unwrap();
        // -t(1-t) + t^2(1-t)
        assert_eq!(rhs.coeff(&[1, 2, 2]), tp(&[0, -1, 2, -1]));
        assert_eq!(rhs.coeff(&[3, 2, 0]), tp(&[1]));
    }

    #[test]
    fn identities_hold() {
        for (c, r) in [(&[0, 1][..], 2), (&[1, 0, 1][..], 3), (&[2][..], 1)] {
            let report = verify_identity(&lam(c, r), r, Strategy::default()).unwrap();
            assert!(report.equal, "{c:?}: {report:?}");
            assert_eq!(report.lhs_terms, report.rhs_terms);
            assert!(verify_bn_form(&lam(c, r), r, Strategy::default()).unwrap());
        }
    }

    #[test]
    fn lhs_at_t_zero_is_shifted_character() {
        let l = lam(&[1, 1], 2);
        let lhs = cs_lhs(&l, 2, S).unwrap().eval_t(&BigInt::from(0));
        let ch = character(&l, 2, S).unwrap().shift(&[2, 1, 0]);
        assert_eq!(lhs, ch);
    }

    #[test]
    fn characters_are_symmetric() {
        let ch = character(&lam(&[1, 0, 1], 3), 3, S).unwrap();
        for perm in (0..4).permutations(4) {
            assert_eq!(ch.permute_vars(&perm), ch);
        }
    }

    #[test]
    fn wire_form_round_trips() {
        let p = cs_lhs(&lam(&[0, 1], 2), 2, S).unwrap();
        let json = serde_json::to_string(&p.to_wire()).unwrap();
        let back: Vec<WireTerm> = serde_json::from_str(&json).unwrap();
        assert_eq!(LaurentPoly::from_wire(2, back).unwrap(), p);
        assert!(
            json.starts_with(r#"[{"exp":[0,2,3],"coeff":[0,0,0,-1]}"#),
            "{json}"
        );
    }

    fn small_laurent() -> impl proptest::strategy::Strategy<Value = LaurentPoly> {
        proptest::collection::vec(
            (
                proptest::collection::vec(-2i64..3, 3),
                proptest::collection::vec(-3i64..4, 0..3),
            ),
            0..5,
        )
        .prop_map(|terms| {
            let mut p = LaurentPoly::zero(2);
            for (e, c) in terms {
                p.add_term(e, &TPoly::from_coeffs(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_laurent(), b in small_laurent(), c in small_laurent()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn evaluation_is_multiplicative(
            a in small_laurent(), b in small_laurent(),
            z in proptest::collection::vec(1i64..5, 3), t in -3i64..4,
        ) {
            let z: Vec<BigRational> = z.into_iter().map(|v| BigRational::from_integer(v.into())).collect();
            let t = BigRational::from_integer(t.into());
            let lhs = (&a * &b).eval(&z, &t).unwrap();
            prop_assert_eq!(lhs, a.eval(&z, &t).unwrap() * b.eval(&z, &t).unwrap());
        }
    }
}
