//! Kashiwara operators on tableaux.
//!
//! A tableau is read column by column from right to left, each column top to
//! bottom, which embeds it in a tensor power of the standard crystal. The
//! operators then follow the signature rule: a letter `i` contributes `+`, a
//! letter `i+1` contributes `-`, adjacent `+ -` pairs cancel, `f_i` raises
//! the leftmost surviving `+` and `e_i` lowers the rightmost surviving `-`.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::rootsys::{GLWeight, Shape};
use crate::tableaux::Tableau;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

/// Raw and reduced `i`-signatures over a sequence of positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub raw: Vec<Option<Sign>>,
    pub reduced: Vec<Option<Sign>>,
}

impl Signature {
    /// Cancels `+ -` pairs with a single stack pass.
    pub fn reduce(raw: Vec<Option<Sign>>) -> Self {
        let mut reduced = raw.clone();
        let mut open_plus = Vec::new();
        for (k, s) in raw.iter().enumerate() {
            match s {
                Some(Sign::Plus) => open_plus.push(k),
                Some(Sign::Minus) => {
                    if let Some(p) = open_plus.pop() {
                        reduced[p] = None;
                        reduced[k] = None;
                    }
                }
                None => {}
            }
        }
        Signature { raw, reduced }
    }

    pub fn leftmost_plus(&self) -> Option<usize> {
        self.reduced.iter().position(|s| *s == Some(Sign::Plus))
    }

    pub fn rightmost_minus(&self) -> Option<usize> {
        self.reduced.iter().rposition(|s| *s == Some(Sign::Minus))
    }

    pub fn surviving(&self, sign: Sign) -> usize {
        self.reduced.iter().filter(|s| **s == Some(sign)).count()
    }

    fn render(signs: &[Option<Sign>]) -> String {
        let body = signs
            .iter()
            .map(|s| s.map_or("·".to_string(), |s| s.to_string()))
            .join(",");
        format!("({body})")
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {}",
            Self::render(&self.raw),
            Self::render(&self.reduced)
        )
    }
}

/// The column reading of a tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReadingWord(pub Vec<u32>);

impl ReadingWord {
    pub fn signature(&self, i: usize) -> Signature {
        let i = i as u32;
        Signature::reduce(
            self.0
                .iter()
                .map(|&c| match c {
                    c if c == i => Some(Sign::Plus),
                    c if c == i + 1 => Some(Sign::Minus),
                    _ => None,
                })
                .collect(),
        )
    }
}

fn check_index(i: usize, rank: usize) -> Result<()> {
    if i < 1 || i > rank {
        return Err(Error::Rank(format!(
            "operator index {i} outside 1..={rank}"
        )));
    }
    Ok(())
}

/// `(row, column)` pairs (0-based) in reading order.
fn reading_positions(t: &Tableau) -> Vec<(usize, usize)> {
    let rows = t.rows();
    let width = rows.first().map_or(0, Vec::len);
    (0..width)
        .rev()
        .flat_map(|c| {
            (0..rows.len())
                .take_while(move |&r| rows[r].len() > c)
                .map(move |r| (r, c))
        })
        .collect()
}

pub fn reading_word(t: &Tableau) -> ReadingWord {
    ReadingWord(
        reading_positions(t)
            .into_iter()
            .map(|(r, c)| t.rows()[r][c])
            .collect(),
    )
}

pub fn i_signature(t: &Tableau, i: usize) -> Result<Signature> {
    check_index(i, t.rank())?;
    Ok(reading_word(t).signature(i))
}

fn shift_box(t: &Tableau, i: usize, raise: bool) -> Option<Tableau> {
    let positions = reading_positions(t);
    let word = ReadingWord(positions.iter().map(|&(r, c)| t.rows()[r][c]).collect());
    let sig = word.signature(i);
    let k = if raise {
        sig.leftmost_plus()?
    } else {
        sig.rightmost_minus()?
    };
    let (r, c) = positions[k];
    let mut out = t.clone();
    let entry = &mut out.rows_mut()[r][c];
    if raise {
        *entry += 1;
    } else {
        *entry -= 1;
    }
    Some(out)
}

/// Lowering operator `f_i`; `None` is the crystal zero.
///
/// # Panics
/// If `i` is outside `1..=rank`.
pub fn f_op(t: &Tableau, i: usize) -> Option<Tableau> {
    check_index(i, t.rank()).unwrap();
    shift_box(t, i, true)
}

/// Raising operator `e_i`; `None` is the crystal zero.
///
/// # Panics
/// If `i` is outside `1..=rank`.
pub fn e_op(t: &Tableau, i: usize) -> Option<Tableau> {
    check_index(i, t.rank()).unwrap();
    shift_box(t, i, false)
}

pub fn epsilon(t: &Tableau, i: usize) -> usize {
    check_index(i, t.rank()).unwrap();
    reading_word(t).signature(i).surviving(Sign::Minus)
}

pub fn phi(t: &Tableau, i: usize) -> usize {
    check_index(i, t.rank()).unwrap();
    reading_word(t).signature(i).surviving(Sign::Plus)
}

/// Applies `e_i` as often as possible; returns the count and the result.
pub fn e_max(t: &Tableau, i: usize) -> (usize, Tableau) {
    let mut cur = t.clone();
    let mut n = 0;
    while let Some(next) = e_op(&cur, i) {
        cur = next;
        n += 1;
    }
    (n, cur)
}

/// Row `i` filled with `i`.
pub fn highest_weight_tableau(parts: &[usize], rank: usize) -> Result<Tableau> {
    let shape = Shape::new(parts.to_vec(), rank)?;
    Ok(highest_weight_of(&shape))
}

pub fn highest_weight_of(shape: &Shape) -> Tableau {
    let rows = (1..=shape.num_rows())
        .map(|i| vec![i as u32; shape.row_len(i)])
        .collect();
    Tableau::from_parts_unchecked(shape.rank(), shape.clone(), rows)
}

/// All elements of `B(shape)`, generated from the highest-weight tableau by
/// the lowering operators.
///
/// Output is ordered by depth, then by rows; the order does not depend on
/// the strategy.
pub fn enumerate_crystal(shape: &Shape, strategy: Strategy) -> Vec<Tableau> {
    let rank = shape.rank();
    let mut level = vec![highest_weight_of(shape)];
    let mut out = Vec::new();
    while !level.is_empty() {
        let children = par::map(&level, strategy, |t| {
            (1..=rank).filter_map(|i| f_op(t, i)).collect::<Vec<_>>()
        });
        out.append(&mut level);
        let mut next: Vec<Tableau> = children
            .into_iter()
            .flatten()
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        next.sort_unstable_by(|a, b| a.rows().cmp(b.rows()));
        level = next;
    }
    out
}

/// Every `f_i` edge of the crystal as `(source, i, target)` indices into
/// `elements`, in source order then `i`.
pub fn crystal_edges(elements: &[Tableau]) -> Vec<(usize, usize, usize)> {
    let index: std::collections::HashMap<&Tableau, usize> =
        elements.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut edges = Vec::new();
    for (k, t) in elements.iter().enumerate() {
        for i in 1..=t.rank() {
            if let Some(target) = f_op(t, i) {
                edges.push((k, i, index[&target]));
            }
        }
    }
    edges
}

/// `b_1 ⊗ ... ⊗ b_m` with factors of a common rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    factors: Vec<Tableau>,
}

impl TensorElement {
    pub fn new(factors: Vec<Tableau>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::Domain(
                "a tensor element needs at least one factor".into(),
            ));
        };
        let rank = first.rank();
        if let Some(bad) = factors.iter().find(|f| f.rank() != rank) {
            return Err(Error::RankMismatch(rank, bad.rank()));
        }
        Ok(TensorElement { factors })
    }

    pub fn factors(&self) -> &[Tableau] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors[0].rank()
    }

    pub fn weight(&self) -> GLWeight {
        let mut w = GLWeight::zero(self.rank());
        for f in &self.factors {
            w = &w + &f.content();
        }
        w
    }

    /// The reduced signature built from per-factor `(epsilon, phi)` blocks,
    /// each sign tagged with its factor.
    pub fn signature(&self, i: usize) -> Result<(Vec<usize>, Signature)> {
        check_index(i, self.rank())?;
        let mut owner = Vec::new();
        let mut raw = Vec::new();
        for (k, f) in self.factors.iter().enumerate() {
            let (eps, ph) = (epsilon(f, i), phi(f, i));
            owner.extend(std::iter::repeat_n(k, eps + ph));
            raw.extend(std::iter::repeat_n(Some(Sign::Minus), eps));
            raw.extend(std::iter::repeat_n(Some(Sign::Plus), ph));
        }
        Ok((owner, Signature::reduce(raw)))
    }

    fn act(&self, i: usize, raise: bool) -> Option<TensorElement> {
        let (owner, sig) = self.signature(i).unwrap();
        let k = owner[if raise {
            sig.leftmost_plus()?
        } else {
            sig.rightmost_minus()?
        }];
        let mut factors = self.factors.clone();
        factors[k] = if raise {
            f_op(&factors[k], i)?
        } else {
            e_op(&factors[k], i)?
        };
        Some(TensorElement { factors })
    }
}

pub fn tensor_f_op(e: &TensorElement, i: usize) -> Option<TensorElement> {
    e.act(i, true)
}

pub fn tensor_e_op(e: &TensorElement, i: usize) -> Option<TensorElement> {
    e.act(i, false)
}
