//! BZL paths along the long word `(1; 2,1; 3,2,1; ...; r,...,1)` and their
//! circle/box decorations.
//!
//! Two routes produce decorations. [`decorate_via_operators`] walks the
//! crystal: entry `a_k` is the number of times `e_{i_k}` applies, it is boxed
//! when `f_{i_k}` kills the element reached just before, and `a_{i,j}` is
//! circled when it equals its right neighbour `a_{i,j+1}` (zero past the
//! edge). [`decorate_via_stats`] reads everything off the tableau: entry
//! `(i,j)` carries `a_{i,j}`, is boxed when `b_{i,j} >= theta_i +
//! b_{i+1,j+1}` and circled when `a_{i,j} = a_{i-1,j}`. The two layouts are
//! related by `bzl(i,j) = stats(i-j+1, i)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::crystal::{e_max, phi};
use crate::error::{Error, Result};
use crate::rootsys::theta;
use crate::tableaux::{Tableau, TriangularArray};
use crate::tpoly::{QLaurent, TPoly};

/// The fixed reduced word for the longest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongWord {
    rank: usize,
    letters: Vec<usize>,
}

impl LongWord {
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 1 {
            return Err(Error::Rank(format!("rank must be at least 1, got {rank}")));
        }
        let letters = (1..=rank).flat_map(|i| (1..=i).rev()).collect();
        Ok(LongWord { rank, letters })
    }

    /// Accepts only the fixed word.
    pub fn from_letters(rank: usize, letters: &[usize]) -> Result<Self> {
        let w = LongWord::new(rank)?;
        if w.letters != letters {
            return Err(Error::Domain(format!(
                "{letters:?} is not the supported long word"
            )));
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Number of positive roots.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// BZL coordinates `(i, j)` of each letter, in word order.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> {
        let r = self.rank;
        (1..=r).flat_map(|i| (1..=i).map(move |j| (i, j)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    /// Row `i` holds `a_{i,1}, ..., a_{i,i}` in long-word order.
    Bzl,
    /// Entry `(i,j)`, `1 <= i <= j <= r`, holds the statistic `a_{i,j}`.
    Stats,
}

/// One decorated entry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Entry {
    pub value: u64,
    pub circled: bool,
    pub boxed: bool,
}

impl Entry {
    /// Factor of the `q`-side coefficient.
    fn g_factor(&self) -> QLaurent {
        let a = self.value as i64;
        match (self.circled, self.boxed) {
            (true, false) => QLaurent::monomial(a, 1),
            (false, true) => QLaurent::monomial(a - 1, -1),
            (false, false) => &QLaurent::monomial(a, 1) + &QLaurent::monomial(a - 1, -1),
            (true, true) => QLaurent::zero(),
        }
    }
}

/// A triangular array of decorated entries in one of the two layouts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecoratedTriangle {
    layout: Layout,
    rank: usize,
    entries: Vec<Entry>,
}

impl DecoratedTriangle {
    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Entries in storage order (long-word order for BZL, row order for stats).
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    fn index(&self, i: usize, j: usize) -> usize {
        match self.layout {
            Layout::Bzl => {
                assert!(
                    1 <= j && j <= i && i <= self.rank,
                    "BZL position ({i},{j}) out of range"
                );
                i * (i - 1) / 2 + (j - 1)
            }
            Layout::Stats => {
                assert!(
                    1 <= i && i <= j && j <= self.rank,
                    "stats position ({i},{j}) out of range"
                );
                TriangularArray::index(self.rank, i, j)
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries[self.index(i, j)]
    }

    pub fn positions(&self) -> Vec<(usize, usize)> {
        match self.layout {
            Layout::Bzl => LongWord::new(self.rank).unwrap().positions().collect(),
            Layout::Stats => TriangularArray::positions(self.rank).collect(),
        }
    }

    pub fn values(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn entry_sum(&self) -> u64 {
        self.entries.iter().map(|e| e.value).sum()
    }

    pub fn boxed_count(&self) -> usize {
        self.entries.iter().filter(|e| e.boxed).count()
    }

    pub fn plain_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| !e.boxed && !e.circled)
            .count()
    }

    pub fn has_double_decoration(&self) -> bool {
        self.entries.iter().any(|e| e.boxed && e.circled)
    }

    /// Re-indexes into `layout` via `bzl(i,j) = stats(i-j+1, i)`.
    pub fn to_layout(&self, layout: Layout) -> DecoratedTriangle {
        if layout == self.layout {
            return self.clone();
        }
        let target = DecoratedTriangle {
            layout,
            rank: self.rank,
            entries: Vec::new(),
        };
        let entries = target
            .positions()
            .into_iter()
            .map(|(i, j)| match layout {
                Layout::Stats => self.get(j, j - i + 1),
                Layout::Bzl => self.get(i - j + 1, i),
            })
            .collect();
        DecoratedTriangle { entries, ..target }
    }

    /// Inline form `(a11; a21, a22; ...)` with `◯`/`□` markers.
    pub fn render(&self) -> String {
        let mut rows: Vec<Vec<String>> = vec![Vec::new(); self.rank];
        for ((i, _), e) in self.positions().into_iter().zip(&self.entries) {
            let mut s = e.value.to_string();
            if e.circled {
                s.push('◯');
            }
            if e.boxed {
                s.push('□');
            }
            rows[i - 1].push(s);
        }
        let sep = match self.layout {
            Layout::Bzl => ", ",
            Layout::Stats => ",",
        };
        let body: Vec<String> = rows.iter().map(|r| r.join(sep)).collect();
        format!(
            "({})",
            body.join(match self.layout {
                Layout::Bzl => "; ",
                Layout::Stats => ";",
            })
        )
    }
}

impl fmt::Display for DecoratedTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Walks the long word with maximal `e` strings. Returns the entries with
/// their B-I box flags (circles not yet set) and the final element.
fn walk(t: &Tableau) -> (Vec<Entry>, Tableau) {
    let word = LongWord::new(t.rank()).expect("tableau rank >= 1");
    let mut cur = t.clone();
    let mut entries = Vec::with_capacity(word.len());
    for &letter in word.letters() {
        let boxed = phi(&cur, letter) == 0;
        let (a, next) = e_max(&cur, letter);
        entries.push(Entry {
            value: a as u64,
            circled: false,
            boxed,
        });
        cur = next;
    }
    (entries, cur)
}

/// BZL path of `t` (undecorated), BZL layout.
pub fn bzl_path(t: &Tableau) -> DecoratedTriangle {
    let (entries, _) = walk(t);
    DecoratedTriangle {
        layout: Layout::Bzl,
        rank: t.rank(),
        entries: entries
            .into_iter()
            .map(|e| Entry {
                value: e.value,
                ..Entry::default()
            })
            .collect(),
    }
}

/// The element reached at the end of the BZL walk.
pub fn bzl_endpoint(t: &Tableau) -> Tableau {
    walk(t).1
}

/// Boxes by B-I and circles by C-I, BZL layout.
pub fn decorate_via_operators(t: &Tableau) -> DecoratedTriangle {
    let (entries, _) = walk(t);
    let rank = t.rank();
    let mut tri = DecoratedTriangle {
        layout: Layout::Bzl,
        rank,
        entries,
    };
    for i in 1..=rank {
        for j in 1..=i {
            let right = if j < i { tri.get(i, j + 1).value } else { 0 };
            let k = tri.index(i, j);
            tri.entries[k].circled = tri.entries[k].value == right;
        }
    }
    tri
}

/// Boxes by B-II and circles by C-II from tableau statistics alone, stats layout.
pub fn decorate_via_stats(t: &Tableau) -> Result<DecoratedTriangle> {
    let theta = theta(t.shape())?;
    let a = t.stats_a();
    let b = t.stats_b();
    let rank = t.rank();
    let entries = TriangularArray::positions(rank)
        .map(|(i, j)| Entry {
            value: a.get(i, j),
            circled: a.get(i, j) == a.get(i - 1, j),
            boxed: b.get(i, j) >= theta[i - 1] as u64 + b.get(i + 1, j + 1),
        })
        .collect();
    Ok(DecoratedTriangle {
        layout: Layout::Stats,
        rank,
        entries,
    })
}

/// `prod` over entries of `q^a`, `-q^(a-1)`, `(q-1) q^(a-1)` or `0`.
pub fn g_coefficient(tri: &DecoratedTriangle) -> QLaurent {
    tri.entries
        .iter()
        .fold(QLaurent::one(), |acc, e| &acc * &e.g_factor())
}

/// `(-t)^box (1-t)^non`, or zero when some entry is both circled and boxed.
///
/// Row-max strictness is not consulted. Non-strict tableaux such as
/// `2 2 2 3 4 / 3 3 3 / 4 4` carry no doubly decorated entry, and the crystal
/// identity only balances when they keep their coefficient. This is also the
/// only choice for which `C = G q^(-S)` holds on every element.
pub fn c_coefficient(t: &Tableau) -> Result<TPoly> {
    Ok(c_from_decorations(&decorate_via_stats(t)?))
}

fn c_from_decorations(tri: &DecoratedTriangle) -> TPoly {
    if tri.has_double_decoration() {
        return TPoly::zero();
    }
    let sign = if tri.boxed_count().is_multiple_of(2) {
        1
    } else {
        -1
    };
    &TPoly::monomial(tri.boxed_count(), sign) * &TPoly::one_minus_t().pow(tri.plain_count() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::highest_weight_tableau;

    fn t(rank: usize, rows: &[&[u32]]) -> Tableau {
        Tableau::new(rank, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    type Cells = Vec<(usize, usize)>;

    /// Boxed and circled positions.
    fn flags(tri: &DecoratedTriangle) -> (Cells, Cells) {
        let pos = tri.positions();
        let pick = |f: fn(&Entry) -> bool| {
            pos.iter()
                .zip(tri.entries())
                .filter(|(_, e)| f(e))
                .map(|(p, _)| *p)
                .collect()
        };
        (pick(|e| e.boxed), pick(|e| e.circled))
    }

    // The two tableaux of weight omega_2 + rho - 2a1 - 2a2 in B(omega_2 + rho).
    fn ex_b1() -> Tableau {
        t(2, &[&[1, 2, 2], &[3, 3]])
    }
    fn ex_b2() -> Tableau {
        t(2, &[&[1, 2, 3], &[2, 3]])
    }

    #[test]
    fn long_word() {
        let w = LongWord::new(3).unwrap();
        assert_eq!(w.letters(), &[1, 2, 1, 3, 2, 1]);
        assert_eq!(w.len(), 6);
        assert!(LongWord::from_letters(2, &[1, 2, 1]).is_ok());
        assert!(LongWord::from_letters(2, &[2, 1, 2]).is_err());
        assert!(LongWord::new(0).is_err());
    }

    #[test]
    fn paths() {
        assert_eq!(bzl_path(&ex_b1()).values(), vec![2, 2, 0]);
        assert_eq!(bzl_path(&ex_b2()).values(), vec![1, 2, 1]);
        let hw = highest_weight_tableau(&[4, 2, 1, 0], 3).unwrap();
        assert!(bzl_path(&hw).values().iter().all(|&v| v == 0));
        assert_eq!(
            bzl_endpoint(&ex_b1()),
            highest_weight_tableau(&[3, 2, 0], 2).unwrap()
        );
    }

    #[test]
    fn operator_decorations() {
        let (boxed, circled) = flags(&decorate_via_operators(&ex_b1()));
        assert_eq!(boxed, vec![(2, 1)]);
        assert_eq!(circled, vec![(2, 2)]);
        let (boxed, circled) = flags(&decorate_via_operators(&ex_b2()));
        assert_eq!(boxed, vec![(1, 1), (2, 2)]);
        assert!(circled.is_empty());
        assert!(decorate_via_operators(&t(2, &[&[1, 3], &[2]])).has_double_decoration());
    }

    #[test]
    fn stats_decorations() {
        let (boxed, circled) = flags(&decorate_via_stats(&ex_b1()).unwrap());
        assert_eq!(boxed, vec![(2, 2)]);
        assert_eq!(circled, vec![(1, 2)]);
        let (boxed, circled) = flags(&decorate_via_stats(&ex_b2()).unwrap());
        assert_eq!(boxed, vec![(1, 1), (1, 2)]);
        assert!(circled.is_empty());
        let (boxed, circled) = flags(&decorate_via_stats(&t(2, &[&[2, 2], &[3]])).unwrap());
        assert_eq!(boxed, vec![(1, 1), (2, 2)]);
        assert_eq!(circled, vec![(1, 2)]);
        assert!(matches!(
            decorate_via_stats(&t(2, &[&[1, 1], &[2, 2]])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn layouts_agree_on_examples() {
        for b in [ex_b1(), ex_b2(), t(2, &[&[1, 3], &[2]])] {
            let ops = decorate_via_operators(&b);
            let stats = decorate_via_stats(&b).unwrap();
            assert_eq!(ops.to_layout(Layout::Stats), stats);
            assert_eq!(stats.to_layout(Layout::Bzl), ops);
        }
    }

    #[test]
    fn g_values() {
        let g = g_coefficient(&decorate_via_operators(&ex_b1()));
        assert_eq!(g.to_string(), "-q^3 + q^2");
        let hw = highest_weight_tableau(&[2, 1, 0], 2).unwrap();
        let tri = decorate_via_operators(&hw);
        assert!(tri.entries().iter().all(|e| e.circled && !e.boxed));
        assert_eq!(g_coefficient(&tri), QLaurent::one());
        let hw = highest_weight_tableau(&[3, 2, 0], 2).unwrap();
        assert_eq!(g_coefficient(&decorate_via_operators(&hw)), QLaurent::one());
        assert!(g_coefficient(&decorate_via_operators(&t(2, &[&[1, 3], &[2]]))).is_zero());
    }

    #[test]
    fn c_values() {
        let tp = TPoly::from_coeffs;
        assert_eq!(c_coefficient(&ex_b1()).unwrap(), tp(vec![0, -1, 1]));
        assert_eq!(c_coefficient(&ex_b2()).unwrap(), tp(vec![0, 0, 1, -1]));
        assert_eq!(
            c_coefficient(&t(2, &[&[2, 3], &[3]])).unwrap(),
            tp(vec![0, 0, 0, -1])
        );
        assert_eq!(
            c_coefficient(&t(2, &[&[2, 2], &[3]])).unwrap(),
            tp(vec![0, 0, 1])
        );
        assert!(c_coefficient(&t(2, &[&[1, 3], &[2]])).unwrap().is_zero());
    }

    #[test]
    fn rendering() {
        let tri = decorate_via_operators(&ex_b1());
        assert_eq!(tri.render(), "(2; 2□, 0◯)");
        let s = serde_json::to_string(&tri).unwrap();
        assert_eq!(serde_json::from_str::<DecoratedTriangle>(&s).unwrap(), tri);
        assert_eq!(decorate_via_stats(&ex_b1()).unwrap().render(), "(2,0◯;2□)");
    }
}
