//! Machine and typeset renderings: H-tables as CSV, JSON and LaTeX, crystal
//! graphs as DOT. Every machine format parses back to the same value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::crystal::crystal_edges;
use crate::error::{Error, Result};
use crate::hpoly::HTable;
use crate::rootsys::{AlphaVector, GLWeight};
use crate::tableaux::Tableau;
use crate::tpoly::TPoly;

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("csv: {e}"))
}

/// Header `c1..cr,t0..tD`; one row per `mu` in height order.
pub fn htable_to_csv(table: &HTable) -> String {
    let rank = table.rank();
    let width = table
        .rows()
        .values()
        .filter_map(TPoly::degree)
        .max()
        .unwrap_or(0)
        + 1;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![]);
    let header = (1..=rank)
        .map(|i| format!("c{i}"))
        .chain((0..width).map(|d| format!("t{d}")));
    w.write_record(header).expect("in-memory write");
    for (mu, h) in table.rows_by_height() {
        let record =
            mu.0.iter()
                .map(u64::to_string)
                .chain((0..width).map(|d| h.coeff(d).to_string()));
        w.write_record(record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

/// Inverse of [`htable_to_csv`]; CSV does not carry `lambda`, so it is passed in.
pub fn htable_from_csv(lam: GLWeight, text: &str) -> Result<HTable> {
    let rank = lam.rank();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().map_err(csv_err)?.clone();
    let expected: Vec<String> = (1..=rank).map(|i| format!("c{i}")).collect();
    if headers.len() <= rank
        || headers
            .iter()
            .take(rank)
            .ne(expected.iter().map(String::as_str))
    {
        return Err(Error::Parse(format!(
            "csv header must start with {}",
            expected.join(",")
        )));
    }
    let mut rows = BTreeMap::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let mu = rec
            .iter()
            .take(rank)
            .map(|f| f.parse::<u64>().map_err(csv_err))
            .collect::<Result<Vec<_>>>()?;
        let coeffs = rec
            .iter()
            .skip(rank)
            .map(|f| f.parse::<BigInt>().map_err(csv_err))
            .collect::<Result<Vec<_>>>()?;
        rows.insert(AlphaVector(mu), TPoly::from_big(coeffs));
    }
    Ok(HTable::new(lam, rows))
}

#[derive(Serialize, Deserialize)]
struct HTableWire {
    rank: usize,
    lambda: GLWeight,
    rows: Vec<HRowWire>,
}

#[derive(Serialize, Deserialize)]
struct HRowWire {
    mu: Vec<u64>,
    h: TPoly,
}

pub fn htable_to_json(table: &HTable) -> String {
    let wire = HTableWire {
        rank: table.rank(),
        lambda: table.lambda().clone(),
        rows: table
            .rows_by_height()
            .into_iter()
            .map(|(mu, h)| HRowWire {
                mu: mu.0.clone(),
                h: h.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&wire).expect("plain data")
}

pub fn htable_from_json(text: &str) -> Result<HTable> {
    let wire: HTableWire = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if wire.lambda.rank() != wire.rank {
        return Err(Error::RankMismatch(wire.lambda.rank(), wire.rank));
    }
    let mut rows = BTreeMap::new();
    for row in wire.rows {
        if row.mu.len() != wire.rank {
            return Err(Error::RankMismatch(row.mu.len(), wire.rank));
        }
        rows.insert(AlphaVector(row.mu), row.h);
    }
    Ok(HTable::new(wire.lambda, rows))
}

pub fn alpha_latex(mu: &AlphaVector) -> String {
    let terms: Vec<String> =
        mu.0.iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| match c {
                1 => format!("\\alpha_{}", i + 1),
                _ => format!("{c}\\alpha_{}", i + 1),
            })
            .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Divides by `1 - t` when `p(1) = 0`.
fn divide_one_minus_t(p: &TPoly) -> Option<TPoly> {
    if p.is_zero() || !p.eval_i64(1).is_zero() {
        return None;
    }
    // p = (1 - t) s  <=>  s_k = sum_{i <= k} p_i
    let mut acc = BigInt::zero();
    let mut s = Vec::new();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        acc += c;
        s.push(acc.clone());
    }
    Some(TPoly::from_big(s))
}

/// `c t^k (1-t)^m` when `p` has that shape, written in `q^{-1}` the way
/// hand-made tables write it; otherwise the expanded form.
pub fn factored_latex_q(p: &TPoly) -> String {
    let mut m = 0;
    let mut rest = p.clone();
    while let Some(s) = divide_one_minus_t(&rest) {
        rest = s;
        m += 1;
    }
    let nonzero: Vec<(usize, &BigInt)> = rest
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let [(k, c)] = nonzero[..] else {
        return p.to_latex_q();
    };
    if m == 0 {
        return p.to_latex_q();
    }
    if k == 0 && c.is_one() && m == 1 {
        return "1-q^{-1}".into();
    }
    let mut out = String::new();
    if c.is_negative() {
        out.push('-');
    }
    if !c.abs().is_one() {
        out.push_str(&c.abs().to_string());
    }
    if k > 0 {
        let _ = write!(out, "q^{{-{k}}}");
    }
    out.push_str("(1-q^{-1})");
    if m > 1 {
        let _ = write!(out, "^{m}");
    }
    out
}

/// Two `mu | H` column pairs side by side, rows in height order.
pub fn htable_to_latex(table: &HTable) -> String {
    let rows: Vec<(String, String)> = table
        .rows_by_height()
        .into_iter()
        .map(|(mu, h)| {
            let hs = if h.degree().is_some_and(|d| d > 0) {
                factored_latex_q(h)
            } else {
                h.to_latex_q()
            };
            (alpha_latex(mu), hs)
        })
        .collect();
    let half = rows.len().div_ceil(2);
    let head = "\\mu & H_{\\lambda+\\rho}(\\mu)";
    let mut out = String::from("\\begin{array}{c|c||c|c}\n");
    let _ = writeln!(out, "{head} & {head} \\\\\\hline");
    for i in 0..half {
        let (m1, h1) = &rows[i];
        match rows.get(i + half) {
            Some((m2, h2)) => {
                let _ = writeln!(out, "{m1} & {h1} & {m2} & {h2} \\\\");
            }
            None => {
                let _ = writeln!(out, "{m1} & {h1} & & \\\\");
            }
        }
    }
    out.push_str("\\end{array}\n");
    out
}

/// Crystal graph with nodes in the given order, labeled by the one-line form.
pub fn crystal_dot(elements: &[Tableau]) -> String {
    let mut out = String::from("digraph crystal {\n  rankdir=LR;\n  node [shape=box];\n");
    for (k, t) in elements.iter().enumerate() {
        let _ = writeln!(out, "  n{k} [label=\"{t}\"];");
    }
    for (src, i, dst) in crystal_edges(elements) {
        let _ = writeln!(out, "  n{src} -> n{dst} [label=\"{i}\"];");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::enumerate_crystal;
    use crate::hpoly::h_table;
    use crate::par::Strategy;
    use crate::rootsys::{lambda_from_fundamental, Shape};

    fn omega2_table() -> HTable {
        h_table(
            &lambda_from_fundamental(&[0, 1], 2).unwrap(),
            2,
            Strategy::Sequential,
        )
        .unwrap()
    }

    fn tp(c: &[i64]) -> TPoly {
        TPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn csv_round_trip() {
        let t = omega2_table();
        let csv = htable_to_csv(&t);
        assert!(
            csv.starts_with("c1,c2,t0,t1,t2,t3\n0,0,1,0,0,0\n1,0,0,-1,0,0\n"),
            "{csv}"
        );
        assert_eq!(htable_from_csv(t.lambda().clone(), &csv).unwrap(), t);
        assert!(htable_from_csv(t.lambda().clone(), "x,y\n1,2\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = omega2_table();
        assert_eq!(htable_from_json(&htable_to_json(&t)).unwrap(), t);
        assert!(htable_from_json("{}").is_err());
    }

    #[test]
    fn factored_forms() {
        assert_eq!(factored_latex_q(&tp(&[0, -2, 2])), "-2q^{-1}(1-q^{-1})");
        assert_eq!(factored_latex_q(&tp(&[1, -1])), "1-q^{-1}");
        assert_eq!(factored_latex_q(&tp(&[1, -2, 1])), "(1-q^{-1})^2");
        assert_eq!(factored_latex_q(&tp(&[0, 0, 0, -1])), "-q^{-3}");
        assert_eq!(
            factored_latex_q(&tp(&[0, -1, 2, -1])),
            "-q^{-1}(1-q^{-1})^2"
        );
        assert_eq!(factored_latex_q(&tp(&[1, 1])), "1 + q^{-1}");
    }

    #[test]
    fn latex_layout() {
        let tex = htable_to_latex(&omega2_table());
        let lines: Vec<&str> = tex.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(
            lines[2],
            "0 & 1 & \\alpha_1+2\\alpha_2 & -2q^{-1}(1-q^{-1}) \\\\"
        );
        assert!(tex.contains("\\alpha_1+2\\alpha_2 & -2q^{-1}(1-q^{-1})"));
        assert!(tex.contains("3\\alpha_1+3\\alpha_2 & -q^{-3}"));
    }

    #[test]
    fn fundamental_chain() {
        let shape = Shape::new(vec![1], 2).unwrap();
        let dot = crystal_dot(&enumerate_crystal(&shape, Strategy::Sequential));
        assert!(
            dot.contains("n0 -> n1 [label=\"1\"];\n  n1 -> n2 [label=\"2\"];"),
            "{dot}"
        );
        assert_eq!(dot.matches("->").count(), 2);
    }
}
