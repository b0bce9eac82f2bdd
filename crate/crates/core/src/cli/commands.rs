use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{Format, Outcome, WeightArgs, EXIT_INVARIANT, EXIT_MISMATCH};
use crate::bzl::{
    bzl_path, c_coefficient, decorate_via_operators, decorate_via_stats, g_coefficient, Layout,
};
use crate::crystal::{crystal_edges, enumerate_crystal};
use crate::error::{Error, Result};
use crate::format::{crystal_dot, htable_to_csv, htable_to_json, htable_to_latex};
use crate::hpoly::{h_table, oracle_checks, SpecialPoint};
use crate::laurent::{bn_report, shifted_shape, verify_identity, Mismatch};
use crate::par::Strategy;
use crate::rootsys::Shape;
use crate::tableaux::Tableau;

fn unsupported(cmd: &str, format: Format) -> Error {
    Error::Parse(format!("{cmd} does not support --format {format:?}").to_lowercase())
}

fn big_json(x: &BigInt) -> Value {
    x.to_i64()
        .map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn target_shape(weight: &WeightArgs, shifted: bool) -> Result<Shape> {
    let lam = weight.weight()?;
    if shifted {
        shifted_shape(&lam)
    } else {
        Shape::from_weight(&lam)
    }
}

pub(super) fn enumerate(
    weight: &WeightArgs,
    shifted: bool,
    format: Format,
    strategy: Strategy,
) -> Result<Outcome> {
    let shape = target_shape(weight, shifted)?;
    let elements = enumerate_crystal(&shape, strategy);
    let out = match format {
        Format::Text => {
            let mut s = format!(
                "# B{} rank {}: {} elements\n",
                shape.to_weight(),
                shape.rank(),
                elements.len()
            );
            for t in &elements {
                let _ = writeln!(s, "{t}\t{}", t.content());
            }
            s
        }
        Format::Json => pretty(&json!({
            "rank": shape.rank(),
            "shape": shape.parts(),
            "count": elements.len(),
            "elements": elements.iter().map(|t| json!({"rows": t.rows(), "content": t.content()})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(vec![]);
            let _ = w.write_record(["index", "tableau", "content"]);
            for (k, t) in elements.iter().enumerate() {
                let _ = w.write_record([k.to_string(), t.to_string(), t.content().to_string()]);
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Dot => crystal_dot(&elements),
        Format::Latex => return Err(unsupported("enumerate", format)),
    };
    Ok(Outcome::ok(out))
}

pub(super) fn bzl(rank: usize, tableau: &str, format: Format) -> Result<Outcome> {
    let t = Tableau::parse(rank, tableau)?;
    let path = bzl_path(&t);
    let ops = decorate_via_operators(&t);
    let g = g_coefficient(&ops);
    let shifted = t.shape().is_rho_shifted();

    let mut breaches = Vec::new();
    let mut stats = None;
    let mut c = None;
    if shifted {
        let st = decorate_via_stats(&t)?;
        if st != ops.to_layout(Layout::Stats) {
            breaches.push("decoration rules disagree".to_string());
        }
        let cc = c_coefficient(&t)?;
        let top = t.shape().to_weight();
        let height = (&top - &t.content()).to_alpha().map(|a| a.height());
        if height != Some(ops.entry_sum()) {
            breaches.push(format!(
                "entry sum {} differs from the height of lambda+rho-wt",
                ops.entry_sum()
            ));
        }
        if g.shift(-(ops.entry_sum() as i64)).to_tpoly().as_ref() != Some(&cc) {
            breaches.push("G q^-S differs from C".to_string());
        }
        stats = Some(st);
        c = Some(cc);
    }

    let out = match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "tableau     {t}");
            let _ = writeln!(s, "shape       {}", t.shape());
            let _ = writeln!(s, "weight      {}", t.content());
            let _ = writeln!(s, "bzl path    {}", path.render());
            let _ = writeln!(s, "operators   {}", ops.render());
            match &stats {
                Some(st) => {
                    let _ = writeln!(s, "  as stats  {}", ops.to_layout(Layout::Stats).render());
                    let _ = writeln!(s, "statistics  {}", st.render());
                }
                None => s.push_str("statistics  n/a (shape is not rho-shifted)\n"),
            }
            let _ = writeln!(s, "G           {g}");
            match &c {
                Some(c) => {
                    let _ = writeln!(s, "C           {c}");
                }
                None => s.push_str("C           n/a\n"),
            }
            s
        }
        Format::Json => pretty(&json!({
            "tableau": t,
            "bzl_path": path.values(),
            "operators": ops,
            "statistics": stats,
            "entry_sum": ops.entry_sum(),
            "g": g.terms().map(|(e, c)| json!([e, big_json(c)])).collect::<Vec<_>>(),
            "c": c,
            "strict": t.is_strict(),
        })),
        _ => return Err(unsupported("bzl", format)),
    };
    if breaches.is_empty() {
        return Ok(Outcome::ok(out));
    }
    let stderr = breaches
        .iter()
        .map(|b| format!("invariant breach: {b}\n"))
        .collect();
    Ok(Outcome {
        stdout: out,
        stderr,
        code: EXIT_INVARIANT,
    })
}

fn mismatch_text(m: &Mismatch) -> String {
    format!(
        "first difference at z^({}): lhs {}, rhs {}",
        m.exp
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(","),
        m.lhs,
        m.rhs
    )
}

pub(super) fn verify(weight: &WeightArgs, format: Format, strategy: Strategy) -> Result<Outcome> {
    let lam = weight.weight()?;
    let rank = weight.rank();
    let start = Instant::now();
    let identity = verify_identity(&lam, rank, strategy)?;
    let bn = bn_report(&lam, rank, strategy)?;
    let elapsed = start.elapsed();
    let holds = identity.equal && bn.holds();
    let yes = |b: bool| if b { "yes" } else { "no" };

    let out = match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "lambda      {lam}");
            let _ = writeln!(s, "lambda+rho  {}", shifted_shape(&lam)?.to_weight());
            let _ = writeln!(
                s,
                "identity    {} (lhs {} terms, rhs {} terms)",
                if identity.equal { "holds" } else { "FAILS" },
                identity.lhs_terms,
                identity.rhs_terms
            );
            if let Some(m) = &identity.first_mismatch {
                let _ = writeln!(s, "  {}", mismatch_text(m));
            }
            let _ = writeln!(
                s,
                "bzl form    {} (G q^-S = C: {}, entry sums: {}, twisted sum: {})",
                if bn.holds() { "holds" } else { "FAILS" },
                yes(bn.scalar_relation),
                yes(bn.entry_sums_match),
                yes(bn.twisted_identity)
            );
            if let Some(m) = &bn.first_mismatch {
                let _ = writeln!(s, "  {}", mismatch_text(m));
            }
            s
        }
        Format::Json => pretty(&json!({
            "rank": rank,
            "lambda": lam,
            "identity": identity,
            "bzl_form": bn,
            "holds": holds,
        })),
        _ => return Err(unsupported("verify", format)),
    };
    Ok(Outcome {
        stdout: out,
        stderr: format!("elapsed {} ms\n", elapsed.as_millis()),
        code: if holds { 0 } else { EXIT_MISMATCH },
    })
}

pub(super) fn hpoly(
    weight: &WeightArgs,
    at: &[SpecialPoint],
    format: Format,
    strategy: Strategy,
) -> Result<Outcome> {
    let lam = weight.weight()?;
    let table = h_table(&lam, weight.rank(), strategy)?;
    let mut points = at.to_vec();
    points.sort();
    points.dedup();
    let checks = oracle_checks(&table, &points)?;
    let failed = checks.iter().filter(|c| !c.passed()).count();

    let out = match format {
        Format::Text => {
            let rows = table.rows_by_height();
            let width = rows
                .iter()
                .map(|(mu, _)| mu.to_string().len())
                .max()
                .unwrap_or(2)
                .max(2);
            let hwidth = if points.is_empty() {
                0
            } else {
                rows.iter()
                    .map(|(_, h)| h.to_string().len())
                    .max()
                    .unwrap_or(0)
            };
            let mut s = format!("{:width$}  H_{{lambda+rho}}(mu), t = 1/q\n", "mu");
            let mut it = checks.iter();
            for (mu, h) in rows {
                let _ = write!(s, "{:width$}  {:hwidth$}", mu.to_string(), h.to_string());
                for c in it.by_ref().take(points.len()) {
                    let mark = if c.passed() {
                        "ok".to_string()
                    } else {
                        format!("FAIL expected {}", c.expected)
                    };
                    let _ = write!(s, "  [q={}: {} {mark}]", c.point, c.value);
                }
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let mut v: Value = serde_json::from_str(&htable_to_json(&table)).expect("own output");
            if !points.is_empty() {
                v["checks"] = checks
                    .iter()
                    .map(|c| {
                        json!({
                            "mu": c.mu.0,
                            "at": c.point.label(),
                            "value": big_json(&c.value),
                            "expected": big_json(&c.expected),
                            "ok": c.passed(),
                        })
                    })
                    .collect();
            }
            pretty(&v)
        }
        Format::Csv if points.is_empty() => htable_to_csv(&table),
        Format::Csv => {
            let base = htable_to_csv(&table);
            let mut lines = base.lines();
            let mut s = lines.next().unwrap_or_default().to_string();
            for p in &points {
                let _ = write!(s, ",at_{0},oracle_{0}", p.label());
            }
            s.push('\n');
            for (line, group) in lines.zip(checks.chunks(points.len())) {
                s.push_str(line);
                for c in group {
                    let _ = write!(s, ",{},{}", c.value, c.expected);
                }
                s.push('\n');
            }
            s
        }
        Format::Latex => htable_to_latex(&table),
        Format::Dot => return Err(unsupported("hpoly", format)),
    };
    let stderr = if failed > 0 {
        format!("{failed} specialization checks failed\n")
    } else {
        String::new()
    };
    Ok(Outcome {
        stdout: out,
        stderr,
        code: if failed == 0 { 0 } else { EXIT_MISMATCH },
    })
}

pub(super) fn graph(
    weight: &WeightArgs,
    shifted: bool,
    format: Format,
    strategy: Strategy,
) -> Result<Outcome> {
    let shape = target_shape(weight, shifted)?;
    let elements = enumerate_crystal(&shape, strategy);
    let out = match format {
        Format::Text | Format::Dot => crystal_dot(&elements),
        Format::Json => pretty(&json!({
            "shape": shape.parts(),
            "nodes": elements.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "edges": crystal_edges(&elements),
        })),
        _ => return Err(unsupported("graph", format)),
    };
    Ok(Outcome::ok(out))
}
