use std::io::{self, Write};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde_json::json;
use torelli_lab::curves::{
    min_field_size, random_curve, reduce_to_normal_form, trial_seed, RawASCurve,
};
use torelli_lab::hirzebruch::{hirzebruch_row, HirzebruchRow};
use torelli_lab::parse::{parse_curve_spec, parse_elem, parse_field_spec, parse_poly};
use torelli_lab::tangent::{rank_report, RankReport};
use torelli_lab::Error;

use crate::{Failure, Format};

const THREADS_ENV: &str = "TORELLI_LAB_THREADS";

pub fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => builder = builder.num_threads(n),
            _ => {
                return Err(Failure::Usage(format!(
                    "{THREADS_ENV} must be a positive integer, got {raw:?}"
                )))
            }
        }
    }
    builder
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start worker threads: {e}")))
}

/// `"4"` or `"2..6"` (inclusive).
pub fn parse_genus_range(s: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("invalid genus {s:?}; expected N or A..B"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<usize>().map_err(|_| bad())?,
            b.trim().parse::<usize>().map_err(|_| bad())?,
        ),
        None => {
            let g = s.trim().parse::<usize>().map_err(|_| bad())?;
            (g, g)
        }
    };
    if lo > hi {
        return Err(Failure::Usage(format!("empty genus range {s:?}")));
    }
    if lo < 2 {
        return Err(Error::InvalidGenus(lo).into());
    }
    Ok(lo..=hi)
}

fn emit(lines: &[String]) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for l in lines {
        writeln!(out, "{l}").map_err(|e| Failure::Usage(format!("write failed: {e}")))?;
    }
    Ok(())
}

const REPORT_HEADER: &str =
    "  g  trial  mult  ker_mu0  im_mu1  combined  coker  expected  pass";

fn report_row(r: &RankReport, trial: Option<u64>) -> String {
    let trial = trial.map_or("-".to_string(), |t| t.to_string());
    let e = &r.expected;
    format!(
        "{:>3}  {:>5}  {:>4}  {:>7}  {:>6}  {:>8}  {:>5}  {:>8}  {}",
        r.genus,
        trial,
        r.observed.mult_rank,
        r.observed.ker_mu0_dim,
        r.observed.im_mu1_dim,
        r.observed.combined_rank,
        r.observed.cokernel_dim,
        format!("{}/{}", e.combined_rank, e.cokernel_dim),
        if r.pass { "ok" } else { "FAIL" }
    )
}

pub fn verify(
    field: &str,
    genus: &str,
    trials: u64,
    seed: u64,
    format: Format,
) -> Result<bool, Failure> {
    let ctx = parse_field_spec(field)?;
    let range = parse_genus_range(genus)?;
    if trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    if let Some(q) = ctx.order() {
        let g = *range.end();
        let needed = min_field_size(g);
        if q < needed {
            return Err(Error::FieldTooSmall {
                size: q,
                genus: g,
                needed,
            }
            .into());
        }
    }

    let jobs: Vec<(usize, u64)> = range
        .flat_map(|g| (0..trials).map(move |t| (g, t)))
        .collect();
    let results: Vec<Result<RankReport, Error>> = jobs
        .par_iter()
        .map(|&(g, t)| {
            let s = trial_seed(seed, g, t);
            let model = random_curve(&ctx, g, s)?;
            rank_report(&model, s)
        })
        .collect();

    let mut lines = Vec::with_capacity(results.len() + 2);
    if format == Format::Table {
        lines.push(format!("field {ctx}, seed {seed}"));
        lines.push(REPORT_HEADER.to_string());
    }
    let (mut passed, mut failed) = (0usize, 0usize);
    for (&(_, t), res) in jobs.iter().zip(results) {
        let r = res?;
        if r.pass {
            passed += 1;
        } else {
            failed += 1;
        }
        lines.push(match format {
            Format::Json => r.to_json(),
            Format::Table => report_row(&r, Some(t)),
        });
    }
    let summary = format!(
        "summary: field={ctx} reports={} passed={passed} failed={failed}",
        passed + failed
    );
    match format {
        Format::Json => {
            emit(&lines)?;
            eprintln!("{summary}");
        }
        Format::Table => {
            lines.push(summary);
            emit(&lines)?;
        }
    }
    Ok(failed == 0)
}

pub fn report(curve: &str, seed: u64, format: Format) -> Result<bool, Failure> {
    let model = parse_curve_spec(curve)?;
    let r = rank_report(&model, seed)?;
    match format {
        Format::Json => emit(&[r.to_json()])?,
        Format::Table => emit(&[
            format!("curve {}", r.curve),
            REPORT_HEADER.to_string(),
            report_row(&r, None),
        ])?,
    }
    Ok(r.pass)
}

pub fn normal_form(
    field: &str,
    a: &str,
    b: &str,
    c: &str,
    mobius_root: Option<&str>,
    format: Format,
) -> Result<bool, Failure> {
    let ctx = parse_field_spec(field)?;
    if !ctx.is_char2() {
        return Err(Error::WrongCharacteristic {
            expected: "2".into(),
            found: ctx.characteristic(),
        }
        .into());
    }
    let mut raw = RawASCurve::new(
        parse_elem(&ctx, a)?,
        parse_poly(&ctx, b)?,
        parse_poly(&ctx, c)?,
    )?;
    if let Some(rho) = mobius_root {
        raw = raw.send_root_to_infinity(&parse_elem(&ctx, rho)?)?;
    }
    let (model, log) = reduce_to_normal_form(&raw)?;
    let replay_ok = log.replay_matches(&raw, &model);
    let ram = model.ramification();
    match format {
        Format::Json => {
            let terms: Vec<_> = model
                .branch()
                .iter()
                .map(|t| json!({"a": t.a.to_string(), "alpha": t.alpha.to_string()}))
                .collect();
            let out = json!({
                "field": ctx.to_string(),
                "genus": model.genus(),
                "f": model.f_string(),
                "alpha0": model.alpha0().to_string(),
                "terms": terms,
                "ramification": ram,
                "transforms": log,
                "replay_ok": replay_ok,
            });
            emit(&[out.to_string()])?;
        }
        Format::Table => {
            let mut lines = vec![
                format!("field      {ctx}"),
                format!("genus      {}", model.genus()),
                format!("y^2 - y =  {}", model.f_string()),
                format!("branch     {}", ram_string(&model)),
            ];
            let steps = serde_json::to_value(&log).expect("log serializes");
            if let Some(steps) = steps["steps"].as_array() {
                for (i, s) in steps.iter().enumerate() {
                    lines.push(format!("step {:<4}  {s}", i + 1));
                }
            }
            lines.push(format!("replay     {}", if replay_ok { "ok" } else { "MISMATCH" }));
            emit(&lines)?;
        }
    }
    Ok(replay_ok)
}

fn ram_string(model: &torelli_lab::curves::ASModel) -> String {
    let mut pts: Vec<String> = model.branch_points().map(|a| format!("x={a}")).collect();
    pts.push("inf".into());
    pts.join(", ")
}

pub fn hirzebruch(genus: &str, format: Format) -> Result<bool, Failure> {
    let range = parse_genus_range(genus)?;
    let rows: Vec<HirzebruchRow> = range
        .map(|g| hirzebruch_row(g as u32))
        .collect::<Result<_, _>>()?;
    let lines: Vec<String> = match format {
        Format::Json => rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("row serializes"))
            .collect(),
        Format::Table => std::iter::once(
            "  g  surface  class         C.C  genus  h0  proj  aut  dim_Hg".to_string(),
        )
        .chain(rows.iter().map(|r| {
            format!(
                "{:>3}  F_{:<5}  {:<12}  {:>3}  {:>5}  {:>2}  {:>4}  {:>3}  {:>6}",
                r.genus,
                r.surface,
                r.class,
                r.self_intersection,
                r.adjunction_genus,
                r.h0,
                r.proj_dim,
                r.aut_dim,
                r.hg_dim
            )
        }))
        .collect(),
    };
    emit(&lines)?;
    Ok(rows.iter().all(|r| r.adjunction_genus == r.genus as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_ranges() {
        assert_eq!(parse_genus_range("2..6").unwrap(), 2..=6);
        assert_eq!(parse_genus_range(" 3 ").unwrap(), 3..=3);
        assert!(matches!(parse_genus_range("6..2"), Err(Failure::Usage(_))));
        assert!(matches!(parse_genus_range("x"), Err(Failure::Usage(_))));
        assert!(matches!(
            parse_genus_range("1..3"),
            Err(Failure::Engine(Error::InvalidGenus(1)))
        ));
    }
}
