//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torelli_lab::curves::{
    random_curve, reduce_to_normal_form, trial_seed, CurveModel, RawASCurve,
};
use torelli_lab::hirzebruch::{
    adjunction_genus, aut_dim, hg_dimension, hyperelliptic_class, linear_system_dim,
};
use torelli_lab::linalg::Matrix;
use torelli_lab::tangent::{
    coordinatize_omega2, mu0_kernel, mu0_map, mu1_sections, mu1_sections_dual, rank_report,
    FFElem, FunctionField, RankReport,
};
use torelli_lab::{FieldCtx, FieldElem, Poly, RatFunc};

const TRIALS: u64 = 20;
const PROPERTY_CASES: usize = 500;

/// Map `f` over `items` on all cores, preserving order.
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<U>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn report(id: u32, name: &str, started: Instant, o: &Outcome) {
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!(
        "[{tag}] criterion {id}: {name} ({}; {:.1}s)",
        o.detail,
        started.elapsed().as_secs_f64()
    );
}

fn run_trials(fields: &[FieldCtx]) -> Vec<(FieldCtx, RankReport)> {
    let mut jobs = Vec::new();
    for ctx in fields {
        for g in 2..=8usize {
            for t in 0..TRIALS {
                jobs.push((ctx.clone(), g, trial_seed(2024, g, t)));
            }
        }
    }
    par_map(&jobs, |(ctx, g, seed)| {
        let model = random_curve(ctx, *g, *seed).expect("field is large enough");
        (ctx.clone(), rank_report(&model, *seed).expect("report computes"))
    })
}

fn first_failure(
    reports: &[(FieldCtx, RankReport)],
    bad: impl Fn(&RankReport) -> bool,
) -> Option<&RankReport> {
    reports.iter().map(|(_, r)| r).find(|r| bad(r))
}

fn describe(r: Option<&RankReport>, total: usize) -> Outcome {
    match r {
        None => Outcome::new(true, format!("{total} trials exact")),
        Some(r) => Outcome::new(false, format!("first failure: {}", r.to_json())),
    }
}

/// Build `a·y² + b·y + c` from a normal form by running the reduction
/// backwards: shift `y`, substitute `y = Y/(λ·Π(x−aᵢ))`, rescale `Y` and
/// multiply through by a unit.
fn generic_raw_curve(ctx: &FieldCtx, g: usize, seed: u64) -> RawASCurve {
    let model = match random_curve(ctx, g, seed).expect("field is large enough") {
        CurveModel::AS(m) => m,
        CurveModel::Odd(_) => unreachable!("characteristic 2"),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5);
    let mut h = RatFunc::from_poly(Poly::new(ctx, vec![ctx.random(&mut rng), ctx.random(&mut rng)]));
    for t in model.branch() {
        h = &h + &RatFunc::pole(ctx.random(&mut rng), &t.a, 1);
    }
    let f = &(&model.f() + &(&h * &h)) + &h;
    let lambda = ctx.random_nonzero(&mut rng);
    let big_b = model.branch_poly().scale(&lambda);
    let s = ctx.random_nonzero(&mut rng);
    let u = ctx.random_nonzero(&mut rng);
    let c = &RatFunc::from_poly(&big_b * &big_b) * &f;
    assert!(c.is_poly());
    RawASCurve::new(
        &u * &s.square(),
        big_b.scale(&(&u * &s)),
        c.num().scale(&u),
    )
    .expect("valid raw curve")
}

fn normal_form_round_trips() -> Outcome {
    let mut checked = 0;
    let mut jobs = Vec::new();
    // GF(4) has room for only two branch points
    for (k, gmax) in [(2u32, 2usize), (4, 8), (6, 8)] {
        for t in 0..40u64 {
            let g = 2 + t as usize % (gmax - 1);
            jobs.push((k, g, trial_seed(77, g, t + 1000 * k as u64)));
        }
    }
    let results = par_map(&jobs, |&(k, g, seed)| {
        let ctx = FieldCtx::extension(2, k).unwrap();
        let raw = generic_raw_curve(&ctx, g, seed);
        let (model, log) = match reduce_to_normal_form(&raw) {
            Ok(x) => x,
            Err(e) => return Err(format!("GF(2^{k}) g={g}: {e}")),
        };
        let roots: BTreeSet<String> = raw.b.roots().iter().map(|(a, _)| a.to_string()).collect();
        let branch: BTreeSet<String> = model.branch_points().map(|a| a.to_string()).collect();
        if roots != branch || model.genus() != g {
            return Err(format!("GF(2^{k}) g={g}: branch set {branch:?} vs roots {roots:?}"));
        }
        if !log.replay_matches(&raw, &model) {
            return Err(format!("GF(2^{k}) g={g}: replay mismatch"));
        }
        Ok(())
    });
    for r in &results {
        if let Err(e) = r {
            return Outcome::new(false, e.clone());
        }
        checked += 1;
    }
    let f2 = FieldCtx::prime(2).unwrap();
    let raw = RawASCurve::new(
        f2.one(),
        Poly::from_i64s(&f2, &[0, 1, 1]),
        Poly::from_i64s(&f2, &[1, 0, 0, 0, 0, 1]),
    )
    .unwrap();
    let worked = reduce_to_normal_form(&raw)
        .map(|(m, log)| (m.f_string(), log.replay_matches(&raw, &m)));
    match worked {
        Ok((s, true)) if s == "x + 1/x + 1/(x+1)" && checked >= 100 => {
            Outcome::new(true, format!("{checked} random curves; worked example gives f = {s}"))
        }
        other => Outcome::new(false, format!("{checked} random curves; worked example gave {other:?}")),
    }
}

fn hirzebruch_counts() -> Outcome {
    for g in 2..=50u32 {
        let gi = g as i64;
        let c = hyperelliptic_class(g).unwrap();
        let (h0, proj) = linear_system_dim(g);
        let ok = c.self_intersection() == 4 * gi + 4
            && adjunction_genus(&c) == Ok(gi)
            && h0 == 3 * gi + 6
            && proj == 3 * gi + 5
            && h0 - 1 - aut_dim(g + 1) == 2 * gi - 1
            && hg_dimension(g) == Ok(2 * gi - 1);
        if !ok {
            return Outcome::new(false, format!("mismatch at g={g}"));
        }
    }
    Outcome::new(true, "g = 2..50 exact")
}

// ---------------------------------------------------------------- properties

fn property_fields() -> Vec<FieldCtx> {
    vec![
        FieldCtx::rationals(),
        FieldCtx::prime(101).unwrap(),
        FieldCtx::extension(2, 4).unwrap(),
        FieldCtx::extension(3, 4).unwrap(),
        FieldCtx::extension(5, 2).unwrap(),
    ]
}

fn field_axioms(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let fields = property_fields();
    for i in 0..PROPERTY_CASES {
        let ctx = &fields[i % fields.len()];
        let (a, b, c) = (ctx.random(rng), ctx.random(rng), ctx.random(rng));
        let ok = &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a + &b == &b + &a
            && &a * &b == &b * &a
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && (&a - &a.clone()).is_zero()
            && &a * &ctx.one() == a
            && (a.is_zero() || (&a * &a.inv().unwrap()).is_one());
        if !ok {
            return Err(format!("{ctx}: a={a} b={b} c={c}"));
        }
    }
    Ok(PROPERTY_CASES)
}

fn partial_fraction_round_trip(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let fields = property_fields();
    let mut checked = 0;
    for i in 0.. {
        if checked == PROPERTY_CASES {
            break;
        }
        let ctx = &fields[i % fields.len()];
        let num = Poly::new(ctx, (0..rng.gen_range(1..7)).map(|_| ctx.random(rng)).collect());
        let mut den = Poly::one(ctx);
        for _ in 0..rng.gen_range(1..4) {
            den = &den * &Poly::linear(&ctx.random(rng)).pow(rng.gen_range(1..4));
        }
        if num.is_zero() {
            continue;
        }
        let r = RatFunc::new(num, den).unwrap();
        let pf = r.partial_fractions().map_err(|e| format!("{r}: {e}"))?;
        if pf.recombine() != r {
            return Err(format!("{r}: recombination differs"));
        }
        // independent check by evaluation away from the poles
        for _ in 0..3 {
            let z = ctx.random(rng);
            if r.den().eval(&z).is_zero() {
                continue;
            }
            let direct = &r.num().eval(&z) * &r.den().eval(&z).inv().unwrap();
            let mut sum = pf.poly_part.eval(&z);
            for t in &pf.terms {
                let d = (&z - &t.root).pow(t.power as u64);
                sum = &sum + &(&t.numerator * &d.inv().unwrap());
            }
            if sum != direct {
                return Err(format!("{r}: value at {z} differs"));
            }
        }
        checked += 1;
    }
    Ok(checked)
}

fn random_branch_elem(ff: &FunctionField, rng: &mut ChaCha8Rng) -> FFElem {
    let ctx = ff.ctx();
    let branch = match ff.model() {
        CurveModel::Odd(m) => m.f().clone(),
        CurveModel::AS(m) => m.branch_poly(),
    };
    let mut part = || {
        let num = Poly::new(ctx, (0..4).map(|_| ctx.random(rng)).collect());
        RatFunc::new(num, branch.pow(rng.gen_range(0..3))).unwrap()
    };
    ff.elem(part(), part())
}

fn small_curves(rng: &mut ChaCha8Rng, gmax: usize) -> Vec<CurveModel> {
    let fields = [
        FieldCtx::prime(7).unwrap(),
        FieldCtx::prime(101).unwrap(),
        FieldCtx::extension(2, 3).unwrap(),
        FieldCtx::extension(2, 4).unwrap(),
        FieldCtx::extension(3, 2).unwrap(),
    ];
    (0..PROPERTY_CASES)
        .map(|i| {
            let ctx = &fields[i % fields.len()];
            let g = rng.gen_range(2..=gmax.min(ctx.order().unwrap() as usize / 2));
            random_curve(ctx, g, rng.gen()).unwrap()
        })
        .collect()
}

fn leibniz(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let curves = small_curves(rng, 4);
    for m in &curves {
        let ff = FunctionField::new(m);
        let a = random_branch_elem(&ff, rng);
        let b = random_branch_elem(&ff, rng);
        let lhs = a.mul(&b).unwrap().derivative().map_err(|e| e.to_string())?;
        let da = a.derivative().map_err(|e| e.to_string())?;
        let db = b.derivative().map_err(|e| e.to_string())?;
        let rhs = &a.mul(&db).unwrap() + &b.mul(&da).unwrap();
        if lhs != rhs {
            return Err(format!("{}: a={a} b={b}", m.spec_string()));
        }
    }
    Ok(curves.len())
}

fn sign_identity(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let fields = [
        FieldCtx::prime(11).unwrap(),
        FieldCtx::prime(101).unwrap(),
        FieldCtx::extension(2, 4).unwrap(),
        FieldCtx::extension(3, 2).unwrap(),
        FieldCtx::rationals(),
    ];
    let mut cases = 0;
    let mut i = 0;
    while cases < PROPERTY_CASES {
        let ctx = &fields[i % fields.len()];
        i += 1;
        let cap = ctx.order().map_or(5, |q| (q as usize / 2).min(5));
        let g = rng.gen_range(3..=cap);
        let model = random_curve(ctx, g, rng.gen()).unwrap();
        let ff = FunctionField::new(&model);
        let ker = mu0_kernel(&mu0_map(&ff).unwrap());
        // random combinations of the kernel basis are kernel vectors too
        let vectors: Vec<Vec<FieldElem>> = (0..4)
            .map(|_| {
                let coeffs: Vec<FieldElem> = ker.iter().map(|_| ctx.random(rng)).collect();
                Matrix::from_rows(ctx, ker[0].len(), ker.clone()).left_apply(&coeffs)
            })
            .collect();
        let lhs = coordinatize_omega2(&ff, &mu1_sections(&ff, &vectors).unwrap()).unwrap();
        let rhs = coordinatize_omega2(&ff, &mu1_sections_dual(&ff, &vectors).unwrap()).unwrap();
        if lhs.matrix != rhs.matrix {
            return Err(model.spec_string());
        }
        cases += vectors.len();
    }
    Ok(cases)
}

fn parity_additivity(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let fields = [
        FieldCtx::prime(7).unwrap(),
        FieldCtx::prime(13).unwrap(),
        FieldCtx::prime(101).unwrap(),
        FieldCtx::extension(3, 2).unwrap(),
        FieldCtx::extension(5, 2).unwrap(),
    ];
    let jobs: Vec<(FieldCtx, usize, u64)> = (0..PROPERTY_CASES)
        .map(|i| {
            let ctx = fields[i % fields.len()].clone();
            let g = rng.gen_range(2..=(ctx.order().unwrap() as usize / 2).min(5));
            (ctx, g, rng.gen())
        })
        .collect();
    let results = par_map(&jobs, |(ctx, g, seed)| {
        let r = rank_report(&random_curve(ctx, *g, *seed).unwrap(), *seed).unwrap();
        (r.checks.parity_additive == Some(true), r.curve)
    });
    match results.iter().find(|(ok, _)| !ok) {
        Some((_, curve)) => Err(curve.clone()),
        None => Ok(results.len()),
    }
}

fn rank_invariance(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let fields = property_fields();
    for i in 0..PROPERTY_CASES {
        let ctx = &fields[i % fields.len()];
        let (rows, cols, inner) = (rng.gen_range(1..7), rng.gen_range(1..7), rng.gen_range(1..7));
        // product of random factors so that low ranks occur often
        let left = Matrix::from_rows(ctx, inner, (0..rows).map(|_| (0..inner).map(|_| ctx.random(rng)).collect()).collect());
        let right = Matrix::from_rows(ctx, cols, (0..inner).map(|_| (0..cols).map(|_| ctx.random(rng)).collect()).collect());
        let m = Matrix::from_rows(ctx, cols, left.rows().map(|r| right.left_apply(r)).collect());
        let r = m.rank();
        // elementary row operation: add a multiple of one row to another
        let mut ops: Vec<Vec<FieldElem>> = m.rows().map(|r| r.to_vec()).collect();
        if rows > 1 {
            let (src, dst) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
            if src != dst {
                let k = ctx.random(rng);
                let add: Vec<FieldElem> = ops[src].iter().map(|e| &k * e).collect();
                for (d, a) in ops[dst].iter_mut().zip(add) {
                    *d = &*d + &a;
                }
            }
        }
        let after_op = Matrix::from_rows(ctx, cols, ops).rank();
        if r != m.scrambled(rng).rank() || r != m.transpose().rank() || r != after_op {
            return Err(format!("{ctx}: {rows}x{cols} matrix"));
        }
    }
    Ok(PROPERTY_CASES)
}

fn property_suites() -> Outcome {
    type Suite = fn(&mut ChaCha8Rng) -> Result<usize, String>;
    let suites: [(&str, Suite); 6] = [
        ("field axioms", field_axioms),
        ("partial fractions", partial_fraction_round_trip),
        ("Leibniz", leibniz),
        ("mu1 sign identity", sign_identity),
        ("parity additivity", parity_additivity),
        ("rank invariance", rank_invariance),
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (i, (name, suite)) in suites.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(900 + i as u64);
        match suite(&mut rng) {
            Ok(n) if n >= PROPERTY_CASES => parts.push(format!("{name} {n}/{n}")),
            Ok(n) => {
                pass = false;
                parts.push(format!("{name} only {n} cases"));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{name} FAILED on {e}"));
            }
        }
    }
    Outcome::new(pass, parts.join(", "))
}

fn main() -> ExitCode {
    let mut all = true;
    let mut record = |id: u32, name: &str, started: Instant, o: Outcome| {
        report(id, name, started, &o);
        all &= o.pass;
    };

    let start = Instant::now();
    let odd_fields = [
        FieldCtx::rationals(),
        FieldCtx::prime(101).unwrap(),
        FieldCtx::extension(3, 4).unwrap(),
    ];
    let odd = run_trials(&odd_fields);
    let o = describe(
        first_failure(&odd, |r| r.observed.combined_rank != 3 * r.genus - 3 || r.observed.cokernel_dim != 0),
        odd.len(),
    );
    record(1, "surjectivity away from characteristic 2 over Q, GF(101), GF(3^4), g=2..8", start, o);

    let start = Instant::now();
    let even_fields = [FieldCtx::extension(2, 4).unwrap(), FieldCtx::extension(2, 6).unwrap()];
    let even = run_trials(&even_fields);
    let o = describe(
        first_failure(&even, |r| {
            r.observed.combined_rank != 2 * r.genus - 1 || r.observed.cokernel_dim != r.genus as i64 - 2
        }),
        even.len(),
    );
    record(2, "cokernel g-2 in characteristic 2 over GF(2^4), GF(2^6), g=2..8", start, o);

    let start = Instant::now();
    let both: Vec<(FieldCtx, RankReport)> = odd.iter().chain(&even).cloned().collect();
    let o = describe(
        first_failure(&both, |r| {
            let g = r.genus;
            r.observed.mult_rank != 2 * g - 1
                || r.observed.ker_mu0_dim != g - 2
                || r.observed.im_mu1_dim != g - 2
                || r.checks.mu0_cokernel != 0
                || !r.checks.kernel_verified
        }),
        both.len(),
    );
    record(3, "component dimensions mult=2g-1, ker mu0=g-2, im mu1=g-2, coker mu0=0", start, o);

    let start = Instant::now();
    let genus_two: Vec<(FieldCtx, RankReport)> =
        both.iter().filter(|(_, r)| r.genus == 2).cloned().collect();
    let o = describe(first_failure(&genus_two, |r| r.observed.cokernel_dim != 0), genus_two.len());
    record(4, "genus 2 has zero cokernel in both characteristics", start, o);

    let start = Instant::now();
    let o = describe(first_failure(&even, |r| r.checks.containment != Some(true)), even.len());
    record(5, "im mu1 lies in the image of the multiplication map in characteristic 2", start, o);

    let start = Instant::now();
    record(6, "normal form round trip over GF(2^2), GF(2^4), GF(2^6)", start, normal_form_round_trips());

    let start = Instant::now();
    record(7, "Hirzebruch counts for g=2..50", start, hirzebruch_counts());

    let start = Instant::now();
    record(8, "property suites", start, property_suites());

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
