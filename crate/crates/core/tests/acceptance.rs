//! Acceptance criteria, one PASS/FAIL line each with elapsed and budgeted time.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symcart_core::abelian::{compatible, Compatibility};
use symcart_core::catalog::{
    enumerate_catalog, instantiate, ProductSpace, SpaceClass, SpaceInstance, EXCEPTIONAL_TABLE,
};
use symcart_core::geom::{connectivity, meridian_codim, trace_bound, DivisionAlgebra};
use symcart_core::homotopy::{Database, MAX_DEGREE};
use symcart_core::recognize::{corollary1_scan, is_blind_spot, Verdict, RECOGNITION_DEGREE};
use symcart_core::reference::{check_tables, exceptional_printed};
use symcart_core::rootsys::{kp_closed_form, kp_enumerated, Multiplicities, RootSystemType};
use symcart_core::Rational;

const SEED: u64 = 0x5eed_cafe;
const MONOTONE_TOL: f64 = 1e-12;
const MAX_PARAM: u32 = 30;
const SCAN_DIM: u32 = 300;

type Criterion<'a> = Box<dyn FnOnce() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn classical_table() -> Outcome {
    match check_tables(MAX_PARAM) {
        Ok(m) if m.is_empty() => outcome(true, format!("every classical row agrees for parameters <= {MAX_PARAM}")),
        Ok(m) => outcome(false, format!("{} mismatches, first: {:?}", m.len(), m[0])),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn exceptional_table() -> Outcome {
    let mut bad = Vec::new();
    for &(class, ty, ..) in &EXCEPTIONAL_TABLE {
        let s = instantiate(class, &[]).expect("exceptional spaces instantiate");
        let (dim, dp, kp) = exceptional_printed(class).expect("tabulated");
        let enumerated = match s.root {
            Some(r) => kp_enumerated(r.ty, &r.multiplicities).expect("catalog data is valid").kp as u32,
            None => 1,
        };
        if (s.dim, dim - enumerated, enumerated) != (dim, dp, kp) {
            bad.push(format!("{class} ({ty}): computed d={} k={enumerated}, printed d={dp} k={kp}", dim - enumerated));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "17 rows agree".to_string() } else { bad.join("; ") })
}

fn catalog_root_data() -> BTreeSet<(RootSystemType, Multiplicities)> {
    let mut out = BTreeSet::new();
    for class in SpaceClass::ALL {
        let ranges: Vec<Vec<u32>> = match class.arity() {
            0 => vec![vec![]],
            1 => (1..=40).map(|n| vec![n]).collect(),
            _ => (1..=13).flat_map(|p| (p..=40).map(move |q| vec![p, q])).collect(),
        };
        for params in ranges {
            if let Ok(SpaceInstance { root: Some(r), .. }) = instantiate(class, &params) {
                if r.ty.rank() <= 12 {
                    out.insert((r.ty, r.multiplicities));
                }
            }
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let data = catalog_root_data();
    let mut bad = Vec::new();
    for (ty, m) in &data {
        let e = kp_enumerated(*ty, m).map(|r| r.kp).map_err(|e| e.to_string());
        let c = kp_closed_form(*ty, m).map_err(|e| e.to_string());
        if e != c {
            bad.push(format!("{ty} {m:?}: enumerated {e:?}, closed form {c:?}"));
        }
    }
    let low = data
        .iter()
        .filter(|(t, _)| matches!(t, RootSystemType::B(2 | 3) | RootSystemType::C(2 | 3) | RootSystemType::BC(2 | 3)))
        .count();
    if bad.is_empty() {
        outcome(true, format!("{} (type, multiplicity) pairs, {low} of low rank B/C/BC", data.len()))
    } else {
        outcome(false, format!("{} disagreements, first: {}", bad.len(), bad[0]))
    }
}

fn corollary_scan(db: &Database) -> Outcome {
    let report = match corollary1_scan(db, SCAN_DIM) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let blind_ok = report.blind_spot.iter().all(|p| {
        is_blind_spot(p.left, p.right) && p.verdict == Verdict::Indistinguishable { through: RECOGNITION_DEGREE }
    });
    let pass = report.violations.is_empty() && report.undetermined.is_empty() && blind_ok;
    let mut detail = format!(
        "{} spaces, {} pairs: {} distinguishable, {} blind-spot, {} undetermined, {} violations",
        report.spaces,
        report.pairs,
        report.distinguishable,
        report.blind_spot.len(),
        report.undetermined.len(),
        report.violations.len()
    );
    if let Some(v) = report.violations.first() {
        detail.push_str(&format!("; first violation {v}"));
    }
    if let Some(u) = report.undetermined.first() {
        detail.push_str(&format!("; first undetermined {u}"));
    }
    outcome(pass, detail)
}

fn overlap_consistency(db: &Database) -> Outcome {
    let keys: Vec<_> = enumerate_catalog(SCAN_DIM).iter().map(|s| s.key).collect();
    let coverage = db.coverage(&keys);
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for ((key, k), hits) in &coverage {
        for (i, a) in hits.iter().enumerate() {
            for b in &hits[i + 1..] {
                checked += 1;
                if let Compatibility::Incompatible(w) = compatible(&a.group, &b.group) {
                    bad.push(format!("{key} pi_{k}: {} vs {} ({w:?})", a.group, b.group));
                }
            }
        }
    }
    let covered = coverage.values().filter(|h| !h.is_empty()).count();
    if bad.is_empty() {
        outcome(
            true,
            format!(
                "{} cells ({covered} covered), {checked} overlapping pairs, degrees <= {MAX_DEGREE}",
                coverage.len()
            ),
        )
    } else {
        outcome(false, format!("{} incompatible overlaps, first: {}", bad.len(), bad[0]))
    }
}

fn meridian_sweep() -> Outcome {
    let mut cases = 0;
    let mut failures = Vec::new();
    for field in [DivisionAlgebra::Complex, DivisionAlgebra::Quaternion] {
        for p in 3..=MAX_PARAM {
            for q in p..=MAX_PARAM {
                cases += 1;
                let cp = instantiate(field.grassmannian_class(), &[p, q]).expect("Grassmannian").cp;
                let min = (0..p).map(|a| meridian_codim(field, p, q, a, p - a).expect("a < p")).min().expect("p >= 3");
                if Rational::from(min) <= cp {
                    failures.push((field, p, q, min, cp));
                }
            }
        }
    }
    if failures.is_empty() {
        return outcome(true, format!("{cases} cases"));
    }
    let off_diagonal = failures.iter().filter(|f| f.1 != f.2).count();
    let (field, p, q, min, cp) = failures[0];
    outcome(
        false,
        format!(
            "{} of {cases} cases fail ({off_diagonal} with p < q); first: {field} p={p} q={q} min meridian codim {min} <= C_P {cp}",
            failures.len()
        ),
    )
}

fn gate_properties(rng: &mut ChaCha8Rng) -> Outcome {
    let spaces = enumerate_catalog(SCAN_DIM);
    for _ in 0..10_000 {
        let s = &spaces[rng.gen_range(0..spaces.len())];
        let codim = rng.gen_range(1..s.dim);
        let c = connectivity(s, s.dim - codim).expect("1 <= l < dim");
        if c != s.sharp(codim) {
            return outcome(false, format!("{} codim {codim}: connectivity {c} vs sharp {}", s.key, s.sharp(codim)));
        }
    }
    let mut min_step = f64::INFINITY;
    for k in [1u32, 4, 11, 55, 134] {
        let kf = f64::from(k);
        let zero = trace_bound(kf, k, 0.0).expect("in domain");
        if zero.abs() > MONOTONE_TOL {
            return outcome(false, format!("trace_bound(k, {k}, 0) = {zero}"));
        }
        let mut prev = zero;
        for i in 1..1000 {
            let r = FRAC_PI_2 * f64::from(i) / 1000.0;
            let t = trace_bound(kf, k, r).expect("in domain");
            let step = t - prev;
            if step.is_nan() || step <= MONOTONE_TOL {
                return outcome(false, format!("k={k}: step {step} at r={r}"));
            }
            min_step = min_step.min(step);
            prev = t;
        }
    }
    outcome(true, format!("10^4 connectivity samples; trace bound steps >= {min_step:.3e} on 5 x 10^3 grid points"))
}

fn product_property(rng: &mut ChaCha8Rng) -> Outcome {
    let spaces = enumerate_catalog(120);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=4);
        let factors: Vec<SpaceInstance> = (0..n).map(|_| spaces[rng.gen_range(0..spaces.len())].clone()).collect();
        let (dim, k) = factors
            .iter()
            .map(|f| (f.dim, f.kp))
            .reduce(|(n1, k1), (n2, k2)| (n1 + n2, (n1 + k2).max(n2 + k1)))
            .expect("nonempty");
        let p = ProductSpace::new(factors).expect("nonempty");
        if (p.total_dim(), p.product_kp()) != (dim, k) {
            return outcome(false, format!("{p}: product_kp {} vs fold {k}", p.product_kp()));
        }
    }
    outcome(true, "10^3 random products of 2 to 4 factors")
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let db = Database::builtin();
    let criteria: Vec<(&str, Duration, Criterion)> = vec![
        ("1 classical table reproduction", Duration::from_secs(1), Box::new(classical_table)),
        ("2 exceptional table reproduction", Duration::from_secs(1), Box::new(exceptional_table)),
        ("3 closed form equals enumeration", Duration::from_secs(5), Box::new(oracle_equivalence)),
        ("4 degree-9 recognition scan", Duration::from_secs(60), Box::new(|| corollary_scan(db))),
        ("5 homotopy table overlaps", Duration::from_secs(30), Box::new(|| overlap_consistency(db))),
        ("6 meridian obstruction sweep", Duration::from_secs(1), Box::new(meridian_sweep)),
    ];
    let mut all = true;
    let mut report = |name: &str, budget: Duration, run: Criterion| {
        let start = Instant::now();
        let o = run();
        let t = start.elapsed();
        let pass = o.pass && t <= budget;
        all &= pass;
        let status = if pass { "PASS" } else { "FAIL" };
        let over = if t > budget { " over budget;" } else { "" };
        println!("{status} [{name}] {:.3}s / {:.0}s:{over} {}", t.as_secs_f64(), budget.as_secs_f64(), o.detail);
    };
    for (name, budget, run) in criteria {
        report(name, budget, run);
    }
    report("7 gate arithmetic properties", Duration::from_secs(1), Box::new(|| gate_properties(&mut rng)));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    report("8 product k_P fold", Duration::from_secs(1), Box::new(|| product_property(&mut rng)));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
