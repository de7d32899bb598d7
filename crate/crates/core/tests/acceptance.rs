//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use common::*;
use facet_kernel::dynkin::d_ends;
use facet_kernel::kernel::orbit_of;
use facet_kernel::permgroups::{a_rotation, d_tau_prime};
use facet_kernel::sweep::sweep_forms;
use facet_kernel::{
    build_affine_diagram, compute_kernel, conjugation_fixed, diagram_automorphisms, dispatch,
    ext_action_kernel, parse_group_spec, special_vertices, Family, KernelCounts, KernelReport, Mode,
    MultiType, PermGroup, Permutation, QuasiSplit, Twist, TwistedForm, VertexSet,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

const RANDOM_SPECS: usize = 1000;
const SEED: u64 = 0x5eed_2a3d;

/// Orbits seen in criteria 1-3, and how many failed orbit-stabilizer.
static ORBITS_CHECKED: AtomicUsize = AtomicUsize::new(0);
static ORBIT_STABILIZER_FAILURES: AtomicUsize = AtomicUsize::new(0);

fn qs(family: Family, rank: usize, twist: Twist) -> QuasiSplit {
    QuasiSplit::new(TwistedForm::new(family, rank, twist).unwrap()).unwrap()
}

/// Runs the oracle on `t` and records an orbit-stabilizer check for it.
fn oracle(q: &QuasiSplit, t: VertexSet) -> KernelReport {
    let mt = MultiType::single(t);
    let report = q.kernel(&mt).unwrap();
    let stab = q.xi_nr().set_stabilizer(t).order();
    ORBITS_CHECKED.fetch_add(1, Ordering::Relaxed);
    if report.orbit_size * stab != q.xi_nr().order() || orbit_of(&mt, q.xi_nr()).len() != report.orbit_size {
        ORBIT_STABILIZER_FAILURES.fetch_add(1, Ordering::Relaxed);
    }
    report
}

fn counts(r: &KernelReport) -> KernelCounts {
    KernelCounts::new(r.fixed_count, r.quotient_count)
}

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0..1u64 << n).map(VertexSet::from_mask)
}

fn gamma_invariant(q: &QuasiSplit, t: VertexSet) -> bool {
    q.gamma().elements().iter().all(|s| s.stabilizes(t))
}

fn expected_2a(n: usize, m: usize) -> KernelCounts {
    match (m % 2, ((n + 1) / m) % 2) {
        (1, _) => KernelCounts::new(1, 1),
        (_, 1) => KernelCounts::new(2, 1),
        _ => KernelCounts::new(2, 2),
    }
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let (mut checked, mut examined) = (0, 0u64);
    let mut mismatches = Vec::new();
    let mut seen_cases = BTreeSet::new();
    for n in 1..=12 {
        let q = qs(Family::A, n, Twist::TwoA);
        for t in subsets(n + 1) {
            examined += 1;
            if !gamma_invariant(&q, t) {
                continue;
            }
            let r = oracle(&q, t);
            let expected = expected_2a(n, r.orbit_size);
            let closed = dispatch(q.form(), &MultiType::single(t)).unwrap();
            checked += 1;
            seen_cases.insert(expected);
            if counts(&r) != expected || closed != expected {
                mismatches.push(format!("A{n} {t}: oracle {} closed {closed}", counts(&r)));
            }
        }
    }
    let elapsed = start.elapsed();
    if !mismatches.is_empty() {
        return Err(format!(
            "{} mismatches, first: {}",
            mismatches.len(),
            mismatches[0]
        ));
    }
    if seen_cases.len() != 3 {
        return Err(format!("only saw cases {seen_cases:?}"));
    }
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{checked} invariant types of {examined} subsets, all three cases hit, {elapsed:.2?}"
    ))
}

fn ac2() -> Outcome {
    let mut checked = 0;
    for n in 4..=10 {
        let q = qs(Family::D, n, Twist::TwoD);
        let ends = d_ends(n);
        let r_shapes: Vec<VertexSet> = (0..16u32)
            .map(|bits| {
                (0..4)
                    .filter(|i| bits >> i & 1 == 1)
                    .map(|i| ends[i])
                    .collect::<VertexSet>()
            })
            .filter(|r| gamma_invariant(&q, *r))
            .collect();
        if r_shapes.len() != 8 {
            return Err(format!("D{n}: {} invariant end shapes", r_shapes.len()));
        }
        let inner: Vec<usize> = (2..=n - 2).collect();
        for r in &r_shapes {
            for bits in 0..1u64 << inner.len() {
                let s: VertexSet = inner
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, v)| *v)
                    .collect();
                let tau_s: VertexSet = s.iter().map(|i| n - i).collect();
                let expected = match r.len() {
                    1 | 3 => KernelCounts::new(2, 1),
                    2 => KernelCounts::new(2, 2),
                    _ if tau_s == s => KernelCounts::new(1, 1),
                    _ => KernelCounts::new(2, 2),
                };
                let t = s.union(*r);
                let got = counts(&oracle(&q, t));
                let closed = dispatch(q.form(), &MultiType::single(t)).unwrap();
                if got != expected || closed != expected {
                    return Err(format!(
                        "D{n} {t}: oracle {got} closed {closed}, expected {expected}"
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (R, S) pairs over ranks 4..=10"))
}

fn ac3() -> Outcome {
    let mut report = Vec::new();
    for (family, rank, twist) in [
        (Family::D, 4, Twist::ThreeD4),
        (Family::D, 4, Twist::SixD4),
        (Family::E6, 6, Twist::TwoE6),
    ] {
        let q = qs(family, rank, twist);
        let mut checked = 0;
        let mut examined = 0;
        for t in subsets(rank + 1) {
            examined += 1;
            if !gamma_invariant(&q, t) {
                continue;
            }
            let r = oracle(&q, t);
            if r.fixed_count != 1 || r.quotient_count != 1 {
                return Err(format!("{} {t}: {}", q.form(), counts(&r)));
            }
            checked += 1;
        }
        report.push(format!("{}: {checked}/{examined}", q.form()));
    }
    Ok(report.join(", "))
}

fn ac4() -> Outcome {
    let spec = parse_group_spec(
        r#"{"mode":"stabilizer","factors":[{"family":"A","rank":3,"twist":"2A","splitting":"unramified","weil_restriction":null,"facet_type":[[0,2]]}]}"#,
    )
    .map_err(|e| e.to_string())?;
    let r = compute_kernel(&spec).map_err(|e| e.to_string())?;
    if r.total_kernel == 2 && r.k_exponent == 1 {
        Ok("2A3 with type {0,2}: kernel 2".into())
    } else {
        Err(format!("kernel {}", r.total_kernel))
    }
}

fn random_specs(mode: Mode) -> Vec<facet_kernel::GroupSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..RANDOM_SPECS).map(|_| random_spec(&mut rng, mode)).collect()
}

fn ac5() -> Outcome {
    let (mut nontrivial, mut max_k) = (0, 0);
    for (i, spec) in random_specs(Mode::Stabilizer).iter().enumerate() {
        let r = compute_kernel(spec).map_err(|e| format!("spec {i}: {e}"))?;
        let bound = spec.factors.iter().filter(|f| may_double(f)).count() as u32;
        let product: u64 = r.per_factor.iter().map(|f| f.quotient_count as u64).product();
        if r.total_kernel != 1u64 << r.k_exponent || product != r.total_kernel || r.k_exponent > bound {
            return Err(format!(
                "spec {i}: total {} k {} bound {bound}",
                r.total_kernel, r.k_exponent
            ));
        }
        nontrivial += usize::from(r.k_exponent > 0);
        max_k = max_k.max(r.k_exponent);
    }
    if nontrivial == 0 {
        return Err("no spec had a nontrivial kernel".into());
    }
    Ok(format!(
        "{RANDOM_SPECS} specs, {nontrivial} nontrivial, max k = {max_k}"
    ))
}

fn ac6() -> Outcome {
    for (i, spec) in random_specs(Mode::Parahoric).iter().enumerate() {
        let r = compute_kernel(spec).map_err(|e| format!("spec {i}: {e}"))?;
        if r.total_kernel != 1 {
            return Err(format!("spec {i}: total {}", r.total_kernel));
        }
    }
    Ok(format!("{RANDOM_SPECS} specs, all 1"))
}

fn ac7() -> Outcome {
    let forms = sweep_forms(12, 10).map_err(|e| e.to_string())?;
    for form in &forms {
        let q = QuasiSplit::new(*form).unwrap();
        let t = MultiType::single(q.diagram().all_vertices());
        let r = q.kernel(&t).unwrap();
        if (r.orbit_size, r.fixed_count, r.quotient_count) != (1, 1, 1) {
            return Err(format!("{form}: {r:?}"));
        }
    }
    Ok(format!("{} forms", forms.len()))
}

fn element_set(g: &PermGroup) -> BTreeSet<Vec<usize>> {
    g.elements().iter().map(|p| p.images().to_vec()).collect()
}

fn group_of(degree: usize, elements: Vec<Permutation>) -> BTreeSet<Vec<usize>> {
    std::iter::once(Permutation::identity(degree))
        .chain(elements)
        .map(|p| p.images().to_vec())
        .collect()
}

/// The `Ξ` column of the form table.
fn table_xi(form: &TwistedForm, q: &QuasiSplit) -> BTreeSet<Vec<usize>> {
    let n = form.rank();
    let deg = q.diagram().vertex_count();
    match form.twist() {
        Twist::Split => element_set(q.xi_nr()),
        Twist::TwoA if (n + 1).is_multiple_of(2) => {
            let half = (0..n.div_ceil(2)).fold(Permutation::identity(deg), |acc, _| {
                acc.after(&a_rotation(n)).unwrap()
            });
            group_of(deg, vec![half])
        }
        Twist::TwoA => group_of(deg, vec![]),
        Twist::TwoD => group_of(deg, vec![d_tau_prime(n)]),
        Twist::ThreeD4 | Twist::SixD4 | Twist::TwoE6 => group_of(deg, vec![]),
    }
}

fn ac8() -> Outcome {
    let forms = sweep_forms(12, 10).map_err(|e| e.to_string())?;
    for form in &forms {
        let q = QuasiSplit::new(*form).unwrap();
        let xi = conjugation_fixed(q.xi_nr(), q.gamma()).map_err(|e| e.to_string())?;
        let expected = table_xi(form, &q);
        if element_set(&xi) != expected || xi.order() != expected.len() {
            return Err(format!("{form}: got {xi:?}"));
        }
    }
    Ok(format!("{} presets", forms.len()))
}

fn ac9() -> Outcome {
    let forms = sweep_forms(12, 10).map_err(|e| e.to_string())?;
    let mut verified = 0;
    for form in &forms {
        let q = QuasiSplit::new(*form).unwrap();
        let special = special_vertices(q.diagram());
        let fixed_special: VertexSet = special
            .iter()
            .filter(|v| q.gamma().elements().iter().all(|s| s.apply(*v) == *v))
            .collect();
        for t_max in subsets(q.diagram().vertex_count()) {
            if !gamma_invariant(&q, t_max) || t_max.is_disjoint(fixed_special) {
                continue;
            }
            let k = ext_action_kernel(q.diagram(), q.gamma(), q.xi_nr(), t_max).map_err(|e| e.to_string())?;
            if !k.is_trivial() {
                return Err(format!("{form}, t_max {t_max}: {k:?}"));
            }
            verified += 1;
        }
    }
    Ok(format!("{verified} (preset, t_max) pairs"))
}

fn ac10() -> Outcome {
    let order = |f, n| diagram_automorphisms(&build_affine_diagram(f, n).unwrap()).order();
    for n in 2..=12 {
        if order(Family::A, n) != 2 * (n + 1) {
            return Err(format!("|Aut A{n}| = {}", order(Family::A, n)));
        }
    }
    if order(Family::D, 4) != 24 {
        return Err(format!("|Aut D4| = {}", order(Family::D, 4)));
    }
    for n in 5..=10 {
        if order(Family::D, n) != 8 {
            return Err(format!("|Aut D{n}| = {}", order(Family::D, n)));
        }
    }
    if order(Family::E6, 6) != 6 {
        return Err(format!("|Aut E6| = {}", order(Family::E6, 6)));
    }
    let orbits = ORBITS_CHECKED.load(Ordering::Relaxed);
    let failures = ORBIT_STABILIZER_FAILURES.load(Ordering::Relaxed);
    if orbits == 0 {
        return Err("criteria 1-3 computed no orbits".into());
    }
    if failures > 0 {
        return Err(format!("{failures} of {orbits} orbits break orbit-stabilizer"));
    }
    Ok(format!(
        "automorphism orders hold; orbit-stabilizer on {orbits} orbits"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "2A closed form vs oracle, ranks 1..=12", ac1),
        ("AC2", "2D closed form vs oracle, ranks 4..=10", ac2),
        ("AC3", "3D4, 6D4, 2E6 have trivial fixed sets", ac3),
        ("AC4", "2A3 edge type {0,2} has kernel 2", ac4),
        ("AC5", "random specs: kernel 2^k within bound", ac5),
        ("AC6", "parahoric mode is trivial", ac6),
        ("AC7", "chamber types have trivial kernel", ac7),
        ("AC8", "Galois-fixed Xi matches the form table", ac8),
        ("AC9", "fixed special vertex kills ext kernel", ac9),
        ("AC10", "automorphism orders, orbit-stabilizer", ac10),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {id} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id} {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
