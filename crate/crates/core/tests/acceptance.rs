//! Acceptance gate: eight end-to-end criteria, one pass/fail line each.
//! Expected values are written out here independently of the library's
//! own golden tables.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use refarr_core::catalog::{expected_flat_census, observed_census};
use refarr_core::field::primes_up_to;
use refarr_core::monodromy::{betti_map, Status};
use refarr_core::multinet::{
    fy_monomial_3net, full_monomial_multinet, hessian_4net, mod3_net, multinet_subspace_mod_p,
    multinet_subspace_rational, pairs_net, subspace_intersection_dim,
};
use refarr_core::resonance::{evaluate_criterion, Criterion};
use refarr_core::{
    aomoto_h1, beta_p, build, char_poly, compute_flat_table, is_isotropic, monodromy_profile, nabla_check,
    search_nets, verify, Arrangement, CyclotomicField, FamilySpec, Field, FlatTable, Hyperplane, Multinet,
    PrimeField, Rationals, SearchOptions,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

thread_local! {
    /// Number of flat tables built and checked for the pair-count identity.
    static TABLES_CHECKED: RefCell<usize> = const { RefCell::new(0) };
    static PAIR_IDENTITY_FAILURES: RefCell<Vec<String>> = const { RefCell::new(Vec::new()) };
}

/// Builds the flat table and records the pair-count identity check.
fn flats_of(arr: &Arrangement, name: &str) -> FlatTable {
    let t = compute_flat_table(arr);
    let n = arr.len();
    let pairs: usize = t.flats().iter().map(|f| f.multiplicity() * (f.multiplicity() - 1) / 2).sum();
    TABLES_CHECKED.with(|c| *c.borrow_mut() += 1);
    if pairs != n * (n - 1) / 2 {
        PAIR_IDENTITY_FAILURES.with(|f| f.borrow_mut().push(name.to_string()));
    }
    t
}

fn catalog(spec: FamilySpec) -> (Arrangement, FlatTable) {
    let arr = build(&spec).expect("catalog spec");
    let t = flats_of(&arr, &spec.to_string());
    (arr, t)
}

fn rational(normals: &[Vec<i64>]) -> Arrangement {
    let f = CyclotomicField::new(1).unwrap();
    let hs = normals
        .iter()
        .enumerate()
        .map(|(i, n)| Hyperplane { label: format!("H{}", i + 1), normal: n.iter().map(|&c| f.from_i64(c)).collect() })
        .collect();
    Arrangement::new_unchecked(f, normals[0].len(), hs)
}

fn generic_planes() -> Arrangement {
    rational(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
}

/// The classification, restated for the grid of criterion 1.
fn expected_betti(monomial: bool, m: u32, l: usize, p: u64) -> usize {
    match (p, monomial, l) {
        (p, _, _) if p != 3 => 0,
        (_, false, 3) => (m % 3 == 1) as usize,
        (_, true, 3) => {
            if m.is_multiple_of(3) {
                2
            } else {
                1
            }
        }
        (_, true, 4) => 1,
        _ => 0,
    }
}

fn grid() -> Vec<(FamilySpec, bool, u32, usize)> {
    let mut out = Vec::new();
    for m in 2..=7 {
        for l in [3, 4, 5] {
            out.push((FamilySpec::Monomial { m, l }, true, m, l));
            out.push((FamilySpec::FullMonomial { m, l }, false, m, l));
        }
    }
    out
}

fn exceptional() -> Vec<(FamilySpec, usize, [usize; 3])> {
    // (spec, hyperplanes, beta_2/3/5)
    vec![
        (FamilySpec::G31, 60, [0, 0, 0]),
        (FamilySpec::G32, 40, [0, 0, 0]),
        (FamilySpec::G33, 45, [0, 0, 0]),
        (FamilySpec::Hessian, 12, [2, 0, 0]),
    ]
}

fn random_rank3(seed: u64, count: usize) -> Vec<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=8);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..3).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let arr = rational(&rows);
        if arr.validate().is_ok() && arr.rank() == 3 {
            out.push(arr);
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for (spec, monomial, m, l) in grid() {
        let (_, t) = catalog(spec);
        for p in [2, 3, 5, 7] {
            let got = beta_p(&t, p).map_err(|e| e.to_string())?.value;
            let want = expected_betti(monomial, m, l, p);
            ensure!(got == want, "{spec}: beta_{p} = {got}, expected {want}");
            checked += 1;
        }
    }
    Ok(format!("{checked} (instance, prime) values match"))
}

fn criterion_2() -> Outcome {
    for (spec, n, betas) in exceptional() {
        let (arr, t) = catalog(spec);
        ensure!(arr.len() == n, "{spec}: {} hyperplanes, expected {n}", arr.len());
        for (p, want) in [2, 3, 5].into_iter().zip(betas) {
            let got = beta_p(&t, p).map_err(|e| e.to_string())?.value;
            ensure!(got == want, "{spec}: beta_{p} = {got}, expected {want}");
        }
    }
    Ok("G31, G32, G33, Hessian counts and beta_2/3/5 match".into())
}

fn all_instances() -> Vec<(String, Arrangement, FlatTable)> {
    let mut out = Vec::new();
    for (spec, ..) in grid() {
        let (a, t) = catalog(spec);
        out.push((spec.to_string(), a, t));
    }
    for (spec, ..) in exceptional() {
        let (a, t) = catalog(spec);
        out.push((spec.to_string(), a, t));
    }
    for (i, arr) in random_rank3(2024, 50).into_iter().enumerate() {
        let name = format!("random #{i}");
        let t = flats_of(&arr, &name);
        out.push((name, arr, t));
    }
    out
}

fn criterion_3(instances: &[(String, Arrangement, FlatTable)]) -> Outcome {
    let mut checked = 0;
    for (name, _, t) in instances {
        let primes: &[u64] = if name.starts_with("random") { &[2, 3, 5] } else { &[2, 3, 5, 7] };
        for &p in primes {
            let a = beta_p(t, p).map_err(|e| e.to_string())?.value;
            let b = aomoto_h1(t, p).map_err(|e| e.to_string())?;
            ensure!(a == b, "{name}, p = {p}: cocycle count {a}, Aomoto complex {b}");
            checked += 1;
        }
    }
    Ok(format!("{checked} agreements, including 50 random rank-3 arrangements"))
}

fn criterion_4(instances: &[(String, Arrangement, FlatTable)]) -> Outcome {
    let mut fired = 0;
    for (name, arr, t) in instances {
        let components = refarr_core::matroid::decompose(arr).len();
        for p in [2, 3, 5, 7] {
            let beta = beta_p(t, p).map_err(|e| e.to_string())?.value;
            for c in Criterion::ALL {
                if evaluate_criterion(t, components, p, c).map_err(|e| e.to_string())? {
                    fired += 1;
                    ensure!(beta == 0, "{name}, p = {p}: {} fired but beta = {beta}", c.name());
                }
            }
        }
    }
    for m in 2..=7 {
        for l in [4, 5] {
            let (_, t) = catalog(FamilySpec::FullMonomial { m, l });
            for p in [2, 3, 5, 7] {
                ensure!(
                    evaluate_criterion(&t, 1, p, Criterion::GammaExact2Connected).map_err(|e| e.to_string())?,
                    "A({m},1,{l}): gamma_(2) not connected"
                );
            }
        }
    }
    Ok(format!("{fired} firings, all with beta_p = 0; gamma_(2) connected on A(m,1,l), l >= 4"))
}

fn check_net(arr: &Arrangement, t: &FlatTable, net: &Multinet, name: &str) -> Result<(), String> {
    let report = verify(arr, t, net).map_err(|e| e.to_string())?;
    ensure!(report.valid, "{name}: fails the multinet axiom: {:?}", report.failures);
    let k = net.k() as u64;
    if net.is_h_reduced(k) {
        for p in primes_up_to(k).into_iter().filter(|p| k.is_multiple_of(*p)) {
            let beta = beta_p(t, p).map_err(|e| e.to_string())?.value;
            ensure!(beta >= 1, "{name}: {k}-reduced but beta_{p} = 0");
        }
    }
    let basis = multinet_subspace_rational(net);
    ensure!(basis.len() == net.k() - 1, "{name}: subspace has dimension {}", basis.len());
    ensure!(is_isotropic(&Rationals, t, &basis).map_err(|e| e.to_string())?, "{name}: not isotropic over Q");
    for p in [2, 3, 5] {
        if net.is_h_reduced(p) {
            let f = PrimeField::new(p).unwrap();
            let b = multinet_subspace_mod_p(net, p).map_err(|e| e.to_string())?;
            ensure!(is_isotropic(&f, t, &b).map_err(|e| e.to_string())?, "{name}: not isotropic mod {p}");
        }
    }
    ensure!(nabla_check(t, net).map_err(|e| e.to_string())?, "{name}: ∧²φ∘∇ does not vanish");
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    let mut run = |name: String, built: refarr_core::Result<(Arrangement, Multinet)>| -> Result<(), String> {
        let (arr, net) = built.map_err(|e| e.to_string())?;
        let t = flats_of(&arr, &name);
        check_net(&arr, &t, &net, &name)?;
        count += 1;
        Ok(())
    };
    for m in 2..=6 {
        run(format!("fy_monomial_3net({m})"), fy_monomial_3net(m))?;
    }
    run("mod3_net(3)".into(), mod3_net(3))?;
    run("mod3_net(6)".into(), mod3_net(6))?;
    for m in 2..=5 {
        run(format!("pairs_net({m})"), pairs_net(m))?;
    }
    for m in 2..=7 {
        run(format!("full_monomial_multinet({m})"), full_monomial_multinet(m))?;
    }
    run("hessian_4net".into(), hessian_4net())?;
    for m in [3, 6] {
        let (arr, a) = fy_monomial_3net(m).map_err(|e| e.to_string())?;
        let (_, b) = mod3_net(m).map_err(|e| e.to_string())?;
        let dim = subspace_intersection_dim(
            &Rationals,
            &multinet_subspace_rational(&a),
            &multinet_subspace_rational(&b),
            arr.len(),
        );
        ensure!(dim == 0, "A({m},{m},3): subspaces of the two nets meet in dimension {dim}");
    }
    Ok(format!("{count} multinets verified and isotropic; the two nets on A(3,3,3), A(6,6,3) meet trivially"))
}

fn criterion_6() -> Outcome {
    let opts = SearchOptions::default();
    let (arr, t) = catalog(FamilySpec::Hessian);
    let nets = search_nets(&arr, &t, 4, opts).map_err(|e| e.to_string())?;
    ensure!(!nets.is_empty(), "no 4-multinet found on the Hessian arrangement");
    for net in &nets {
        let r = verify(&arr, &t, net).map_err(|e| e.to_string())?;
        ensure!(r.valid && r.reduced, "search result fails verification");
    }
    let (_, triangles) = hessian_4net().map_err(|e| e.to_string())?;
    ensure!(nets.contains(&triangles.canonical()), "the four triangles were not found");
    let (a333, t333) = catalog(FamilySpec::Monomial { m: 3, l: 3 });
    let found = search_nets(&a333, &t333, 3, opts).map_err(|e| e.to_string())?.len();
    ensure!(found >= 1, "no 3-net on A(3,3,3)");
    let g = generic_planes();
    let tg = flats_of(&g, "generic planes");
    let none = search_nets(&g, &tg, 3, opts).map_err(|e| e.to_string())?.len();
    ensure!(none == 0, "generic planes support {none} 3-nets");
    Ok(format!("Hessian: {} 4-net(s); A(3,3,3): {found} 3-net(s); generic planes: 0", nets.len()))
}

fn profile_of(spec: FamilySpec, nets: &[Multinet]) -> Result<refarr_core::MonodromyProfile, String> {
    let (arr, t) = catalog(spec);
    let betti = betti_map(&t).map_err(|e| e.to_string())?;
    monodromy_profile(&arr, &t, &betti, nets, arr.is_reflection()).map_err(|e| e.to_string())
}

fn criterion_7() -> Outcome {
    for (l, ms) in [(3usize, 2..=7u32), (4, 2..=3)] {
        for m in ms {
            let p = profile_of(FamilySpec::FullMonomial { m, l }, &[])?;
            let cp = char_poly(&p);
            let n = l + m as usize * l * (l - 1) / 2;
            let mut want = vec![(1u64, n - 1)];
            if l == 3 && m % 3 == 1 {
                want.push((3, 1));
            }
            ensure!(cp.complete && cp.factors == want, "A({m},1,{l}): got {cp}");
        }
    }
    for m in [3, 6] {
        let p = profile_of(FamilySpec::Monomial { m, l: 3 }, &[])?;
        ensure!(
            matches!(p.status(3), Some(Status::Exact { value: 2, .. })),
            "A({m},{m},3): e_3 = {:?}",
            p.status(3)
        );
    }
    let (_, net) = hessian_4net().map_err(|e| e.to_string())?;
    let p = profile_of(FamilySpec::Hessian, &[net])?;
    ensure!(matches!(p.status(2), Some(Status::Exact { value: 2, .. })), "Hessian e_2 = {:?}", p.status(2));
    ensure!(
        matches!(p.status(4), Some(Status::Range { lo: 1, hi: Some(2), .. })),
        "Hessian e_4 = {:?}",
        p.status(4)
    );
    let mut identities = 0;
    let specs: Vec<FamilySpec> =
        grid().into_iter().map(|g| g.0).chain(exceptional().into_iter().map(|e| e.0)).collect();
    for spec in specs {
        let (arr, t) = catalog(spec);
        let p = profile_of(spec, &[])?;
        for q in primes_up_to(arr.len() as u64) {
            let beta = beta_p(&t, q).map_err(|e| e.to_string())?.value;
            let e = match p.status(q) {
                Some(s) => s.exact(),
                None => Some(0),
            };
            ensure!(e == Some(beta), "{spec}: e_{q} = {e:?} but beta_{q} = {beta}");
            identities += 1;
        }
    }
    Ok(format!("Δ(t) matches on 8 full monomial instances; {identities} identities e_p = beta_p hold"))
}

fn criterion_8() -> Outcome {
    for (spec, ..) in grid() {
        let (arr, t) = catalog(spec);
        let want = expected_flat_census(&spec).map_err(|e| e.to_string())?;
        let got = observed_census(&arr, &t).map_err(|e| e.to_string())?;
        ensure!(want == got, "{spec}: census {got:?}, expected {want:?}");
    }
    for m in 2..=9u32 {
        let (_, t) = catalog(FamilySpec::Monomial { m, l: 2 });
        for p in [2u64, 3, 5] {
            let want = if (m as u64).is_multiple_of(p) { m as usize - 2 } else { 0 };
            let got = beta_p(&t, p).map_err(|e| e.to_string())?.value;
            ensure!(got == want, "A({m},{m},2): beta_{p} = {got}, expected {want}");
        }
    }
    let failures = PAIR_IDENTITY_FAILURES.with(|f| f.borrow().clone());
    ensure!(failures.is_empty(), "pair-count identity fails on {failures:?}");
    let tables = TABLES_CHECKED.with(|c| *c.borrow());
    Ok(format!("censuses match; pencils match; pair-count identity on all {tables} flat tables built"))
}

fn main() {
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let mut record = |i: usize, f: &mut dyn FnMut() -> Outcome| {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let line = match &r {
            Ok(detail) => format!("criterion {i}: PASS ({detail})"),
            Err(why) => format!("criterion {i}: FAIL ({why})"),
        };
        println!("{line}");
        results.push((i, r));
    };
    record(1, &mut criterion_1);
    record(2, &mut criterion_2);
    let instances = all_instances();
    record(3, &mut || criterion_3(&instances));
    record(4, &mut || criterion_4(&instances));
    record(5, &mut criterion_5);
    record(6, &mut criterion_6);
    record(7, &mut criterion_7);
    record(8, &mut criterion_8);
    let failed: BTreeMap<usize, String> =
        results.into_iter().filter_map(|(i, r)| r.err().map(|e| (i, e))).collect();
    if failed.is_empty() {
        println!("acceptance: 8/8 criteria pass");
    } else {
        println!("acceptance: {} of 8 criteria fail", failed.len());
        std::process::exit(1);
    }
}
