//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::Instant;

use parastat_core::algebra::{verify_relations, AlgebraKind, GeneratorLabel, Sign, Species};
use parastat_core::fock::{build_green_rep, default_degrees, default_theta, fock_submodule, GreenAnsatzRep};
use parastat_core::group::{
    bicharacter_to_rmatrix, braiding_on_lines, check_quasitriangular, commutation_factors, enumerate_bicharacters,
    FiniteAbelianGroup,
};
use parastat_core::jc::{
    build_green_hamiltonian, build_hamiltonian, evolve, excitation_keys, interaction, selection_rule_check, Coupling,
    HamiltonianKind, JCParams,
};
use parastat_core::linalg::{hermitian_eig_blocked, hermitian_eigenvalues, ComplexMatrix, SparseVec};
use parastat_core::pbf::{build_pbf_rep, factor_search, subspace_dims, LadderLabel, PbfFockRep};
use parastat_core::C64;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const GROUPS: [(&str, usize, usize); 6] = [
    ("Z2", 2, 2),
    ("Z3", 3, 1),
    ("Z4", 4, 2),
    ("Z5", 5, 1),
    ("Z6", 6, 2),
    ("Z2xZ2", 16, 8),
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn group(name: &str) -> FiniteAbelianGroup {
    name.parse().expect("group descriptor")
}

fn lcm(a: u32, b: u32) -> u32 {
    let g = (1..=a.min(b)).rev().find(|k| a.is_multiple_of(*k) && b.is_multiple_of(*k)).unwrap_or(1);
    a / g * b
}

/// All coordinate tuples, last coordinate fastest.
fn coords(d: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &di in d {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..di).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

type Table = Vec<u32>;

/// Is `t` (exponents over `z_n`, indexed by coordinate tuples) bimultiplicative?
fn is_bicharacter(d: &[u32], n: u32, elems: &[Vec<u32>], t: &Table) -> bool {
    let idx = |g: &[u32]| g.iter().zip(d).fold(0usize, |acc, (&x, &di)| acc * di as usize + x as usize);
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).zip(d).map(|((x, y), m)| (x + y) % m).collect() };
    let k = elems.len();
    for g in elems {
        for h in elems {
            let gh = add(g, h);
            for x in elems {
                let (gi, hi, xi, ghi) = (idx(g), idx(h), idx(x), idx(&gh));
                if t[ghi * k + xi] != (t[gi * k + xi] + t[hi * k + xi]) % n
                    || t[xi * k + ghi] != (t[xi * k + gi] + t[xi * k + hi]) % n
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Bicharacters from every assignment of `Z_N` values to generator pairs,
/// kept when the induced table is bimultiplicative; for the smallest groups
/// also every assignment of values to all pairs.
fn oracle_tables(d: &[u32]) -> BTreeSet<Table> {
    let n = d.iter().copied().fold(1, lcm);
    let elems = coords(d);
    let k = elems.len();
    let r = d.len();
    let mut found = BTreeSet::new();
    for e in coords(&vec![n; r * r]) {
        let t: Table = elems
            .iter()
            .flat_map(|g| {
                elems.iter().map(|h| {
                    let mut s = 0u32;
                    for i in 0..r {
                        for j in 0..r {
                            s += e[i * r + j] * g[i] * h[j];
                        }
                    }
                    s % n
                })
            })
            .collect();
        if is_bicharacter(d, n, &elems, &t) {
            found.insert(t);
        }
    }
    if (n as f64).powi((k * k) as i32) <= 70_000.0 {
        let full: BTreeSet<Table> = coords(&vec![n; k * k])
            .into_iter()
            .filter(|t| is_bicharacter(d, n, &elems, t))
            .collect();
        assert_eq!(full, found, "generator-pair and full enumerations disagree on {d:?}");
    }
    found
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut summary = Vec::new();
    for (name, n_bich, n_cf) in GROUPS {
        let g = group(name);
        let all = enumerate_bicharacters(&g).map_err(|e| e.to_string())?;
        let cf = commutation_factors(&g).map_err(|e| e.to_string())?;
        ensure(all.len() == n_bich && cf.len() == n_cf, || {
            format!("{name}: {}/{} bicharacters/factors, expected {n_bich}/{n_cf}", all.len(), cf.len())
        })?;

        let d = g.factors().to_vec();
        let n = g.exponent();
        let oracle = oracle_tables(&d);
        let ours: BTreeSet<Table> = all
            .iter()
            .map(|b| {
                let ro = b.root_order();
                coords(&d)
                    .iter()
                    .flat_map(|x| {
                        let gx = g.element(x.clone()).unwrap();
                        coords(&d)
                            .into_iter()
                            .map(|y| b.exponent(&gx, &g.element(y).unwrap()).unwrap() * n / ro)
                            .collect::<Vec<_>>()
                    })
                    .collect()
            })
            .collect();
        ensure(ours == oracle, || format!("{name}: enumerated tables differ from the oracle"))?;
        let oracle_cf = oracle
            .iter()
            .filter(|t| {
                let k = g.order();
                (0..k).all(|i| (0..k).all(|j| (t[i * k + j] + t[j * k + i]) % n == 0))
            })
            .count();
        ensure(oracle_cf == n_cf, || format!("{name}: oracle finds {oracle_cf} commutation factors"))?;
        summary.push(format!("{name} {n_bich}/{n_cf}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("counts {} match the brute-force oracle ({secs:.2} s)", summary.join(", ")))
}

fn criterion_2() -> Check {
    let mut checked = 0;
    let mut worst = 0.0f64;
    for (name, _, _) in GROUPS {
        let g = group(name);
        let elems: Vec<_> = g.elements().collect();
        for theta in commutation_factors(&g).map_err(|e| e.to_string())? {
            let r = bicharacter_to_rmatrix(&theta);
            let qt = check_quasitriangular(&r);
            ensure(qt.qt_axioms_ok && qt.triangular, || format!("{name} {theta}: {qt:?}"))?;
            let back = braiding_on_lines(&r).map_err(|e| e.to_string())?;
            ensure(back == theta, || format!("{name} {theta}: braiding gives {back}"))?;

            // R21 R = e ⊗ e, evaluated numerically in CG ⊗ CG.
            let k = elems.len();
            let coef: Vec<C64> = elems
                .iter()
                .flat_map(|x| elems.iter().map(|y| r.coefficient(x, y).unwrap()).collect::<Vec<_>>())
                .collect();
            let mut prod = vec![C64::new(0.0, 0.0); k * k];
            for x in 0..k {
                for y in 0..k {
                    for u in 0..k {
                        for v in 0..k {
                            let a = g.index_of(&g.op(&elems[y], &elems[u])).unwrap();
                            let b = g.index_of(&g.op(&elems[x], &elems[v])).unwrap();
                            prod[a * k + b] += coef[x * k + y] * coef[u * k + v];
                        }
                    }
                }
            }
            let e = g.index_of(&g.identity()).unwrap();
            for (i, z) in prod.iter().enumerate() {
                let target = if i == e * k + e { c(1.0) } else { c(0.0) };
                worst = worst.max((z - target).norm());
            }
            checked += 1;
        }
    }
    ensure(worst <= 1e-12, || format!("numeric R21 R deviates by {worst:e}"))?;
    Ok(format!(
        "{checked} commutation factors: exact QT and R21 R = e⊗e, braiding recovers theta (numeric check {worst:.1e})"
    ))
}

fn label(s: Species, mode: usize, sign: Sign) -> GeneratorLabel {
    GeneratorLabel::new(s, mode, sign)
}

fn green(kind: AlgebraKind, p: usize, modes: usize, cutoff: usize) -> Result<GreenAnsatzRep, String> {
    let (mb, mf) = match kind {
        AlgebraKind::Pb => (modes, 0),
        _ => (0, modes),
    };
    let theta = default_theta(kind).map_err(|e| e.to_string())?;
    let deg = default_degrees(kind).map_err(|e| e.to_string())?;
    build_green_rep(kind, p, mb, mf, cutoff, &theta, &deg).map_err(|e| e.to_string())
}

fn dist(a: &SparseVec, b: &SparseVec) -> f64 {
    a.to_dense().iter().zip(b.to_dense()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let (mut rel, mut me, mut vac) = (0.0f64, 0.0f64, 0.0f64);
    for p in 1..=3 {
        for modes in 1..=2 {
            let rep = green(AlgebraKind::Pb, p, modes, 6)?;
            let report = verify_relations(&rep.generators, AlgebraKind::Pb, Some(&rep.interior_mask()), 1e-10)
                .map_err(|e| e.to_string())?;
            ensure(report.passed, || format!("p={p} modes={modes}: {:?}", report.worst_relation))?;
            rel = rel.max(report.max_residual);

            let v0 = rep.vacuum();
            for i in 1..=modes {
                for j in 1..=modes {
                    let up = rep.generator(label(Species::Boson, j, Sign::Plus)).unwrap();
                    let down = rep.generator(label(Species::Boson, i, Sign::Minus)).unwrap();
                    let got = down.apply(&up.apply(&v0).unwrap()).unwrap();
                    let want = if i == j { v0.scale(c(p as f64)) } else { SparseVec::zeros(rep.dim()) };
                    vac = vac.max(dist(&got, &want));
                }
            }

            if modes == 1 {
                let module = fock_submodule(&rep, 1e-10).map_err(|e| e.to_string())?;
                let b = module.generator(label(Species::Boson, 1, Sign::Plus)).unwrap();
                for m in 0..6u32 {
                    let (lo, hi) = (module.level_indices(m), module.level_indices(m + 1));
                    ensure(lo.len() == 1 && hi.len() == 1, || format!("p={p}: level {m} not one-dimensional"))?;
                    let n = (m / 2) as f64;
                    let expected = if m % 2 == 0 { (2.0 * n + p as f64).sqrt() } else { (2.0 * n + 2.0).sqrt() };
                    me = me.max((b[(hi[0], lo[0])] - c(expected)).norm());
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(rel <= 1e-10 && me <= 1e-10 && vac <= 1e-12, || {
        format!("relations {rel:e}, matrix elements {me:e}, vacuum {vac:e}")
    })?;
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "p=1..3, modes 1..2: relations {rel:.1e}, sqrt(2n+p)/sqrt(2n+2) {me:.1e}, B-B+|0> {vac:.1e} ({secs:.1} s)"
    ))
}

fn criterion_4() -> Check {
    for p in 1..=3 {
        for modes in 1..=2 {
            let rep = green(AlgebraKind::Pf, p, modes, 6)?;
            let report =
                verify_relations(&rep.generators, AlgebraKind::Pf, None, 1e-10).map_err(|e| e.to_string())?;
            ensure(report.max_residual == 0.0, || {
                format!("p={p} modes={modes}: residual {:e}", report.max_residual)
            })?;
            for i in 1..=modes {
                let f = rep.generator(label(Species::Fermion, i, Sign::Plus)).unwrap();
                let top = f.pow(p as u32 + 1).map_err(|e| e.to_string())?;
                ensure(top.max_abs() == 0.0, || format!("p={p}: (F+)^(p+1) != 0"))?;
                ensure(f.pow(p as u32).unwrap().max_abs() > 0.0, || format!("p={p}: (F+)^p = 0"))?;
            }
            let module = fock_submodule(&rep, 1e-10).map_err(|e| e.to_string())?;
            for i in 1..=modes {
                let up = module.generator(label(Species::Fermion, i, Sign::Plus)).unwrap();
                let down = module.generator(label(Species::Fermion, i, Sign::Minus)).unwrap();
                let half = &(&(up * down) - &(down * up)).scale(c(0.5));
                let n = half + &ComplexMatrix::identity(module.dim()).scale(c(p as f64 / 2.0));
                let ev = hermitian_eigenvalues(&n).map_err(|e| e.to_string())?;
                let max = ev.iter().copied().fold(f64::MIN, f64::max);
                let min = ev.iter().copied().fold(f64::MAX, f64::min);
                ensure(min >= -1e-10 && (max - p as f64).abs() <= 1e-10, || {
                    format!("p={p} mode {i}: occupation range [{min}, {max}]")
                })?;
            }
        }
    }
    Ok("p=1..3, modes 1..2: relations exact, (F+)^(p+1) = 0, occupation in 0..=p".into())
}

/// One-dimensional on the boundary `m = 0`, `n = 0`, `n = p`, two-dimensional inside.
fn expected_dim(p: usize, m: u32, n: u32) -> usize {
    if m == 0 || n == 0 || n as usize == p {
        1
    } else {
        2
    }
}

fn criterion_5() -> Check {
    let mut notes = Vec::new();
    for p in 1..=3 {
        let search = factor_search(p, 6, 1e-10).map_err(|e| e.to_string())?;
        let passing = search.passing();
        ensure(!passing.is_empty(), || format!("p={p}: no factor passes"))?;
        let trivial = search.candidates.iter().find(|c| c.theta.is_trivial()).unwrap();
        if p >= 2 {
            ensure(!trivial.pbf_passed, || format!("p={p}: trivial factor passes"))?;
        }
        for cand in &passing {
            let rep = build_pbf_rep(p, 6, &cand.theta, &cand.degrees).map_err(|e| e.to_string())?;
            let dims = subspace_dims(&rep);
            for m in 0..=3u32 {
                for n in 0..=p as u32 {
                    let got = dims.get(&(m, n)).copied().unwrap_or(0);
                    ensure(got == expected_dim(p, m, n), || {
                        format!("p={p} theta={}: dim V({m},{n}) = {got}", cand.theta)
                    })?;
                }
            }
        }
        notes.push(format!("p={p}: {} passing", passing.len()));
    }
    Ok(format!("{}; trivial factor fails for p>=2; ladder dims match", notes.join(", ")))
}

fn ladder(p: usize) -> Result<PbfFockRep, String> {
    let s = factor_search(p, 6, 1e-10).map_err(|e| e.to_string())?;
    let best = s.passing().first().map(|c| (c.theta.clone(), c.degrees.clone())).ok_or("no passer")?;
    build_pbf_rep(p, 6, &best.0, &best.1).map_err(|e| e.to_string())
}

fn params(p: usize, omega_b: f64, omega_f: f64, coupling: Coupling) -> JCParams {
    JCParams {
        omega_b,
        omega_f,
        coupling,
        p,
        boson_cutoff: 6,
    }
}

fn criterion_6() -> Check {
    let mut offblock = 0.0f64;
    let mut free_err = 0.0f64;
    let mut drift = 0.0f64;
    let times: Vec<f64> = (0..1000).map(|k| 0.02 * k as f64).collect();
    for p in 1..=3 {
        let rep = ladder(p)?;
        for (kind, coupling) in [
            (HamiltonianKind::Dyn, Coupling::Single(c(0.3))),
            (
                HamiltonianKind::DynStar,
                Coupling::Pair {
                    lambda1: C64::new(0.2, 0.1),
                    lambda2: C64::new(0.1, -0.05),
                },
            ),
        ] {
            let pr = params(p, 1.0, 0.8, coupling);
            let v = interaction(kind, &pr, &rep).map_err(|e| e.to_string())?;
            offblock = offblock.max(selection_rule_check(&v, &rep).map_err(|e| e.to_string())?.max_offblock);
            let h = build_hamiltonian(kind, &pr, &rep).map_err(|e| e.to_string())?;
            let mut psi = vec![c(0.0); rep.dim()];
            psi[rep.position(LadderLabel { m: 2, n: 0, branch: 0 }).unwrap()] = c(1.0);
            drift = drift.max(evolve(&h, &psi, &times, &rep).map_err(|e| e.to_string())?.norm_drift);
        }
        let (wb, wf) = (1.3, 0.7);
        let hf = build_hamiltonian(HamiltonianKind::Free, &params(p, wb, wf, Coupling::Single(c(0.0))), &rep)
            .map_err(|e| e.to_string())?;
        for (i, a) in rep.labels.iter().enumerate() {
            for j in 0..rep.dim() {
                let want = if i == j { wb * a.m as f64 + wf * a.n as f64 } else { 0.0 };
                free_err = free_err.max((hf[(i, j)] - c(want)).norm());
            }
        }
    }

    // p = 1 against the textbook Jaynes-Cummings matrix.
    let rep = ladder(1)?;
    let (wb, wf, lam) = (1.1, 0.9, 0.35);
    let h = build_hamiltonian(HamiltonianKind::Dyn, &params(1, wb, wf, Coupling::Single(c(lam))), &rep)
        .map_err(|e| e.to_string())?;
    let mut jc_err = 0.0f64;
    for (i, a) in rep.labels.iter().enumerate() {
        for (j, b) in rep.labels.iter().enumerate() {
            let want = if i == j {
                wb * a.m as f64 + wf * a.n as f64
            } else if a.n + b.n == 1 && a.m + a.n == b.m + b.n {
                lam * (a.m.max(b.m) as f64).sqrt()
            } else {
                0.0
            };
            jc_err = jc_err.max((h[(i, j)] - c(want)).norm());
        }
    }

    // Resonant Rabi oscillation from (1,0).
    let lam = 0.25;
    let h = build_hamiltonian(HamiltonianKind::Dyn, &params(1, 1.0, 1.0, Coupling::Single(c(lam))), &rep)
        .map_err(|e| e.to_string())?;
    let mut psi = vec![c(0.0); rep.dim()];
    psi[rep.position(LadderLabel { m: 1, n: 0, branch: 0 }).unwrap()] = c(1.0);
    let q = evolve(&h, &psi, &times, &rep).map_err(|e| e.to_string())?;
    drift = drift.max(q.norm_drift);
    let mut rabi = 0.0f64;
    for (k, &t) in q.times.iter().enumerate() {
        let c2 = (lam * t).cos().powi(2);
        rabi = rabi.max((q.population(k, 1, 0).unwrap() - c2).abs());
        rabi = rabi.max((q.population(k, 0, 1).unwrap() - (1.0 - c2)).abs());
    }

    ensure(offblock <= 1e-12, || format!("selection-rule off-block {offblock:e}"))?;
    ensure(free_err <= 1e-10, || format!("H_free deviation {free_err:e}"))?;
    ensure(jc_err <= 1e-12, || format!("p=1 JC matrix deviation {jc_err:e}"))?;
    ensure(rabi <= 1e-8, || format!("Rabi deviation {rabi:e}"))?;
    ensure(drift <= 1e-10, || format!("norm drift {drift:e}"))?;
    Ok(format!(
        "off-block {offblock:.1e}, H_free {free_err:.1e}, JC p=1 {jc_err:.1e}, Rabi {rabi:.1e}, drift {drift:.1e} over 1000 points"
    ))
}

fn cli_outputs(args: &[&str]) -> Result<BTreeMap<String, Vec<u8>>, String> {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let status = Command::new(env!("CARGO_BIN_EXE_parastat"))
        .args(args)
        .arg("--out")
        .arg(dir.path())
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), || {
        format!("{args:?}: {}", String::from_utf8_lossy(&status.stderr))
    })?;
    let mut files = BTreeMap::new();
    for e in std::fs::read_dir(dir.path()).map_err(|e| e.to_string())? {
        let e = e.map_err(|e| e.to_string())?;
        let bytes = std::fs::read(e.path()).map_err(|e| e.to_string())?;
        files.insert(e.file_name().to_string_lossy().into_owned(), bytes);
    }
    let stdout = String::from_utf8_lossy(&status.stdout).replace(&*dir.path().to_string_lossy(), "OUT");
    files.insert("stdout".into(), stdout.into_bytes());
    Ok(files)
}

fn criterion_7() -> Check {
    let runs: [&[&str]; 4] = [
        &["classify", "--group", "Z2xZ2"],
        &["verify", "--kind", "PB", "--p", "3", "--modes-b", "2"],
        &["fock", "--kind", "PBF", "--p", "3"],
        &["jc", "--p", "3", "--hamiltonian", "dynstar", "--lambda1", "0.2+0.1j", "--lambda2", "0.1-0.05j"],
    ];
    for args in runs {
        let (a, b) = (cli_outputs(args)?, cli_outputs(args)?);
        ensure(a == b, || format!("{args:?}: outputs differ between runs"))?;
    }

    let start = Instant::now();
    let p = 3;
    let search = factor_search(p, 6, 1e-10).map_err(|e| e.to_string())?;
    let best = search.passing().first().map(|c| (*c).clone()).ok_or("no passer")?;
    let rep = build_green_rep(AlgebraKind::Pbf, p, 1, 1, 7, &best.theta, &best.degrees).map_err(|e| e.to_string())?;
    let pr = params(p, 1.0, 0.8, Coupling::Single(c(0.2)));
    let h = build_green_hamiltonian(HamiltonianKind::Dyn, &pr, &rep).map_err(|e| e.to_string())?;
    let eig = hermitian_eig_blocked(&h, &excitation_keys(&rep)).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let trace: f64 = (0..h.rows()).map(|i| h[(i, i)].re).sum();
    let sum: f64 = eig.values.iter().sum();
    ensure(eig.values.len() == 4096, || format!("{} eigenvalues", eig.values.len()))?;
    ensure((trace - sum).abs() <= 1e-8 * trace.abs().max(1.0), || {
        format!("trace {trace} vs eigenvalue sum {sum}")
    })?;
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "4 CLI runs byte-identical; dim-4096 PBF p=3 Green space built and fully diagonalized in {secs:.1} s"
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("classification counts", criterion_1),
        ("R-matrix correctness", criterion_2),
        ("paraboson Green ansatz", criterion_3),
        ("parafermion Green ansatz", criterion_4),
        ("PBF factor search and ladder", criterion_5),
        ("JC model", criterion_6),
        ("determinism and performance", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
