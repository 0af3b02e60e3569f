//! End-to-end acceptance suite. Runs all ten criteria in order and prints
//! one pass/fail line per criterion (visible with `--nocapture`, and on
//! any failure).

use std::time::Instant;

use nalgebra::DMatrix;
use num::{BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isorelax::closure::{adjacency_algebra_dim, partial_equivalence};
use isorelax::conic::{
    k_isomorphic_sdp, lasserre1_feasible, solve_theta, ConeKind, Feasibility, SolverOptions,
};
use isorelax::graphs::{
    contains_clique, cycle, exact_isomorphism, isomorphism_product, named_graph, Graph,
};
use isorelax::isomaps::{
    apply_map, build_cp_from_isomorphisms, build_dnn_choi_from_wl, choi_of, kraus_decompose,
    verify_iso_matrix, verify_map_properties, IsoEntries, IsoMatrix, MapDirection,
};
use isorelax::relations::{decide_all, decide_relation, Relation};
use isorelax::spectral::{adjacency_cospectral, fractional_isomorphic, regularity_profile};
use isorelax::wl::{wl2_stabilize, wl_equivalent};

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges.into_iter()).unwrap()
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

/// Criterion 1: the 16-vertex pair separating the PSD relaxation from the
/// DNN one, decided by exact algebraic routes.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let q4 = named_graph("q4", &[]).unwrap();
    let hof = named_graph("hoffman", &[]).unwrap();
    let psd = decide_relation(&q4, &hof, Relation::Psd);
    let dnn = decide_relation(&q4, &hof, Relation::Dnn);
    let psd_kind = psd.certificate["kind"].as_str().unwrap_or("").to_string();
    let dnn_kind = dnn.certificate["kind"].as_str().unwrap_or("").to_string();
    let algebraic =
        !psd_kind.contains("fastpath") && !dnn_kind.contains("fastpath");
    let elapsed = start.elapsed().as_secs_f64();
    if psd.holds && !dnn.holds && algebraic && elapsed < 10.0 {
        ok(format!(
            "psd holds ({psd_kind}), dnn fails ({dnn_kind}), {elapsed:.2}s"
        ))
    } else {
        fail(format!(
            "psd.holds={} ({psd_kind}), dnn.holds={} ({dnn_kind}), {elapsed:.2}s",
            psd.holds, dnn.holds
        ))
    }
}

/// Criterion 2: the strongly regular pair equivalent under 2-WL yet
/// separated by a K4 subgraph count.
fn criterion_2() -> Outcome {
    let start = Instant::now();
    let rook = named_graph("rook4", &[]).unwrap();
    let shrik = named_graph("shrikhande", &[]).unwrap();
    let wl = wl_equivalent(&rook, &shrik).is_some();
    let k4_rook = contains_clique(&rook, 4);
    let k4_shrik = contains_clique(&shrik, 4);
    let iso = exact_isomorphism(&rook, &shrik);
    let elapsed = start.elapsed().as_secs_f64();
    if wl && k4_rook && !k4_shrik && iso.is_none() && elapsed < 10.0 {
        ok(format!(
            "WL-equivalent, K4 in rook4 only, no isomorphism, {elapsed:.2}s"
        ))
    } else {
        fail(format!(
            "wl={wl}, k4=({k4_rook},{k4_shrik}), iso={}, {elapsed:.2}s",
            iso.is_some()
        ))
    }
}

/// Criterion 3: fractional isomorphism without PSD isomorphism, refuted
/// exactly by non-cospectrality.
fn criterion_3() -> Outcome {
    let start = Instant::now();
    let c6 = cycle(6);
    let tt = named_graph("two_triangles", &[]).unwrap();
    let frac = fractional_isomorphic(&c6, &tt).is_some();
    let psd = partial_equivalence(&c6, &tt);
    let cospectral = adjacency_cospectral(&c6, &tt);
    let elapsed = start.elapsed().as_secs_f64();
    if frac && !psd && !cospectral && elapsed < 1.0 {
        ok(format!(
            "fractional holds, psd fails (non-cospectral), {elapsed:.3}s"
        ))
    } else {
        fail(format!(
            "frac={frac}, psd={psd}, cospectral={cospectral}, {elapsed:.3}s"
        ))
    }
}

/// Criterion 4: theta engine against closed forms, and the entrywise
/// nonnegative variant never exceeding the plain one.
fn criterion_4() -> Outcome {
    let opts = SolverOptions {
        tol: 1e-8,
        max_iters: 100_000,
    };
    let cases = [
        (Graph::empty(5), 5.0, 1e-4),
        (named_graph("complete", &[5]).unwrap(), 1.0, 1e-4),
        (cycle(5), 5.0_f64.sqrt(), 1e-3),
    ];
    for (g, want, tol) in &cases {
        let start = Instant::now();
        let sol = solve_theta(g, ConeKind::Psd, &opts);
        let elapsed = start.elapsed().as_secs_f64();
        if !sol.converged || (sol.value - want).abs() > *tol || elapsed > 30.0 {
            return fail(format!(
                "closed form: got {:.6}, want {want:.6} +/- {tol:.0e}, converged {}, {elapsed:.2}s",
                sol.value, sol.converged
            ));
        }
    }
    let tight = SolverOptions {
        tol: 1e-9,
        max_iters: 200_000,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(4001);
    let mut worst: f64 = f64::NEG_INFINITY;
    for _ in 0..20 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let start = Instant::now();
        let psd = solve_theta(&g, ConeKind::Psd, &tight);
        let dnn = solve_theta(&g, ConeKind::Dnn, &tight);
        let elapsed = start.elapsed().as_secs_f64();
        if !psd.converged || !dnn.converged || elapsed > 60.0 {
            return fail(format!(
                "random n={n}: converged ({},{}), {elapsed:.2}s",
                psd.converged, dnn.converged
            ));
        }
        worst = worst.max(dnn.value - psd.value);
    }
    if worst <= 2e-6 {
        ok(format!(
            "closed forms match; worst nonneg-variant excess {worst:.2e} <= 2e-6 over 20 random graphs"
        ))
    } else {
        fail(format!("nonneg variant exceeded plain theta by {worst:.2e}"))
    }
}

/// Criterion 5: theta of the isomorphism product attains |V_G| exactly
/// when the relaxation holds, on the 256-vertex products.
fn criterion_5() -> Outcome {
    let q4 = named_graph("q4", &[]).unwrap();
    let hof = named_graph("hoffman", &[]).unwrap();
    let rook = named_graph("rook4", &[]).unwrap();
    let shrik = named_graph("shrikhande", &[]).unwrap();
    let opts = SolverOptions::default();

    let start = Instant::now();
    let (psd_report, _) = k_isomorphic_sdp(&q4, &hof, ConeKind::Psd, &opts);
    let t_psd = start.elapsed().as_secs_f64();
    if psd_report.holds != Some(true)
        || psd_report.value < 16.0 - 0.05
        || psd_report.block_sum_residual.unwrap_or(1.0) > 1e-4
        || t_psd > 600.0
    {
        return fail(format!(
            "psd product: holds={:?}, value={:.5}, blocksum={:?}, {t_psd:.1}s",
            psd_report.holds, psd_report.value, psd_report.block_sum_residual
        ));
    }

    // delta pinned from the first converged run of this solver, which
    // reached 14.7446 (gap 1.255)
    let delta = 1.0;
    let start = Instant::now();
    let product = isomorphism_product(&q4, &hof);
    let dnn = solve_theta(&product, ConeKind::Dnn, &opts);
    let t_dnn = start.elapsed().as_secs_f64();
    if !dnn.converged || dnn.value >= 16.0 - delta || t_dnn > 600.0 {
        return fail(format!(
            "dnn product: value={:.5} (need < {:.1}), converged={}, {t_dnn:.1}s",
            dnn.value,
            16.0 - delta,
            dnn.converged
        ));
    }

    let start = Instant::now();
    let (rook_report, _) = k_isomorphic_sdp(&rook, &shrik, ConeKind::Dnn, &opts);
    let t_rook = start.elapsed().as_secs_f64();
    if rook_report.holds != Some(true) || rook_report.value < 16.0 - 0.05 || t_rook > 600.0 {
        return fail(format!(
            "rook product: holds={:?}, value={:.5}, {t_rook:.1}s",
            rook_report.holds, rook_report.value
        ));
    }
    ok(format!(
        "psd {:.4} ({t_psd:.1}s), dnn {:.4} < {:.1} ({t_dnn:.1}s), rook dnn {:.4} ({t_rook:.1}s)",
        psd_report.value,
        dnn.value,
        16.0 - delta,
        rook_report.value
    ))
}

/// Criterion 6: level-1 moment feasibility always matches the exact
/// algebraic decision (plain vs entrywise-nonnegative variants).
fn criterion_6() -> Outcome {
    let opts = SolverOptions::default();
    let mut pairs: Vec<(Graph, Graph)> = vec![
        (
            named_graph("q4", &[]).unwrap(),
            named_graph("hoffman", &[]).unwrap(),
        ),
        (
            named_graph("rook4", &[]).unwrap(),
            named_graph("shrikhande", &[]).unwrap(),
        ),
        (cycle(6), named_graph("two_triangles", &[]).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6001);
    for i in 0..10 {
        let n = rng.gen_range(2..=5);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let h = if i % 2 == 0 {
            g.relabel(&random_permutation(&mut rng, n))
        } else {
            let p2 = rng.gen_range(0.2..0.8);
            random_graph(&mut rng, n, p2)
        };
        pairs.push((g, h));
    }
    for (idx, (g, h)) in pairs.iter().enumerate() {
        for nonneg in [false, true] {
            match lasserre1_feasible(g, h, nonneg, &opts) {
                Ok(Feasibility::Undecided) => {
                    return fail(format!("pair {idx} nonneg={nonneg}: undecided"))
                }
                // lasserre1_feasible cross-checks internally; Ok(decided)
                // means the moment system agreed with the algebraic route
                Ok(_) => {}
                Err(e) => return fail(format!("pair {idx}: {e}")),
            }
        }
    }
    ok(format!(
        "{} pairs x 2 variants all match the algebraic decisions",
        pairs.len()
    ))
}

/// Criterion 7: pinned algebra dimensions and the exact Schur recovery of
/// the cycle inside its distance-power graph.
fn criterion_7() -> Outcome {
    let c10 = cycle(10);
    let dp10 = named_graph("dist_power", &[10, 1, 2]).unwrap();
    let dp8 = named_graph("dist_power", &[8, 2, 3]).unwrap();

    let d_c10 = adjacency_algebra_dim(&c10);
    let d_dp10 = adjacency_algebra_dim(&dp10);
    if d_c10 != 6 || d_dp10 != 5 {
        return fail(format!(
            "adjacency algebra dims: C10={d_c10} (want 6), distance power={d_dp10} (want 5)"
        ));
    }

    // A_{C10} = A'.(A'^2) - A' entrywise, exactly, where A' is the
    // distance-power adjacency: the cycle is recoverable inside the
    // partially coherent algebra of its distance power
    let a_prime = dp10.adjacency();
    let recovered = a_prime.schur(&a_prime.mul(&a_prime)).sub(&a_prime);
    if recovered.sub(&c10.adjacency()).max_abs() != num::BigInt::from(0) {
        return fail("Schur recovery of A_{C10} failed");
    }

    let (_, basis) = wl2_stabilize(&dp8);
    let profile = regularity_profile(&dp8);
    if basis.dim() != 5 || profile.one_walk_regular {
        return fail(format!(
            "C8 distance power: coherent dim {} (want 5), 1-walk-regular {}",
            basis.dim(),
            profile.one_walk_regular
        ));
    }
    ok("dims 6/5/5 as pinned; exact Schur recovery; not 1-walk-regular")
}

/// Criterion 8: over the whole corpus, verdicts respect the implication
/// chain exact => dnn => psd => fractional.
fn criterion_8() -> Outcome {
    let named: Vec<Graph> = [
        ("cycle", vec![5]),
        ("cycle", vec![6]),
        ("two_triangles", vec![]),
        ("q4", vec![]),
        ("hoffman", vec![]),
        ("rook4", vec![]),
        ("shrikhande", vec![]),
        ("path", vec![5]),
        ("complete", vec![4]),
        ("empty", vec![4]),
        ("dist_power", vec![10, 1, 2]),
        ("dist_power", vec![8, 2, 3]),
    ]
    .iter()
    .map(|(n, p)| named_graph(n, p).unwrap())
    .collect();

    let mut pairs: Vec<(Graph, Graph)> = Vec::new();
    for (i, g) in named.iter().enumerate() {
        for h in named.iter().skip(i) {
            if g.n() == h.n() {
                pairs.push((g.clone(), h.clone()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8001);
    while pairs.len() < 60 {
        let n = rng.gen_range(2..=6);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let h = if rng.gen_bool(0.3) {
            g.relabel(&random_permutation(&mut rng, n))
        } else {
            let p2 = rng.gen_range(0.2..0.8);
            random_graph(&mut rng, n, p2)
        };
        pairs.push((g, h));
    }

    for (idx, (g, h)) in pairs.iter().enumerate() {
        let v = decide_all(g, h);
        // [exact, dnn, psd, fractional]: each implies the next
        for w in 0..3 {
            if v[w] && !v[w + 1] {
                return fail(format!(
                    "pair {idx} (n={},{}): verdicts {:?} violate the chain",
                    g.n(),
                    h.n(),
                    v
                ));
            }
        }
    }
    ok(format!("{} pairs, no chain violations", pairs.len()))
}

fn iso_suite() -> Vec<(String, IsoMatrix, Graph, Graph)> {
    let mut suite = Vec::new();

    let c5 = cycle(5);
    let ident: Vec<usize> = (0..5).collect();
    let (m, _) =
        build_cp_from_isomorphisms(&c5, &c5, &[ident], &[BigRational::one()]).unwrap();
    suite.push(("identity permutation on C5".to_string(), m, c5.clone(), c5.clone()));

    let c4 = cycle(4);
    let half = BigRational::new(1.into(), 2.into());
    let (m, _) = build_cp_from_isomorphisms(
        &c4,
        &c4,
        &[vec![1, 2, 3, 0], (0..4).collect()],
        &[half.clone(), half],
    )
    .unwrap();
    suite.push(("automorphism mixture on C4".to_string(), m, c4.clone(), c4.clone()));

    let eq = wl_equivalent(&c5, &c5).unwrap();
    let m = build_dnn_choi_from_wl(&c5, &c5, &eq);
    suite.push(("WL class projection on C5".to_string(), m, c5.clone(), c5.clone()));

    let rook = named_graph("rook4", &[]).unwrap();
    let shrik = named_graph("shrikhande", &[]).unwrap();
    let eq = wl_equivalent(&rook, &shrik).unwrap();
    let m = build_dnn_choi_from_wl(&rook, &shrik, &eq);
    suite.push(("WL Choi rook4 to shrikhande".to_string(), m, rook, shrik));

    // a solver-produced floating matrix, solved tightly enough to certify
    let tight = SolverOptions {
        tol: 1e-10,
        max_iters: 200_000,
    };
    let (_, sol) = k_isomorphic_sdp(&c5, &c5, ConeKind::Dnn, &tight);
    let scale = 5.0 / sol.m.trace();
    suite.push((
        "solver output on C5 x C5".to_string(),
        IsoMatrix {
            n_g: 5,
            n_h: 5,
            cone: ConeKind::Dnn,
            entries: IsoEntries::Float(&sol.m * scale),
        },
        c5.clone(),
        c5,
    ));

    suite
}

/// Criterion 9: Choi/Kraus machinery on every certificate in the suite,
/// plus the brute-forced equivalence of the zero-pattern condition with
/// Schur commutation on small instances.
fn criterion_9() -> Outcome {
    for (name, m, g, h) in iso_suite() {
        let rep = verify_iso_matrix(&m, &g, &h);
        if !rep.pass {
            return fail(format!("{name}: conditions fail ({rep:?})"));
        }

        let mf = m.to_f64();
        let rebuilt = choi_of(m.n_g, m.n_h, |x| {
            apply_map(&m, x, MapDirection::Forward).unwrap()
        });
        if (rebuilt - &mf).amax() > 1e-12 {
            return fail(format!("{name}: Choi round trip not exact"));
        }

        let ks = match kraus_decompose(&m) {
            Ok(ks) => ks,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(9001);
        for _ in 0..3 {
            let raw = DMatrix::from_fn(m.n_g, m.n_g, |_, _| rng.gen_range(-1.0..1.0));
            let x = (&raw + raw.transpose()) * 0.5;
            let direct = apply_map(&m, &x, MapDirection::Forward).unwrap();
            let mut sum = DMatrix::zeros(m.n_h, m.n_h);
            for k in &ks {
                sum += k * &x * k.transpose();
            }
            if (direct - sum).amax() > 1e-8 {
                return fail(format!("{name}: Kraus reconstruction off"));
            }
        }
        let mut ktk = DMatrix::zeros(m.n_g, m.n_g);
        let mut kkt = DMatrix::zeros(m.n_h, m.n_h);
        for k in &ks {
            ktk += k.transpose() * k;
            kkt += k * k.transpose();
        }
        if (ktk - DMatrix::identity(m.n_g, m.n_g)).amax() > 1e-8
            || (kkt - DMatrix::identity(m.n_h, m.n_h)).amax() > 1e-8
        {
            return fail(format!("{name}: Kraus operators not bistochastic"));
        }

        let props = verify_map_properties(&m, &g, &h, 9002);
        if props.projector_transport_residual > 1e-6 || props.adjoint_transport_residual > 1e-6 {
            return fail(format!(
                "{name}: eigenprojector transport residual {:.2e}/{:.2e}",
                props.projector_transport_residual, props.adjoint_transport_residual
            ));
        }
    }

    match pattern_schur_bruteforce() {
        Ok(checked) => ok(format!(
            "suite of 5 certificates passes; pattern/Schur equivalence on {checked} small instances"
        )),
        Err(e) => fail(e),
    }
}

/// Zero pattern (entries vanish on relation mismatches) must hold exactly
/// when the map commutes with Schur multiplication by I and by A_G on
/// random probes.
fn pattern_schur_bruteforce() -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9003);
    let mut checked = 0;
    for trial in 0..12 {
        let n = rng.gen_range(2..=4);
        let g = random_graph(&mut rng, n, 0.5);
        let h = random_graph(&mut rng, n, 0.5);
        let order = n * n;
        let raw = DMatrix::from_fn(order, order, |_, _| rng.gen_range(-1.0..1.0));
        let mut mf = (&raw + raw.transpose()) * 0.5;
        let enforce = trial % 2 == 0;
        if enforce {
            for a in 0..n {
                for b in 0..n {
                    for a2 in 0..n {
                        for b2 in 0..n {
                            if g.rel(a, a2).unwrap() != h.rel(b, b2).unwrap() {
                                mf[(a * n + b, a2 * n + b2)] = 0.0;
                            }
                        }
                    }
                }
            }
        }
        let mut pattern_holds = true;
        for a in 0..n {
            for b in 0..n {
                for a2 in 0..n {
                    for b2 in 0..n {
                        if g.rel(a, a2).unwrap() != h.rel(b, b2).unwrap()
                            && f64::abs(mf[(a * n + b, a2 * n + b2)]) > 1e-12
                        {
                            pattern_holds = false;
                        }
                    }
                }
            }
        }
        let m = IsoMatrix {
            n_g: n,
            n_h: n,
            cone: ConeKind::Psd,
            entries: IsoEntries::Float(mf),
        };
        let ag = g.adjacency_f64();
        let ah = h.adjacency_f64();
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let raw = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            let w = (&raw + raw.transpose()) * 0.5;
            let fw = apply_map(&m, &w, MapDirection::Forward).unwrap();
            // Schur product with I keeps the diagonal, with A the edges
            let iw = DMatrix::from_fn(n, n, |i, j| if i == j { w[(i, j)] } else { 0.0 });
            let aw = ag.component_mul(&w);
            let lhs1 = apply_map(&m, &iw, MapDirection::Forward).unwrap();
            let rhs1 = DMatrix::from_fn(n, n, |i, j| if i == j { fw[(i, j)] } else { 0.0 });
            let lhs2 = apply_map(&m, &aw, MapDirection::Forward).unwrap();
            let rhs2 = ah.component_mul(&fw);
            worst = worst.max((lhs1 - rhs1).amax()).max((lhs2 - rhs2).amax());
        }
        let schur_holds = worst <= 1e-8;
        if pattern_holds != schur_holds {
            return Err(format!(
                "trial {trial} (n={n}): pattern={pattern_holds} but Schur commutation={schur_holds} (residual {worst:.2e})"
            ));
        }
        // random probes can only ever miss a violation, never invent one;
        // the trials without the enforced pattern must actually violate it
        if !enforce && pattern_holds {
            continue;
        }
        checked += 1;
    }
    Ok(checked)
}

/// Criterion 10: the exact constructive certificate for the DNN relation
/// on the strongly regular pair.
fn criterion_10() -> Outcome {
    let start = Instant::now();
    let rook = named_graph("rook4", &[]).unwrap();
    let shrik = named_graph("shrikhande", &[]).unwrap();
    let eq = wl_equivalent(&rook, &shrik).unwrap();
    let m = build_dnn_choi_from_wl(&rook, &shrik, &eq);
    let rep = verify_iso_matrix(&m, &rook, &shrik);
    let elapsed = start.elapsed().as_secs_f64();

    // the affine and zero-pattern conditions must hold with zero rational
    // residual, cone membership numerically
    let exact_zero = rep.exact_affine
        && rep.block_row_residual == 0.0
        && rep.block_col_residual == 0.0
        && rep.zero_pattern_residual == 0.0;
    if exact_zero && rep.min_eigenvalue >= -1e-8 && rep.min_entry >= 0.0 && elapsed < 60.0 {
        ok(format!(
            "zero rational residuals, min eigenvalue {:.2e}, {elapsed:.1}s",
            rep.min_eigenvalue
        ))
    } else {
        fail(format!("{rep:?}, {elapsed:.1}s"))
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("psd/dnn separation on q4 vs hoffman", criterion_1),
        ("dnn holds yet K4 separates rook4 vs shrikhande", criterion_2),
        ("fractional-only pair C6 vs two triangles", criterion_3),
        ("theta engine closed forms and cone monotonicity", criterion_4),
        ("product-graph theta attainment at |V|", criterion_5),
        ("level-1 moment feasibility consistency", criterion_6),
        ("pinned algebra dimensions", criterion_7),
        ("implication chain over the corpus", criterion_8),
        ("Choi/Kraus certificate suite", criterion_9),
        ("exact constructive DNN certificate", criterion_10),
    ];
    let mut all_pass = true;
    let mut lines = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let line = format!(
            "criterion {:2} [{}]: {} — {} ({:.1}s)",
            i + 1,
            name,
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        println!("{line}");
        all_pass &= outcome.pass;
        lines.push(line);
    }
    assert!(
        all_pass,
        "acceptance criteria failed:\n{}",
        lines.join("\n")
    );
}
