//! Acceptance suite: one test per release criterion, each printing a
//! single PASS/FAIL line (visible with `cargo test --test acceptance --
//! --nocapture`).  Criterion 8 is exploratory and reports its finding
//! without gating.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use rlie_core::{
    bialgebra_report, classify, coadjoint, d_operator, derived_perp, dual_bracket, dual_connection_check,
    levi_civita, named_algebra, orthogonal_subalgebra, solution_report, abelian_image_check,
    r_to_subspace_form, random_algebra, random_bivector, random_flat, random_metric,
    rpl_compatibility_defect, schouten, search_flat_metric, subspace_form_to_r, Bivector, Error,
    Instance, LieAlgebra, ScalarProduct, Subspace, SymplecticSubspace,
};

fn verdict(number: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {number} ({name}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {number} ({name}) failed: {detail}");
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal))
}

fn random_pair(seed: u64) -> (LieAlgebra, ScalarProduct) {
    let n = 2 + (seed % 5) as usize;
    let alg = random_algebra(n, seed);
    let metric = random_metric(n, seed.wrapping_mul(101).wrapping_add(13), (n, 0)).unwrap();
    (alg, metric)
}

#[test]
fn criterion_1_connection_consistency() {
    let tol = 1e-9;
    let mut worst_ratio = 0.0_f64;
    let mut failures = 0usize;
    for seed in 0..100u64 {
        let (alg, metric) = random_pair(seed);
        let n = alg.dim();
        // levi_civita internally cross-checks the closed form against the
        // trilinear solve and asserts torsion-freeness and skewness, all
        // at tol * (1 + scale); an inconsistency surfaces as Err here
        let conn = match levi_civita(&alg, &metric, tol) {
            Ok(c) => c,
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        let scale = 1.0 + rlie_core::connection_scale(&alg, &metric);
        for i in 0..n {
            for j in 0..n {
                let ei = DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 });
                let ej = DVector::from_fn(n, |k, _| if k == j { 1.0 } else { 0.0 });
                let torsion = conn.apply(&ei, &ej).unwrap() - conn.apply(&ej, &ei).unwrap()
                    - alg.basis_bracket(i, j);
                worst_ratio = worst_ratio.max(torsion.abs().max() / scale);
                for k in 0..n {
                    let ek = DVector::from_fn(n, |m, _| if m == k { 1.0 } else { 0.0 });
                    let skew = metric.inner(&conn.apply(&ei, &ej).unwrap(), &ek)
                        + metric.inner(&ej, &conn.apply(&ei, &ek).unwrap());
                    worst_ratio =
                        worst_ratio.max(skew.abs() / (scale * metric.max_abs_entry()));
                }
            }
        }
    }
    let pass = failures == 0 && worst_ratio <= 1e-9;
    verdict(
        1,
        "connection consistency",
        pass,
        &format!(
            "100 random (algebra, metric) pairs, n in 2..=6; internal route \
             agreement ok on {}/100; worst scaled torsion/skew defect {worst_ratio:.3e}",
            100 - failures
        ),
    );
}

fn flat_instances() -> Vec<Instance> {
    (0..50u64)
        .map(|seed| {
            let p = 1 + (seed % 3) as usize;
            let q = 2 + (seed % 5) as usize;
            random_flat(p, q, seed).unwrap()
        })
        .collect()
}

#[test]
fn criterion_2_flatness_equivalence_suite() {
    let tol = 1e-8;
    let mut flat_ok = 0usize;
    let mut curved_ok = 0usize;
    let mut consistent = 0usize;
    let total_flat = 50usize;

    for inst in flat_instances() {
        let report = classify(&inst.algebra, inst.metric.as_ref().unwrap(), tol).unwrap();
        if report.condition_riemann_lie
            && report.condition_dtheta
            && report.condition_curvature
            && report.condition_milnor
        {
            flat_ok += 1;
        }
        if report.consistent == Some(true) {
            consistent += 1;
        }
    }

    let mut total_curved = 0usize;
    for name in ["so3", "heisenberg3", "aff1"] {
        let alg = named_algebra(name).unwrap();
        for k in 0..20u64 {
            total_curved += 1;
            let metric =
                random_metric(alg.dim(), 1000 + 57 * k, (alg.dim(), 0)).unwrap();
            let report = classify(&alg, &metric, tol).unwrap();
            if !report.condition_riemann_lie
                && !report.condition_dtheta
                && !report.condition_curvature
                && !report.condition_milnor
            {
                curved_ok += 1;
            }
            if report.consistent == Some(true) {
                consistent += 1;
            }
        }
    }

    let pass =
        flat_ok == total_flat && curved_ok == total_curved && consistent == total_flat + total_curved;
    verdict(
        2,
        "flatness equivalence suite",
        pass,
        &format!(
            "{flat_ok}/{total_flat} flat instances all-true, {curved_ok}/{total_curved} curved \
             instances all-false, consistency flag on {consistent}/110"
        ),
    );
}

#[test]
fn criterion_3_structure_of_flat_instances() {
    let tol = 1e-8;
    let mut worst_abelian = 0.0_f64;
    let mut worst_projector = 0.0_f64;
    let mut worst_d = 0.0_f64;
    let mut ideal_failures = 0usize;
    let mut containment_failures = 0usize;
    let mut worst_dtu = 0.0_f64;
    let mut random_u_count = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5717);

    for inst in flat_instances() {
        let alg = &inst.algebra;
        let metric = inst.metric.as_ref().unwrap();
        let n = alg.dim();
        let c = alg.max_structure_constant();

        let s = orthogonal_subalgebra(alg, metric, tol).unwrap();
        for a in 0..s.dim() {
            for b in (a + 1)..s.dim() {
                let br = alg
                    .bracket(&s.basis_vector(a), &s.basis_vector(b))
                    .unwrap();
                worst_abelian = worst_abelian.max(br.abs().max() / (1.0 + c));
            }
        }

        let dperp = derived_perp(alg, metric, tol).unwrap();
        worst_projector = worst_projector.max(s.projector_distance(&dperp));

        for k in 0..dperp.dim() {
            let u = dperp.basis_vector(k);
            let d = d_operator(alg, metric, &u, tol).unwrap();
            let scale = (1.0 + c) * (1.0 + metric.max_abs_entry()) * (1.0 + u.norm());
            worst_d = worst_d.max(d.abs().max() / scale);
        }

        let center = alg.center(tol);
        let zperp = center.complement_under(metric.gram(), tol);
        let flags = alg.subspace_flags(&zperp, tol);
        if !flags.is_ideal {
            ideal_failures += 1;
        }
        if !alg.derived_algebra(tol).is_subset_of(&zperp, 1e-8) {
            containment_failures += 1;
        }

        // |<D_u^t u>| on two random vectors per instance
        for _ in 0..2 {
            random_u_count += 1;
            let u = random_vector(&mut rng, n);
            let d = d_operator(alg, metric, &u, tol).unwrap();
            let dtu = metric.adjoint(&d) * &u;
            let scale = (1.0 + c)
                * (1.0 + metric.max_abs_entry())
                * (1.0 + u.norm() * u.norm());
            worst_dtu = worst_dtu.max(dtu.abs().max() / scale);
        }
    }

    let pass = worst_abelian <= 1e-8
        && worst_projector <= 1e-8
        && worst_d <= 1e-8
        && ideal_failures == 0
        && containment_failures == 0
        && worst_dtu <= 1e-9;
    verdict(
        3,
        "structure of flat instances",
        pass,
        &format!(
            "orthogonal subalgebra abelian (worst {worst_abelian:.3e}), equals derived-perp \
             (worst projector distance {worst_projector:.3e}), D vanishes on derived-perp \
             (worst {worst_d:.3e}), center-perp ideal failures {ideal_failures}, derived \
             containment failures {containment_failures}, worst scaled |D_u^t u| \
             {worst_dtu:.3e} over {random_u_count} random u"
        ),
    );
}

#[test]
fn criterion_4_pairing_and_form_identities() {
    let tol = 1e-9;
    let mut worst_pairing = 0.0_f64;
    for seed in 0..100u64 {
        let n = 2 + (seed % 5) as usize;
        let alg = random_algebra(n, seed);
        let r = random_bivector(n, seed ^ 0x414, None).unwrap();
        let rep = solution_report(&alg, &r, tol).unwrap();
        worst_pairing = worst_pairing.max(rep.pairing_residual / rep.threshold.max(tol));
    }

    let mut worst_form = 0.0_f64;
    let mut subalgebra_cases = 0usize;
    for seed in 0..50u64 {
        let (alg, basis_cols, p) = match seed % 3 {
            0 => {
                let blocks = [
                    named_algebra("heisenberg3").unwrap(),
                    named_algebra(&format!("abelian:{}", 1 + seed % 2)).unwrap(),
                ];
                (rlie_core::direct_sum(&blocks), vec![0usize, 2], 2usize)
            }
            1 => {
                let blocks = [
                    named_algebra("aff1").unwrap(),
                    named_algebra(&format!("abelian:{}", 1 + seed % 2)).unwrap(),
                ];
                (rlie_core::direct_sum(&blocks), vec![0, 1], 2)
            }
            _ => {
                let blocks = [
                    named_algebra("aff1").unwrap(),
                    named_algebra("aff1").unwrap(),
                    named_algebra(&format!("abelian:{}", seed % 2)).unwrap(),
                ];
                (rlie_core::direct_sum(&blocks), vec![0, 1, 2, 3], 4)
            }
        };
        let n = alg.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(77).wrapping_add(5));
        let omega = loop {
            let m = DMatrix::from_fn(p, p, |_, _| rng.sample::<f64, _>(StandardNormal));
            let cand = &m - m.transpose();
            let svd = cand.clone().svd(false, false);
            let smax = svd.singular_values.max();
            let smin = svd.singular_values.min();
            if smin > 1e-2 * smax {
                break cand;
            }
        };
        let mut basis = DMatrix::zeros(n, p);
        for (col, &row) in basis_cols.iter().enumerate() {
            basis[(row, col)] = 1.0;
        }
        let sf =
            SymplecticSubspace::new(Subspace::new(basis, tol).unwrap(), omega, tol).unwrap();
        let r = subspace_form_to_r(&alg, &sf).unwrap();
        let rep = solution_report(&alg, &r, tol).unwrap();
        assert!(rep.image_is_subalgebra, "seed {seed}");
        let residual = rep.form_residual.expect("image is a subalgebra");
        worst_form = worst_form.max(residual / rep.threshold.max(tol));
        subalgebra_cases += 1;
    }

    let pass = worst_pairing <= 1.0 && worst_form <= 1.0 && subalgebra_cases == 50;
    verdict(
        4,
        "pairing and form identities",
        pass,
        &format!(
            "pairing identity on 100 random bivector pairs (worst threshold ratio \
             {worst_pairing:.3e}); form identity on {subalgebra_cases} subalgebra-image \
             pairs (worst ratio {worst_form:.3e})"
        ),
    );
}

#[test]
fn criterion_5_yang_baxter_pipeline() {
    let tol = 1e-9;
    let mut worst = 0.0_f64;
    let mut certified = 0usize;
    let mut total = 0usize;

    let mut check = |alg: &LieAlgebra, metric: &ScalarProduct, sf: &SymplecticSubspace| {
        total += 1;
        let rep = bialgebra_report(alg, metric, sf, tol).unwrap();
        if rep.certified {
            certified += 1;
        }
        worst = worst
            .max(rep.schouten_norm)
            .max(rep.dual_jacobi_defect)
            .max(rep.dual_connection.defect)
            .max(rep.dual_connection.dual_curvature)
            .max(rep.dual_connection.dual_riemann_lie_defect)
            .max(rep.rpl_defect);
        assert!(rep.image_abelian);
        assert!(rep.dual_classification.is_riemann_lie);
    };

    let u2 = named_algebra("u2").unwrap();
    let identity = ScalarProduct::identity(4);
    let mut basis = DMatrix::zeros(4, 2);
    basis[(0, 0)] = 1.0;
    basis[(3, 1)] = 1.0;
    let omega = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
    let sf = SymplecticSubspace::new(Subspace::new(basis, tol).unwrap(), omega, tol).unwrap();
    check(&u2, &identity, &sf);

    for seed in 100..120u64 {
        let p = 2 + (seed % 2) as usize;
        let q = 2 + (seed % 5) as usize;
        let inst = random_flat(p, q, seed).unwrap();
        check(
            &inst.algebra,
            inst.metric.as_ref().unwrap(),
            inst.symplectic.as_ref().unwrap(),
        );
    }

    let pass = certified == total && worst <= 1e-9;
    verdict(
        5,
        "yang-baxter pipeline",
        pass,
        &format!(
            "{certified}/{total} certified (u2 plus 20 flat instances); worst defect across \
             schouten/dual-jacobi/dual-connection/dual-curvature/compatibility {worst:.3e}"
        ),
    );
}

#[test]
fn criterion_6_negative_controls() {
    let tol = 1e-9;
    let h3 = named_algebra("heisenberg3").unwrap();
    let r = Bivector::from_entries(3, &[(0, 1, 1.0)]).unwrap();
    let rep = solution_report(&h3, &r, tol).unwrap();
    let schouten_ok = (rep.schouten_norm - 1.0).abs() <= 1e-9;
    let verdicts_false =
        !rep.verdict_schouten && !rep.verdict_morphism && !rep.verdict_symplectic;

    let so3 = named_algebra("so3").unwrap();
    let identity = ScalarProduct::identity(3);
    let omega = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
    let mut rng = ChaCha8Rng::seed_from_u64(0x906);
    let mut rejected = 0usize;
    for _ in 0..50 {
        let basis = DMatrix::from_fn(3, 2, |_, _| rng.sample::<f64, _>(StandardNormal));
        let sub = Subspace::new(basis, tol).unwrap();
        let sf = SymplecticSubspace::new(sub, omega.clone(), tol).unwrap();
        match bialgebra_report(&so3, &identity, &sf, tol) {
            Err(Error::SubspaceNotAbelian { .. }) | Err(Error::SubspaceNotContained) => {
                rejected += 1
            }
            other => panic!("expected a hypothesis failure, got {other:?}"),
        }
    }

    let pass = schouten_ok && verdicts_false && rep.verdicts_agree && rejected == 50;
    verdict(
        6,
        "negative controls",
        pass,
        &format!(
            "heisenberg3 non-solution: schouten norm {:.12} with all verdicts false; \
             so3 hypothesis rejections {rejected}/50",
            rep.schouten_norm
        ),
    );
}

#[test]
fn criterion_7_subspace_form_round_trip() {
    let tol = 1e-9;
    let mut worst = 0.0_f64;
    for seed in 0..50u64 {
        let n = 4 + (seed % 3) as usize;
        let p = if seed % 2 == 0 { 2 } else { 4 };
        let alg = named_algebra(&format!("abelian:{n}")).unwrap();
        let r = random_bivector(n, seed.wrapping_add(900), Some(p)).unwrap();
        // r_to_subspace_form internally asserts that rebuilding r from the
        // recovered (subspace, form) pair reproduces it; do the comparison
        // explicitly as well
        let sf = r_to_subspace_form(&alg, &r, tol).unwrap();
        assert_eq!(sf.dim(), p, "seed {seed}");
        let r2 = subspace_form_to_r(&alg, &sf).unwrap();
        let defect = (r.matrix() - r2.matrix()).abs().max() / (1.0 + r.max_abs());
        worst = worst.max(defect);
    }
    let pass = worst <= 1e-9;
    verdict(
        7,
        "subspace-form round trip",
        pass,
        &format!("50 random symplectic subspaces, n in 4..=6, rank 2 and 4; worst scaled \
                  entry defect {worst:.3e}"),
    );
}

#[test]
fn criterion_8_lorentzian_search_report() {
    // exploratory: searches signature-(2,1) scalar products on heisenberg3
    // for a flat one and reports the finding without gating the build
    let h3 = named_algebra("heisenberg3").unwrap();
    let search = search_flat_metric(&h3, (2, 1), 24, 400, 2026).unwrap();
    let found = search.best_defect <= 1e-8;
    println!(
        "criterion 8 (lorentzian search, non-blocking): {} — best defect {:.3e} after {} \
         evaluations{}",
        if found { "FOUND" } else { "NOT FOUND" },
        search.best_defect,
        search.evaluations,
        if found {
            format!(
                "; witness gram rows {:?}",
                search
                    .best_gram
                    .row_iter()
                    .map(|row| row.iter().cloned().collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            )
        } else {
            String::new()
        }
    );
    assert!(search.evaluations > 0);
}

// referenced by several criteria through the public surface; kept here so
// the suite exercises them even when individual criteria change
#[allow(dead_code)]
fn exercised_api(alg: &LieAlgebra, metric: &ScalarProduct, r: &Bivector) {
    let _ = schouten(alg, r);
    let _ = dual_bracket(alg, r);
    let _ = coadjoint(alg, &DVector::zeros(alg.dim()));
    let _ = dual_connection_check(alg, metric, r, 1e-9);
    let _ = abelian_image_check(alg, metric, r, 1e-9);
    let _ = rpl_compatibility_defect(alg, metric, r);
}
