use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slocc_core::catalog::{count_check, enumerate_labels, representative};
use slocc_core::counting::{build_table, segre_count, segre_enumerate, REFERENCE_OMEGA};
use slocc_core::exactnum::{ExactMatrix, GaussianRational};
use slocc_core::nonlocal::{
    cross_ratio, eigen_family_state, normal_form_state, reduce_to_normal_form, verify_group_relations,
};
use slocc_core::pencil::{apply_ilo, class_label, ILOTriple, ProjectivePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl PropertyResult {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        PropertyResult { name, passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub results: Vec<PropertyResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&PropertyResult> {
        self.results.iter().find(|r| !r.passed)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail)?;
        }
        Ok(())
    }
}

/// Compares the generated Ω table for `M, N ≤ 10` with `reference`.
pub fn table_check(reference: &[[u64; 9]; 9]) -> PropertyResult {
    let table = build_table(10, 10).expect("valid bounds");
    let bad = table.mismatches_against(reference);
    match bad.first() {
        None => PropertyResult::new("omega-table", true, "81 cells match"),
        Some((m, n, got, want)) => PropertyResult::new(
            "omega-table",
            false,
            format!("{} mismatches, first at ({m},{n}): computed {got}, expected {want}", bad.len()),
        ),
    }
}

fn negative_control() -> PropertyResult {
    let mut tampered = REFERENCE_OMEGA;
    tampered[4][5] += 1;
    let caught = !table_check(&tampered).passed;
    PropertyResult::new("omega-table-negative-control", caught, if caught { "tampered cell detected" } else { "tampered cell not detected" })
}

fn segre_oracle() -> PropertyResult {
    for n in 1..=8 {
        let listed = segre_enumerate(n).len();
        if segre_count(n) != BigUint::from(listed) {
            return PropertyResult::new("segre-oracle", false, format!("n = {n}: count {} vs {listed} listed", segre_count(n)));
        }
    }
    PropertyResult::new("segre-oracle", true, "n = 1..8")
}

fn catalog_counts() -> PropertyResult {
    let mut cells = 0;
    for m in 2..=10 {
        for n in m..=(2 * m).min(10) {
            let r = count_check(m, n).expect("valid dimensions");
            if !r.passed() {
                return PropertyResult::new(
                    "catalog-counts",
                    false,
                    format!("{m}x{n}: {} labels, omega {}", r.enumerated, r.omega_total),
                );
            }
            cells += 1;
        }
    }
    PropertyResult::new("catalog-counts", true, format!("{cells} dimension pairs"))
}

fn group_relations(rng: &mut ChaCha8Rng) -> PropertyResult {
    let mut checks = 0;
    for m in 3..=7 {
        for h in [false, true] {
            let r = verify_group_relations(m, h, 50, rng).expect("m >= 3");
            if !r.passed() {
                return PropertyResult::new("group-relations", false, r.to_string().trim_end().to_string());
            }
            checks += r.checks.iter().map(|c| c.checked).sum::<usize>();
        }
    }
    PropertyResult::new("group-relations", true, format!("m = 3..7, {checks} relation checks"))
}

fn small_rational(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::ratio(rng.random_range(-9..=9), rng.random_range(1..=9))
}

fn reduction(rng: &mut ChaCha8Rng, trials: usize) -> PropertyResult {
    let mut done = 0;
    while done < trials {
        let m = rng.random_range(2..=6);
        let n = m + rng.random_range(1..=3);
        let eigs: Vec<GaussianRational> = (0..m).map(|_| small_rational(rng)).collect();
        let Ok((v, op)) = reduce_to_normal_form(&eigs, n) else { continue };
        let s = eigen_family_state(&eigs, n).expect("m < N");
        if apply_ilo(&s, &op).ok() != normal_form_state(&v, n).ok() {
            return PropertyResult::new("normal-form-reduction", false, format!("eigenvalues {eigs:?}, N = {n}"));
        }
        done += 1;
    }
    PropertyResult::new("normal-form-reduction", true, format!("{trials} families"))
}

fn cross_ratio_invariance(rng: &mut ChaCha8Rng, trials: usize) -> PropertyResult {
    let point = |rng: &mut ChaCha8Rng| {
        if rng.random_range(0..8) == 0 {
            ProjectivePoint::infinity()
        } else {
            let im = GaussianRational::from(rng.random_range(-2..=2));
            ProjectivePoint::finite(&small_rational(rng) + &(&GaussianRational::i() * &im))
        }
    };
    let mut done = 0;
    while done < trials {
        let pts: Vec<ProjectivePoint> = (0..4).map(|_| point(rng)).collect();
        let Ok(before) = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]) else { continue };
        let t = ExactMatrix::from_fn(2, 2, |_, _| small_rational(rng));
        if t.rank() < 2 {
            continue;
        }
        let img: Vec<_> = pts.iter().map(|p| p.mobius(&t)).collect();
        if cross_ratio(&img[0], &img[1], &img[2], &img[3]).ok() != Some(before) {
            return PropertyResult::new("cross-ratio-invariance", false, format!("points {pts:?}"));
        }
        done += 1;
    }
    PropertyResult::new("cross-ratio-invariance", true, format!("{trials} configurations"))
}

/// Every catalog representative with `M ≤ N ≤ 6` classifies back to its
/// family, the resulting labels are distinct, and `trials` random ILOs
/// leave each label unchanged.
pub fn ilo_invariance(rng: &mut ChaCha8Rng, trials: usize) -> PropertyResult {
    let name = "ilo-invariance";
    let mut seen = BTreeSet::new();
    let mut reps = 0;
    for m in 2..=6 {
        for n in m..=(2 * m).min(6) {
            for family in enumerate_labels(m, n).expect("valid dimensions") {
                let Some(s) = representative(&family).state().cloned() else {
                    return PropertyResult::new(name, false, format!("no representative for {family}"));
                };
                let label = match class_label(&s) {
                    Ok(l) => l,
                    Err(e) => return PropertyResult::new(name, false, format!("{family}: {e}")),
                };
                if label.family() != family {
                    return PropertyResult::new(name, false, format!("{family} classified as {label}"));
                }
                if !seen.insert(label.clone()) {
                    return PropertyResult::new(name, false, format!("label collision at {label}"));
                }
                for _ in 0..trials {
                    let op = ILOTriple::random(m, n, rng);
                    let moved = apply_ilo(&s, &op).and_then(|t| class_label(&t));
                    if moved.as_ref() != Ok(&label) {
                        return PropertyResult::new(name, false, format!("{label} became {moved:?}"));
                    }
                }
                reps += 1;
            }
        }
    }
    PropertyResult::new(name, true, format!("{reps} representatives x {trials} ILOs"))
}

/// Runs the full property suite; deterministic for a fixed seed.
pub fn run_selftest(seed: u64, trials: usize) -> SelftestReport {
    let stream = |k: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        rng
    };
    let results = vec![
        table_check(&REFERENCE_OMEGA),
        negative_control(),
        segre_oracle(),
        catalog_counts(),
        group_relations(&mut stream(1)),
        reduction(&mut stream(2), trials.max(100)),
        cross_ratio_invariance(&mut stream(3), 4 * trials.max(100)),
        ilo_invariance(&mut stream(4), trials),
    ];
    SelftestReport { results }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tampered_reference_fails_the_table_check() {
        let mut tampered = REFERENCE_OMEGA;
        tampered[8][8] = 1308;
        let r = table_check(&tampered);
        assert!(!r.passed);
        assert!(r.detail.contains("(10,10)"), "{}", r.detail);
        assert!(table_check(&REFERENCE_OMEGA).passed);
    }

    #[test]
    fn quick_suite_passes() {
        let r = run_selftest(9, 1);
        assert!(r.passed(), "{r}");
        assert_eq!(r.results.len(), 8);
    }
}
