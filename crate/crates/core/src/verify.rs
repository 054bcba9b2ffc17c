//! Oracle sweep: every computed answer is compared with a brute-force one.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::classify::{build_report, InvolutionReport};
use crate::families::{manifold_specs, specs_of, Family, GroupSpec, ManifoldClass};
use crate::oracle::{abelianization_order, acts_freely_bruteforce, h1_from_seifert, stabilizer_order, H1Order};
use crate::quintuple::PairGroup;
use crate::s3groups::Elem;
use crate::seifert::{fibration_twisted, SeifertInvariants, Surface};
use crate::tables::Flag;

/// Oracle checks are skipped above this many pairs.
pub const ORACLE_LIMIT: usize = 4000;
/// Stabilizer checks are skipped above this many pairs.
pub const STABILIZER_LIMIT: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: &'static str,
    pub spec: GroupSpec,
    pub class: Option<String>,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckStats {
    pub run: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyOutcome {
    pub max_order: u64,
    pub group_specs: usize,
    pub manifolds: usize,
    pub extensions: usize,
    pub checks: BTreeMap<&'static str, CheckStats>,
    pub mismatches: Vec<Mismatch>,
    #[serde(skip)]
    pub elapsed: Duration,
    /// Time spent in the homology cross-check alone.
    #[serde(skip)]
    pub homology_time: Duration,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn record(&mut self, check: &'static str, spec: &GroupSpec, class: Option<&str>, expected: impl Display, found: impl Display) {
        let (expected, found) = (expected.to_string(), found.to_string());
        let stats = self.checks.entry(check).or_default();
        stats.run += 1;
        if expected != found {
            stats.failed += 1;
            self.mismatches.push(Mismatch { check, spec: *spec, class: class.map(str::to_string), expected, found });
        }
    }

    fn merge(&mut self, other: VerifyOutcome) {
        self.group_specs += other.group_specs;
        self.manifolds += other.manifolds;
        self.extensions += other.extensions;
        self.homology_time += other.homology_time;
        for (k, v) in other.checks {
            let s = self.checks.entry(k).or_default();
            s.run += v.run;
            s.failed += v.failed;
        }
        self.mismatches.extend(other.mismatches);
    }
}

/// The 3-sphere itself, whose two classes sit outside the lens-space count.
pub fn is_three_sphere(spec: &GroupSpec) -> bool {
    spec.family == Family::F1p && (spec.m, spec.n, spec.r) == (1, 1, 2)
}

fn h1_text(h: Result<H1Order, crate::Error>) -> String {
    match h {
        Ok(H1Order::Finite(n)) => n.to_string(),
        Ok(H1Order::Infinite) => "infinite".into(),
        Err(e) => e.to_string(),
    }
}

fn homology(out: &mut VerifyOutcome, spec: &GroupSpec, class: Option<&str>, fib: &SeifertInvariants, g: &PairGroup) {
    if fib.base.surface != Surface::S2 || g.len() > ORACLE_LIMIT {
        return;
    }
    let t = Instant::now();
    out.record("homology", spec, class, abelianization_order(g), h1_text(h1_from_seifert(fib)));
    out.homology_time += t.elapsed();
}

/// Order, free-action formula and (for the twisted cyclic families) stabilizers of one group spec.
pub fn check_group(spec: &GroupSpec, out: &mut VerifyOutcome) -> Option<PairGroup> {
    out.group_specs += 1;
    let g = match spec.construct().and_then(|q| q.realize()) {
        Ok(g) => g,
        Err(e) => {
            out.record("realize", spec, None, "group", e);
            return None;
        }
    };
    out.record("order", spec, None, spec.rotation_order(), g.rotation_order());
    if g.len() <= ORACLE_LIMIT {
        out.record("free formula", spec, None, acts_freely_bruteforce(&g), spec.acts_freely_on_sphere());
    }
    let twisted = matches!(spec.family, Family::F1 | Family::F1p | Family::F11 | Family::F11p);
    if twisted && g.len() <= STABILIZER_LIMIT {
        match fibration_twisted(spec) {
            Ok(fib) => {
                // a dihedral group adds a reflection of each core circle to the point stabilizer
                let f = if matches!(spec.family, Family::F11 | Family::F11p) { 2 } else { 1 };
                let mut want: Vec<u64> = fib.singular_component_indices.iter().map(|k| f * k).collect();
                let mut got = vec![stabilizer_order(&g, Elem::ONE) as u64, stabilizer_order(&g, Elem::J) as u64];
                want.sort_unstable();
                got.sort_unstable();
                out.record("stabilizer", spec, None, format!("{:?}", got), format!("{:?}", want));
                if spec.acts_freely_on_sphere() {
                    homology(out, spec, None, &fib, &g);
                }
            }
            Err(e) => out.record("stabilizer", spec, None, "fibration", e),
        }
    }
    Some(g)
}

/// Oracle, table-flag, count and free-clause checks for the reports of one manifold.
pub fn check_reports(spec: &GroupSpec, reports: &[InvolutionReport], out: &mut VerifyOutcome) {
    out.manifolds += 1;
    out.extensions += reports.len();
    let class = spec.manifold_class().expect("manifold spec");
    if !is_three_sphere(spec) {
        let (lo, hi) = class.class_count_range();
        let n = reports.len();
        let found = if (lo..=hi).contains(&n) { format!("{}..{}", lo, hi) } else { n.to_string() };
        out.record("class count", spec, None, format!("{}..{}", lo, hi), found);
    }
    out.record("hyperelliptic count", spec, None, 1, reports.iter().filter(|r| r.hyperelliptic).count());
    let mut free_by_oracle = 0;
    for r in reports {
        let label = Some(r.class.class_label.as_str());
        let g = &r.class.extension_group;
        if g.len() <= ORACLE_LIMIT {
            let oracle = acts_freely_bruteforce(g);
            free_by_oracle += oracle as usize;
            out.record("free extension", spec, label, oracle, r.acts_freely);
            if oracle {
                homology(out, spec, label, &r.fibration, g);
            }
        }
        if r.class.row.free != Flag::Computed {
            out.record("table free", spec, label, r.acts_freely, r.table_free());
        }
        if r.class.row.hyperelliptic != Flag::Computed {
            out.record("table hyperelliptic", spec, label, r.hyperelliptic, r.table_hyperelliptic());
        }
        if let Some(m) = &r.montesinos {
            out.record("montesinos", spec, label, "≤3 tangles", if m.tangles.len() <= 3 { "≤3 tangles" } else { "more" });
        }
        if r.fibration.base.surface == Surface::S2 {
            out.record("euler integrality", spec, label, true, r.fibration.is_integral());
        }
    }
    // free involutions: prism F2 and tetrahedral F5 have exactly one, lens spaces one per index-1 fibration
    let expected = match (class, spec.family) {
        (ManifoldClass::Prism, Family::F2) | (ManifoldClass::Tetrahedral, Family::F5) => "exactly one".to_string(),
        (ManifoldClass::Lens, _) => {
            let predicted = reports.iter().any(|r| {
                r.fibration.base.surface != Surface::D2
                    && r.fibration.point_singular_indices().iter().all(|&k| k == 1)
                    && r.fibration.singular_component_indices.iter().all(|&k| k == 1)
            });
            if predicted { "some" } else { "none" }.to_string()
        }
        _ => "none".to_string(),
    };
    let found = match free_by_oracle {
        0 => "none",
        1 if expected == "exactly one" => "exactly one",
        _ if expected == "exactly one" => "several",
        _ => "some",
    };
    out.record("free clause", spec, None, expected, found);
}

fn run_chunked<T: Sync>(items: &[T], jobs: usize, f: impl Fn(&T, &mut VerifyOutcome) + Sync) -> VerifyOutcome {
    let jobs = jobs.max(1).min(items.len().max(1));
    let mut total = VerifyOutcome::default();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|k| {
                let f = &f;
                scope.spawn(move || {
                    let mut out = VerifyOutcome::default();
                    for item in items.iter().skip(k).step_by(jobs) {
                        f(item, &mut out);
                    }
                    out
                })
            })
            .collect();
        for h in handles {
            total.merge(h.join().expect("verification worker panicked"));
        }
    });
    total
}

/// Group specs of every family up to the bound, and every manifold's extensions.
pub fn verify(max_order: u64, jobs: usize) -> VerifyOutcome {
    verify_with(max_order, jobs, |_, _| {})
}

/// As [`verify`], with `tamper` applied to each manifold's reports before they are checked.
pub fn verify_with(max_order: u64, jobs: usize, tamper: impl Fn(&GroupSpec, &mut [InvolutionReport]) + Sync) -> VerifyOutcome {
    let t = Instant::now();
    let mut groups: Vec<GroupSpec> = Family::ALL.iter().flat_map(|&f| specs_of(f, max_order)).collect();
    let swapped: Vec<GroupSpec> = groups.iter().map(|g| g.bis()).filter(|g| g.validate().is_ok() && g.family.arity() == 2).collect();
    groups.extend(swapped);
    let mut out = run_chunked(&groups, jobs, |g, out| {
        check_group(g, out);
    });
    let manifolds = manifold_specs(max_order);
    out.merge(run_chunked(&manifolds, jobs, |g, out| match build_report(g) {
        Ok(mut reports) => {
            tamper(g, &mut reports);
            check_reports(g, &reports, out)
        }
        Err(e) => out.record("pipeline", g, None, "reports", e),
    }));
    out.max_order = max_order;
    out.mismatches.sort_by(|a, b| (a.spec, a.check, &a.class).cmp(&(b.spec, b.check, &b.class)));
    out.elapsed = t.elapsed();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let out = verify(16, 2);
        assert!(out.passed(), "{:?}", out.mismatches);
        assert!(out.checks["homology"].run > 0);
        assert!(out.checks["stabilizer"].run > 0);
    }

    #[test]
    fn flipped_flag_is_reported() {
        let spec = GroupSpec::of(Family::F2, &[1, 2]);
        let mut reports = build_report(&spec).unwrap();
        let r = reports.iter_mut().find(|r| r.acts_freely).unwrap();
        r.acts_freely = false;
        let mut out = VerifyOutcome::default();
        check_reports(&spec, &reports, &mut out);
        assert!(out.mismatches.iter().any(|m| m.check == "free extension"));
    }
}
