use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correspondences::{act, compose, diagonal, CorrespondenceClass};
use crate::graded_ring::ClassVector;
use crate::rational::Coefficient;

use super::{Member, ProjectorSet};

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub indices: Vec<String>,
    pub pass: bool,
    /// Nonzero difference of the two sides, as `(label, label, coefficient)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_class: Option<Vec<(String, String, Coefficient)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub all_pass: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Whether some check named `check` failed.
    pub fn failed(&self, check: &str) -> bool {
        self.failures().any(|c| c.check == check)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// One line per check, with residuals under failures.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {} [{}]", c.check, c.indices.join(", "));
            if c.pass {
                continue;
            }
            if let Some(r) = &c.residual_class {
                let terms: Vec<String> = r.iter().map(|(a, b, x)| format!("{x}*{a} x {b}")).collect();
                let _ = writeln!(out, "    residual: {}", terms.join(" + "));
            }
            if let Some(d) = &c.detail {
                let _ = writeln!(out, "    {d}");
            }
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Worker threads for the orthogonality grid; 0 or 1 runs serially.
    pub jobs: usize,
}

fn residual(c: &CorrespondenceClass) -> Option<Vec<(String, String, Coefficient)>> {
    (!c.is_zero()).then(|| c.terms().into_iter().map(|(a, b, x)| (a, b, Coefficient(x))).collect())
}

fn identity_check(check: &str, indices: Vec<String>, lhs: &CorrespondenceClass, rhs: &CorrespondenceClass) -> CheckResult {
    match lhs.sub(rhs) {
        Ok(diff) => CheckResult {
            check: check.into(),
            indices,
            pass: diff.is_zero(),
            residual_class: residual(&diff),
            detail: None,
        },
        Err(e) => CheckResult { check: check.into(), indices, pass: false, residual_class: None, detail: Some(e.to_string()) },
    }
}

fn action_check(m: &Member<'_>) -> CheckResult {
    let ring = m.class.source();
    let mut bad = Vec::new();
    for i in 0..ring.rank() {
        let alpha = ClassVector::basis(ring, i);
        let image = match act(m.class, &alpha) {
            Ok(v) => v,
            Err(e) => {
                bad.push(format!("{}: {e}", ring.label(i)));
                continue;
            }
        };
        let expected = if m.degrees.contains(&ring.degree_of(i)) { alpha.clone() } else { ClassVector::zero(ring, 0) };
        if image != expected {
            bad.push(format!("{} -> {}", ring.label(i), image));
        }
    }
    CheckResult {
        check: "graded_action".into(),
        indices: vec![m.name.clone()],
        pass: bad.is_empty(),
        residual_class: None,
        detail: (!bad.is_empty()).then(|| {
            let degrees: Vec<String> = m.degrees.iter().map(u32::to_string).collect();
            format!("should fix degrees {{{}}}: {}", degrees.join(","), bad.join("; "))
        }),
    }
}

pub fn verify_ck(set: &ProjectorSet) -> VerificationReport {
    verify_ck_with(set, VerifyOptions::default())
}

/// Checks idempotence, mutual orthogonality, completeness (when claimed) and
/// the graded action, all exactly. A degenerate pairing is reported first
/// and stops the run since the diagonal is undefined.
pub fn verify_ck_with(set: &ProjectorSet, opts: VerifyOptions) -> VerificationReport {
    let ring = set.ring();
    let mut checks = Vec::new();
    let diag = diagonal(ring);
    checks.push(CheckResult {
        check: "pairing".into(),
        indices: Vec::new(),
        pass: diag.is_ok(),
        residual_class: None,
        detail: diag.as_ref().err().map(ToString::to_string),
    });
    let Ok(diag) = diag else {
        return VerificationReport { all_pass: false, checks };
    };
    let members = set.members();

    for m in &members {
        let sq = compose(m.class, m.class).expect("self-correspondences compose");
        checks.push(identity_check("idempotence", vec![m.name.clone()], &sq, m.class));
    }

    let pairs: Vec<(usize, usize)> = (0..members.len())
        .flat_map(|i| (0..members.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let orth = |&(i, j): &(usize, usize)| {
        let c = compose(members[i].class, members[j].class).expect("self-correspondences compose");
        let zero = CorrespondenceClass::zero(ring, ring, 0);
        identity_check("orthogonality", vec![members[i].name.clone(), members[j].name.clone()], &c, &zero)
    };
    let grid: Vec<CheckResult> = if opts.jobs > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
            Ok(pool) => pool.install(|| pairs.par_iter().map(orth).collect()),
            Err(_) => pairs.iter().map(orth).collect(),
        }
    } else {
        pairs.iter().map(orth).collect()
    };
    checks.extend(grid);

    if set.is_complete() {
        let names = members.iter().map(|m| m.name.clone()).collect();
        match set.sum() {
            Ok(sum) => checks.push(identity_check("completeness", names, &sum, &diag)),
            Err(e) => checks.push(CheckResult {
                check: "completeness".into(),
                indices: names,
                pass: false,
                residual_class: None,
                detail: Some(e.to_string()),
            }),
        }
        let covered: BTreeSet<u32> = members.iter().flat_map(|m| m.degrees.iter().copied()).collect();
        let missing: Vec<String> = (0..=ring.top_degree())
            .filter(|d| !ring.basis_of_degree(*d).is_empty() && !covered.contains(d))
            .map(|d| d.to_string())
            .collect();
        if !missing.is_empty() {
            let last = checks.last_mut().expect("completeness was just pushed");
            last.pass = false;
            let note = format!("no member covers degrees {}", missing.join(", "));
            last.detail = Some(match last.detail.take() {
                Some(d) => format!("{d}; {note}"),
                None => note,
            });
        }
    }

    checks.extend(members.iter().map(action_check));
    let all_pass = checks.iter().all(|c| c.pass);
    VerificationReport { all_pass, checks }
}
