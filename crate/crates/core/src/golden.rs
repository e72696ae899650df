//! Reference suite behind `odosym verify-paper`: one row per worked example,
//! recomputed from scratch.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classify2d::{classify, is_member_in, NormalizerClass};
use crate::intlat::{fundamental_domain, IntMatrix, IntVector};
use crate::odometer::NcOracle;
use crate::subshift_norm::{
    build_local_rule, composition_check, fiber_points, maps_fixed_points, nl_membership, tau_equivariance,
    FiberQuery, NlVerdict,
};
use crate::substitution::{cube, half_hex_digits, recognizability_check, Substitution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Computed and reported, with no expected value to compare against.
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub label: String,
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

type Check = Result<(Status, String), String>;

fn m(r: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from(r)
}

fn pass_if(ok: bool, detail: String) -> Check {
    Ok((if ok { Status::Pass } else { Status::Fail }, detail))
}

fn branch_of(l: &IntMatrix) -> Result<String, String> {
    Ok(classify(l).map_err(|e| e.to_string())?.class.label().to_string())
}

fn check_branch(l: [[i64; 2]; 2], want: &str) -> Check {
    let got = branch_of(&m(l))?;
    pass_if(got == want, format!("branch {got}"))
}

fn check_hyperbolic_centralizer() -> Check {
    let c = classify(&m([[2, -1], [1, 5]])).map_err(|e| e.to_string())?;
    let u = m([[2, 1], [-1, -1]]);
    let member = is_member_in(&c, &u).map_err(|e| e.to_string())?.member;
    let ok = matches!(c.class, NormalizerClass::Centralizer { .. }) && !c.finite && member && c.generators.contains(&u);
    pass_if(ok, format!("branch {}, finite {}, generators {:?}", c.class.label(), c.finite, strs(&c.generators)))
}

fn strs(ms: &[IntMatrix]) -> Vec<String> {
    ms.iter().map(IntMatrix::to_string).collect()
}

/// The six matrices listed for `[[2,-1],[1,3]]`, as printed.
pub fn printed_finite_centralizer() -> Vec<IntMatrix> {
    vec![
        m([[1, 1], [-1, 0]]),
        m([[-1, -1], [1, 0]]),
        m([[0, -1], [1, 1]]),
        m([[0, -1], [1, -1]]),
        m([[1, 0], [0, 1]]),
        m([[-1, 0], [0, -1]]),
    ]
}

fn check_finite_centralizer() -> Check {
    let c = classify(&m([[2, -1], [1, 3]])).map_err(|e| e.to_string())?;
    let got: BTreeSet<IntMatrix> = c.generators.iter().cloned().collect();
    let want: BTreeSet<IntMatrix> = printed_finite_centralizer().into_iter().collect();
    if got == want && c.finite {
        return Ok((Status::Pass, format!("{} elements", got.len())));
    }
    let missing: Vec<_> = want.difference(&got).cloned().collect();
    let extra: Vec<_> = got.difference(&want).cloned().collect();
    let l = &c.l;
    let commute: Vec<bool> = missing.iter().map(|x| &(x * l) == &(l * x)).collect();
    Ok((
        Status::Fail,
        format!(
            "listed but not computed {:?} (commutes with L: {commute:?}); computed but not listed {:?}",
            strs(&missing),
            strs(&extra)
        ),
    ))
}

fn check_virtually_z() -> Check {
    let c = classify(&m([[6, 1], [0, 2]])).map_err(|e| e.to_string())?;
    match &c.class {
        NormalizerClass::VirtuallyZ(v) => {
            pass_if(v.conjugator == m([[1, 0], [4, 1]]), format!("conjugator {}", v.conjugator))
        }
        other => Ok((Status::Fail, format!("branch {}", other.label()))),
    }
}

fn check_order_two() -> Check {
    let c = classify(&m([[3, 1], [0, 5]])).map_err(|e| e.to_string())?;
    let l = &c.l;
    let commuting: Vec<String> = c.generators.iter().filter(|x| &(*x * l) == &(l * *x)).map(|x| x.to_string()).collect();
    pass_if(
        c.class.label() == "order_two",
        format!("branch {}; commuting unimodular matrices found: {commuting:?}", c.class.label()),
    )
}

/// `is_member` against depth-5 NC on every unimodular `M` with entries in `[-3, 3]`.
pub fn oracle_agreement(l: &IntMatrix, depth: u32) -> Result<(usize, usize, Vec<IntMatrix>), String> {
    let c = classify(l).map_err(|e| e.to_string())?;
    let oracle = NcOracle::new(l, depth).map_err(|e| e.to_string())?;
    let (mut tested, mut members, mut bad) = (0, 0, Vec::new());
    for x in unimodular_box(3) {
        let closed = is_member_in(&c, &x).map_err(|e| e.to_string())?.member;
        let nc = oracle.bounded_check(&x, depth).map_err(|e| e.to_string())?.passes();
        tested += 1;
        members += closed as usize;
        if closed != nc {
            bad.push(x);
        }
    }
    Ok((tested, members, bad))
}

/// All `2 x 2` matrices with entries in `[-r, r]` and determinant `±1`.
pub fn unimodular_box(r: i64) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    if (a * d - b * c).abs() == 1 {
                        out.push(m([[a, b], [c, d]]));
                    }
                }
            }
        }
    }
    out
}

/// The `L` used by the classification rows.
pub fn golden_bases() -> Vec<IntMatrix> {
    [
        [[2, 0], [0, 2]],
        [[3, 3], [0, 3]],
        [[2, -1], [1, 5]],
        [[2, -1], [1, 3]],
        [[6, 1], [0, 2]],
        [[3, 1], [0, 5]],
        [[2, 1], [0, 3]],
    ]
    .into_iter()
    .map(m)
    .collect()
}

fn check_oracle(l: &IntMatrix) -> Check {
    let (tested, members, bad) = oracle_agreement(l, 5)?;
    pass_if(bad.is_empty(), format!("{tested} matrices, {members} members, disagreements {:?}", strs(&bad)))
}

fn half_hex() -> Result<Substitution, String> {
    Substitution::digit(&m([[2, 0], [0, 2]]), &half_hex_digits()).map_err(|e| e.to_string())
}

fn check_half_hex_normalizer() -> Check {
    let mut s = half_hex()?;
    let samples = [[[0, 1], [1, 0]], [[1, 1], [0, 1]], [[0, -1], [1, 0]], [[-1, 0], [0, -1]], [[2, 1], [1, 1]], [[1, -3], [0, -1]]];
    let mut notes = Vec::new();
    for a in samples {
        let v = nl_membership(s.expansion(), &m(a), s.digits(), 6).map_err(|e| e.to_string())?;
        match v.accepted() {
            Some(c) if c.k == 0 && c.n0 == 0 => {}
            _ => return Ok((Status::Fail, format!("{} not accepted with k = n0 = 0", m(a)))),
        }
    }
    notes.push(format!("{} samples accepted with k = n0 = 0", samples.len()));
    let r = composition_check(&mut s, &m([[0, 1], [1, 0]]), &m([[1, 1], [0, 1]]), &cube(2, -6, 6), 6)
        .map_err(|e| e.to_string())?;
    notes.push(format!("composition compared {} cells", r.compared));
    pass_if(r.holds(), notes.join("; "))
}

fn check_fixed_points() -> Check {
    let hh = half_hex()?;
    let l24 = m([[2, 0], [0, 4]]);
    let f = fundamental_domain(&l24).map_err(|e| e.to_string())?;
    let d24 = Substitution::digit(&l24, f.elements()).map_err(|e| e.to_string())?;
    let (a, b) = (hh.fixed_point_seeds().len(), d24.fixed_point_seeds().len());
    pass_if(a == 3 && b == 7, format!("half-hex {a}, diag(2,4) {b}"))
}

fn check_recognizability() -> Check {
    let mut s = half_hex()?;
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [1, 2] {
        let r = recognizability_check(&mut s, n, 8).map_err(|e| e.to_string())?;
        ok &= r.holds();
        notes.push(format!("n = {n}: {} positions", r.positions_checked));
    }
    pass_if(ok, notes.join("; "))
}

fn check_fibers() -> Check {
    let mut s = half_hex()?;
    let mut counts = Vec::new();
    for a in [[0, 0], [1, 0]] {
        let r = fiber_points(&mut s, &FiberQuery::Orbit { a: a.into() }, 6, 8).map_err(|e| e.to_string())?;
        counts.push(r.count.to_string());
    }
    let digits: Vec<IntVector> = (0..6).map(|i| if i % 2 == 0 { [1, 0].into() } else { [0, 1].into() }).collect();
    let r = fiber_points(&mut s, &FiberQuery::Digits { digits }, 6, 8).map_err(|e| e.to_string())?;
    counts.push(r.count.to_string());
    pass_if(counts == ["3", "3", "1"], format!("orbit 0: {}, orbit (1,0): {}, alternating digits: {}", counts[0], counts[1], counts[2]))
}

fn check_k_set() -> Check {
    let mut s = half_hex()?;
    let k = s.k_set(6).map_err(|e| e.to_string())?;
    let want: Vec<IntVector> = {
        let mut v: Vec<IntVector> = [[0, 0], [-1, 0], [0, -1], [-1, 1]].into_iter().map(IntVector::from).collect();
        v.sort();
        v
    };
    let cov = s.coverage(&k.points, 6, &cube(2, -8, 8)).map_err(|e| e.to_string())?;
    pass_if(
        k.points == want && k.stable_from <= 4 && cov.covered,
        format!(
            "K = {:?}, stable from m = {}, box [-8,8]^2 covered by level {}",
            k.points.iter().map(ToString::to_string).collect::<Vec<_>>(),
            k.stable_from,
            cov.deepest_level
        ),
    )
}

fn check_diag24(a: [[i64; 2]; 2], want_member: bool) -> Check {
    let l = m([[2, 0], [0, 4]]);
    let f = fundamental_domain(&l).map_err(|e| e.to_string())?;
    let v = nl_membership(&l, &m(a), &f, 8).map_err(|e| e.to_string())?;
    let detail = match &v {
        NlVerdict::Accepted(c) => format!("accepted, k = {}, n0 = {}", c.k, c.n0),
        NlVerdict::Rejected(r) => format!("rejected: {r:?}"),
    };
    pass_if(v.accepted().is_some() == want_member, detail)
}

/// `[[1,1],[0,1]]` for `diag(2,4)`: the definition admits it, the listed set
/// `{[[a,2b],[0,d]]}` does not. Reported, with the local-rule oracle run on it.
pub fn diag24_open_row() -> Check {
    let l = m([[2, 0], [0, 4]]);
    let a = m([[1, 1], [0, 1]]);
    let f = fundamental_domain(&l).map_err(|e| e.to_string())?;
    let mut s = Substitution::digit(&l, f.elements()).map_err(|e| e.to_string())?;
    let v = nl_membership(&l, &a, &f, 8).map_err(|e| e.to_string())?;
    let accepted = v.accepted().cloned();
    let tau_ok = match &accepted {
        Some(c) => tau_equivariance(c, &s, &cube(2, -8, 8)).map_err(|e| e.to_string())?.is_none(),
        None => false,
    };
    let (maps, comp) = match &accepted {
        Some(c) => {
            let rule = build_local_rule(c, &mut s).map_err(|e| e.to_string())?;
            let maps = maps_fixed_points(&rule, &s, &cube(2, -6, 6)).map_err(|e| e.to_string())?;
            let comp = composition_check(&mut s, &a, &a, &cube(2, -4, 4), 8).map_err(|e| e.to_string())?.holds();
            (maps, comp)
        }
        None => (false, false),
    };
    let in_listed_set = a.get(0, 1) % 2 == num_bigint::BigInt::from(0);
    let consistent = accepted.is_some() == tau_ok && (accepted.is_none() || (maps && comp));
    let detail = format!(
        "definition verdict: {}; tau-equivariance on radius 8: {tau_ok}; maps fixed points: {maps}; \
         composition with itself: {comp}; in {{[[a,2b],[0,d]]}}: {in_listed_set}; verdicts {}",
        if accepted.is_some() { "member" } else { "non-member" },
        if accepted.is_some() == in_listed_set { "agree" } else { "differ" }
    );
    Ok((if consistent { Status::Open } else { Status::Fail }, detail))
}

fn row(label: &str, claim: &str, check: Check) -> GoldenRow {
    let (status, detail) = check.unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
    GoldenRow { label: label.into(), claim: claim.into(), status, detail }
}

/// Every reference row, sorted by label.
pub fn golden_suite() -> Vec<GoldenRow> {
    let mut rows = vec![
        row("classify/2,-1;1,5", "infinite centralizer containing [[2,1],[-1,-1]]", check_hyperbolic_centralizer()),
        row("classify/2,-1;1,3", "finite centralizer equal to the six listed matrices", check_finite_centralizer()),
        row("classify/6,1;0,2", "virtually Z, conjugator [[1,0],[4,1]]", check_virtually_z()),
        row("classify/3,1;0,5", "order two", check_order_two()),
        row("classify/2,1;0,3", "Klein four", check_branch([[2, 1], [0, 3]], "klein_four")),
        row("classify/2,0;0,2", "all of GL(2,Z)", check_branch([[2, 0], [0, 2]], "full_gl2")),
        row("classify/3,3;0,3", "all of GL(2,Z)", check_branch([[3, 3], [0, 3]], "full_gl2")),
        row("half-hex/normalizer", "GL(2,Z) acts with k = n0 = 0; composition law", check_half_hex_normalizer()),
        row("subst/fixed-points", "|det L| - 1 fixed points", check_fixed_points()),
        row("half-hex/recognizability", "recognizable at n = 1, 2", check_recognizability()),
        row("half-hex/fibers", "|A| points over the orbit, one elsewhere", check_fibers()),
        row("half-hex/k-set", "K = {0, -e1, -e2, -e1+e2}, covers the box", check_k_set()),
        row("diag-2-4/1,2;0,1", "member", check_diag24([[1, 2], [0, 1]], true)),
        row("diag-2-4/1,0;1,1", "non-member", check_diag24([[1, 0], [1, 1]], false)),
        row("diag-2-4/1,1;0,1", "definition verdict vs the set {[[a,2b],[0,d]]}", diag24_open_row()),
    ];
    for l in golden_bases() {
        rows.push(row(&format!("oracle/{l}"), "closed form agrees with NC depth 5 on [-3,3]", check_oracle(&l)));
    }
    rows.sort_by(|a, b| a.label.cmp(&b.label));
    rows
}

/// `(pass, fail, open)` counts.
pub fn tally(rows: &[GoldenRow]) -> (usize, usize, usize) {
    let count = |s| rows.iter().filter(|r| r.status == s).count();
    (count(Status::Pass), count(Status::Fail), count(Status::Open))
}
