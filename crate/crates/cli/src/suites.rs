//! Property suites behind `cycind verify`. Each suite returns a report that
//! lists every check it ran with the values compared, plus a single `pass`.

use anyhow::Result;
use rand::Rng;
use serde::Serialize;

use cycind::analytic::{self, OptResult};
use cycind::bounds::{self, BoundAudit, CherryProgram, MinDegreeCheck};
use cycind::constructions::random_graph;
use cycind::corpus::{full_corpus, CORPUS_SEED};
use cycind::count::{self, count_fast, count_oracle, Detail};
use cycind::io::to_graph6;
use cycind::{rng, Graph};

/// Streams of the run seed; each suite draws from `derive_seed(seed, stream)`.
pub const STREAM_HANDSHAKE: u64 = 1;
pub const STREAM_SYMMETRISE: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Analytic,
    Bounds,
    Identities,
    All,
}

#[derive(Debug, Serialize)]
pub struct AnalyticReport {
    pub pass: bool,
    pub final_constant: Option<f64>,
    pub problems: Vec<OptResult>,
}

pub fn analytic_suite() -> Result<AnalyticReport> {
    let problems = analytic::run_suite()?;
    let final_constant = problems
        .iter()
        .find(|r| r.problem.problem == analytic::ProblemName::FinalConstant)
        .map(|r| r.max_value);
    Ok(AnalyticReport {
        pass: problems.iter().all(|r| r.pass),
        final_constant,
        problems,
    })
}

#[derive(Debug, Serialize)]
pub struct AuditEntry {
    pub graph: String,
    pub k: usize,
    pub audit: BoundAudit,
}

#[derive(Debug, Serialize)]
pub struct CaseEntry {
    pub graph: String,
    #[serde(flatten)]
    pub check: MinDegreeCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub program: Option<CherryProgram>,
    pub p2_pass: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct BoundsReport {
    pub pass: bool,
    pub graphs: usize,
    pub checked: usize,
    pub violations: usize,
    pub audits: Vec<AuditEntry>,
    pub min_degree: Vec<CaseEntry>,
}

/// Vertex, edge, cherry and global bounds on the fixed corpus for
/// `k ∈ [4, 8]`, then the minimum-degree case split for `k ∈ [6, 8]`.
pub fn bounds_suite() -> Result<BoundsReport> {
    let corpus = full_corpus(CORPUS_SEED)?;
    let mut audits = Vec::new();
    let mut min_degree = Vec::new();
    for e in &corpus {
        for k in 4..=8.min(e.graph.n()) {
            audits.push(AuditEntry {
                graph: e.name.clone(),
                k,
                audit: bounds::audit(&e.graph, k)?,
            });
        }
        for k in 6..=8.min(e.graph.n()) {
            let check = bounds::min_degree_check(&e.graph, k)?;
            let program = if check.case == bounds::DegreeCase::Bracket {
                Some(bounds::cherry_program(&e.graph, k, check.vertex)?)
            } else {
                None
            };
            let p2_pass = program
                .as_ref()
                .filter(|p| p.p2_preconditions)
                .map(|p| p.p2 <= p.ceiling * (1.0 + bounds::SOUNDNESS_EPS));
            min_degree.push(CaseEntry {
                graph: e.name.clone(),
                check,
                program,
                p2_pass,
            });
        }
    }
    let checked = audits.iter().map(|a| a.audit.checked).sum();
    let violations = audits.iter().map(|a| a.audit.violations.len()).sum::<usize>()
        + min_degree
            .iter()
            .filter(|c| !c.check.pass || !c.check.case_bound_pass || c.p2_pass == Some(false))
            .count();
    Ok(BoundsReport {
        pass: violations == 0,
        graphs: corpus.len(),
        checked,
        violations,
        audits,
        min_degree,
    })
}

#[derive(Debug, Serialize)]
pub struct HandshakeEntry {
    pub graph: String,
    pub k: usize,
    pub total: u128,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SymmetriseEntry {
    pub graph: String,
    pub k: usize,
    pub v_minus: usize,
    pub v_plus: usize,
    pub lhs: i128,
    pub rhs: i128,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct IdentitiesReport {
    pub pass: bool,
    pub handshake_instances: usize,
    pub handshake_passed: usize,
    pub symmetrisation_instances: usize,
    pub symmetrisation_passed: usize,
    /// The identity needs `k >= 5`; this `k = 4` instance must break it.
    pub k4_counterexample: SymmetriseEntry,
    pub handshake: Vec<HandshakeEntry>,
    pub symmetrisation: Vec<SymmetriseEntry>,
}

fn sample(r: &mut rng::SeededRng, lo: usize, hi: usize) -> Result<Graph> {
    let n = r.gen_range(lo..=hi);
    let p = r.gen_range(0.15..0.85);
    Ok(random_graph(n, p, r.gen())?)
}

fn symmetrise_entry(g: &Graph, k: usize, vm: usize, vp: usize) -> Result<SymmetriseEntry> {
    let lhs = count_oracle(&count::symmetrise(g, vm, vp)?, k)?.total as i128;
    let rhs = count_fast(g, k)? as i128 - count::count_rooted(g, k, vm)? as i128 + count::count_rooted(g, k, vp)? as i128
        - count::count_containing_pair(g, k, vm, vp)? as i128;
    Ok(SymmetriseEntry {
        graph: to_graph6(g),
        k,
        v_minus: vm,
        v_plus: vp,
        lhs,
        rhs,
        pass: lhs == rhs,
    })
}

/// Handshake identities on `graphs` random graphs for `k ∈ [5, 7]` and the
/// symmetrisation identity on `instances` random `(G, v⁻, v⁺, k)`.
pub fn identities_suite(seed: u64, graphs: usize, instances: usize) -> Result<IdentitiesReport> {
    let mut r = rng::from_seed(rng::derive_seed(seed, STREAM_HANDSHAKE));
    let mut handshake = Vec::new();
    for _ in 0..graphs {
        let g = sample(&mut r, 8, 14)?;
        for k in 5..=7 {
            let rep = count::count_fast_report(&g, k, Detail::Full)?;
            let check = rep.check_identities(&g);
            handshake.push(HandshakeEntry {
                graph: to_graph6(&g),
                k,
                total: rep.total,
                pass: check.is_ok(),
                error: check.err(),
            });
        }
    }
    let mut r = rng::from_seed(rng::derive_seed(seed, STREAM_SYMMETRISE));
    let mut symmetrisation = Vec::new();
    for i in 0..instances {
        let g = sample(&mut r, 7, 13)?;
        let vm = r.gen_range(0..g.n());
        let vp = (vm + 1 + r.gen_range(0..g.n() - 1)) % g.n();
        symmetrisation.push(symmetrise_entry(&g, 5 + i % 3, vm, vp)?);
    }
    let k4 = symmetrise_entry(&Graph::from_edge_list(4, &[(0, 1), (0, 2)])?, 4, 3, 0)?;
    let handshake_passed = handshake.iter().filter(|e| e.pass).count();
    let symmetrisation_passed = symmetrisation.iter().filter(|e| e.pass).count();
    Ok(IdentitiesReport {
        pass: handshake_passed == handshake.len() && symmetrisation_passed == symmetrisation.len() && !k4.pass,
        handshake_instances: handshake.len(),
        handshake_passed,
        symmetrisation_instances: symmetrisation.len(),
        symmetrisation_passed,
        k4_counterexample: k4,
        handshake,
        symmetrisation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_suite_is_deterministic_and_passes() {
        let a = identities_suite(3, 4, 12).unwrap();
        let b = identities_suite(3, 4, 12).unwrap();
        assert!(a.pass);
        assert_eq!(a.symmetrisation_passed, 12);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!((a.k4_counterexample.lhs, a.k4_counterexample.rhs), (1, 0));
    }
}
