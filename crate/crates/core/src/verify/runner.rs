use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use super::{Check, CheckReport, CorpusGraph, GraphCorpus, Outcome, Verifier};
use crate::error::{Error, Result};
use crate::graph::families::{cycle, path};
use crate::graph::{vertex_union, Graph};

/// Second graphs glued on for the union and Whitney checks during a sweep.
fn union_partners() -> Vec<Graph> {
    vec![Graph::single_vertex(), path(2), cycle(3)]
}

/// Runs `checks` on every graph of `corpus`, with every applicable edge and
/// partner, using up to `jobs` threads. Reports come back sorted.
pub fn run_corpus(checks: &[Check], corpus: &GraphCorpus, jobs: usize) -> Vec<CheckReport> {
    let verifier = Verifier::new();
    run_graphs(&verifier, checks, &corpus.graphs(), corpus.max_e, jobs)
}

/// Like [`run_corpus`] over an explicit list of graphs. Gluings for the union
/// and Whitney checks that would exceed `max_e` edges are skipped.
pub fn run_graphs(
    verifier: &Verifier,
    checks: &[Check],
    graphs: &[CorpusGraph],
    max_e: usize,
    jobs: usize,
) -> Vec<CheckReport> {
    let next = AtomicUsize::new(0);
    let out = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = graphs.get(k) else { break };
                let mut reports = Vec::new();
                for &check in checks {
                    reports.extend(run_one(verifier, check, item, max_e));
                }
                out.lock().unwrap().extend(reports);
            });
        }
    });
    let mut reports = out.into_inner().unwrap();
    reports.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
    reports
}

fn sort_key(r: &CheckReport) -> (Check, &str, Option<usize>, Option<&Graph>, Option<usize>) {
    (r.check, &r.graph_id, r.edge, r.partner.as_ref(), r.partner_edge)
}

fn settle(check: &Check, item: &CorpusGraph, result: Result<CheckReport>) -> CheckReport {
    match result {
        Ok(r) => r.with_id(&item.id),
        Err(e) if e.is_size_guard() => CheckReport::skipped(*check, &item.graph, e.to_string()).with_id(&item.id),
        Err(Error::Disconnected) => {
            CheckReport::skipped(*check, &item.graph, "graph is disconnected").with_id(&item.id)
        }
        Err(e) => CheckReport::errored(*check, &item.graph, &e).with_id(&item.id),
    }
}

fn run_one(v: &Verifier, check: Check, item: &CorpusGraph, max_e: usize) -> Vec<CheckReport> {
    let g = &item.graph;
    let edges = g.edge_count();
    let too_big = |extra: usize| edges + extra > max_e;
    match check {
        Check::DirectSum => (0..edges)
            .filter(|&e| !g.is_bridge(e).unwrap_or(true))
            .map(|e| settle(&check, item, v.check_direct_sum(g, e)))
            .collect(),
        Check::Pendant => g
            .pendant_edges()
            .into_iter()
            .map(|e| settle(&check, item, v.check_pendant(g, e)))
            .collect(),
        Check::Union => union_partners()
            .iter()
            .map(|p| {
                if too_big(p.edge_count()) {
                    let glued = vertex_union(g, p);
                    let reason = format!("union has {} edges, corpus bound is {max_e}", glued.edge_count());
                    CheckReport::skipped(check, g, reason).with_id(&item.id)
                } else {
                    settle(&check, item, v.check_union(g, p))
                }
            })
            .collect(),
        Check::Whitney => {
            let partner = cycle(3);
            (0..edges)
                .map(|e| {
                    if too_big(1) {
                        let reason = format!("twist has {} edges, corpus bound is {max_e}", edges + 1);
                        CheckReport::skipped(check, g, reason).with_id(&item.id)
                    } else {
                        settle(&check, item, v.check_whitney(g, e, &partner, 0))
                    }
                })
                .collect()
        }
        _ => vec![settle(&check, item, v.check(check, g))],
    }
}

/// Pass, fail and skip counts per check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub counts: BTreeMap<String, Counts>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let mut by_check: BTreeMap<Check, Counts> = BTreeMap::new();
        for r in reports {
            let c = by_check.entry(r.check).or_default();
            match r.outcome {
                Outcome::Pass => c.pass += 1,
                Outcome::Fail { .. } => c.fail += 1,
                Outcome::Skip { .. } => c.skip += 1,
            }
        }
        Summary { counts: by_check.into_iter().map(|(k, c)| (k.name().to_string(), c)).collect() }
    }

    pub fn failures(&self) -> usize {
        self.counts.values().map(|c| c.fail).sum()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.counts.keys().map(String::len).max().unwrap_or(5).max(5);
        writeln!(f, "{:<width$} {:>8} {:>8} {:>8}", "check", "pass", "fail", "skip")?;
        for (name, c) in &self.counts {
            writeln!(f, "{:<width$} {:>8} {:>8} {:>8}", name, c.pass, c.fail, c.skip)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::unlabeled_trees;

    #[test]
    fn empty_corpus_gives_empty_report() {
        let corpus = GraphCorpus { max_n: 0, max_e: 0, labeled: true, named: true };
        assert!(run_corpus(&Check::ALL, &corpus, 2).is_empty());
    }

    #[test]
    fn trees_pass_diagonal_euler_hvector() {
        let trees: Vec<CorpusGraph> = (1..=6)
            .flat_map(|n| unlabeled_trees(n).into_iter().enumerate().map(move |(k, t)| (n, k, t)))
            .map(|(n, k, t)| CorpusGraph::new(format!("tree-n{n}-{k}"), t))
            .collect();
        let reports =
            run_graphs(&Verifier::new(), &[Check::Diagonal, Check::Euler, Check::HVector], &trees, 12, 3);
        assert_eq!(reports.len(), 3 * trees.len());
        assert!(reports.iter().all(CheckReport::passed));
    }

    #[test]
    fn sweep_is_deterministic_and_clean() {
        let corpus = GraphCorpus::new(4, 12);
        let one = run_corpus(&Check::ALL, &corpus, 1);
        let four = run_corpus(&Check::ALL, &corpus, 4);
        assert_eq!(one, four);
        let summary = Summary::of(&one);
        assert!(summary.all_passed(), "{summary}");
        assert_eq!(summary.counts.len(), Check::ALL.len());
    }

    #[test]
    fn oversized_gluings_are_skipped() {
        let graphs = vec![CorpusGraph::new("C_4", cycle(4))];
        let reports = run_graphs(&Verifier::new(), &[Check::Union], &graphs, 5, 1);
        let skipped = reports.iter().filter(|r| matches!(r.outcome, Outcome::Skip { .. })).count();
        assert_eq!(skipped, 1);
        assert_eq!(Summary::of(&reports).counts["union"], Counts { pass: 2, fail: 0, skip: 1 });
    }
}
