//! Executable checks of the structural properties of reduced chromatic
//! cohomology, each comparing two independent computations.
//!
//! Every check returns a [`CheckReport`]. A failing report always carries a
//! [`Witness`] and a shell command that reproduces it.
//!
//! ```
//! use chroma::graph::families::cycle;
//! use chroma::verify::Verifier;
//!
//! let v = Verifier::new();
//! assert!(v.check_diagonal(&cycle(5)).unwrap().passed());
//! assert!(v.check_direct_sum(&cycle(5), 0).unwrap().passed());
//! ```

pub mod corpus;
pub mod runner;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::chromatic::{chromatic_by_interpolation, chromatic_polynomial, HVector};
use crate::complex::{CochainComplex, SparseIntMatrix, Theory, DEFAULT_MAX_EDGES};
use crate::error::{Error, Result};
use crate::graph::{vertex_union, whitney_twist, Graph};
use crate::homology::{betti_of_complex, differential_smith_forms};
use crate::poly::{IntPolynomial, TwoVarPolynomial};
use crate::table::BigradedTable;

pub use corpus::{CorpusGraph, GraphCorpus};
pub use runner::{run_corpus, Summary};

pub(crate) fn serialize_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Diagonal,
    DirectSum,
    BaseIndependence,
    Euler,
    Union,
    Whitney,
    HVector,
    StandardRelation,
    Pendant,
    ClosedForm,
    Torsion,
    DSquared,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::Diagonal,
        Check::DirectSum,
        Check::BaseIndependence,
        Check::Euler,
        Check::Union,
        Check::Whitney,
        Check::HVector,
        Check::StandardRelation,
        Check::Pendant,
        Check::ClosedForm,
        Check::Torsion,
        Check::DSquared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Diagonal => "diagonal",
            Check::DirectSum => "direct_sum",
            Check::BaseIndependence => "base_independence",
            Check::Euler => "euler",
            Check::Union => "union",
            Check::Whitney => "whitney",
            Check::HVector => "hvector",
            Check::StandardRelation => "standard_relation",
            Check::Pendant => "pendant",
            Check::ClosedForm => "closed_form",
            Check::Torsion => "torsion",
            Check::DSquared => "d_squared",
        }
    }

    /// Checks that take an edge of the graph.
    pub fn takes_edge(self) -> bool {
        matches!(self, Check::DirectSum | Check::Pendant | Check::Whitney)
    }

    /// Checks that take a second graph.
    pub fn takes_partner(self) -> bool {
        matches!(self, Check::Union | Check::Whitney)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Evidence attached to a failing check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A Betti cell where two computations disagree.
    Cell { i: usize, j: usize, expected: u64, actual: u64, note: String },
    /// Two sides of a polynomial identity, and their difference.
    Polynomial { lhs: String, rhs: String, difference: String, note: String },
    /// Invariant factors above one in the differential leaving `(i, j)`.
    Torsion { i: usize, j: usize, factors: Vec<String> },
    /// A cell where `d ∘ d` is nonzero.
    NonzeroSquare { i: usize, j: usize, theory: String },
    /// The check could not be evaluated.
    Error { message: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Cell { i, j, expected, actual, note } => {
                write!(f, "cell ({i},{j}): expected {expected}, got {actual} ({note})")
            }
            Witness::Polynomial { lhs, rhs, difference, note } => {
                write!(f, "{note}: {lhs} != {rhs}, difference {difference}")
            }
            Witness::Torsion { i, j, factors } => {
                write!(f, "d^({i},{j}) has invariant factors {}", factors.join(", "))
            }
            Witness::NonzeroSquare { i, j, theory } => write!(f, "d∘d != 0 from ({i},{j}) in the {theory} complex"),
            Witness::Error { message } => write!(f, "error: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail { witness: Witness },
    Skip { reason: String },
}

/// Result of one check on one graph (and edge or partner, where relevant).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub graph_id: String,
    #[serde(serialize_with = "serialize_display")]
    pub graph: Graph,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_partner")]
    pub partner: Option<Graph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner_edge: Option<usize>,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub repro: String,
}

fn serialize_partner<S: Serializer>(g: &Option<Graph>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match g {
        Some(g) => s.collect_str(g),
        None => s.serialize_none(),
    }
}

impl CheckReport {
    fn new(check: Check, g: &Graph, outcome: Outcome) -> Self {
        let mut r = CheckReport {
            check,
            graph_id: g.to_string(),
            graph: g.clone(),
            edge: None,
            partner: None,
            partner_edge: None,
            outcome,
            repro: String::new(),
        };
        r.repro = r.command();
        r
    }

    fn on_edge(mut self, e: usize) -> Self {
        self.edge = Some(e);
        self.repro = self.command();
        self
    }

    fn with_partner(mut self, g2: &Graph, e2: Option<usize>) -> Self {
        self.partner = Some(g2.clone());
        self.partner_edge = e2;
        self.repro = self.command();
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.graph_id = id.into();
        self
    }

    pub fn skipped(check: Check, g: &Graph, reason: impl Into<String>) -> Self {
        CheckReport::new(check, g, Outcome::Skip { reason: reason.into() })
    }

    pub fn errored(check: Check, g: &Graph, e: &Error) -> Self {
        CheckReport::new(check, g, Outcome::Fail { witness: Witness::Error { message: e.to_string() } })
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Fail { witness } => Some(witness),
            _ => None,
        }
    }

    /// Shell command that reruns exactly this check.
    pub fn command(&self) -> String {
        let mut cmd = format!("chroma verify {} --graph '{}'", self.check, self.graph);
        if let Some(e) = self.edge {
            cmd += &format!(" --edge {e}");
        }
        if let Some(p) = &self.partner {
            cmd += &format!(" --with '{p}'");
        }
        if let Some(e) = self.partner_edge {
            cmd += &format!(" --with-edge {e}");
        }
        cmd
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.check, self.graph_id)?;
        if let Some(e) = self.edge {
            write!(f, " edge {e}")?;
        }
        if let Some(p) = &self.partner {
            write!(f, " with [{p}]")?;
        }
        if let Some(e) = self.partner_edge {
            write!(f, " edge {e}")?;
        }
        match &self.outcome {
            Outcome::Pass => write!(f, ": pass"),
            Outcome::Fail { witness } => write!(f, ": FAIL {witness}\n  rerun: {}", self.repro),
            Outcome::Skip { reason } => write!(f, ": skip ({reason})"),
        }
    }
}

fn verdict(witness: Option<Witness>) -> Outcome {
    match witness {
        Some(witness) => Outcome::Fail { witness },
        None => Outcome::Pass,
    }
}

/// First cell where two tables differ.
fn table_difference(expected: &BigradedTable, actual: &BigradedTable, note: &str) -> Option<Witness> {
    expected
        .cells()
        .chain(actual.cells())
        .map(|(cell, _)| cell)
        .filter(|&(i, j)| expected.get(i, j) != actual.get(i, j))
        .min()
        .map(|(i, j)| Witness::Cell {
            i,
            j,
            expected: expected.get(i, j),
            actual: actual.get(i, j),
            note: note.to_string(),
        })
}

fn two_var_difference(lhs: &TwoVarPolynomial, rhs: &TwoVarPolynomial, note: &str) -> Option<Witness> {
    (lhs != rhs).then(|| Witness::Polynomial {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        difference: (lhs - rhs).to_string(),
        note: note.to_string(),
    })
}

fn one_var_difference(lhs: &IntPolynomial, rhs: &IntPolynomial, note: &str) -> Option<Witness> {
    (lhs != rhs).then(|| Witness::Polynomial {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        difference: (lhs - rhs).to_string(),
        note: note.to_string(),
    })
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

fn q_power(k: u32) -> TwoVarPolynomial {
    TwoVarPolynomial::monomial(1, 0, k)
}

fn t_power(k: u32) -> TwoVarPolynomial {
    TwoVarPolynomial::monomial(1, k, 0)
}

/// `(-1)^(n-1) Σ_k c_k (t - q)^k t^(top - k)` for the coefficients `c_k` of `p`.
fn homogenize(p: &IntPolynomial, top: usize, n: usize) -> TwoVarPolynomial {
    let t_minus_q = &TwoVarPolynomial::t() - &TwoVarPolynomial::q();
    let mut sum = TwoVarPolynomial::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        let term = &(&t_minus_q.pow(k) * &t_power((top - k) as u32)) * &TwoVarPolynomial::monomial(c.clone(), 0, 0);
        sum = &sum + &term;
    }
    if n.is_multiple_of(2) {
        &TwoVarPolynomial::zero() - &sum
    } else {
        sum
    }
}

/// Runs checks, caching Betti tables by labeled graph, base and theory.
///
/// Safe to share between threads.
#[derive(Debug)]
pub struct Verifier {
    max_edges: usize,
    cache: Mutex<HashMap<(Graph, Theory), BigradedTable>>,
}

impl Default for Verifier {
    fn default() -> Self {
        Self::new()
    }
}

impl Verifier {
    pub fn new() -> Self {
        Self::with_edge_limit(DEFAULT_MAX_EDGES)
    }

    pub fn with_edge_limit(max_edges: usize) -> Self {
        Verifier { max_edges, cache: Mutex::new(HashMap::new()) }
    }

    pub fn max_edges(&self) -> usize {
        self.max_edges
    }

    pub fn betti(&self, g: &Graph, theory: Theory) -> Result<BigradedTable> {
        let key = (g.clone(), theory);
        if let Some(t) = self.cache.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let table = betti_of_complex(&CochainComplex::with_edge_limit(g, theory, self.max_edges)?);
        self.cache.lock().unwrap().insert(key, table.clone());
        Ok(table)
    }

    fn reduced(&self, g: &Graph) -> Result<BigradedTable> {
        self.betti(g, Theory::Reduced)
    }

    /// Runs a check that needs no edge or partner.
    pub fn check(&self, check: Check, g: &Graph) -> Result<CheckReport> {
        match check {
            Check::Diagonal => self.check_diagonal(g),
            Check::BaseIndependence => self.check_base_independence(g),
            Check::Euler => self.check_euler(g),
            Check::HVector => self.check_hvector(g),
            Check::StandardRelation => self.check_standard_relation(g),
            Check::ClosedForm => self.check_closed_form(g),
            Check::Torsion => self.check_torsion(g),
            Check::DSquared => self.check_d_squared(g),
            Check::DirectSum | Check::Pendant | Check::Union | Check::Whitney => Err(Error::Precondition(
                format!("check `{check}` needs an edge or a second graph"),
            )),
        }
    }

    /// Reduced cohomology vanishes off the line `i + j = n - 1`.
    pub fn check_diagonal(&self, g: &Graph) -> Result<CheckReport> {
        require_connected(g)?;
        let table = self.reduced(g)?;
        let d = g.vertex_count() - 1;
        let witness = table.off_diagonal(d).first().map(|&((i, j), b)| Witness::Cell {
            i,
            j,
            expected: 0,
            actual: b,
            note: format!("off the diagonal i + j = {d}"),
        });
        Ok(CheckReport::new(Check::Diagonal, g, verdict(witness)))
    }

    /// `b(Γ) = b(Γ/e)` shifted by one in `i`, plus `b(Γ - e)`, for a non-bridge `e`.
    pub fn check_direct_sum(&self, g: &Graph, e: usize) -> Result<CheckReport> {
        if g.is_bridge(e)? {
            return Err(Error::Precondition(format!("edge {e} is a bridge")));
        }
        let whole = self.reduced(g)?;
        let split = self.reduced(&g.contract(e)?)?.shifted(1, 0).sum(&self.reduced(&g.delete(e)?)?);
        let witness = table_difference(&split, &whole, "b(G/e)[1,0] + b(G-e) vs b(G)");
        Ok(CheckReport::new(Check::DirectSum, g, verdict(witness)).on_edge(e))
    }

    /// Every choice of base vertex gives the same reduced Betti table.
    pub fn check_base_independence(&self, g: &Graph) -> Result<CheckReport> {
        let reference = self.reduced(g)?;
        let mut witness = None;
        for b in 0..g.vertex_count() {
            let other = self.reduced(&g.with_base(b)?)?;
            witness = table_difference(&reference, &other, &format!("base {} vs base {b}", g.base()));
            if witness.is_some() {
                break;
            }
        }
        Ok(CheckReport::new(Check::BaseIndependence, g, verdict(witness)))
    }

    /// `Σ (-1)^i q^j b^{i,j} = p(1 + q) / (1 + q)`.
    pub fn check_euler(&self, g: &Graph) -> Result<CheckReport> {
        let lhs = self.reduced(g)?.euler_characteristic();
        let rhs = chromatic_polynomial(g)
            .shift(1)
            .div_linear(-1)
            .ok_or_else(|| Error::Internal("p(1 + q) not divisible by 1 + q".into()))?;
        let witness = one_var_difference(&lhs, &rhs, "Euler characteristic vs p(1+q)/(1+q)");
        Ok(CheckReport::new(Check::Euler, g, verdict(witness)))
    }

    /// The Poincaré polynomial of a one-vertex union is the product of the
    /// factors' polynomials. The graphs are glued at their bases.
    pub fn check_union(&self, g1: &Graph, g2: &Graph) -> Result<CheckReport> {
        let glued = vertex_union(g1, g2);
        let lhs = self.reduced(&glued)?.poincare();
        let rhs = &self.reduced(g1)?.poincare() * &self.reduced(g2)?.poincare();
        let witness = two_var_difference(&lhs, &rhs, "R(G1*G2) vs R(G1)R(G2)");
        Ok(CheckReport::new(Check::Union, g1, verdict(witness)).with_partner(g2, None))
    }

    /// Both gluings of a Whitney twist have the same reduced Betti table.
    pub fn check_whitney(&self, g1: &Graph, e1: usize, g2: &Graph, e2: usize) -> Result<CheckReport> {
        let (straight, twisted) = whitney_twist(g1, e1, g2, e2)?;
        let witness = table_difference(
            &self.reduced(&straight)?,
            &self.reduced(&twisted)?,
            &format!("[{straight}] vs [{twisted}]"),
        );
        Ok(CheckReport::new(Check::Whitney, g1, verdict(witness))
            .on_edge(e1)
            .with_partner(g2, Some(e2)))
    }

    /// `b^{i, n-1-i} = h_i`, with the h-vector taken from proper coloring counts.
    pub fn check_hvector(&self, g: &Graph) -> Result<CheckReport> {
        require_connected(g)?;
        let n = g.vertex_count();
        let h = HVector::from_chromatic(&chromatic_by_interpolation(g)?, n)?;
        let table = self.reduced(g)?;
        let witness = (0..n).find_map(|i| {
            let b = table.get(i, n - 1 - i);
            let hi = h.get(i);
            (BigInt::from(b) != hi).then(|| Witness::Cell {
                i,
                j: n - 1 - i,
                expected: u64::try_from(&hi).unwrap_or(u64::MAX),
                actual: b,
                note: format!("h_{i} = {hi} from coloring counts"),
            })
        });
        Ok(CheckReport::new(Check::HVector, g, verdict(witness)))
    }

    /// Relation between the reduced polynomial and the top homogeneous parts
    /// `R^n`, `R^{n-1}` of the standard one, in both stated forms, each
    /// multiplied through by `q²`:
    ///
    /// * bipartite: `q²R̃ = (q + t)R^n - tq^n = qR^n + q²R^{n-1} - q^{n+1}`
    /// * otherwise: `q²R̃ = (q + t)R^n = qR^n + q²R^{n-1}`
    pub fn check_standard_relation(&self, g: &Graph) -> Result<CheckReport> {
        require_connected(g)?;
        let n = g.vertex_count() as u32;
        let reduced = self.reduced(g)?.poincare();
        let standard = self.betti(g, Theory::Standard)?.poincare();
        let top = standard.homogeneous_part(n);
        let next = standard.homogeneous_part(n - 1);
        let q = TwoVarPolynomial::q();
        let lhs = &q_power(2) * &reduced;
        let mut first = &(&q + &TwoVarPolynomial::t()) * &top;
        let mut second = &(&q * &top) + &(&q_power(2) * &next);
        if g.is_bipartite() {
            first = &first - &TwoVarPolynomial::monomial(1, 1, n);
            second = &second - &q_power(n + 1);
        }
        let witness = two_var_difference(&lhs, &first, "q^2 R vs first form")
            .or_else(|| two_var_difference(&lhs, &second, "q^2 R vs second form"));
        Ok(CheckReport::new(Check::StandardRelation, g, verdict(witness)))
    }

    /// Contracting a pendant edge shifts the table down by one in `j`.
    pub fn check_pendant(&self, g: &Graph, e: usize) -> Result<CheckReport> {
        let (u, v) = g.edge(e)?;
        if g.degree(u) != 1 && g.degree(v) != 1 {
            return Err(Error::Precondition(format!("edge {e} is not pendant")));
        }
        let witness = table_difference(
            &self.reduced(&g.contract(e)?)?.shifted(0, 1),
            &self.reduced(g)?,
            "b(G/e)[0,1] vs b(G)",
        );
        Ok(CheckReport::new(Check::Pendant, g, verdict(witness)).on_edge(e))
    }

    /// `R̃(t, q) = (-t)^{n-1} p̃((t - q)/t)`, with `p̃ = p/λ`, as an identity of
    /// polynomials. Also checks the companion identity for `p` itself,
    /// `t · (-t)^{n-1} p((t - q)/t) = (t - q) R̃(t, q)`.
    pub fn check_closed_form(&self, g: &Graph) -> Result<CheckReport> {
        require_connected(g)?;
        let n = g.vertex_count();
        let reduced = self.reduced(g)?.poincare();
        let p = chromatic_polynomial(g);
        let p_reduced = p.div_x().ok_or_else(|| Error::Internal("p(0) != 0".into()))?;
        let from_reduced = homogenize(&p_reduced, n - 1, n);
        let from_full = homogenize(&p, n, n);
        let t_minus_q = &TwoVarPolynomial::t() - &TwoVarPolynomial::q();
        let witness = two_var_difference(&reduced, &from_reduced, "R vs (-t)^(n-1) p~((t-q)/t)").or_else(|| {
            two_var_difference(&(&t_minus_q * &reduced), &from_full, "(t-q) R vs t (-t)^(n-1) p((t-q)/t)")
        });
        Ok(CheckReport::new(Check::ClosedForm, g, verdict(witness)))
    }

    /// Every invariant factor of every reduced differential is 1, so the
    /// integral cohomology is free.
    pub fn check_torsion(&self, g: &Graph) -> Result<CheckReport> {
        let forms = differential_smith_forms(g, Theory::Reduced, self.max_edges)?;
        let witness = forms.iter().find(|(_, f)| !f.is_torsion_free()).map(|(&(i, j), f)| Witness::Torsion {
            i,
            j,
            factors: f.factors.iter().filter(|d| !d.is_one()).map(|d| d.abs().to_string()).collect(),
        });
        Ok(CheckReport::new(Check::Torsion, g, verdict(witness)))
    }

    /// `d^{i+1,j} ∘ d^{i,j} = 0` everywhere, in both theories.
    pub fn check_d_squared(&self, g: &Graph) -> Result<CheckReport> {
        let mut witness = None;
        'theories: for theory in [Theory::Reduced, Theory::Standard] {
            let complex = CochainComplex::with_edge_limit(g, theory, self.max_edges)?;
            let mut cells: Vec<(usize, usize)> = complex.cells().collect();
            cells.sort_by_key(|&(i, j)| (j, i));
            let mut previous: Option<((usize, usize), SparseIntMatrix)> = None;
            for (i, j) in cells {
                let first = match previous.take() {
                    Some((cell, d)) if cell == (i, j) => d,
                    _ => complex.differential(i, j),
                };
                let second = complex.differential(i + 1, j);
                if !second.mul(&first)?.is_zero() {
                    witness = Some(Witness::NonzeroSquare { i, j, theory: theory.name().to_string() });
                    break 'theories;
                }
                previous = Some(((i + 1, j), second));
            }
        }
        Ok(CheckReport::new(Check::DSquared, g, verdict(witness)))
    }
}

pub fn check_diagonal(g: &Graph) -> Result<CheckReport> {
    Verifier::new().check_diagonal(g)
}

pub fn check_direct_sum(g: &Graph, e: usize) -> Result<CheckReport> {
    Verifier::new().check_direct_sum(g, e)
}

pub fn check_base_independence(g: &Graph) -> Result<CheckReport> {
    Verifier::new().check_base_independence(g)
}

pub fn check_euler(g: &Graph) -> Result<CheckReport> {
    Verifier::new().check_euler(g)
}

pub fn check_union(g1: &Graph, g2: &Graph) -> Result<CheckReport> {
    Verifier::new().check_union(g1, g2)
}

pub fn check_whitney(g1: &Graph, e1: usize, g2: &Graph, e2: usize) -> Result<CheckReport> {
    Verifier::new().check_whitney(g1, e1, g2, e2)
}

pub fn check_hvector(g: &Graph) -> Result<CheckReport> {
    Verifier::new().check_hvector(g)
}

pub fn check_standard_relation(g: &Graph) -> Result<CheckReport> {
    Verifier::new().check_standard_relation(g)
}

pub fn check_pendant(g: &Graph, e: usize) -> Result<CheckReport> {
    Verifier::new().check_pendant(g, e)
}

pub fn check_closed_form(g: &Graph) -> Result<CheckReport> {
    Verifier::new().check_closed_form(g)
}
