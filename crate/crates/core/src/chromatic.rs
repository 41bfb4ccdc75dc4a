//! Chromatic polynomials, the reduced chromatic polynomial and the h-vector.
//!
//! [`chromatic_polynomial`] runs deletion–contraction with memoization; the
//! state sum [`whitney_rank_polynomial`] and the brute-force
//! [`count_proper_colorings`] are independent routes used to cross-check it.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Graph, Normalized};
use crate::poly::{json_int, IntPolynomial};

/// Largest vertex count accepted by [`count_proper_colorings`].
pub const MAX_COLORING_VERTICES: usize = 12;
/// Largest edge count accepted by [`whitney_rank_polynomial`].
pub const MAX_STATE_SUM_EDGES: usize = 24;

/// Memo table for deletion–contraction, keyed on the labeled graph.
///
/// Contraction relabels deterministically, so equal keys recur often enough
/// on the small graphs this crate targets.
#[derive(Debug, Default)]
pub struct ChromaticMemo {
    table: HashMap<(usize, Vec<(usize, usize)>), IntPolynomial>,
}

impl ChromaticMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn polynomial(&mut self, g: &Graph) -> IntPolynomial {
        let n = g.vertex_count();
        if g.edge_count() == 0 {
            return IntPolynomial::monomial(1, n);
        }
        if g.edge_count() + g.component_count() == n {
            // forest: λ^k (λ-1)^(n-k)
            let k = g.component_count();
            return &IntPolynomial::monomial(1, k) * &IntPolynomial::linear(-1).pow(n - k);
        }
        let key = (n, g.edges().to_vec());
        if let Some(p) = self.table.get(&key) {
            return p.clone();
        }
        // not a forest, so some edge lies on a cycle
        let e = (0..g.edge_count())
            .rev()
            .find(|&e| !g.is_bridge(e).unwrap())
            .unwrap_or(g.edge_count() - 1);
        let deleted = self.polynomial(&g.delete(e).unwrap());
        let contracted = self.polynomial(&g.contract(e).unwrap());
        let p = &deleted - &contracted;
        self.table.insert(key, p.clone());
        p
    }
}

/// Chromatic polynomial `p_Γ(λ)`.
pub fn chromatic_polynomial(g: &Graph) -> IntPolynomial {
    ChromaticMemo::new().polynomial(g)
}

/// Chromatic polynomial of a normalized input; a loop admits no proper
/// coloring, so the polynomial is zero.
pub fn chromatic_polynomial_normalized(g: &Normalized) -> IntPolynomial {
    match g {
        Normalized::Simple(g) => chromatic_polynomial(g),
        Normalized::Loop => IntPolynomial::zero(),
    }
}

/// Reduced chromatic polynomial `p_Γ(λ) / λ`.
pub fn reduced_chromatic(g: &Graph) -> Result<IntPolynomial> {
    chromatic_polynomial(g)
        .div_x()
        .ok_or_else(|| Error::Internal("chromatic polynomial not divisible by λ".into()))
}

/// Coefficients `(h_0, …, h_{n-1})` of `p_Γ` in the basis
/// `(-1)^i λ(λ-1)^(n-1-i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector(pub Vec<BigInt>);

impl HVector {
    pub fn from_i64s(h: &[i64]) -> Self {
        HVector(h.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    /// Reads the h-vector of an `n`-vertex graph off its chromatic polynomial.
    pub fn from_chromatic(p: &IntPolynomial, n: usize) -> Result<Self> {
        let reduced = p
            .div_x()
            .ok_or_else(|| Error::Internal("chromatic polynomial not divisible by λ".into()))?;
        // p̃(μ + 1) = Σ (-1)^i h_i μ^(n-1-i)
        let in_mu = reduced.shift(1);
        if in_mu.degree().is_some_and(|d| d + 1 > n) {
            return Err(Error::Internal("chromatic polynomial degree exceeds n".into()));
        }
        let h = (0..n)
            .map(|i| {
                let c = in_mu.coeff(n - 1 - i);
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        Ok(HVector(h))
    }
}

impl Serialize for HVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(json_int))
    }
}

/// h-vector of a connected graph.
pub fn h_vector(g: &Graph) -> Result<HVector> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    HVector::from_chromatic(&chromatic_polynomial(g), g.vertex_count())
}

/// Number of proper vertex colorings with `k` colors, by backtracking.
pub fn count_proper_colorings(g: &Graph, k: usize) -> Result<BigInt> {
    let n = g.vertex_count();
    if n > MAX_COLORING_VERTICES {
        return Err(Error::TooManyVertices { vertices: n, limit: MAX_COLORING_VERTICES });
    }
    let earlier: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v).into_iter().filter(|&w| w < v).collect())
        .collect();
    let mut colors = vec![0usize; n];
    Ok(BigInt::from(extend_coloring(&earlier, k, &mut colors, 0)))
}

fn extend_coloring(earlier: &[Vec<usize>], k: usize, colors: &mut [usize], v: usize) -> u128 {
    if v == colors.len() {
        return 1;
    }
    let mut total = 0;
    for c in 0..k {
        if earlier[v].iter().all(|&w| colors[w] != c) {
            colors[v] = c;
            total += extend_coloring(earlier, k, colors, v + 1);
        }
    }
    total
}

/// Interpolates `p_Γ` from the coloring counts at `λ = 0, …, n`.
///
/// Newton form `p(λ) = Σ_k Δ^k p(0) · λ(λ-1)…(λ-k+1) / k!`, accumulated over
/// the common denominator `n!` and divided out exactly at the end.
pub fn chromatic_by_interpolation(g: &Graph) -> Result<IntPolynomial> {
    let n = g.vertex_count();
    let mut diffs: Vec<BigInt> = (0..=n)
        .map(|k| count_proper_colorings(g, k))
        .collect::<Result<_>>()?;
    let mut newton = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let factorial = |k: usize| (1..=k).fold(BigInt::one(), |acc, i| acc * i);
    let denominator = factorial(n);
    let mut scaled = IntPolynomial::zero();
    let mut falling = IntPolynomial::one();
    for (k, delta) in newton.into_iter().enumerate() {
        if k > 0 {
            falling = &falling * &IntPolynomial::linear(-(k as i64 - 1));
        }
        let weight = delta * (&denominator / factorial(k));
        scaled = &scaled + &(&falling * &IntPolynomial::constant(weight));
    }
    let coeffs = scaled
        .coeffs()
        .iter()
        .map(|c| {
            if (c % &denominator).is_zero() {
                Ok(c / &denominator)
            } else {
                Err(Error::Internal("interpolated polynomial is not integral".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// State sum `Σ_s (-1)^|s| λ^k(s)` over all edge subsets.
pub fn whitney_rank_polynomial(g: &Graph) -> Result<IntPolynomial> {
    let e = g.edge_count();
    if e > MAX_STATE_SUM_EDGES {
        return Err(Error::TooManyEdges { edges: e, limit: MAX_STATE_SUM_EDGES });
    }
    let mut by_components = vec![0i64; g.vertex_count() + 1];
    for bits in 0..1u64 << e {
        let s = EdgeSubset(bits);
        let k = g.component_labels(s).count;
        by_components[k] += if s.dimension().is_multiple_of(2) { 1 } else { -1 };
    }
    Ok(IntPolynomial::from_i64s(&by_components))
}
