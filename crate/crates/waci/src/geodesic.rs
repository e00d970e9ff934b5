//! The invariant-geodesic obstruction pipeline: characteristic polynomials
//! of monomial matrices, the Gauss-lemma integrality check, and the
//! impossibility of a unimodular value pair.

use num_traits::{One, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::homotopy::{self, SimplicityReport};
use crate::poly::{Presentation, Rat};
use crate::{Error, Result};

/// An invertible monomial matrix: the j-th basis vector is sent to
/// `multipliers[j]` times the `permutation[j]`-th one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAction {
    pub permutation: Vec<usize>,
    pub multipliers: Vec<Rat>,
}

impl MonomialAction {
    pub fn new(permutation: Vec<usize>, multipliers: Vec<Rat>) -> Result<Self> {
        let s = permutation.len();
        if multipliers.len() != s || s == 0 {
            return Err(Error::InvalidArgument(
                "permutation and multiplier lists must have equal positive length".into(),
            ));
        }
        let mut seen = vec![false; s];
        for &i in &permutation {
            if i >= s || seen[i] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[i] = true;
        }
        if multipliers.iter().any(|l| l.is_zero()) {
            return Err(Error::InvalidArgument("multipliers must be non-zero".into()));
        }
        Ok(MonomialAction {
            permutation,
            multipliers,
        })
    }

    pub fn size(&self) -> usize {
        self.permutation.len()
    }

    /// The dense matrix of the action, column j carrying the image of the
    /// j-th basis vector.
    pub fn matrix(&self) -> crate::linalg::QMatrix {
        let s = self.size();
        let mut m = crate::linalg::QMatrix::new(s, s);
        for j in 0..s {
            m.data[self.permutation[j]][j] = self.multipliers[j].clone();
        }
        m
    }
}

/// The characteristic polynomial of a monomial matrix in factored form,
/// one factor z^{s_i} - gamma_i per cycle of the permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolyProduct {
    pub cycle_lengths: Vec<usize>,
    pub gammas: Vec<Rat>,
    /// ascending coefficients of the expanded (monic) polynomial
    pub expanded: Vec<Rat>,
}

impl CharPolyProduct {
    pub fn from_factors(cycle_lengths: Vec<usize>, gammas: Vec<Rat>) -> Self {
        assert_eq!(cycle_lengths.len(), gammas.len());
        let degree: usize = cycle_lengths.iter().sum();
        let mut expanded = vec![Rat::zero(); degree + 1];
        expanded[0] = Rat::one();
        let mut cur_deg = 0usize;
        for (s, g) in cycle_lengths.iter().zip(&gammas) {
            let mut next = vec![Rat::zero(); cur_deg + s + 1];
            for (d, c) in expanded[..=cur_deg].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                next[d + s] += c.clone();
                next[d] -= c * g;
            }
            cur_deg += s;
            expanded = next;
        }
        CharPolyProduct {
            cycle_lengths,
            gammas,
            expanded,
        }
    }

    pub fn degree(&self) -> usize {
        self.expanded.len() - 1
    }

    /// P(0) = prod(-gamma_i)
    pub fn at_zero(&self) -> Rat {
        self.gammas.iter().fold(Rat::one(), |acc, g| acc * -g)
    }

    /// P(1) = prod(1 - gamma_i)
    pub fn at_one(&self) -> Rat {
        self.gammas
            .iter()
            .fold(Rat::one(), |acc, g| acc * (Rat::one() - g))
    }

    pub fn eval(&self, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.expanded.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// Cycle decomposition of the permutation with the multiplier product
/// gamma_i along each cycle, plus the expanded polynomial.
pub fn char_poly(act: &MonomialAction) -> CharPolyProduct {
    let s = act.size();
    let mut visited = vec![false; s];
    let mut lengths = Vec::new();
    let mut gammas = Vec::new();
    for start in 0..s {
        if visited[start] {
            continue;
        }
        let mut len = 0usize;
        let mut gamma = Rat::one();
        let mut j = start;
        loop {
            visited[j] = true;
            gamma *= &act.multipliers[j];
            len += 1;
            j = act.permutation[j];
            if j == start {
                break;
            }
        }
        lengths.push(len);
        gammas.push(gamma);
    }
    CharPolyProduct::from_factors(lengths, gammas)
}

/// Gauss-lemma consistency: whenever the expanded polynomial has integer
/// coefficients, every cycle product gamma_i must be an integer. Returns
/// false only in the alarm case, which would contradict the content
/// argument for monic polynomials.
pub fn gamma_integrality(c: &CharPolyProduct) -> bool {
    if c.expanded.iter().any(|coef| !coef.is_integer()) {
        return true; // vacuously consistent
    }
    c.gammas.iter().all(|g| g.is_integer())
}

fn unimodular_scan(m: usize, bound: i64, gammas: &mut Vec<i64>, min: i64) -> bool {
    if gammas.len() == m {
        let p0: i64 = gammas.iter().map(|g| -g).product();
        if p0.abs() != 1 {
            return false;
        }
        let p1: i64 = gammas.iter().map(|g| 1 - g).product();
        return p1.abs() == 1;
    }
    // gamma values are interchangeable for the two evaluations, so scan
    // non-decreasing tuples only
    for g in min..=bound {
        gammas.push(g);
        if unimodular_scan(m, bound, gammas, g) {
            gammas.pop();
            return true;
        }
        gammas.pop();
    }
    false
}

fn check_sweep_bounds(max_cycles: usize, gamma_bound: i64) -> Result<()> {
    if max_cycles < 1 || gamma_bound < 1 {
        return Err(Error::InvalidArgument("bounds must be at least 1".into()));
    }
    Ok(())
}

/// Exhaustive search for integer cycle products with |gamma_i| <= bound
/// and at most `max_cycles` cycles such that |P(0)| = |P(1)| = 1. The
/// evaluations at 0 and 1 do not depend on the cycle lengths, so only the
/// gamma tuples are enumerated. Always false: |P(0)| = 1 forces every
/// gamma_i to be a unit, making each factor of P(1) either 0 or 2.
pub fn unimodular_pair_exists(max_cycles: usize, gamma_bound: i64) -> Result<bool> {
    check_sweep_bounds(max_cycles, gamma_bound)?;
    #[cfg(feature = "parallel")]
    {
        Ok((1..=max_cycles).any(|m| {
            (-gamma_bound..=gamma_bound).into_par_iter().any(|first| {
                let mut gammas = vec![first];
                unimodular_scan(m, gamma_bound, &mut gammas, first)
            })
        }))
    }
    #[cfg(not(feature = "parallel"))]
    unimodular_pair_exists_seq(max_cycles, gamma_bound)
}

/// Single-threaded variant of [`unimodular_pair_exists`], kept as a
/// determinism cross-check and for benchmarking the sweep.
pub fn unimodular_pair_exists_seq(max_cycles: usize, gamma_bound: i64) -> Result<bool> {
    check_sweep_bounds(max_cycles, gamma_bound)?;
    Ok((1..=max_cycles).any(|m| {
        let mut gammas = Vec::new();
        unimodular_scan(m, gamma_bound, &mut gammas, -gamma_bound)
    }))
}

/// Per-factor verdicts and the top-degree bookkeeping of the obstruction.
#[derive(Debug, Clone)]
pub struct GeodesicReport {
    pub factors: Vec<SimplicityReport>,
    /// max of the per-factor invariants, when all factors are simple
    pub k: Option<u64>,
    /// indices of the factors realizing k
    pub critical_factors: Vec<usize>,
    pub conclusion: String,
}

impl GeodesicReport {
    pub fn obstruction_applies(&self) -> bool {
        self.k.is_some()
    }
}

/// Runs the simplicity check on every factor; when all pass, reports the
/// maximal invariant k, the set of factors realizing it (each contributing
/// one dimension to the critical space), and the conclusion that the
/// unimodularity obstruction forces invariant geodesics.
pub fn geodesic_report(factors: &[Presentation]) -> Result<GeodesicReport> {
    if factors.is_empty() {
        return Err(Error::InvalidArgument("at least one factor is required".into()));
    }
    let reports: Vec<SimplicityReport> = factors.iter().map(homotopy::is_simple).collect();
    if let Some((idx, bad)) = reports.iter().enumerate().find(|(_, r)| !r.is_simple()) {
        return Ok(GeodesicReport {
            conclusion: format!(
                "factor {} is not simple ({:?}); the obstruction does not apply",
                idx + 1,
                bad.verdict
            ),
            factors: reports,
            k: None,
            critical_factors: Vec::new(),
        });
    }
    let k = reports.iter().map(|r| r.k).max().unwrap();
    let critical: Vec<usize> = reports
        .iter()
        .enumerate()
        .filter(|(_, r)| r.k == k)
        .map(|(i, _)| i)
        .collect();
    Ok(GeodesicReport {
        factors: reports,
        k: Some(k),
        critical_factors: critical,
        conclusion: "homological homogeneity verified: the unimodularity obstruction applies, \
                     invariant geodesics exist for every isometry of any realizing closed manifold"
            .into(),
    })
}
