//! Pseudo-homotopy groups of a weighted artinian complete intersection,
//! the top invariant k_A, and the simplicity classifier.
//!
//! The odd part is the kernel of the linear map sending the i-th relation
//! symbol (of degree |f_i| - 1) to the linear part of f_i; the even part
//! is the cokernel of the same map, graded by the variable weights.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::derivations::{derivation_space, negative_derivations_vanish};
use crate::linalg::{self, QMatrix};
use crate::poly::{Presentation, Rat};
use crate::quotient::{self, free_monomials_of_degree, QuotientAlgebra};
use crate::{Error, Result};

/// Graded dimensions of the odd and even pseudo-homotopy groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoHomotopy {
    /// odd degree -> dimension of pi_1 in that degree
    pub pi1: BTreeMap<u64, usize>,
    /// even degree -> dimension of pi_0 in that degree
    pub pi0: BTreeMap<u64, usize>,
    /// None exactly when A = Q never happens here (a WACI has n >= 1
    /// relations), so this is always the max k with pi_1^{2k-1} != 0
    pub k: u64,
}

/// The linear-part matrix L: columns indexed by relations, rows by
/// variables; entry (i, j) = coefficient of x_i in the linear part of f_j.
fn linear_part_matrix(p: &Presentation) -> QMatrix {
    let n_vars = p.ring().num_vars();
    let mut m = QMatrix::new(n_vars, p.relations().len());
    for (j, f) in p.relations().iter().enumerate() {
        for (mono, c) in f.linear_part().terms() {
            let i = (0..n_vars).find(|&i| mono.exp(i) == 1).unwrap();
            m.data[i][j] = c.clone();
        }
    }
    m
}

fn require_waci(p: &Presentation) -> Result<()> {
    if quotient::is_waci(p) {
        Ok(())
    } else {
        Err(Error::NotWaci("input presentation".into()))
    }
}

/// Graded dimensions of pi_1 = ker L, graded by |y_i| = |f_i| - 1.
pub fn pi1(p: &Presentation) -> Result<BTreeMap<u64, usize>> {
    require_waci(p)?;
    Ok(pi1_unchecked(p))
}

fn pi1_unchecked(p: &Presentation) -> BTreeMap<u64, usize> {
    let rel_weights = p.relation_weights();
    let l = linear_part_matrix(p);
    // the map preserves the grading, so the kernel splits over the
    // distinct relation weights
    let mut out = BTreeMap::new();
    let mut weights: Vec<u64> = rel_weights.clone();
    weights.sort_unstable();
    weights.dedup();
    for d in weights {
        let cols: Vec<usize> = (0..rel_weights.len())
            .filter(|&j| rel_weights[j] == d)
            .collect();
        let sub = QMatrix::from_rows(
            l.data
                .iter()
                .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
                .collect(),
        );
        let dim = cols.len() - linalg::rank(&sub);
        if dim > 0 {
            out.insert(d - 1, dim);
        }
    }
    out
}

/// Graded dimensions of pi_0 = coker L, graded by the variable weights.
pub fn pi0(p: &Presentation) -> Result<BTreeMap<u64, usize>> {
    require_waci(p)?;
    let ring = p.ring();
    let l = linear_part_matrix(p);
    let mut out = BTreeMap::new();
    let mut weights: Vec<u64> = ring.weights().to_vec();
    weights.sort_unstable();
    weights.dedup();
    for w in weights {
        let rows: Vec<usize> = (0..ring.num_vars())
            .filter(|&i| ring.weight(i) == w)
            .collect();
        let sub = QMatrix::from_rows(rows.iter().map(|&i| l.data[i].clone()).collect());
        let dim = rows.len() - linalg::rank(&sub);
        if dim > 0 {
            out.insert(w, dim);
        }
    }
    Ok(out)
}

/// The invariant k_A = max { k | pi_1^{2k-1} != 0 }.
pub fn k_invariant(p: &Presentation) -> Result<u64> {
    require_waci(p)?;
    let pi1 = pi1_unchecked(p);
    let top = pi1
        .keys()
        .max()
        .copied()
        .ok_or_else(|| Error::InvalidArgument("pi_1 is empty (A = Q)".into()))?;
    Ok(top.div_ceil(2))
}

pub fn pseudo_homotopy(p: &Presentation) -> Result<PseudoHomotopy> {
    let pi1 = pi1(p)?;
    let pi0 = pi0(p)?;
    let top = pi1
        .keys()
        .max()
        .copied()
        .ok_or_else(|| Error::InvalidArgument("pi_1 is empty (A = Q)".into()))?;
    Ok(PseudoHomotopy {
        pi1,
        pi0,
        k: top.div_ceil(2),
    })
}

/// Outcome of the three-condition simplicity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub is_waci: bool,
    pub der_neg_zero: bool,
    pub der0_dim: usize,
    pub k: u64,
    pub top_pi1_dim: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Simple,
    NotWaci,
    NegativeDerivations,
    DerZeroDim(usize),
    TopPi1Dim(usize),
}

impl SimplicityReport {
    pub fn is_simple(&self) -> bool {
        self.verdict == Verdict::Simple
    }
}

/// Evaluate the simplicity conditions: no negative derivations, a
/// one-dimensional space of degree-0 derivations, and a one-dimensional
/// top odd pseudo-homotopy group.
pub fn is_simple(p: &Presentation) -> SimplicityReport {
    if !quotient::is_waci(p) {
        return SimplicityReport {
            is_waci: false,
            der_neg_zero: false,
            der0_dim: 0,
            k: 0,
            top_pi1_dim: 0,
            verdict: Verdict::NotWaci,
        };
    }
    let algebra = QuotientAlgebra::new(p).expect("is_waci implies artinian");
    let der_neg_zero = negative_derivations_vanish(&algebra);
    let der0_dim = derivation_space(&algebra, 0).dim();
    let pi1 = pi1_unchecked(p);
    let top = *pi1.keys().max().expect("a WACI has relations");
    let k = top.div_ceil(2);
    let top_pi1_dim = pi1[&top];
    let verdict = if !der_neg_zero {
        Verdict::NegativeDerivations
    } else if der0_dim != 1 {
        Verdict::DerZeroDim(der0_dim)
    } else if top_pi1_dim != 1 {
        Verdict::TopPi1Dim(top_pi1_dim)
    } else {
        Verdict::Simple
    };
    SimplicityReport {
        is_waci: true,
        der_neg_zero,
        der0_dim,
        k,
        top_pi1_dim,
        verdict,
    }
}

/// dim of (I / C^+ . I) in degree d, for presentations whose relations
/// have no linear part: the number of minimal ideal generators in that
/// degree.
pub fn minimal_generators_in_degree(p: &Presentation, d: u64) -> Result<usize> {
    for f in p.relations() {
        if !f.linear_part().is_zero() {
            return Err(Error::InvalidArgument(
                "presentation has a relation with non-zero linear part".into(),
            ));
        }
    }
    let ring = p.ring();
    let rel_weights = p.relation_weights();
    let columns = free_monomials_of_degree(ring, d);
    let col_index: std::collections::HashMap<_, _> = columns
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let mut full_rows: Vec<Vec<Rat>> = Vec::new();
    let mut proper_rows: Vec<Vec<Rat>> = Vec::new();
    for (j, f) in p.relations().iter().enumerate() {
        if rel_weights[j] > d {
            continue;
        }
        for g in free_monomials_of_degree(ring, d - rel_weights[j]) {
            let prod = f.mul_term(&g, &crate::poly::rat(1));
            let mut row = vec![Rat::zero(); columns.len()];
            for (m, c) in prod.terms() {
                row[col_index[m]] = c.clone();
            }
            if !g.is_one() {
                proper_rows.push(row.clone());
            }
            full_rows.push(row);
        }
    }
    let dim_i = linalg::rank(&QMatrix::from_rows(full_rows));
    let dim_mi = if proper_rows.is_empty() {
        0
    } else {
        linalg::rank(&QMatrix::from_rows(proper_rows))
    };
    Ok(dim_i - dim_mi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, Presentation, WeightedRing};

    fn pres(vars: &[&str], weights: &[u64], rels: &[&str]) -> Presentation {
        let ring = WeightedRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            weights.to_vec(),
        )
        .unwrap();
        let relations = rels.iter().map(|s| parse(s, &ring).unwrap()).collect();
        Presentation::new(ring, relations).unwrap()
    }

    fn el3() -> Presentation {
        pres(
            &["x1", "x2", "x3"],
            &[2, 2, 2],
            &["x1^2 - x3^2", "x2^2 - x3^2", "x1*x2*x3"],
        )
    }

    fn flag2() -> Presentation {
        pres(
            &["x1", "x2", "x3"],
            &[2, 2, 2],
            &[
                "x1 + x2 + x3",
                "x1*x2 + x1*x3 + x2*x3",
                "x1*x2*x3",
            ],
        )
    }

    #[test]
    fn el3_pi1() {
        let pi1 = pi1(&el3()).unwrap();
        assert_eq!(pi1.get(&3), Some(&2));
        assert_eq!(pi1.get(&5), Some(&1));
        assert_eq!(pi1.len(), 2);
    }

    #[test]
    fn flag_pi() {
        let p = flag2();
        let pi1 = pi1(&p).unwrap();
        assert_eq!(pi1.get(&3), Some(&1));
        assert_eq!(pi1.get(&5), Some(&1));
        let pi0 = pi0(&p).unwrap();
        assert_eq!(pi0.get(&2), Some(&2));
    }

    #[test]
    fn pi0_examples() {
        let cube = pres(&["x"], &[2], &["x^4"]);
        assert_eq!(pi0(&cube).unwrap().get(&2), Some(&1));
        let el = el3();
        assert_eq!(pi0(&el).unwrap().get(&2), Some(&3));
    }

    #[test]
    fn k_values() {
        assert_eq!(k_invariant(&el3()).unwrap(), 3);
        let cube = pres(&["x"], &[2], &["x^3"]);
        assert_eq!(k_invariant(&cube).unwrap(), 3);
        let split21 = pres(&["x1", "x2"], &[2, 2], &["x1^2 - x2^2", "x2^4"]);
        assert_eq!(k_invariant(&split21).unwrap(), 4);
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&el3()).is_simple());
        let split21 = pres(&["x1", "x2"], &[2, 2], &["x1^2 - x2^2", "x2^4"]);
        assert!(is_simple(&split21).is_simple());
        // tensor of two truncated algebras fails condition (ii)
        let t = pres(&["x", "y"], &[2, 2], &["x^3", "y^3"]);
        let rep = is_simple(&t);
        assert!(!rep.is_simple());
        assert_eq!(rep.verdict, Verdict::DerZeroDim(2));
    }

    #[test]
    fn rank_accounting() {
        for p in [el3(), flag2()] {
            let n_rel = p.relations().len();
            let n_var = p.ring().num_vars();
            let l = linear_part_matrix(&p);
            let r = linalg::rank(&l);
            let s1: usize = pi1(&p).unwrap().values().sum();
            let s0: usize = pi0(&p).unwrap().values().sum();
            assert_eq!(s1, n_rel - r);
            assert_eq!(s0, n_var - r);
        }
    }

    #[test]
    fn minimal_generators() {
        let p = el3();
        assert_eq!(minimal_generators_in_degree(&p, 4).unwrap(), 2);
        assert_eq!(minimal_generators_in_degree(&p, 6).unwrap(), 1);
        // agreement with pi1 shifted by one, for no-linear-part inputs
        let pi1 = pi1(&p).unwrap();
        for (&deg, &dim) in &pi1 {
            assert_eq!(minimal_generators_in_degree(&p, deg + 1).unwrap(), dim);
        }
        // rejected when a linear part is present
        assert!(minimal_generators_in_degree(&flag2(), 4).is_err());
    }

    #[test]
    fn no_linear_part_degree_multisets() {
        let p = el3();
        let mut expected_pi1: Vec<u64> = p.relation_weights().iter().map(|d| d - 1).collect();
        expected_pi1.sort_unstable();
        let mut got: Vec<u64> = Vec::new();
        for (&d, &m) in pi1(&p).unwrap().iter() {
            for _ in 0..m {
                got.push(d);
            }
        }
        assert_eq!(got, expected_pi1);
    }
}
