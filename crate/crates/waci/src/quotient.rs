//! Gröbner bases, normal forms, graded monomial bases and Hilbert
//! polynomials for weighted-homogeneous quotients.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::poly::{cmp_monomials, Monomial, Polynomial, Presentation, Rat, RingRef};
use crate::{Error, Result};

/// A reduced Gröbner basis under the canonical order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    presentation: Presentation,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn ring(&self) -> &RingRef {
        self.presentation.ring()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_term().expect("basis elements are non-zero").0)
            .collect()
    }

    /// True iff the leading terms contain a pure power of every variable,
    /// the standard finite-dimensionality criterion.
    pub fn is_artinian(&self) -> bool {
        let n = self.ring().num_vars();
        let lts = self.leading_monomials();
        (0..n).all(|i| {
            lts.iter().any(|m| {
                m.exp(i) > 0 && (0..n).all(|j| j == i || m.exp(j) == 0)
            })
        })
    }
}

/// Full reduction of `p` modulo `basis`: every term of the remainder is
/// divisible by no leading monomial.
fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = p.ring().clone();
    let mut rem = Polynomial::zero(&ring);
    let mut work = p.clone();
    'outer: while let Some((lm, lc)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            let (gm, gc) = g.leading_term().unwrap();
            if gm.divides(&lm) {
                let q = gm.div_into(&lm);
                let factor = &lc / gc;
                work = work.sub(&g.mul_term(&q, &factor)).unwrap();
                continue 'outer;
            }
        }
        // leading term is irreducible; move it to the remainder
        rem = rem
            .add(&Polynomial::monomial(&ring, lm.clone(), lc.clone()))
            .unwrap();
        work = work
            .sub(&Polynomial::monomial(&ring, lm, lc))
            .unwrap();
    }
    rem
}

/// Buchberger completion with the normal selection strategy (pairs in
/// increasing lcm degree), then full inter-reduction to the unique reduced
/// basis with monic elements.
pub fn groebner(p: &Presentation) -> Result<GroebnerBasis> {
    let ring = p.ring().clone();
    let mut basis: Vec<Polynomial> = Vec::new();
    for f in p.relations() {
        if !f.is_zero() {
            basis.push(f.clone());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm weighted degree first
        pairs.sort_by_key(|&(i, j)| {
            let li = basis[i].leading_term().unwrap().0;
            let lj = basis[j].leading_term().unwrap().0;
            let lcm = li.lcm(lj);
            (std::cmp::Reverse(lcm.weighted_degree(&ring)), std::cmp::Reverse((i, j)))
        });
        let (i, j) = pairs.pop().unwrap();
        let (li, ci) = {
            let (m, c) = basis[i].leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let (lj, cj) = {
            let (m, c) = basis[j].leading_term().unwrap();
            (m.clone(), c.clone())
        };
        // product criterion
        if li.coprime(&lj) {
            continue;
        }
        let lcm = li.lcm(&lj);
        let spoly = basis[i]
            .mul_term(&li.div_into(&lcm), &(Rat::one() / &ci))
            .sub(&basis[j].mul_term(&lj.div_into(&lcm), &(Rat::one() / &cj)))
            .unwrap();
        let r = reduce(&spoly, &basis);
        if !r.is_zero() {
            for k in 0..basis.len() {
                pairs.push((k, basis.len()));
            }
            basis.push(r);
        }
    }
    // inter-reduce: drop elements whose leading monomial is divisible by
    // another one, fully reduce the tails, make monic.
    let mut keep: Vec<Polynomial> = Vec::new();
    for i in 0..basis.len() {
        let lm = basis[i].leading_term().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, g)| {
            if i == j {
                return false;
            }
            let gm = g.leading_term().unwrap().0;
            gm.divides(lm) && (gm != lm || j < i)
        });
        if !redundant {
            keep.push(basis[i].clone());
        }
    }
    let mut reduced: Vec<Polynomial> = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<Polynomial> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce(&keep[i], &others);
        if !r.is_zero() {
            let lc = r.leading_term().unwrap().1.clone();
            reduced.push(r.scale(&(Rat::one() / lc)));
        }
    }
    reduced.sort_by(|a, b| {
        cmp_monomials(
            &ring,
            a.leading_term().unwrap().0,
            b.leading_term().unwrap().0,
        )
    });
    Ok(GroebnerBasis {
        presentation: p.clone(),
        basis: reduced,
    })
}

/// Unique remainder of `p` modulo the ideal of `gb`.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if p.ring() != gb.ring() && **p.ring() != **gb.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(reduce(p, &gb.basis))
}

/// An artinian quotient algebra with precomputed graded monomial bases.
#[derive(Debug)]
pub struct QuotientAlgebra {
    gb: GroebnerBasis,
    /// degree -> standard monomials of that weighted degree, in descending
    /// canonical order
    monomial_bases: BTreeMap<u64, Vec<Monomial>>,
    /// coefficient of t^d = dim of the degree-d piece
    hilbert: Vec<u64>,
}

pub type AlgRef = Arc<QuotientAlgebra>;

impl QuotientAlgebra {
    /// Build the quotient; errors if the quotient is infinite-dimensional.
    pub fn new(p: &Presentation) -> Result<AlgRef> {
        let gb = groebner(p)?;
        Self::from_groebner(gb)
    }

    pub fn from_groebner(gb: GroebnerBasis) -> Result<AlgRef> {
        if !gb.is_artinian() {
            return Err(Error::NotArtinian(
                "leading terms do not contain a pure power of every variable".into(),
            ));
        }
        let ring = gb.ring().clone();
        let n = ring.num_vars();
        let lts: Vec<Monomial> = gb.leading_monomials().into_iter().cloned().collect();
        // minimal pure-power exponent per variable bounds the enumeration
        let mut bounds = vec![u64::MAX; n];
        for m in &lts {
            for (i, bound) in bounds.iter_mut().enumerate() {
                if m.exp(i) > 0 && (0..n).all(|j| j == i || m.exp(j) == 0) {
                    *bound = (*bound).min(m.exp(i));
                }
            }
        }
        let mut standard: Vec<Monomial> = Vec::new();
        let mut stack = vec![0u64; n];
        enumerate_bounded(&mut stack, 0, &bounds, &mut |exps| {
            let m = Monomial::from_exps(exps.to_vec());
            if !lts.iter().any(|lt| lt.divides(&m)) {
                standard.push(m);
            }
        });
        let mut monomial_bases: BTreeMap<u64, Vec<Monomial>> = BTreeMap::new();
        for m in standard {
            let d = m.weighted_degree(&ring);
            monomial_bases.entry(d).or_default().push(m);
        }
        for ms in monomial_bases.values_mut() {
            ms.sort_by(|a, b| cmp_monomials(&ring, b, a));
        }
        let top = *monomial_bases.keys().max().unwrap();
        let mut hilbert = vec![0u64; (top + 1) as usize];
        for (&d, ms) in &monomial_bases {
            hilbert[d as usize] = ms.len() as u64;
        }
        Ok(Arc::new(QuotientAlgebra {
            gb,
            monomial_bases,
            hilbert,
        }))
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn ring(&self) -> &RingRef {
        self.gb.ring()
    }

    pub fn presentation(&self) -> &Presentation {
        self.gb.presentation()
    }

    /// Standard monomials of weighted degree `d` (empty above the top).
    pub fn monomial_basis(&self, d: u64) -> &[Monomial] {
        self.monomial_bases
            .get(&d)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn dim_degree(&self, d: u64) -> usize {
        self.monomial_basis(d).len()
    }

    /// Top degree with a non-zero piece.
    pub fn top_degree(&self) -> u64 {
        *self.monomial_bases.keys().max().unwrap()
    }

    pub fn total_dim(&self) -> usize {
        self.monomial_bases.values().map(|v| v.len()).sum()
    }

    /// Coefficients of the Hilbert polynomial, index = degree.
    pub fn hilbert_polynomial(&self) -> &[u64] {
        &self.hilbert
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        normal_form(p, &self.gb)
    }

    /// Coordinates of a (homogeneous, reduced) polynomial over the
    /// standard-monomial basis of degree `d`.
    pub fn coords(&self, p: &Polynomial, d: u64) -> Vec<Rat> {
        let basis = self.monomial_basis(d);
        basis.iter().map(|m| p.coefficient(m)).collect()
    }

    /// Rebuild a polynomial from coordinates over the degree-`d` basis.
    pub fn from_coords(&self, coords: &[Rat], d: u64) -> Polynomial {
        let basis = self.monomial_basis(d);
        assert_eq!(coords.len(), basis.len());
        Polynomial::from_terms(
            self.ring(),
            basis
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }
}

fn enumerate_bounded(
    stack: &mut Vec<u64>,
    i: usize,
    bounds: &[u64],
    f: &mut impl FnMut(&[u64]),
) {
    if i == bounds.len() {
        f(stack);
        return;
    }
    for e in 0..bounds[i] {
        stack[i] = e;
        enumerate_bounded(stack, i + 1, bounds, f);
    }
    stack[i] = 0;
}

/// All monomials of the free ring with the given weighted degree, in
/// descending canonical order.
pub fn free_monomials_of_degree(ring: &RingRef, d: u64) -> Vec<Monomial> {
    let n = ring.num_vars();
    let mut out = Vec::new();
    let mut exps = vec![0u64; n];
    fn rec(
        ring: &RingRef,
        exps: &mut Vec<u64>,
        i: usize,
        remaining: u64,
        out: &mut Vec<Monomial>,
    ) {
        if i == ring.num_vars() {
            if remaining == 0 {
                out.push(Monomial::from_exps(exps.clone()));
            }
            return;
        }
        let w = ring.weight(i);
        let max = remaining / w;
        for e in 0..=max {
            exps[i] = e;
            rec(ring, exps, i + 1, remaining - e * w, out);
        }
        exps[i] = 0;
    }
    rec(ring, &mut exps, 0, d, &mut out);
    out.sort_by(|a, b| cmp_monomials(ring, b, a));
    out
}

/// The complete-intersection candidate series
/// `prod (1 - t^{|f_i|}) / prod (1 - t^{w_i})`, expanded exactly.
///
/// Errors when the rational function is not a polynomial with non-negative
/// coefficients, which signals that the input cannot be a complete
/// intersection of that shape.
pub fn ci_series(p: &Presentation) -> Result<Vec<i64>> {
    let ring = p.ring();
    if p.relations().len() != ring.num_vars() {
        return Err(Error::NotWaci(format!(
            "{} relations for {} variables",
            p.relations().len(),
            ring.num_vars()
        )));
    }
    let fdeg = p.relation_weights();
    // numerator = prod (1 - t^{|f_i|})
    let mut num = vec![1i64];
    for &d in &fdeg {
        num = poly_mul_binomial(&num, d as usize);
    }
    // divide exactly by each (1 - t^{w_i})
    let mut q = num;
    for &w in ring.weights() {
        q = poly_div_binomial(&q, w as usize).ok_or_else(|| {
            Error::NotWaci("series is not a polynomial".into())
        })?;
    }
    if q.iter().any(|&c| c < 0) {
        return Err(Error::NotWaci("series has negative coefficients".into()));
    }
    while q.last() == Some(&0) {
        q.pop();
    }
    Ok(q)
}

/// Multiply the coefficient vector by (1 - t^d).
fn poly_mul_binomial(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i] += c;
        out[i + d] -= c;
    }
    out
}

/// Exact division by (1 - t^d); `None` if the remainder is non-zero.
fn poly_div_binomial(p: &[i64], d: usize) -> Option<Vec<i64>> {
    // q(t) (1 - t^d) = p(t)  =>  q_i = p_i + q_{i-d}
    if p.is_empty() {
        return Some(Vec::new());
    }
    let mut q = vec![0i64; p.len()];
    for i in 0..p.len() {
        let carry = if i >= d { q[i - d] } else { 0 };
        q[i] = p[i] + carry;
    }
    // remainder check: top d "virtual" coefficients must vanish
    for i in p.len()..p.len() + d {
        let carry = if i >= d && i - d < q.len() { q[i - d] } else { 0 };
        if carry != 0 {
            return None;
        }
    }
    while q.last() == Some(&0) {
        q.pop();
    }
    Some(q)
}

/// True iff the presentation defines a weighted artinian complete
/// intersection: as many relations as variables and a finite-dimensional
/// quotient.
pub fn is_waci(p: &Presentation) -> bool {
    if p.relations().len() != p.ring().num_vars() {
        return false;
    }
    match groebner(p) {
        Ok(gb) => gb.is_artinian(),
        Err(_) => false,
    }
}
