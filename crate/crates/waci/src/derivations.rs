//! Degree-p derivation spaces of artinian quotients, the Lie bracket, the
//! Euler (grading) derivation, and tensor products of presentations.
//!
//! A derivation is stored through its images on the ring generators, in
//! normal form; the extension to the whole algebra is by the Leibniz rule.

use num_traits::Zero;
use std::sync::Arc;

use crate::linalg::{kernel_basis, QMatrix};
use crate::poly::{rat, Polynomial, Presentation, Rat, WeightedRing};
use crate::quotient::AlgRef;
use crate::{Error, Result};

/// A degree-p derivation of an artinian quotient algebra.
#[derive(Debug, Clone)]
pub struct Derivation {
    algebra: AlgRef,
    degree: i64,
    /// images[i] = normal form of the image of the i-th generator
    images: Vec<Polynomial>,
}

impl Derivation {
    pub fn algebra(&self) -> &AlgRef {
        &self.algebra
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Extend to an arbitrary element by the Leibniz rule and reduce.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.algebra.ring());
        for i in 0..self.algebra.ring().num_vars() {
            if self.images[i].is_zero() {
                continue;
            }
            acc = acc.add(&p.partial(i).mul(&self.images[i])?)?;
        }
        self.algebra.normal_form(&acc)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|p| p.is_zero())
    }
}

/// A basis of the space of degree-p derivations.
#[derive(Debug)]
pub struct DerivationSpace {
    pub degree: i64,
    pub basis: Vec<Derivation>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn target_degree(w: u64, p: i64) -> Option<u64> {
    let t = w as i64 + p;
    if t < 0 {
        None
    } else {
        Some(t as u64)
    }
}

/// Solve the linear system defining der^p(A): unknowns are the coordinates
/// of the generator images over the graded monomial bases; constraints say
/// that the Leibniz expansion of every relation reduces to zero.
pub fn derivation_space(algebra: &AlgRef, p: i64) -> DerivationSpace {
    let ring = algebra.ring().clone();
    let n = ring.num_vars();
    // unknown layout: per generator, one coordinate per basis monomial of
    // the target degree w_i + p
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0usize;
    for i in 0..n {
        offsets.push(total);
        if let Some(t) = target_degree(ring.weight(i), p) {
            total += algebra.dim_degree(t);
        }
    }
    if total == 0 {
        return DerivationSpace {
            degree: p,
            basis: Vec::new(),
        };
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let rel_weights = algebra.presentation().relation_weights();
    for (j, f) in algebra.presentation().relations().iter().enumerate() {
        let out_deg = rel_weights[j] as i64 + p;
        if out_deg < 0 {
            continue;
        }
        let out_deg = out_deg as u64;
        let out_dim = algebra.dim_degree(out_deg);
        if out_dim == 0 {
            continue;
        }
        let mut block = vec![vec![Rat::zero(); total]; out_dim];
        for i in 0..n {
            let Some(t) = target_degree(ring.weight(i), p) else {
                continue;
            };
            let partial = f.partial(i);
            if partial.is_zero() {
                continue;
            }
            for (b, bmono) in algebra.monomial_basis(t).iter().enumerate() {
                let img = algebra
                    .normal_form(&partial.mul_term(bmono, &rat(1)))
                    .expect("same ring");
                let coords = algebra.coords(&img, out_deg);
                for (r, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        block[r][offsets[i] + b] = c;
                    }
                }
            }
        }
        rows.extend(block);
    }
    let kernel = if rows.is_empty() {
        // no constraints: every coordinate vector is a derivation
        let mut id = Vec::new();
        for k in 0..total {
            let mut v = vec![Rat::zero(); total];
            v[k] = rat(1);
            id.push(v);
        }
        id
    } else {
        kernel_basis(&QMatrix::from_rows(rows))
    };
    let basis = kernel
        .into_iter()
        .map(|v| {
            let images = (0..n)
                .map(|i| match target_degree(ring.weight(i), p) {
                    Some(t) if algebra.dim_degree(t) > 0 => {
                        let dim = algebra.dim_degree(t);
                        algebra.from_coords(&v[offsets[i]..offsets[i] + dim], t)
                    }
                    _ => Polynomial::zero(&ring),
                })
                .collect();
            Derivation {
                algebra: algebra.clone(),
                degree: p,
                images,
            }
        })
        .collect();
    DerivationSpace { degree: p, basis }
}

/// True iff der^p(A) = 0 for every p < 0. Only even p down to -max(w_i)
/// can carry a non-zero derivation, so the check is finite.
pub fn negative_derivations_vanish(algebra: &AlgRef) -> bool {
    let max_w = algebra.ring().max_weight() as i64;
    let degrees: Vec<i64> = (1..=max_w / 2).map(|k| -2 * k).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        degrees
            .par_iter()
            .all(|&p| derivation_space(algebra, p).dim() == 0)
    }
    #[cfg(not(feature = "parallel"))]
    {
        degrees
            .iter()
            .all(|&p| derivation_space(algebra, p).dim() == 0)
    }
}

/// The grading derivation x_i -> w_i x_i, always a degree-0 derivation of
/// a weighted-homogeneous quotient.
pub fn euler_derivation(algebra: &AlgRef) -> Derivation {
    let ring = algebra.ring().clone();
    let images = (0..ring.num_vars())
        .map(|i| {
            algebra
                .normal_form(&Polynomial::var(&ring, i).scale(&rat(ring.weight(i) as i64)))
                .expect("same ring")
        })
        .collect();
    Derivation {
        algebra: algebra.clone(),
        degree: 0,
        images,
    }
}

/// Commutator of two even-degree derivations.
pub fn bracket(a: &Derivation, b: &Derivation) -> Result<Derivation> {
    if !Arc::ptr_eq(&a.algebra, &b.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let n = a.algebra.ring().num_vars();
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let ab = a.apply(&b.images[i])?;
        let ba = b.apply(&a.images[i])?;
        images.push(ab.sub(&ba)?);
    }
    Ok(Derivation {
        algebra: a.algebra.clone(),
        degree: a.degree + b.degree,
        images,
    })
}

/// Membership of a candidate derivation in a computed space, by rank.
pub fn space_contains(space: &DerivationSpace, d: &Derivation) -> bool {
    if d.is_zero() {
        return true;
    }
    let algebra = d.algebra();
    let ring = algebra.ring();
    let flatten = |der: &Derivation| -> Vec<Rat> {
        let mut v = Vec::new();
        for i in 0..ring.num_vars() {
            if let Some(t) = target_degree(ring.weight(i), der.degree) {
                v.extend(algebra.coords(&der.images[i], t));
            }
        }
        v
    };
    let mut rows: Vec<Vec<Rat>> = space.basis.iter().map(&flatten).collect();
    let base_rank = crate::linalg::rank(&QMatrix::from_rows(rows.clone()));
    rows.push(flatten(d));
    crate::linalg::rank(&QMatrix::from_rows(rows)) == base_rank
}

/// Disjoint union of two presentations; the quotient is the tensor
/// product. Colliding variable names are suffixed; a collision surviving
/// the renaming is an error.
pub fn tensor_presentation(p1: &Presentation, p2: &Presentation) -> Result<Presentation> {
    let r1 = p1.ring();
    let r2 = p2.ring();
    let mut names: Vec<String> = r1.var_names().to_vec();
    let mut rename2: Vec<String> = Vec::with_capacity(r2.num_vars());
    for name in r2.var_names() {
        let chosen = if names.contains(name) {
            let cand = format!("{name}_2");
            if names.contains(&cand) {
                return Err(Error::InvalidRing(format!(
                    "variable name collision on `{name}` persists after renaming"
                )));
            }
            cand
        } else {
            name.clone()
        };
        names.push(chosen.clone());
        rename2.push(chosen);
    }
    let mut weights: Vec<u64> = r1.weights().to_vec();
    weights.extend_from_slice(r2.weights());
    let ring = WeightedRing::new(names, weights)?;
    let mut relations = Vec::new();
    for f in p1.relations() {
        relations.push(f.map_to_ring(&ring)?);
    }
    let offset = r1.num_vars();
    for f in p2.relations() {
        // remap by position, not by name, to honor the renaming
        let terms = f
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u64; ring.num_vars()];
                for (i, &e) in m.exps().iter().enumerate() {
                    exps[offset + i] = e;
                }
                (crate::poly::Monomial::from_exps(exps), c.clone())
            })
            .collect();
        relations.push(Polynomial::from_terms(&ring, terms));
    }
    Presentation::new(ring, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, WeightedRing};
    use crate::quotient::QuotientAlgebra;

    fn algebra(vars: &[&str], weights: &[u64], rels: &[&str]) -> AlgRef {
        let ring = WeightedRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            weights.to_vec(),
        )
        .unwrap();
        let relations = rels.iter().map(|s| parse(s, &ring).unwrap()).collect();
        QuotientAlgebra::new(&Presentation::new(ring, relations).unwrap()).unwrap()
    }

    fn cube() -> AlgRef {
        algebra(&["x"], &[2], &["x^3"])
    }

    fn el3() -> AlgRef {
        algebra(
            &["x1", "x2", "x3"],
            &[2, 2, 2],
            &["x1^2 - x3^2", "x2^2 - x3^2", "x1*x2*x3"],
        )
    }

    #[test]
    fn cube_degree_zero() {
        let a = cube();
        let s = derivation_space(&a, 0);
        assert_eq!(s.dim(), 1);
        // spanned by x -> x up to scalar
        let d = &s.basis[0];
        assert!(!d.images()[0].is_zero());
    }

    #[test]
    fn cube_negative() {
        let a = cube();
        assert_eq!(derivation_space(&a, -2).dim(), 0);
        assert!(negative_derivations_vanish(&a));
    }

    #[test]
    fn el3_degree_zero() {
        let a = el3();
        assert_eq!(derivation_space(&a, 0).dim(), 1);
        assert!(negative_derivations_vanish(&a));
    }

    #[test]
    fn euler_is_a_derivation() {
        for a in [cube(), el3()] {
            let e = euler_derivation(&a);
            let s = derivation_space(&a, 0);
            assert!(space_contains(&s, &e));
        }
    }

    #[test]
    fn bracket_grading_eigenvalue() {
        let a = el3();
        let e = euler_derivation(&a);
        // [E, E] = 0
        let z = bracket(&e, &e).unwrap();
        assert!(z.is_zero());
        // [E, theta] = p * theta for homogeneous theta of degree p
        for p in [0i64, 2, 4] {
            for theta in &derivation_space(&a, p).basis {
                let b = bracket(&e, theta).unwrap();
                for i in 0..3 {
                    let expected = theta.images()[i].scale(&rat(p));
                    assert_eq!(b.images()[i], expected);
                }
            }
        }
    }

    #[test]
    fn leibniz_on_basis_pairs() {
        let a = el3();
        for theta in &derivation_space(&a, 0).basis {
            for d1 in (0..=a.top_degree()).step_by(2) {
                for d2 in (0..=a.top_degree()).step_by(2) {
                    for m1 in a.monomial_basis(d1) {
                        for m2 in a.monomial_basis(d2) {
                            let p1 = Polynomial::monomial(a.ring(), m1.clone(), rat(1));
                            let p2 = Polynomial::monomial(a.ring(), m2.clone(), rat(1));
                            let prod = a.normal_form(&p1.mul(&p2).unwrap()).unwrap();
                            let lhs = theta.apply(&prod).unwrap();
                            let rhs = a
                                .normal_form(
                                    &theta
                                        .apply(&p1)
                                        .unwrap()
                                        .mul(&p2)
                                        .unwrap()
                                        .add(&p1.mul(&theta.apply(&p2).unwrap()).unwrap())
                                        .unwrap(),
                                )
                                .unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_and_additivity() {
        let ring_x = WeightedRing::new(vec!["x".into()], vec![2]).unwrap();
        let px = Presentation::new(ring_x.clone(), vec![parse("x^3", &ring_x).unwrap()]).unwrap();
        let ring_y = WeightedRing::new(vec!["y".into()], vec![2]).unwrap();
        let py = Presentation::new(ring_y.clone(), vec![parse("y^3", &ring_y).unwrap()]).unwrap();
        let t = tensor_presentation(&px, &py).unwrap();
        assert_eq!(t.ring().num_vars(), 2);
        let a = QuotientAlgebra::new(&t).unwrap();
        // Kuenneth: hilbert(A (x) B) = hilbert(A) hilbert(B)
        assert_eq!(a.hilbert_polynomial(), &[1, 0, 2, 0, 3, 0, 2, 0, 1]);
        // der^0 additivity
        assert_eq!(derivation_space(&a, 0).dim(), 2);
        assert!(negative_derivations_vanish(&a));
    }

    #[test]
    fn tensor_name_collision_renamed() {
        let ring_x = WeightedRing::new(vec!["x".into()], vec![2]).unwrap();
        let px = Presentation::new(ring_x.clone(), vec![parse("x^3", &ring_x).unwrap()]).unwrap();
        let t = tensor_presentation(&px, &px).unwrap();
        assert_eq!(t.ring().var_names(), &["x".to_string(), "x_2".to_string()]);
        assert!(crate::quotient::is_waci(&t));
    }
}
