//! Poincaré duality: formal dimension, orientation classes, pairing Gram
//! matrices and the middle-degree quadratic form.

use num_traits::Zero;

use crate::linalg::{self, QMatrix};
use crate::poly::{rat, Monomial, Polynomial, Rat};
use crate::quotient::AlgRef;
use crate::{Error, Result};

/// A chosen non-zero class in the top degree.
#[derive(Debug, Clone)]
pub struct Orientation {
    pub top_degree: u64,
    /// the orientation class in normal form
    pub class: Polynomial,
    /// coefficient of the unique top standard monomial in `class`
    pub scale: Rat,
}

/// A symmetric rational Gram matrix of Poincaré products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm {
    /// degrees (i, m - i) of the two paired pieces
    pub degrees: (u64, u64),
    pub matrix: QMatrix,
}

/// Top degree with a non-zero piece. For a WACI this is asserted to equal
/// the sum of |f_i| - w_i; a mismatch signals a regular-sequence defect.
pub fn formal_dimension(algebra: &AlgRef) -> Result<u64> {
    let m = algebra.top_degree();
    let p = algebra.presentation();
    if p.relations().len() == p.ring().num_vars() {
        let expected: u64 = p
            .relation_weights()
            .iter()
            .zip(p.ring().weights())
            .map(|(f, w)| f - w)
            .sum();
        if m != expected {
            return Err(Error::ConsistencyFailure(format!(
                "top degree {m} does not match sum of |f_i| - w_i = {expected}"
            )));
        }
    }
    Ok(m)
}

/// Pair a (reduced) class against an orientation: writes the normal form
/// of `p` in the top degree as a multiple of the top standard monomial and
/// divides by the orientation's scale.
pub fn pair(algebra: &AlgRef, p: &Polynomial, omega: &Orientation) -> Result<Rat> {
    let nf = algebra.normal_form(p)?;
    let top = algebra.monomial_basis(omega.top_degree);
    debug_assert_eq!(top.len(), 1);
    Ok(nf.coefficient(&top[0]) / &omega.scale)
}

/// Gram matrix of the multiplication pairing A^i x A^{m-i} -> Q against
/// the given orientation.
pub fn pairing_gram(algebra: &AlgRef, i: u64, omega: &Orientation) -> Result<GramForm> {
    let m = omega.top_degree;
    if i > m {
        return Err(Error::InvalidArgument("degree above the top".into()));
    }
    let left = algebra.monomial_basis(i).to_vec();
    let right = algebra.monomial_basis(m - i).to_vec();
    let mut g = QMatrix::new(left.len(), right.len());
    for (a, ma) in left.iter().enumerate() {
        for (b, mb) in right.iter().enumerate() {
            let prod = Polynomial::monomial(algebra.ring(), ma.mul(mb), rat(1));
            g.data[a][b] = pair(algebra, &prod, omega)?;
        }
    }
    Ok(GramForm {
        degrees: (i, m - i),
        matrix: g,
    })
}

/// True iff the top piece is one-dimensional and every pairing block is
/// nondegenerate (square with non-zero determinant).
pub fn is_pda(algebra: &AlgRef) -> bool {
    let m = algebra.top_degree();
    if algebra.dim_degree(m) != 1 {
        return false;
    }
    let omega = orientation_unchecked(algebra);
    for i in (0..=m / 2).map(|k| 2 * k) {
        let di = algebra.dim_degree(i);
        let dj = algebra.dim_degree(m - i);
        if di != dj {
            return false;
        }
        if di == 0 {
            continue;
        }
        let g = pairing_gram(algebra, i, &omega).expect("degrees in range");
        if linalg::det(&g.matrix).is_zero() {
            return false;
        }
    }
    true
}

fn orientation_unchecked(algebra: &AlgRef) -> Orientation {
    let m = algebra.top_degree();
    let mono = algebra.monomial_basis(m)[0].clone();
    Orientation {
        top_degree: m,
        class: Polynomial::monomial(algebra.ring(), mono, rat(1)),
        scale: rat(1),
    }
}

/// The canonical orientation: the unique top standard monomial with
/// coefficient +1.
pub fn orientation(algebra: &AlgRef) -> Result<Orientation> {
    if !is_pda(algebra) {
        return Err(Error::NotPda("pairing is degenerate".into()));
    }
    Ok(orientation_unchecked(algebra))
}

/// An orientation given by an arbitrary non-zero top-degree class.
pub fn orientation_from_class(algebra: &AlgRef, class: &Polynomial) -> Result<Orientation> {
    let m = algebra.top_degree();
    let nf = algebra.normal_form(class)?;
    let top = algebra.monomial_basis(m);
    if top.len() != 1 {
        return Err(Error::NotPda("top degree is not one-dimensional".into()));
    }
    let scale = nf.coefficient(&top[0]);
    if scale.is_zero() || nf.terms().len() != 1 {
        return Err(Error::InvalidArgument(
            "orientation class must be a non-zero top-degree class".into(),
        ));
    }
    Ok(Orientation {
        top_degree: m,
        class: nf,
        scale,
    })
}

/// The middle-degree quadratic form, defined when the formal dimension is
/// a multiple of 4.
pub fn middle_form(algebra: &AlgRef, omega: &Orientation) -> Result<GramForm> {
    let m = omega.top_degree;
    if !m.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "formal dimension {m} is not a multiple of 4"
        )));
    }
    pairing_gram(algebra, m / 2, omega)
}

/// The monomial basis carrying the middle form, for reporting.
pub fn middle_basis(algebra: &AlgRef) -> Vec<Monomial> {
    let m = algebra.top_degree();
    algebra.monomial_basis(m / 2).to_vec()
}
