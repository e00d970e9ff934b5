//! Exact rational quadratic forms: symmetric diagonalization, signature,
//! second-residue forms at primes, and the sum-of-signed-squares
//! (integral Witt image) test.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::QMatrix;
use crate::poly::{Int, Rat};
use crate::{Error, Result};

/// A diagonalized form with square-free integer entries and the rational
/// change of basis realizing the congruence.
#[derive(Debug, Clone)]
pub struct DiagonalForm {
    /// non-zero square-free integers
    pub entries: Vec<Int>,
    pub rank: usize,
    /// P with P^T G P = diag(entries)
    pub transform: QMatrix,
}

/// A diagonal form over the field with `p` elements: the second residue of
/// a square-free rational form at `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueForm {
    pub prime: u64,
    /// entries in 1..p
    pub entries: Vec<u64>,
}

fn is_symmetric(g: &QMatrix) -> bool {
    g.rows == g.cols
        && (0..g.rows).all(|i| (0..i).all(|j| g.data[i][j] == g.data[j][i]))
}

/// Symmetric Gaussian congruence diagonalization. The pivot rule is: first
/// non-zero diagonal entry in the remaining block, else create one from
/// the first non-zero off-diagonal pair via v_i <- v_i + v_j.
///
/// Returns diagonal rational entries (zeros included for a degenerate
/// input) and the congruence transform.
fn symmetric_diagonalize(g: &QMatrix) -> (Vec<Rat>, QMatrix) {
    assert!(is_symmetric(g));
    let n = g.rows;
    let mut a = g.clone();
    let mut p = QMatrix::identity(n);

    // congruence column operation v_i <- v_i + f v_j, applied to both the
    // form and the transform
    fn colop(a: &mut QMatrix, p: &mut QMatrix, i: usize, j: usize, f: &Rat) {
        let n = a.rows;
        for r in 0..n {
            let t = &a.data[r][j] * f;
            a.data[r][i] += t;
        }
        for c in 0..n {
            let t = &a.data[j][c] * f;
            a.data[i][c] += t;
        }
        for r in 0..n {
            let t = &p.data[r][j] * f;
            p.data[r][i] += t;
        }
    }

    fn swap(a: &mut QMatrix, p: &mut QMatrix, i: usize, j: usize) {
        let n = a.rows;
        for r in 0..n {
            a.data[r].swap(i, j);
        }
        a.data.swap(i, j);
        for r in 0..n {
            p.data[r].swap(i, j);
        }
    }

    for k in 0..n {
        if a.data[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a.data[j][j].is_zero()) {
                swap(&mut a, &mut p, k, j);
            } else {
                // all remaining diagonal entries vanish: hyperbolic fix
                let mut found = None;
                'search: for i in k..n {
                    for j in i + 1..n {
                        if !a.data[i][j].is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                colop(&mut a, &mut p, i, j, &Rat::one());
                if i != k {
                    swap(&mut a, &mut p, k, i);
                }
            }
        }
        if a.data[k][k].is_zero() {
            continue;
        }
        for i in k + 1..n {
            if !a.data[i][k].is_zero() {
                let f = -(&a.data[i][k] / &a.data[k][k]);
                colop(&mut a, &mut p, i, k, &f);
            }
        }
    }
    ((0..n).map(|i| a.data[i][i].clone()).collect(), p)
}

/// sign * product of primes with odd exponent.
pub fn squarefree_part(n: &Int) -> Int {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut out = if n.is_negative() { -Int::one() } else { Int::one() };
    let mut d = Int::from(2u32);
    while &d * &d <= m {
        let mut e = 0u32;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    out * m
}

/// Diagonalize a nondegenerate symmetric rational form and reduce each
/// entry to its square-free integer representative.
pub fn diagonalize(g: &QMatrix) -> Result<DiagonalForm> {
    if !is_symmetric(g) {
        return Err(Error::InvalidArgument("matrix is not symmetric".into()));
    }
    let (diag, mut p) = symmetric_diagonalize(g);
    if diag.iter().any(|d| d.is_zero()) {
        return Err(Error::Degenerate);
    }
    let n = diag.len();
    let mut entries = Vec::with_capacity(n);
    for (i, d) in diag.iter().enumerate() {
        // d = num/den; scaling the basis vector by t multiplies d by t^2.
        // t = den clears the denominator; then strip the square part.
        let num = d.numer().clone();
        let den = d.denom().clone();
        let int_val = &num * &den; // d * den^2
        let sf = squarefree_part(&int_val);
        let c2 = &int_val / &sf; // a perfect square
        let c = sqrt_exact(&c2).expect("quotient by square-free part is a square");
        let t = Rat::new(den.clone(), c);
        for r in 0..n {
            let v = &p.data[r][i] * &t;
            p.data[r][i] = v;
        }
        entries.push(sf);
    }
    Ok(DiagonalForm {
        rank: entries.len(),
        entries,
        transform: p,
    })
}

fn sqrt_exact(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Signature = #positive - #negative diagonal entries; degenerate forms
/// are allowed, zero entries are dropped.
pub fn signature(g: &QMatrix) -> Result<i64> {
    if !is_symmetric(g) {
        return Err(Error::InvalidArgument("matrix is not symmetric".into()));
    }
    let (diag, _) = symmetric_diagonalize(g);
    let mut s = 0i64;
    for d in diag {
        if d.is_positive() {
            s += 1;
        } else if d.is_negative() {
            s -= 1;
        }
    }
    Ok(s)
}

/// The second residue of a square-free diagonal form at `p`: the entries
/// divisible by p, each divided by p and reduced mod p.
pub fn residue(d: &DiagonalForm, p: u64) -> ResidueForm {
    let pi = Int::from(p);
    let entries = d
        .entries
        .iter()
        .filter(|e| (*e % &pi).is_zero())
        .map(|e| {
            let q = e / &pi;
            let r = ((q % &pi) + &pi) % &pi;
            r.to_u64().unwrap()
        })
        .collect();
    ResidueForm { prime: p, entries }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn is_square_mod(a: u64, p: u64) -> bool {
    debug_assert!(p % 2 == 1);
    let a = a % p;
    if a == 0 {
        return true;
    }
    pow_mod(a, (p - 1) / 2, p) == 1
}

/// Witt-triviality of a residue form. For odd p: even rank and
/// discriminant (-1)^{r/2} prod(entries) a square mod p. At p = 2 the
/// class is detected by the rank mod 2 (equivalently, the 2-valuation of
/// the discriminant of the ambient form); the convention is validated
/// against the brute-force congruence oracle in the test suite.
pub fn witt_trivial(r: &ResidueForm) -> bool {
    if !r.entries.len().is_multiple_of(2) {
        return false;
    }
    if r.prime == 2 {
        return true;
    }
    let p = r.prime;
    let mut disc = 1u64;
    for &e in &r.entries {
        disc = disc * (e % p) % p;
    }
    // multiply by (-1)^{rank/2}
    if (r.entries.len() / 2) % 2 == 1 {
        disc = disc * (p - 1) % p;
    }
    is_square_mod(disc, p)
}

fn primes_dividing(entries: &[Int]) -> Vec<u64> {
    let mut primes = Vec::new();
    for e in entries {
        let mut m = e.abs();
        let mut d = Int::from(2u32);
        while &d * &d <= m {
            if (&m % &d).is_zero() {
                let p = d.to_u64().unwrap();
                if !primes.contains(&p) {
                    primes.push(p);
                }
                while (&m % &d).is_zero() {
                    m /= &d;
                }
            }
            d += 1;
        }
        if m > Int::one() {
            let p = m.to_u64().unwrap();
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    primes
}

/// True iff the form is rationally congruent to a diagonal matrix with
/// entries +-1: all second residues at primes dividing any diagonal entry
/// must be Witt-trivial.
pub fn is_sum_of_signed_squares(g: &QMatrix) -> Result<bool> {
    let d = diagonalize(g)?;
    Ok(primes_dividing(&d.entries)
        .into_iter()
        .all(|p| witt_trivial(&residue(&d, p))))
}

/// Independent brute-force oracle: searches for a congruence to a +-1
/// diagonal form by repeatedly splitting off vectors v with phi(v) = +-1,
/// where v ranges over integer vectors with entries bounded by `bound`
/// divided by a common denominator bounded by `bound`.
pub fn signed_squares_oracle(g: &QMatrix, bound: i64) -> bool {
    let n = g.rows;
    if n == 0 {
        return true;
    }
    // search v = a / b with a integer vector, phi(a) = +-b^2
    let mut a = vec![0i64; n];
    if let Some(vec) = search_unit_vector(g, &mut a, 0, bound) {
        // orthogonal complement of vec: kernel of the row (G vec)^T
        let mut row = vec![Rat::zero(); n];
        for (j, rj) in row.iter_mut().enumerate() {
            for (i, &vi) in vec.iter().enumerate() {
                *rj += &g.data[i][j] * Rat::from_integer(Int::from(vi));
            }
        }
        let kernel = crate::linalg::kernel_basis(&QMatrix::from_rows(vec![row]));
        let mut b = QMatrix::new(n, kernel.len());
        for (j, v) in kernel.iter().enumerate() {
            for (i, vi) in v.iter().enumerate() {
                b.data[i][j] = vi.clone();
            }
        }
        let sub = b.transpose().mul(g).mul(&b);
        signed_squares_oracle(&sub, bound)
    } else {
        false
    }
}

fn search_unit_vector(g: &QMatrix, a: &mut Vec<i64>, i: usize, bound: i64) -> Option<Vec<i64>> {
    let n = g.rows;
    if i == n {
        if a.iter().all(|&x| x == 0) {
            return None;
        }
        let mut val = Rat::zero();
        for r in 0..n {
            if a[r] == 0 {
                continue;
            }
            for c in 0..n {
                if a[c] == 0 {
                    continue;
                }
                let t = &g.data[r][c] * Rat::from_integer(Int::from(a[r] * a[c]));
                val += t;
            }
        }
        if val.is_integer() {
            let v = val.to_integer();
            if let Some(s) = sqrt_exact(&v.abs()) {
                if !s.is_zero() && s <= Int::from(bound) {
                    return Some(a.clone());
                }
            }
        }
        return None;
    }
    // first coordinate can be taken non-negative by symmetry
    let lo = if i == 0 { 0 } else { -bound };
    for x in lo..=bound {
        a[i] = x;
        if let Some(v) = search_unit_vector(g, a, i + 1, bound) {
            a[i] = 0;
            return Some(v);
        }
    }
    a[i] = 0;
    None
}

/// Run the brute-force oracle over a batch of forms, in parallel when
/// the `parallel` feature is enabled. Results are positionally aligned
/// with the input and independent of scheduling.
pub fn signed_squares_batch(forms: &[QMatrix], bound: i64) -> Vec<bool> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        forms
            .par_iter()
            .map(|g| signed_squares_oracle(g, bound))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    signed_squares_batch_seq(forms, bound)
}

/// Single-threaded variant of [`signed_squares_batch`].
pub fn signed_squares_batch_seq(forms: &[QMatrix], bound: i64) -> Vec<bool> {
    forms
        .iter()
        .map(|g| signed_squares_oracle(g, bound))
        .collect()
}

/// Convenience: build a symmetric matrix from a diagonal of integers.
pub fn diagonal_matrix(entries: &[i64]) -> QMatrix {
    let n = entries.len();
    let mut m = QMatrix::new(n, n);
    for (i, &e) in entries.iter().enumerate() {
        m.data[i][i] = Rat::from_integer(Int::from(e));
    }
    m
}
