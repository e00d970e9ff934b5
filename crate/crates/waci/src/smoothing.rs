//! Surgery-theoretic smoothing obstructions: Hirzebruch polynomials,
//! Pontrjagin numbers of a candidate characteristic class, the signature
//! formula, and the smoothability verdict.

use num_traits::{One, Zero};

use crate::duality::{
    formal_dimension, is_pda, middle_form, orientation_from_class, pair, Orientation,
};
use crate::poly::{rat, Int, Monomial, Polynomial, Rat, WeightedRing};
use crate::quadform;
use crate::quotient::AlgRef;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// truncated rational power series in one variable, as coefficient vectors
// ---------------------------------------------------------------------------

fn ps_mul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n + 1];
    for i in 0..=n.min(a.len().saturating_sub(1)) {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=(n - i).min(b.len().saturating_sub(1)) {
            let t = &a[i] * &b[j];
            out[i + j] += t;
        }
    }
    out
}

fn ps_inv(a: &[Rat], n: usize) -> Vec<Rat> {
    assert!(!a[0].is_zero());
    let mut out = vec![Rat::zero(); n + 1];
    out[0] = Rat::one() / &a[0];
    for m in 1..=n {
        let mut s = Rat::zero();
        for i in 1..=m.min(a.len() - 1) {
            s += &a[i] * &out[m - i];
        }
        out[m] = -(s / &a[0]);
    }
    out
}

/// log of a series with constant term 1, via l' = a'/a.
fn ps_log(a: &[Rat], n: usize) -> Vec<Rat> {
    assert!(a[0].is_one());
    let mut da = vec![Rat::zero(); n + 1];
    for m in 0..n {
        if m + 1 < a.len() {
            da[m] = &a[m + 1] * rat((m + 1) as i64);
        }
    }
    let ratio = ps_mul(&da, &ps_inv(a, n), n);
    let mut out = vec![Rat::zero(); n + 1];
    for m in 1..=n {
        out[m] = &ratio[m - 1] / rat(m as i64);
    }
    out
}

fn factorial(n: u64) -> Rat {
    let mut f = Int::one();
    for i in 2..=n {
        f *= Int::from(i);
    }
    Rat::from_integer(f)
}

pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut b = Int::one();
    for i in 0..k {
        b = b * Int::from(n - i) / Int::from(i + 1);
    }
    b
}

// ---------------------------------------------------------------------------
// Hirzebruch polynomials
// ---------------------------------------------------------------------------

/// The degree-`4k` part of `p` (or of any polynomial) as a new polynomial.
pub fn homogeneous_component(p: &Polynomial, d: u64) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| m.weighted_degree(p.ring()) == d)
        .cloned()
        .collect();
    Polynomial::from_terms(p.ring(), terms)
}

/// The k-th Hirzebruch polynomial L_k in the classes p1, ..., pk, graded
/// with |p_i| = 4i. Computed from the characteristic series
/// sqrt(x)/tanh(sqrt(x)): its logarithm is evaluated on power sums (via
/// Newton's identities) and exponentiated.
pub fn l_polynomial(k: u64) -> Result<Polynomial> {
    if k == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let n = k as usize;
    // Q(x) = cosh(sqrt x) / (sinh(sqrt x)/sqrt x) = C(x)/S(x)
    let c: Vec<Rat> = (0..=n).map(|m| Rat::one() / factorial(2 * m as u64)).collect();
    let s: Vec<Rat> = (0..=n)
        .map(|m| Rat::one() / factorial(2 * m as u64 + 1))
        .collect();
    let q = ps_mul(&c, &ps_inv(&s, n), n);
    let logq = ps_log(&q, n);

    let ring = WeightedRing::new(
        (1..=k).map(|i| format!("p{i}")).collect(),
        (1..=k).map(|i| 4 * i).collect(),
    )?;
    // power sums from elementary symmetrics by Newton's identities
    let e = |i: u64| -> Polynomial {
        if i == 0 {
            Polynomial::one(&ring)
        } else if i <= k {
            Polynomial::var(&ring, (i - 1) as usize)
        } else {
            Polynomial::zero(&ring)
        }
    };
    let mut power_sums: Vec<Polynomial> = vec![Polynomial::zero(&ring)];
    for j in 1..=k {
        let mut pj = e(j).scale(&rat(if j % 2 == 1 { j as i64 } else { -(j as i64) }));
        for i in 1..j {
            let t = e(i).mul(&power_sums[(j - i) as usize])?;
            pj = if i % 2 == 1 { pj.add(&t)? } else { pj.sub(&t)? };
        }
        power_sums.push(pj);
    }
    let mut log_total = Polynomial::zero(&ring);
    for j in 1..=n {
        log_total = log_total.add(&power_sums[j].scale(&logq[j]))?;
    }
    // exponentiate; terms above degree 4k cannot contribute to L_k
    let mut total = Polynomial::one(&ring);
    let mut pow = Polynomial::one(&ring);
    for m in 1..=n {
        pow = pow.mul(&log_total)?;
        total = total.add(&pow.scale(&(Rat::one() / factorial(m as u64))))?;
    }
    Ok(homogeneous_component(&total, 4 * k))
}

// ---------------------------------------------------------------------------
// Pontrjagin data of a candidate class
// ---------------------------------------------------------------------------

/// Pontrjagin coefficients of complex projective 2k-space: the class is
/// (1 + u^2)^{2k+1}, so the i-th coefficient is binomial(2k+1, i).
pub fn cp_pontrjagin_coeffs(k: u64) -> Vec<Int> {
    (1..=k).map(|i| binomial(2 * k + 1, i)).collect()
}

/// Partitions of `k` as descending part lists.
pub fn partitions(k: u64) -> Vec<Vec<u64>> {
    fn rec(k: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(k)).rev() {
            cur.push(part);
            rec(k - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// All Pontrjagin numbers of a total class `q` in an algebra of formal
/// dimension 4k: for each partition (i1, ..., ir) of k, the pairing of
/// q_{i1} ... q_{ir} against the orientation, where q_i is the degree-4i
/// component of q.
pub fn pontrjagin_numbers(
    algebra: &AlgRef,
    q: &Polynomial,
    omega: &Orientation,
) -> Result<Vec<(Vec<u64>, Rat)>> {
    let m = formal_dimension(algebra)?;
    if m % 4 != 0 {
        return Err(Error::InvalidArgument(format!(
            "formal dimension {m} is not a multiple of 4"
        )));
    }
    let k = m / 4;
    let qn = algebra.normal_form(q)?;
    let mut out = Vec::new();
    for part in partitions(k) {
        let mut prod = Polynomial::one(algebra.ring());
        for &i in &part {
            prod = algebra.normal_form(&prod.mul(&homogeneous_component(&qn, 4 * i))?)?;
        }
        out.push((part, pair(algebra, &prod, omega)?));
    }
    Ok(out)
}

/// Evaluate L_k on the components of the total class `q` and pair against
/// the orientation.
pub fn l_genus_value(algebra: &AlgRef, q: &Polynomial, omega: &Orientation) -> Result<Rat> {
    let m = formal_dimension(algebra)?;
    if m % 4 != 0 {
        return Err(Error::InvalidArgument(format!(
            "formal dimension {m} is not a multiple of 4"
        )));
    }
    let k = m / 4;
    let l = l_polynomial(k)?;
    let qn = algebra.normal_form(q)?;
    let comps: Vec<Polynomial> = (1..=k)
        .map(|i| homogeneous_component(&qn, 4 * i))
        .collect();
    let mut total = Polynomial::zero(algebra.ring());
    for (mono, coeff) in l.terms() {
        let mut prod = Polynomial::one(algebra.ring());
        for (i, comp) in comps.iter().enumerate() {
            for _ in 0..mono.exp(i) {
                prod = algebra.normal_form(&prod.mul(comp)?)?;
            }
        }
        total = total.add(&prod.scale(coeff))?;
    }
    pair(algebra, &total, omega)
}

/// Signature of the middle form against `omega`, the L-genus value of `q`,
/// and whether the two agree.
pub fn check_signature_formula(
    algebra: &AlgRef,
    q: &Polynomial,
    omega: &Orientation,
) -> Result<(i64, Rat, bool)> {
    let g = middle_form(algebra, omega)?;
    let sigma = quadform::signature(&g.matrix)?;
    let l = l_genus_value(algebra, q, omega)?;
    let ok = l == Rat::from_integer(Int::from(sigma));
    Ok((sigma, l, ok))
}

// ---------------------------------------------------------------------------
// smoothability
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Smoothable,
    Obstructed(String),
    Unknown,
}

/// A witness for smoothability: an orientation class and a total
/// Pontrjagin class satisfying both the integrality and signature
/// conditions.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub orientation_class: Polynomial,
    pub pontrjagin_class: Polynomial,
    pub signature: i64,
    pub l_value: Rat,
}

#[derive(Debug, Clone)]
pub struct SmoothingReport {
    pub formal_dimension: u64,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
}

/// Detects the presentation x_i^2 - x_n^2 (i < n), x_1 ... x_n with all
/// weights 2; returns n.
fn detect_el(algebra: &AlgRef) -> Option<usize> {
    let p = algebra.presentation();
    let ring = p.ring();
    let n = ring.num_vars();
    if n < 3 || ring.weights().iter().any(|&w| w != 2) || p.relations().len() != n {
        return None;
    }
    let monic: Vec<Polynomial> = p
        .relations()
        .iter()
        .map(|r| {
            let lc = r.leading_term().unwrap().1.clone();
            r.scale(&(Rat::one() / lc))
        })
        .collect();
    let mut expected: Vec<Polynomial> = (0..n - 1)
        .map(|i| {
            Polynomial::var(ring, i)
                .pow(2)
                .unwrap()
                .sub(&Polynomial::var(ring, n - 1).pow(2).unwrap())
                .unwrap()
        })
        .collect();
    let mut prod = Polynomial::one(ring);
    for i in 0..n {
        prod = prod.mul(&Polynomial::var(ring, i)).unwrap();
    }
    expected.push(prod);
    let matches = expected
        .iter()
        .all(|e| monic.iter().any(|r| r == e));
    if matches {
        Some(n)
    } else {
        None
    }
}

/// Detects Q[x]/(x^3) with |x| = 2k; returns k.
fn detect_truncated_cube(algebra: &AlgRef) -> Option<u64> {
    let p = algebra.presentation();
    if p.ring().num_vars() != 1 || p.relations().len() != 1 {
        return None;
    }
    let r = &p.relations()[0];
    let cube = Monomial::from_exps(vec![3]);
    if r.terms().len() == 1 && r.terms()[0].0 == cube {
        Some(p.ring().weight(0) / 2)
    } else {
        None
    }
}

/// For Q[x]/(x^3) with |x| = 2k and k odd the signature of a smooth model
/// would be divisible by 2^{2k-1} - 1, while the middle form forces it to
/// be +-1. Returns true when the divisibility can be satisfied.
pub fn truncated_divisibility(k: u64) -> Result<bool> {
    if k.is_multiple_of(2) {
        return Err(Error::InvalidArgument("weight parameter must be odd".into()));
    }
    let divisor = (Int::from(2) << (2 * k - 2)) - Int::one();
    Ok((Int::one() % &divisor).is_zero() || divisor.is_one())
}

/// The total Pontrjagin class forced on the standard n-generator family:
/// 1 + sum_i 2^i binomial(2k+1, i) y0^i with y0 the square of the last
/// generator and 4k the formal dimension.
pub fn el_pontrjagin_class(algebra: &AlgRef) -> Result<Polynomial> {
    let n = detect_el(algebra)
        .ok_or_else(|| Error::InvalidArgument("not a presentation of the standard family".into()))?;
    let m = formal_dimension(algebra)?;
    let k = m / 4;
    let ring = algebra.ring();
    let y0 = Polynomial::var(ring, n - 1).pow(2)?;
    let mut q = Polynomial::one(ring);
    let mut two_i = Int::one();
    for i in 1..=k {
        two_i *= Int::from(2);
        let c = Rat::from_integer(&two_i * binomial(2 * k + 1, i));
        q = q.add(&y0.pow(i)?.scale(&c))?;
    }
    algebra.normal_form(&q)
}

fn top_monomial_class(algebra: &AlgRef, sign: i64) -> Polynomial {
    let m = algebra.top_degree();
    let mono = algebra.monomial_basis(m)[0].clone();
    Polynomial::monomial(algebra.ring(), mono, rat(sign))
}

/// Decide smoothability. Dimensions not divisible by 4 are always
/// smoothable; otherwise a certificate (orientation, Pontrjagin class) is
/// searched among the known candidates, checking both the integrality of
/// the middle form and the signature formula.
pub fn smoothability_report(algebra: &AlgRef) -> Result<SmoothingReport> {
    let m = formal_dimension(algebra)?;
    if !is_pda(algebra) {
        return Err(Error::NotPda("middle pairing is degenerate".into()));
    }
    if m % 4 != 0 {
        return Ok(SmoothingReport {
            formal_dimension: m,
            verdict: Verdict::Smoothable,
            certificate: None,
        });
    }

    if let Some(k) = detect_truncated_cube(algebra) {
        if k % 2 == 1 && !truncated_divisibility(k)? {
            let divisor = (Int::from(2) << (2 * k - 2)) - Int::one();
            return Ok(SmoothingReport {
                formal_dimension: m,
                verdict: Verdict::Obstructed(format!(
                    "signature would have to be divisible by {divisor} but the middle form forces +-1"
                )),
                certificate: None,
            });
        }
    }

    let mut candidates: Vec<(Orientation, Polynomial)> = Vec::new();
    if let Some(n) = detect_el(algebra) {
        let y0_pow = Polynomial::var(algebra.ring(), n - 1).pow(2 * (n as u64 - 1))?;
        let omega = orientation_from_class(algebra, &algebra.normal_form(&y0_pow)?)?;
        candidates.push((omega, el_pontrjagin_class(algebra)?));
    }
    if let Some(1) = detect_truncated_cube(algebra) {
        let ring = algebra.ring();
        let q = Polynomial::one(ring).add(&Polynomial::var(ring, 0).pow(2)?.scale(&rat(3)))?;
        let omega = orientation_from_class(algebra, &top_monomial_class(algebra, 1))?;
        candidates.push((omega, q));
    }
    for sign in [1, -1] {
        let omega = orientation_from_class(algebra, &top_monomial_class(algebra, sign))?;
        candidates.push((omega, Polynomial::one(algebra.ring())));
    }

    for (omega, q) in candidates {
        let g = middle_form(algebra, &omega)?;
        if !quadform::is_sum_of_signed_squares(&g.matrix)? {
            continue;
        }
        let (sigma, l, ok) = check_signature_formula(algebra, &q, &omega)?;
        if ok {
            return Ok(SmoothingReport {
                formal_dimension: m,
                verdict: Verdict::Smoothable,
                certificate: Some(Certificate {
                    orientation_class: omega.class.clone(),
                    pontrjagin_class: q,
                    signature: sigma,
                    l_value: l,
                }),
            });
        }
    }
    Ok(SmoothingReport {
        formal_dimension: m,
        verdict: Verdict::Unknown,
        certificate: None,
    })
}
