//! Generators for the standard example families: the split family, the
//! Eisenbud-Levine family, truncated algebras, type-A flag presentations,
//! the bundled Weyl degree table, the distinguished monomial basis and the
//! isotropic subspace of the split family.

use std::sync::OnceLock;

use num_traits::Zero;

use crate::duality::{orientation_from_class, pair};
use crate::homotopy::{self, pi1};
use crate::linalg::{self, QMatrix};
use crate::poly::{rat, Monomial, Polynomial, Presentation, Rat, RingRef, WeightedRing};
use crate::quotient::{AlgRef, QuotientAlgebra};
use crate::{Error, Result};

/// Parameters of the split family: n generators x_i of even weight w_i,
/// exponents a_i >= 2 with w_i * a_i constant, and a truncation
/// parameter k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitParams {
    pub n: usize,
    pub k: u64,
    pub weights: Vec<u64>,
    pub exponents: Vec<u64>,
}

impl SplitParams {
    pub fn new(n: usize, k: u64, weights: Vec<u64>, exponents: Vec<u64>) -> Result<Self> {
        if n < 2 || k < 1 {
            return Err(Error::InvalidArgument("need n >= 2 and k >= 1".into()));
        }
        if weights.len() != n || exponents.len() != n {
            return Err(Error::InvalidArgument(
                "weights and exponents must have length n".into(),
            ));
        }
        if weights.iter().any(|&w| w == 0 || w % 2 != 0) {
            return Err(Error::InvalidArgument("weights must be positive and even".into()));
        }
        if exponents.iter().any(|&a| a < 2) {
            return Err(Error::InvalidArgument("exponents must be at least 2".into()));
        }
        let d = weights[0] * exponents[0];
        if weights.iter().zip(&exponents).any(|(w, a)| w * a != d) {
            return Err(Error::InvalidArgument(format!(
                "w_i * a_i must be constant (expected {d})"
            )));
        }
        Ok(SplitParams {
            n,
            k,
            weights,
            exponents,
        })
    }

    /// the common value w_i * a_i
    pub fn d(&self) -> u64 {
        self.weights[0] * self.exponents[0]
    }
}

fn var_power(ring: &RingRef, i: usize, e: u64) -> Polynomial {
    let mut exps = vec![0u64; ring.num_vars()];
    exps[i] = e;
    Polynomial::monomial(ring, Monomial::from_exps(exps), rat(1))
}

/// x_i^{a_i} - x_{i+1}^{a_{i+1}} for i < n, and x_n^{2k a_n}.
pub fn split_family(p: &SplitParams) -> Result<Presentation> {
    let ring = WeightedRing::new(
        (1..=p.n).map(|i| format!("x{i}")).collect(),
        p.weights.clone(),
    )?;
    let mut relations = Vec::with_capacity(p.n);
    for i in 0..p.n - 1 {
        relations.push(
            var_power(&ring, i, p.exponents[i]).sub(&var_power(&ring, i + 1, p.exponents[i + 1]))?,
        );
    }
    relations.push(var_power(&ring, p.n - 1, 2 * p.k * p.exponents[p.n - 1]));
    Presentation::new(ring, relations)
}

/// x_i^2 - x_n^2 for i < n, and x_1 ... x_n, all weights 2. Requires
/// n >= 3.
pub fn eisenbud_levine(n: usize) -> Result<Presentation> {
    if n < 3 {
        return Err(Error::InvalidArgument("the family needs n >= 3".into()));
    }
    let ring = WeightedRing::new((1..=n).map(|i| format!("x{i}")).collect(), vec![2; n])?;
    let mut relations = Vec::with_capacity(n);
    for i in 0..n - 1 {
        relations.push(var_power(&ring, i, 2).sub(&var_power(&ring, n - 1, 2))?);
    }
    relations.push(Polynomial::monomial(
        &ring,
        Monomial::from_exps(vec![1; n]),
        rat(1),
    ));
    Presentation::new(ring, relations)
}

/// Q[x]/(x^power) with |x| = weight.
pub fn truncated(power: u64, weight: u64) -> Result<Presentation> {
    if power < 2 {
        return Err(Error::InvalidArgument("power must be at least 2".into()));
    }
    let ring = WeightedRing::new(vec!["x".into()], vec![weight])?;
    Presentation::new(ring.clone(), vec![var_power(&ring, 0, power)])
}

/// Q[x_1..x_{r+1}] modulo the elementary symmetric polynomials, all
/// weights 2: the Borel presentation of the type-A flag variety of
/// rank r.
pub fn flag_presentation(r: usize) -> Result<Presentation> {
    if r < 2 {
        return Err(Error::InvalidArgument("rank must be at least 2".into()));
    }
    let n = r + 1;
    let ring = WeightedRing::new((1..=n).map(|i| format!("x{i}")).collect(), vec![2; n])?;
    // e[j] after processing i variables = j-th elementary symmetric in them
    let mut e: Vec<Polynomial> = (0..=n)
        .map(|j| {
            if j == 0 {
                Polynomial::one(&ring)
            } else {
                Polynomial::zero(&ring)
            }
        })
        .collect();
    for i in 0..n {
        let xi = Polynomial::var(&ring, i);
        for j in (1..=i + 1).rev() {
            e[j] = e[j].add(&e[j - 1].mul(&xi)?)?;
        }
    }
    Presentation::new(ring, e[1..].to_vec())
}

// ---------------------------------------------------------------------------
// the distinguished monomial basis of the Eisenbud-Levine family
// ---------------------------------------------------------------------------

/// One element y0^r x_I of the distinguished basis, with y0 the class of
/// the square of the last generator.
#[derive(Debug, Clone)]
pub struct ElBasisElement {
    pub power: u64,
    /// 0-based generator indices in I
    pub subset: Vec<usize>,
    /// normal form in the algebra
    pub class: Polynomial,
}

/// The indexed family {y0^r x_I | 0 <= r < n - |I|}. Asserts that the
/// normal forms are a graded basis and that with orientation y0^{n-1} the
/// inner product of y0^r x_I and y0^s x_J is 1 exactly when I = J and
/// r + s = n - 1 - |I|, and 0 otherwise.
pub fn el_basis(n: usize) -> Result<Vec<ElBasisElement>> {
    let presentation = eisenbud_levine(n)?;
    let algebra = QuotientAlgebra::new(&presentation)?;
    let ring = algebra.ring();
    let mut elements = Vec::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let co = n - subset.len();
        for r in 0..co as u64 {
            let mut exps = vec![0u64; n];
            for &i in &subset {
                exps[i] = 1;
            }
            exps[n - 1] += 2 * r; // y0^r = x_n^{2r}
            let class =
                algebra.normal_form(&Polynomial::monomial(ring, Monomial::from_exps(exps), rat(1)))?;
            elements.push(ElBasisElement {
                power: r,
                subset: subset.clone(),
                class,
            });
        }
    }
    if elements.len() != algebra.total_dim() {
        return Err(Error::ConsistencyFailure(format!(
            "basis family has {} elements, algebra has dimension {}",
            elements.len(),
            algebra.total_dim()
        )));
    }
    // graded rank check
    for d in (0..=algebra.top_degree()).step_by(2) {
        let in_degree: Vec<&ElBasisElement> = elements
            .iter()
            .filter(|e| 2 * e.subset.len() as u64 + 4 * e.power == d)
            .collect();
        if in_degree.len() != algebra.dim_degree(d) {
            return Err(Error::ConsistencyFailure(format!(
                "degree {d}: {} family elements vs dimension {}",
                in_degree.len(),
                algebra.dim_degree(d)
            )));
        }
        if in_degree.is_empty() {
            continue;
        }
        let rows: Vec<Vec<Rat>> = in_degree
            .iter()
            .map(|e| algebra.coords(&e.class, d))
            .collect();
        if linalg::rank(&QMatrix::from_rows(rows)) != in_degree.len() {
            return Err(Error::ConsistencyFailure(format!(
                "family elements in degree {d} are dependent"
            )));
        }
    }
    // inner product rule against y0^{n-1}
    let top = var_power(ring, n - 1, 2 * (n as u64 - 1));
    let omega = orientation_from_class(&algebra, &algebra.normal_form(&top)?)?;
    for a in &elements {
        for b in &elements {
            let prod = algebra.normal_form(&a.class.mul(&b.class)?)?;
            let value = pair(&algebra, &prod, &omega)?;
            let expected = a.subset == b.subset
                && a.power + b.power == (n - 1 - a.subset.len()) as u64;
            if value != rat(expected as i64) {
                return Err(Error::ConsistencyFailure(format!(
                    "inner product rule fails on (r={}, I={:?}) x (s={}, J={:?}): got {value}",
                    a.power, a.subset, b.power, b.subset
                )));
            }
        }
    }
    Ok(elements)
}

// ---------------------------------------------------------------------------
// isotropic subspace of the split family
// ---------------------------------------------------------------------------

/// The subspace N spanned by y0^s x^e with 0 <= s < k and e_i < a_i,
/// where y0 is the class of x_n^{a_n}. Verifies exactly that
/// dim A = 2 dim N and that all Poincare products of elements of N
/// vanish.
pub fn split_isotropic(p: &SplitParams) -> Result<Vec<Polynomial>> {
    let presentation = split_family(p)?;
    let algebra = QuotientAlgebra::new(&presentation)?;
    let ring = algebra.ring();
    let n = p.n;
    let mut classes = Vec::new();
    let mut exps = vec![0u64; n];
    loop {
        for s in 0..p.k {
            let mut full = exps.clone();
            full[n - 1] += s * p.exponents[n - 1]; // y0^s = x_n^{s a_n}
            classes.push(
                algebra
                    .normal_form(&Polynomial::monomial(ring, Monomial::from_exps(full), rat(1)))?,
            );
        }
        // odometer over 0 <= e_i < a_i
        let mut i = 0;
        loop {
            if i == n {
                break;
            }
            exps[i] += 1;
            if exps[i] < p.exponents[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    if 2 * classes.len() != algebra.total_dim() {
        return Err(Error::ConsistencyFailure(format!(
            "expected dim A = 2 dim N, got {} vs {}",
            algebra.total_dim(),
            2 * classes.len()
        )));
    }
    let omega = crate::duality::orientation(&algebra)?;
    for a in &classes {
        for b in &classes {
            let prod = algebra.normal_form(&a.mul(b)?)?;
            if !pair(&algebra, &prod, &omega)?.is_zero() {
                return Err(Error::ConsistencyFailure(format!(
                    "Poincare product of {a} and {b} does not vanish"
                )));
            }
        }
    }
    Ok(classes)
}

// ---------------------------------------------------------------------------
// Weyl degree table
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylRow {
    pub name: String,
    pub degrees: Vec<u64>,
    pub group_dim: u64,
}

static WEYL_TABLE: OnceLock<Vec<WeylRow>> = OnceLock::new();

/// The bundled table of fundamental invariant degrees of the simple
/// types, validated at load against the dimension identity
/// sum(2 d_i - 1) = dim G.
pub fn weyl_table() -> &'static [WeylRow] {
    WEYL_TABLE.get_or_init(|| {
        let raw = include_str!("../data/weyl_degrees.txt");
        let mut rows = Vec::new();
        for line in raw.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let name = parts.next().expect("type name").to_string();
            let degrees: Vec<u64> = parts
                .next()
                .expect("degree list")
                .split(',')
                .map(|d| d.parse().expect("integer degree"))
                .collect();
            let group_dim: u64 = parts.next().expect("group dimension").parse().expect("integer");
            let check: u64 = degrees.iter().map(|d| 2 * d - 1).sum();
            assert_eq!(
                check, group_dim,
                "degree table row {name} fails the dimension identity"
            );
            rows.push(WeylRow {
                name,
                degrees,
                group_dim,
            });
        }
        rows
    })
}

pub fn weyl_degrees(name: &str) -> Result<&'static [u64]> {
    weyl_table()
        .iter()
        .find(|r| r.name == name)
        .map(|r| r.degrees.as_slice())
        .ok_or_else(|| Error::InvalidArgument(format!("unknown simple type `{name}`")))
}

/// No degree may occur more than twice in a simple-type row.
pub fn multiplicity_ok(name: &str) -> Result<bool> {
    let degrees = weyl_degrees(name)?;
    Ok(degrees
        .iter()
        .all(|d| degrees.iter().filter(|e| *e == d).count() <= 2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomogeneityVerdict {
    /// cannot be the cohomology of an equal-rank homogeneous space with
    /// G simple; carries the reason
    NotHomogeneous(String),
    Inconclusive,
}

/// Two necessary conditions for a simple presentation to be the
/// cohomology of an equal-rank homogeneous space G/K with G simple:
/// (a) no invariant degree of a simple group occurs more than twice, so a
/// homotopy degree of multiplicity >= 3 rules it out; (b) the multiset of
/// invariant degrees derived from the homotopy degrees must occur as a
/// table row. Anything not excluded is reported inconclusive.
pub fn nonhomogeneity_check(p: &Presentation) -> Result<HomogeneityVerdict> {
    let degrees = pi1(p)?;
    if let Some((d, mult)) = degrees.iter().find(|(_, &m)| m >= 3) {
        return Ok(HomogeneityVerdict::NotHomogeneous(format!(
            "homotopy degree {d} has multiplicity {mult}, above the maximum 2 of any simple type"
        )));
    }
    if !homotopy::is_simple(p).is_simple() {
        return Ok(HomogeneityVerdict::Inconclusive);
    }
    // degrees 2 d_i - 1 of the homotopy classes vs invariant degrees d_i
    let mut wanted: Vec<u64> = Vec::new();
    for (&deg, &mult) in &degrees {
        if deg % 2 == 0 {
            return Ok(HomogeneityVerdict::Inconclusive);
        }
        for _ in 0..mult {
            wanted.push(deg.div_ceil(2));
        }
    }
    wanted.sort_unstable();
    let matched = weyl_table().iter().any(|row| {
        let mut ds = row.degrees.clone();
        ds.sort_unstable();
        ds == wanted
    });
    if matched {
        Ok(HomogeneityVerdict::Inconclusive)
    } else {
        Ok(HomogeneityVerdict::NotHomogeneous(format!(
            "invariant degree multiset {wanted:?} occurs in no simple-type row"
        )))
    }
}

/// Convenience constructor: quotient algebra of a family presentation.
pub fn algebra_of(p: &Presentation) -> Result<AlgRef> {
    QuotientAlgebra::new(p)
}
