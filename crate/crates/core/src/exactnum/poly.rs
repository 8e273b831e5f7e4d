use std::fmt;

use num_complex::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::GaussianRational;
use crate::error::{Error, Result};

/// Univariate polynomial with Gaussian-rational coefficients, lowest degree
/// first. The zero polynomial is the empty coefficient list; otherwise the
/// leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<GaussianRational>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// `x − root`
    pub fn linear_factor(root: &GaussianRational) -> Self {
        Self::new(vec![-root, GaussianRational::one()])
    }

    pub fn coefficients(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs.iter().rev().fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = GaussianRational::zero();
        Self::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&GaussianRational::from_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::constant(GaussianRational::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; `DomainError` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dl = divisor.leading().ok_or_else(|| Error::DomainError("polynomial division by zero".into()))?;
        let dl_inv = dl.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &dl_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; panics (debug) when the division leaves a remainder.
    fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// The unique polynomial of degree < n through n points with distinct
    /// abscissae (Newton divided differences).
    pub fn interpolate(points: &[(GaussianRational, GaussianRational)]) -> Result<Self> {
        let n = points.len();
        let mut table: Vec<GaussianRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for k in (level..n).rev() {
                let dx = &points[k].0 - &points[k - level].0;
                if dx.is_zero() {
                    return Err(Error::DomainError("repeated interpolation node".into()));
                }
                table[k] = &(&table[k] - &table[k - 1]) / &dx;
            }
        }
        let mut poly = Self::zero();
        for k in (0..n).rev() {
            poly = poly.mul(&Self::linear_factor(&points[k].0)).add(&Self::constant(table[k].clone()));
        }
        Ok(poly)
    }

    /// Yun's square-free decomposition: factors `a_k` (k = 1, 2, …) with
    /// `self = c · Π a_k^k`, each `a_k` monic and square-free.
    pub fn squarefree_factors(&self) -> Vec<(Self, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let c = df.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_exact(&a);
            let c = d.div_exact(&a);
            d = c.sub(&b.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, k));
            }
            k += 1;
        }
        out
    }

    /// Product of the distinct monic linear factors, i.e. the square-free part.
    pub fn squarefree_part(&self) -> Self {
        self.squarefree_factors()
            .into_iter()
            .fold(Self::constant(GaussianRational::one()), |acc, (a, _)| acc.mul(&a))
    }
}

impl fmt::Debug for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Roots found exactly, plus whatever could not be split into linear factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootFactorization {
    /// Distinct roots in ascending order with their multiplicities.
    pub roots: Vec<(GaussianRational, usize)>,
    /// Monic product of the unresolved factors (constant 1 when fully split).
    pub remainder: ExactPolynomial,
}

impl RootFactorization {
    pub fn remainder_degree(&self) -> usize {
        self.remainder.degree().unwrap_or(0)
    }
}

/// All Gaussian-rational roots of `p`, leaving irreducible parts in the
/// remainder. `Σ multiplicities + deg(remainder) == deg(p)`.
pub fn poly_roots_partial(p: &ExactPolynomial) -> Result<RootFactorization> {
    if p.is_zero() {
        return Err(Error::DomainError("roots of the zero polynomial".into()));
    }
    let mut roots = Vec::new();
    let mut remainder = ExactPolynomial::constant(GaussianRational::one());
    for (factor, mult) in p.squarefree_factors() {
        let (found, rest) = split_squarefree(&factor);
        roots.extend(found.into_iter().map(|r| (r, mult)));
        remainder = remainder.mul(&rest.pow(mult));
    }
    roots.sort();
    Ok(RootFactorization { roots, remainder })
}

/// All roots with multiplicities, or `IrreducibleRemainder(d)` when a factor
/// of total degree `d` has no Gaussian-rational root.
pub fn poly_roots_exact(p: &ExactPolynomial) -> Result<Vec<(GaussianRational, usize)>> {
    let f = poly_roots_partial(p)?;
    match f.remainder_degree() {
        0 => Ok(f.roots),
        d => Err(Error::IrreducibleRemainder(d)),
    }
}

fn deflate(f: &mut ExactPolynomial, r: GaussianRational, roots: &mut Vec<GaussianRational>) {
    *f = f.div_exact(&ExactPolynomial::linear_factor(&r));
    roots.push(r);
}

/// Splits off the linear factors of a monic square-free polynomial.
fn split_squarefree(f: &ExactPolynomial) -> (Vec<GaussianRational>, ExactPolynomial) {
    let mut f = f.monic();
    let mut roots = Vec::new();
    if f.coefficients().first().is_some_and(Zero::is_zero) {
        deflate(&mut f, GaussianRational::zero(), &mut roots);
    }
    loop {
        match f.degree().unwrap_or(0) {
            0 => break,
            1 => {
                let r = -&f.coefficients()[0];
                deflate(&mut f, r, &mut roots);
            }
            2 => {
                let c = f.coefficients();
                let (c0, c1) = (&c[0], &c[1]);
                let disc = &(c1 * c1) - &(c0 * &GaussianRational::from_int(4));
                let Some(s) = disc.sqrt() else { break };
                let half = GaussianRational::ratio(1, 2);
                let r1 = &(&(-c1) + &s) * &half;
                let r2 = &(&(-c1) - &s) * &half;
                roots.extend([r1, r2]);
                f = ExactPolynomial::constant(GaussianRational::one());
            }
            _ => {
                let before = f.degree();
                for z in numeric_approximations(&f) {
                    if f.degree().unwrap_or(0) == 0 {
                        break;
                    }
                    if let Some(r) = exact_root_near(&f, z) {
                        deflate(&mut f, r, &mut roots);
                    }
                }
                if f.degree() == before {
                    break;
                }
            }
        }
    }
    (roots, f)
}

/// Floating-point root approximations (Aberth iteration on the monic form).
fn numeric_approximations(f: &ExactPolynomial) -> Vec<Complex64> {
    let lead = f.leading().expect("nonzero").clone();
    let coeffs: Vec<Complex64> = f
        .coefficients()
        .iter()
        .map(|c| {
            let (re, im) = (c / &lead).to_f64_pair();
            Complex64::new(re, im)
        })
        .collect();
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Vec::new();
    }
    aberth(&coeffs)
}

/// Exact root reached from the approximation `z`, if any. Newton steps run
/// in exact arithmetic rounded to a dyadic grid that doubles in precision at
/// each level; after each level both coordinates are reconstructed from
/// their continued-fraction convergents and checked exactly. Clustered roots
/// defeat f64 alone, so the refinement matters.
fn exact_root_near(f: &ExactPolynomial, z: Complex64) -> Option<GaussianRational> {
    let df = f.derivative();
    let mut x = GaussianRational::new(BigRational::from_float(z.re)?, BigRational::from_float(z.im)?);
    for bits in [48usize, 96, 192, 384, 768, 1536] {
        for _ in 0..3 {
            let d = df.eval(&x);
            if d.is_zero() {
                break;
            }
            let next = &x - &(&f.eval(&x) / &d);
            x = GaussianRational::new(round_dyadic(next.re(), bits), round_dyadic(next.im(), bits));
        }
        let half = bits / 2;
        let res = convergents_near(x.re(), half);
        let ims = convergents_near(x.im(), half);
        for re in &res {
            for im in &ims {
                let c = GaussianRational::new(re.clone(), im.clone());
                if f.eval(&c).is_zero() {
                    return Some(c);
                }
            }
        }
    }
    None
}

fn round_dyadic(x: &BigRational, bits: usize) -> BigRational {
    let scale = BigRational::from_integer(BigInt::one() << bits);
    BigRational::new((x * &scale).round().to_integer(), BigInt::one() << bits)
}

/// Convergents of `x` with denominator at most `2^bits` lying within
/// `2^-bits` of `x`.
fn convergents_near(x: &BigRational, bits: usize) -> Vec<BigRational> {
    let bound = BigInt::one() << bits;
    let tol = BigRational::new(BigInt::one(), bound.clone());
    let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    let mut frac = x.clone();
    let mut out = Vec::new();
    loop {
        let a = frac.floor().to_integer();
        let (h, k) = (&a * &h1 + &h2, &a * &k1 + &k2);
        if k > bound {
            break;
        }
        let c = BigRational::new(h.clone(), k.clone());
        if (x - &c).abs() <= tol {
            out.push(c);
        }
        let rest = &frac - BigRational::from_integer(a);
        if rest.is_zero() {
            break;
        }
        frac = rest.recip();
        (h2, h1, k2, k1) = (h1, h, k1, k);
    }
    out
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous root approximation for a monic polynomial (Aberth–Ehrlich).
fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let bound = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * bound, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                worst = worst.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    for root in &mut z {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(coeffs, *root);
            let step = p / dp;
            if step.is_finite() {
                *root -= step;
            }
        }
    }
    z
}
