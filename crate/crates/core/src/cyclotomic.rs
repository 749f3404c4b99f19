//! Cyclotomic polynomials and exact arithmetic in `Z[ζₙ]`.
//!
//! Elements live in the power basis `{1, ζ, …, ζ^{φ(n)−1}}` modulo `Φₙ`.
//! Traces are computed exactly as traces of the multiplication matrix on
//! that basis; the complex-embedding sum in [`oracle`] exists only as an
//! independent cross-check.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;

pub mod oracle;

/// Integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::new([1])
    }

    /// `xⁿ − 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] += BigInt::one();
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Division with remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::InvalidArgument("divisor must be monic".into()));
        }
        let dd = divisor.degree().unwrap_or(0);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{abs}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{abs}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// `Φₙ`, obtained by exact division of `xⁿ − 1` by `Φ_d` for proper divisors `d`.
pub fn cyclotomic_polynomial(n: u64) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclotomic polynomial needs n >= 1".into()));
    }
    let divs = divisors(n);
    let mut computed: Vec<(u64, IntPolynomial)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut phi_d = IntPolynomial::x_pow_minus_one(d as usize);
        for (e, phi_e) in &computed {
            if d % e == 0 {
                let (q, r) = phi_d.div_rem_monic(phi_e)?;
                debug_assert!(r.is_zero());
                phi_d = q;
            }
        }
        computed.push((d, phi_d));
    }
    Ok(computed.pop().expect("n is its own divisor").1)
}

/// Element of `Z[ζₙ]` in the power basis modulo `Φₙ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    n: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicElement {
    /// Reduces `Σ cᵢ ζⁱ` (any length) modulo `Φₙ`.
    pub fn new<T: Into<BigInt>>(n: u64, coeffs: impl IntoIterator<Item = T>) -> Result<Self> {
        let modulus = cyclotomic_polynomial(n)?;
        Ok(Self::reduce(n, &modulus, IntPolynomial::new(coeffs)))
    }

    fn reduce(n: u64, modulus: &IntPolynomial, p: IntPolynomial) -> Self {
        let dim = euler_phi(n) as usize;
        let (_, r) = p.div_rem_monic(modulus).expect("cyclotomic polynomials are monic");
        let mut coeffs = r.coeffs;
        coeffs.resize(dim, BigInt::zero());
        CyclotomicElement { n, coeffs }
    }

    pub fn zero(n: u64) -> Result<Self> {
        Self::new(n, Vec::<BigInt>::new())
    }

    pub fn one(n: u64) -> Result<Self> {
        Self::new(n, [1])
    }

    /// `ζₙ^k`
    pub fn zeta_pow(n: u64, k: usize) -> Result<Self> {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Self::new(n, c)
    }

    pub fn zeta(n: u64) -> Result<Self> {
        Self::zeta_pow(n, 1)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn check_conductor(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!(
                "conductors {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicElement { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CyclotomicElement { n: self.n, coeffs })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let modulus = cyclotomic_polynomial(self.n)?;
        let product = IntPolynomial::new(self.coeffs.clone()).mul(&IntPolynomial::new(other.coeffs.clone()));
        Ok(Self::reduce(self.n, &modulus, product))
    }

    /// Matrix of `y ↦ self·y` on the power basis; column `j` holds `self·ζʲ`.
    pub fn multiplication_matrix(&self) -> IntMatrix {
        let dim = self.coeffs.len();
        let modulus = cyclotomic_polynomial(self.n).expect("conductor validated at construction");
        let mut columns = Vec::with_capacity(dim);
        let mut current = self.coeffs.clone();
        for _ in 0..dim {
            columns.push(current.clone());
            current = shift_mod(&current, &modulus);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for col in &columns {
                entries.push(col[i].clone());
            }
        }
        IntMatrix::new(dim, dim, entries).expect("square by construction")
    }

    /// Trace of the regular representation of `Q(ζₙ)` over `Q`.
    pub fn trace(&self) -> BigInt {
        self.multiplication_matrix().trace()
    }
}

/// Multiplies a reduced coefficient vector by ζ and reduces again.
fn shift_mod(coeffs: &[BigInt], modulus: &IntPolynomial) -> Vec<BigInt> {
    let dim = coeffs.len();
    let top = coeffs[dim - 1].clone();
    let mut out = Vec::with_capacity(dim);
    out.push(BigInt::zero());
    out.extend_from_slice(&coeffs[..dim - 1]);
    if !top.is_zero() {
        // ζ^dim = −Σ_{i<dim} mᵢ ζⁱ for monic Φₙ = Σ mᵢ xⁱ.
        for (o, m) in out.iter_mut().zip(modulus.coeffs()) {
            *o -= &top * m;
        }
    }
    out
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "Z[zeta_{}]({})", self.n, c.join(", "))
    }
}

pub fn cyc_mul(a: &CyclotomicElement, b: &CyclotomicElement) -> Result<CyclotomicElement> {
    a.mul(b)
}

pub fn cyc_trace(a: &CyclotomicElement) -> BigInt {
    a.trace()
}

/// Gram matrix of `(x, y) ↦ tr(xy)` on the power basis of `Z[ζₙ]`.
pub fn trace_form_gram(n: u64) -> Result<IntMatrix> {
    let dim = euler_phi(n) as usize;
    if dim == 0 {
        return Err(Error::InvalidArgument("conductor must be >= 1".into()));
    }
    // tr(ζ^k) for k < 2·dim − 1, walking powers of ζ.
    let modulus = cyclotomic_polynomial(n)?;
    let mut power = CyclotomicElement::one(n)?;
    let mut traces = Vec::with_capacity(2 * dim - 1);
    for _ in 0..2 * dim - 1 {
        traces.push(power.trace());
        power.coeffs = shift_mod(&power.coeffs, &modulus);
    }
    let entries = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .map(|(i, j)| traces[i + j].clone())
        .collect();
    IntMatrix::new(dim, dim, entries)
}

/// Ramanujan sum `c_n(k) = tr(ζₙ^k)`; handy for reading Gram matrices.
pub fn power_trace(n: u64, k: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("conductor must be >= 1".into()));
    }
    Ok(CyclotomicElement::zeta_pow(n, (k % n) as usize)?.trace())
}
