//! Integral symmetric bilinear forms.
//!
//! A [`BilinearForm`] is a symmetric integer Gram matrix. This module builds
//! forms from Witt-style expressions and from the explicit diagonal trace
//! forms of `Z[ζ_p]` and `Z[ζ_{2^{n+1}}]`, computes their invariants, and
//! decides diagonalizability over `Z` for small positive definite unimodular
//! forms by enumerating norm-1 vectors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::exactla::{self, IntMatrix, RatMatrix, Signature};

/// Largest rank accepted by [`short_vectors`] and [`is_diagonalizable_over_z`].
pub const MAX_ENUMERATION_RANK: usize = 16;
/// Largest norm bound accepted by [`short_vectors`].
pub const MAX_NORM_BOUND: u32 = 4;
/// Largest `n` accepted by [`trace_form_two_power`] (dimension `2^{n+1}`).
pub const MAX_TWO_POWER_EXPONENT: u32 = 6;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    gram: IntMatrix,
}

impl BilinearForm {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearForm { gram })
    }

    pub fn from_rows<S: Into<BigInt>, R: IntoIterator<Item = S>>(
        rows: impl IntoIterator<Item = R>,
    ) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// `k·I_k` style diagonal form.
    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let diag: Vec<BigInt> = entries.iter().cloned().map(Into::into).collect();
        Ok(BilinearForm {
            gram: IntMatrix::from_diagonal(&diag),
        })
    }

    pub fn identity(n: usize) -> Self {
        BilinearForm {
            gram: IntMatrix::identity(n),
        }
    }

    /// The hyperbolic plane `[[0, 1], [1, 0]]`.
    pub fn hyperbolic() -> Self {
        BilinearForm {
            gram: IntMatrix::from_rows([[0, 1], [1, 0]]).expect("2x2"),
        }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn into_gram(self) -> IntMatrix {
        self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn negated(&self) -> Self {
        BilinearForm { gram: -&self.gram }
    }

    /// `xᵀ G y`
    pub fn eval(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        let gy = self.gram.apply(y)?;
        if x.len() != gy.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against rank {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    pub fn norm(&self, x: &[BigInt]) -> Result<BigInt> {
        self.eval(x, x)
    }

    /// Change of basis `Pᵀ G P`.
    pub fn transform(&self, p: &IntMatrix) -> Result<Self> {
        Self::new(self.gram.congruent(p)?)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        BilinearForm {
            gram: self.gram.block_diag(&other.gram),
        }
    }

    pub fn signature(&self) -> Signature {
        exactla::signature(&self.gram).expect("gram is symmetric")
    }

    pub fn determinant(&self) -> BigInt {
        exactla::determinant(&self.gram).expect("gram is square")
    }

    pub fn parity(&self) -> Parity {
        if self.gram.diagonal().iter().all(|d| d.is_even()) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn invariants(&self) -> FormInvariants {
        invariants(self)
    }
}

impl fmt::Debug for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BilinearForm {:?}", self.gram)
    }
}

pub fn direct_sum(a: &BilinearForm, b: &BilinearForm) -> BilinearForm {
    a.direct_sum(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    Degenerate,
}

impl Definiteness {
    pub fn from_signature(sig: &Signature) -> Self {
        match (sig.positive, sig.negative, sig.zero) {
            (_, _, z) if z > 0 => Definiteness::Degenerate,
            (_, 0, _) => Definiteness::Positive,
            (0, _, _) => Definiteness::Negative,
            _ => Definiteness::Indefinite,
        }
    }

    pub fn is_definite(self) -> bool {
        matches!(self, Definiteness::Positive | Definiteness::Negative)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub rank: usize,
    pub signature: Signature,
    #[serde(with = "crate::formats::bigint")]
    pub determinant: BigInt,
    pub parity: Parity,
    pub unimodular: bool,
    pub definiteness: Definiteness,
}

pub fn invariants(f: &BilinearForm) -> FormInvariants {
    let signature = f.signature();
    let determinant = f.determinant();
    FormInvariants {
        rank: f.rank(),
        signature,
        unimodular: determinant.abs().is_one(),
        determinant,
        parity: f.parity(),
        definiteness: Definiteness::from_signature(&signature),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One summand of a Witt-style expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WittTerm {
    /// `k⟨±1⟩`
    Diag { count: usize, sign: Sign },
    /// `k×H`
    Hyperbolic { count: usize },
    /// `2ⁿ⟨1⟩`, unfolded as the `2ⁿ`-dimensional sum of squares.
    Pfister { n: u32 },
}

impl WittTerm {
    fn to_form(self) -> BilinearForm {
        match self {
            WittTerm::Diag { count, sign } => {
                BilinearForm::diagonal(&vec![sign.value(); count]).expect("count >= 1")
            }
            WittTerm::Hyperbolic { count } => {
                let h = BilinearForm::hyperbolic();
                (1..count).fold(h.clone(), |acc, _| acc.direct_sum(&h))
            }
            WittTerm::Pfister { n } => BilinearForm::identity(1 << n),
        }
    }

    fn dimension(self) -> usize {
        match self {
            WittTerm::Diag { count, .. } => count,
            WittTerm::Hyperbolic { count } => 2 * count,
            WittTerm::Pfister { n } => 1 << n,
        }
    }
}

impl fmt::Display for WittTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittTerm::Diag { count, sign } => write!(f, "{count}<{}>", sign.value()),
            WittTerm::Hyperbolic { count: 1 } => write!(f, "H"),
            WittTerm::Hyperbolic { count } => write!(f, "{count}xH"),
            WittTerm::Pfister { n } => write!(f, "2^{n}<1>"),
        }
    }
}

/// Sum of Witt terms, e.g. `7<1> + H + 2^4<1>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittExpression {
    terms: Vec<WittTerm>,
}

/// Cap on the dimension of a form built from a Witt expression.
pub const MAX_WITT_DIMENSION: usize = 512;

impl WittExpression {
    pub fn new(terms: Vec<WittTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("empty Witt expression".into()));
        }
        for t in &terms {
            match *t {
                WittTerm::Diag { count: 0, .. } | WittTerm::Hyperbolic { count: 0 } => {
                    return Err(Error::InvalidArgument(format!("zero count in term {t}")))
                }
                WittTerm::Pfister { n: 0 } => {
                    return Err(Error::InvalidArgument("Pfister exponent must be >= 1".into()))
                }
                WittTerm::Pfister { n } if n > 9 => {
                    return Err(Error::CapExceeded {
                        what: "Pfister exponent",
                        value: n as u64,
                        cap: 9,
                    })
                }
                _ => {}
            }
        }
        let dim: usize = terms.iter().map(|t| t.dimension()).sum();
        if dim > MAX_WITT_DIMENSION {
            return Err(Error::CapExceeded {
                what: "form dimension",
                value: dim as u64,
                cap: MAX_WITT_DIMENSION as u64,
            });
        }
        Ok(WittExpression { terms })
    }

    pub fn terms(&self) -> &[WittTerm] {
        &self.terms
    }
}

impl fmt::Display for WittExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for WittExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = s
            .split('+')
            .map(|t| parse_term(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        WittExpression::new(terms)
    }
}

fn parse_count(s: &str, term: &str) -> Result<usize> {
    if s.is_empty() {
        return Ok(1);
    }
    s.parse()
        .map_err(|_| Error::Parse(format!("bad count {s:?} in Witt term {term:?}")))
}

fn parse_term(term: &str) -> Result<WittTerm> {
    if term.is_empty() {
        return Err(Error::Parse("empty Witt term".into()));
    }
    if let Some(prefix) = term.strip_suffix('H') {
        let prefix = prefix.trim();
        let count = match prefix.strip_suffix(['x', '×', '*']) {
            Some(c) => parse_count(c.trim(), term)?,
            None if prefix.is_empty() => 1,
            None => return Err(Error::Parse(format!("bad hyperbolic term {term:?}"))),
        };
        return Ok(WittTerm::Hyperbolic { count });
    }
    let (prefix, rest) = term
        .split_once('<')
        .ok_or_else(|| Error::Parse(format!("unrecognized Witt term {term:?}")))?;
    let entry = rest
        .strip_suffix('>')
        .ok_or_else(|| Error::Parse(format!("unterminated <...> in {term:?}")))?
        .trim();
    let sign = match entry {
        "1" | "+1" => Sign::Plus,
        "-1" => Sign::Minus,
        _ => {
            return Err(Error::Parse(format!(
                "only <1> and <-1> are supported, got <{entry}>"
            )))
        }
    };
    let prefix = prefix.trim();
    if let Some(exp) = prefix.strip_prefix("2^") {
        if sign == Sign::Minus {
            return Err(Error::Parse(format!("Pfister term must be <1>: {term:?}")));
        }
        let n = exp
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
        return Ok(WittTerm::Pfister { n });
    }
    Ok(WittTerm::Diag {
        count: parse_count(prefix, term)?,
        sign,
    })
}

/// Block-diagonal form of a Witt expression, terms in order.
pub fn from_witt(e: &WittExpression) -> BilinearForm {
    let mut terms = e.terms.iter();
    let first = terms.next().expect("non-empty by construction").to_form();
    terms.fold(first, |acc, t| acc.direct_sum(&t.to_form()))
}

/// `Σ_{i<p} xᵢyᵢ` on `p` coordinates, `p` an odd prime.
pub fn trace_form_odd_prime(p: u64) -> Result<BilinearForm> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    if p > 509 {
        return Err(Error::CapExceeded {
            what: "prime",
            value: p,
            cap: 509,
        });
    }
    Ok(BilinearForm::identity(p as usize))
}

/// The diagonal form on `2^{n+1}` coordinates read literally from the
/// index ranges, together with the signature value asserted for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPowerTraceForm {
    pub n: u32,
    pub form: BilinearForm,
    /// `2ⁿ`, the value stated alongside the closed-form expression.
    pub asserted_signature: i64,
    /// Signature computed from the Gram matrix.
    pub computed_signature: Signature,
}

impl TwoPowerTraceForm {
    pub fn discrepancy(&self) -> bool {
        self.asserted_signature != self.computed_signature.value()
    }
}

/// Sign of coordinate `i` in the `2^{n+1}`-dimensional diagonal form.
///
/// `+` on `[0, 2ⁿ)`, `+` at `2ⁿ`, `−` at `2ⁿ+1`, `+` on `[2ⁿ+2, 3·2^{n−1})`,
/// `−` on `[3·2^{n−1}, 2^{n+1})`.
fn two_power_sign(n: u32, i: usize) -> i64 {
    let half = 1usize << n;
    let three_quarters = 3 << (n - 1);
    if i <= half {
        1
    } else if i == half + 1 {
        -1
    } else if i < three_quarters {
        1
    } else {
        -1
    }
}

pub fn trace_form_two_power(n: u32) -> Result<TwoPowerTraceForm> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "two-power trace form needs n >= 4, got {n}"
        )));
    }
    if n > MAX_TWO_POWER_EXPONENT {
        return Err(Error::CapExceeded {
            what: "two-power exponent",
            value: n as u64,
            cap: MAX_TWO_POWER_EXPONENT as u64,
        });
    }
    let dim = 1usize << (n + 1);
    let diag: Vec<i64> = (0..dim).map(|i| two_power_sign(n, i)).collect();
    let form = BilinearForm::diagonal(&diag)?;
    let computed_signature = form.signature();
    Ok(TwoPowerTraceForm {
        n,
        form,
        asserted_signature: 1 << n,
        computed_signature,
    })
}

/// `xᵀ G x` over the rationals.
pub fn quadratic_value(g: &RatMatrix, x: &[BigRational]) -> Result<BigRational> {
    let gx = g.apply(x)?;
    Ok(x.iter().zip(&gx).map(|(a, b)| a * b).sum())
}

/// `xᵀ G y` over the rationals.
pub fn bilinear_value(g: &RatMatrix, x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
    let gy = g.apply(y)?;
    Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
}

/// Gram matrix of `B(x, y) = ½[q(x+y) − q(x) − q(y)]` for an arbitrary
/// quadratic function `q` on `Q^dim`, evaluated on basis vectors.
pub fn polarize_with<F>(dim: usize, q: F) -> RatMatrix
where
    F: Fn(&[BigRational]) -> BigRational,
{
    let half = BigRational::new(1.into(), 2.into());
    let basis = |i: usize| -> Vec<BigRational> {
        (0..dim)
            .map(|k| if k == i { BigRational::one() } else { BigRational::zero() })
            .collect()
    };
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let ei = basis(i);
            let ej = basis(j);
            let sum: Vec<BigRational> = ei.iter().zip(&ej).map(|(a, b)| a + b).collect();
            entries.push(&half * (q(&sum) - q(&ei) - q(&ej)));
        }
    }
    RatMatrix::new(dim, dim, entries).expect("dim x dim")
}

/// Polarization of `q(x) = xᵀGx`; returns `G` itself for symmetric `G`.
pub fn polarize(g: &RatMatrix) -> Result<RatMatrix> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(polarize_with(g.rows(), |x| {
        quadratic_value(g, x).expect("vector length matches")
    }))
}

/// Standard E8 Gram matrix: 2 on the diagonal, 1 on Dynkin-diagram edges.
pub fn e8_form() -> BilinearForm {
    // chain 0-1-2-3-4-5-6, node 7 attached to node 4
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    let mut gram = IntMatrix::from_diagonal(&vec![BigInt::from(2); 8]);
    for (a, b) in edges {
        gram = gram.with_entry(a, b, BigInt::one()).with_entry(b, a, BigInt::one());
    }
    let f = BilinearForm::new(gram).expect("symmetric");
    debug_assert_eq!(f.parity(), Parity::Even);
    debug_assert!(f.determinant().is_one());
    debug_assert_eq!(f.signature(), Signature::new(8, 0, 0));
    f
}

/// `G = L·D·Lᵀ` with `L` unit lower triangular; `None` unless every pivot
/// of `D` is positive.
fn positive_ldl(g: &IntMatrix) -> Option<(Vec<BigRational>, RatMatrix)> {
    let n = g.rows();
    let g = g.to_rational();
    let mut d: Vec<BigRational> = Vec::with_capacity(n);
    let mut l = RatMatrix::identity(n).to_rows();
    for j in 0..n {
        let mut dj = g.get(j, j).clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        if !dj.is_positive() {
            return None;
        }
        for i in j + 1..n {
            let mut s = g.get(i, j).clone();
            for k in 0..j {
                s -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = s / &dj;
        }
        d.push(dj);
    }
    Some((d, RatMatrix::from_rows(l).expect("square")))
}

pub fn is_positive_definite(f: &BilinearForm) -> bool {
    positive_ldl(&f.gram).is_some()
}

/// All nonzero `v` with `vᵀGv ≤ bound`, one of each `±v` pair (first nonzero
/// coordinate positive), in lexicographic order.
///
/// Fincke–Pohst style enumeration over the exact `LDLᵀ` factorization:
/// `q(x) = Σᵢ dᵢ (xᵢ + Σ_{j>i} L_{ji} x_j)²`, coordinates fixed from last to first.
pub fn short_vectors(f: &BilinearForm, bound: u32) -> Result<Vec<Vec<i64>>> {
    if f.rank() > MAX_ENUMERATION_RANK {
        return Err(Error::CapExceeded {
            what: "rank for short-vector enumeration",
            value: f.rank() as u64,
            cap: MAX_ENUMERATION_RANK as u64,
        });
    }
    if bound > MAX_NORM_BOUND {
        return Err(Error::CapExceeded {
            what: "norm bound",
            value: bound as u64,
            cap: MAX_NORM_BOUND as u64,
        });
    }
    let (d, l) = positive_ldl(&f.gram).ok_or(Error::NotPositiveDefinite)?;
    let n = f.rank();
    let mut search = Enumeration {
        d: &d,
        l: &l,
        x: vec![0; n],
        found: Vec::new(),
    };
    search.descend(n, BigRational::from_integer(bound.into()));
    let mut found = search.found;
    found.sort();
    Ok(found)
}

struct Enumeration<'a> {
    d: &'a [BigRational],
    l: &'a RatMatrix,
    x: Vec<i64>,
    found: Vec<Vec<i64>>,
}

impl Enumeration<'_> {
    /// Coordinates `level..n` are fixed; choose coordinate `level − 1`.
    fn descend(&mut self, level: usize, remaining: BigRational) {
        if level == 0 {
            if let Some(first) = self.x.iter().find(|&&c| c != 0) {
                if *first > 0 {
                    self.found.push(self.x.clone());
                }
            }
            return;
        }
        let i = level - 1;
        let n = self.x.len();
        let center: BigRational = (i + 1..n)
            .map(|j| self.l.get(j, i) * BigRational::from_integer(self.x[j].into()))
            .sum();
        let di = &self.d[i];
        let radius: BigInt = (&remaining / di).floor().to_integer().sqrt();
        let neg_center = -&center;
        let lo: BigInt = neg_center.floor().to_integer() - &radius - 1;
        let hi: BigInt = neg_center.ceil().to_integer() + &radius + 1;
        let (lo, hi) = (lo.to_i64().expect("small"), hi.to_i64().expect("small"));
        for xi in lo..=hi {
            let offset = BigRational::from_integer(xi.into()) + &center;
            let cost = di * &offset * &offset;
            if cost <= remaining {
                self.x[i] = xi;
                self.descend(i, &remaining - cost);
            }
        }
        self.x[i] = 0;
    }
}

/// True iff the positive definite unimodular form `f` is isometric to
/// `I_rank`, i.e. has `rank` pairwise orthogonal norm-1 vectors.
pub fn is_diagonalizable_over_z(f: &BilinearForm) -> Result<bool> {
    if f.rank() > MAX_ENUMERATION_RANK {
        return Err(Error::CapExceeded {
            what: "rank for diagonalizability",
            value: f.rank() as u64,
            cap: MAX_ENUMERATION_RANK as u64,
        });
    }
    if !is_positive_definite(f) {
        return Err(Error::NotPositiveDefinite);
    }
    let det = f.determinant();
    if !det.is_one() {
        return Err(Error::NotUnimodular {
            determinant: det.to_string(),
        });
    }
    let units: Vec<Vec<BigInt>> = short_vectors(f, 1)?
        .into_iter()
        .map(|v| v.into_iter().map(BigInt::from).collect())
        .collect();
    let m = units.len();
    let mut orthogonal = vec![vec![false; m]; m];
    for a in 0..m {
        for b in a + 1..m {
            let zero = f.eval(&units[a], &units[b])?.is_zero();
            orthogonal[a][b] = zero;
            orthogonal[b][a] = zero;
        }
    }
    Ok(largest_orthogonal_set(&orthogonal) >= f.rank())
}

/// Size of the largest pairwise-orthogonal subset (max clique, exhaustive).
fn largest_orthogonal_set(orthogonal: &[Vec<bool>]) -> usize {
    fn grow(orth: &[Vec<bool>], chosen: &mut Vec<usize>, start: usize, best: &mut usize) {
        *best = (*best).max(chosen.len());
        if chosen.len() + (orth.len() - start) <= *best {
            return;
        }
        for c in start..orth.len() {
            if chosen.iter().all(|&k| orth[k][c]) {
                chosen.push(c);
                grow(orth, chosen, c + 1, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    grow(orthogonal, &mut Vec::new(), 0, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn witt_constructors() {
        let seven: WittExpression = "7<1>".parse().unwrap();
        assert_eq!(from_witt(&seven), BilinearForm::identity(7));
        let h: WittExpression = "H".parse().unwrap();
        assert_eq!(from_witt(&h).gram(), &IntMatrix::from_rows([[0, 1], [1, 0]]).unwrap());
        let pm: WittExpression = "<1> + <-1>".parse().unwrap();
        assert_eq!(from_witt(&pm), BilinearForm::diagonal(&[1, -1]).unwrap());
    }

    #[test]
    fn witt_parse_full_syntax() {
        let e: WittExpression = "7<1> + H + 2^4<1>".parse().unwrap();
        assert_eq!(
            e.terms(),
            &[
                WittTerm::Diag { count: 7, sign: Sign::Plus },
                WittTerm::Hyperbolic { count: 1 },
                WittTerm::Pfister { n: 4 },
            ]
        );
        let f = from_witt(&e);
        assert_eq!(f.rank(), 7 + 2 + 16);
        assert_eq!(f.signature(), Signature::new(24, 1, 0));

        let e: WittExpression = "3xH + 2<-1>".parse().unwrap();
        assert_eq!(from_witt(&e).signature(), Signature::new(3, 5, 0));
        assert_eq!(e.to_string(), "3xH + 2<-1>");
    }

    #[test]
    fn witt_parse_errors() {
        for bad in ["", "7<2>", "H + ", "2^3<-1>", "x<1>", "0<1>", "2^0<1>", "7<1"] {
            assert!(bad.parse::<WittExpression>().is_err(), "{bad:?}");
        }
        assert!(matches!(
            "2^10<1>".parse::<WittExpression>(),
            Err(Error::CapExceeded { .. })
        ));
        assert!(WittExpression::new(vec![]).is_err());
    }

    #[test]
    fn odd_prime_forms() {
        assert_eq!(trace_form_odd_prime(3).unwrap(), BilinearForm::identity(3));
        let inv = trace_form_odd_prime(7).unwrap().invariants();
        assert_eq!(inv.signature, Signature::new(7, 0, 0));
        assert_eq!(inv.parity, Parity::Odd);
        assert_eq!(inv.determinant, BigInt::one());
        for p in [3, 5, 7, 11] {
            let f = trace_form_odd_prime(p).unwrap();
            assert!(f.gram().is_diagonal());
            assert!(is_positive_definite(&f));
            let witt: WittExpression = format!("{p}<1>").parse().unwrap();
            assert_eq!(from_witt(&witt), f);
        }
        for bad in [0, 1, 2, 4, 9, 15] {
            assert!(trace_form_odd_prime(bad).is_err(), "{bad}");
        }
    }

    /// Independent count of the literal index ranges.
    fn range_count(n: u32) -> (usize, usize) {
        let half = 1usize << n;
        let first = half;
        let pair = (1, 1);
        let bracket_pos = (3 * (1usize << (n - 1))) - (half + 2);
        let bracket_neg = (1usize << (n + 1)) - 3 * (1usize << (n - 1));
        (first + pair.0 + bracket_pos, pair.1 + bracket_neg)
    }

    #[test]
    fn two_power_forms() {
        let t = trace_form_two_power(4).unwrap();
        assert_eq!(t.form.rank(), 32);
        assert_eq!(t.computed_signature, Signature::new(23, 9, 0));
        assert_eq!(t.computed_signature.value(), 14);
        assert_eq!(t.asserted_signature, 16);
        assert!(t.discrepancy());

        let t = trace_form_two_power(5).unwrap();
        assert_eq!(t.form.rank(), 64);
        assert_eq!(t.computed_signature.value(), 30);

        for n in 4..=MAX_TWO_POWER_EXPONENT {
            let t = trace_form_two_power(n).unwrap();
            let (pos, neg) = range_count(n);
            assert_eq!((pos, neg), ((3 << (n - 1)) - 1, (1 << (n - 1)) + 1));
            assert_eq!(t.computed_signature, Signature::new(pos, neg, 0));
            assert_eq!(t.form.parity(), Parity::Odd);
            assert_eq!(t.form.rank(), 1 << (n + 1));
        }
        assert!(trace_form_two_power(3).is_err());
        assert!(matches!(trace_form_two_power(7), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn polarize_examples() {
        let b = polarize(&RatMatrix::identity(2)).unwrap();
        assert_eq!(b, RatMatrix::identity(2));

        let q = |x: &[BigRational]| &x[0] * &x[0] + &x[0] * &x[1] + &x[1] * &x[1];
        let b = polarize_with(2, q);
        let expected =
            RatMatrix::from_rows([[rat(1, 1), rat(1, 2)], [rat(1, 2), rat(1, 1)]]).unwrap();
        assert_eq!(b, expected);
        assert_eq!(b.to_integer(), None);

        let e8 = e8_form().gram().to_rational();
        assert_eq!(polarize(&e8).unwrap(), e8);
        assert_eq!(polarize(&e8).unwrap().to_integer().as_ref(), Some(e8_form().gram()));

        let asym = RatMatrix::from_rows([[rat(0, 1), rat(1, 1)], [rat(0, 1), rat(0, 1)]]).unwrap();
        assert_eq!(polarize(&asym), Err(Error::NotSymmetric));
    }

    #[test]
    fn direct_sum_examples() {
        let i1 = BilinearForm::identity(1);
        assert_eq!(i1.direct_sum(&i1), BilinearForm::identity(2));
        let e8e8 = direct_sum(&e8_form(), &e8_form());
        assert_eq!(e8e8.signature(), Signature::new(16, 0, 0));
        let h1 = BilinearForm::hyperbolic().direct_sum(&i1);
        assert_eq!(h1.signature(), Signature::new(2, 1, 0));
        assert_eq!(h1.determinant(), BigInt::from(-1));
    }

    #[test]
    fn invariant_examples() {
        let e8 = e8_form().invariants();
        assert_eq!(e8.parity, Parity::Even);
        assert!(e8.unimodular);
        assert_eq!(e8.determinant, BigInt::one());
        assert_eq!(e8.signature, Signature::new(8, 0, 0));
        assert_eq!(e8.definiteness, Definiteness::Positive);

        let h = BilinearForm::hyperbolic().invariants();
        assert_eq!(h.parity, Parity::Even);
        assert_eq!(h.determinant, BigInt::from(-1));
        assert_eq!(h.signature, Signature::new(1, 1, 0));
        assert_eq!(h.definiteness, Definiteness::Indefinite);

        let i3 = BilinearForm::identity(3).invariants();
        assert_eq!((i3.parity, i3.signature), (Parity::Odd, Signature::new(3, 0, 0)));

        let degenerate = BilinearForm::diagonal(&[1, 0]).unwrap().invariants();
        assert_eq!(degenerate.definiteness, Definiteness::Degenerate);
        assert!(!degenerate.unimodular);
        let neg = BilinearForm::diagonal(&[-1, -3]).unwrap().invariants();
        assert_eq!(neg.definiteness, Definiteness::Negative);
    }

    #[test]
    fn e8_structure() {
        let e8 = e8_form();
        assert!(e8.gram().diagonal().iter().all(|d| d == &BigInt::from(2)));
        let ones = e8.gram().entries().iter().filter(|x| x.is_one()).count();
        assert_eq!(ones, 14);
    }

    #[test]
    fn short_vector_examples() {
        let v = short_vectors(&BilinearForm::identity(2), 1).unwrap();
        assert_eq!(v, vec![vec![0, 1], vec![1, 0]]);
        assert!(short_vectors(&e8_form(), 1).unwrap().is_empty());
        let roots = short_vectors(&e8_form(), 2).unwrap();
        assert_eq!(roots.len(), 120);
        for r in &roots {
            assert_eq!(e8_form().norm(&ints(r)).unwrap(), BigInt::from(2));
        }
    }

    #[test]
    fn short_vector_errors() {
        assert_eq!(
            short_vectors(&BilinearForm::hyperbolic(), 1),
            Err(Error::NotPositiveDefinite)
        );
        assert!(matches!(
            short_vectors(&BilinearForm::identity(17), 1),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            short_vectors(&BilinearForm::identity(2), 5),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn short_vectors_of_a2() {
        // A2 root lattice: 6 roots of norm 2.
        let a2 = BilinearForm::from_rows([[2, -1], [-1, 2]]).unwrap();
        assert_eq!(short_vectors(&a2, 2).unwrap(), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn diagonalizability_examples() {
        assert!(is_diagonalizable_over_z(&BilinearForm::identity(8)).unwrap());
        assert!(!is_diagonalizable_over_z(&e8_form()).unwrap());
        // Pᵀ I₃ P for a fixed unimodular P.
        let p = IntMatrix::from_rows([[1, 2, 0], [0, 1, -3], [1, 2, 1]]).unwrap();
        assert_eq!(exactla::determinant(&p).unwrap().abs(), BigInt::one());
        let f = BilinearForm::identity(3).transform(&p).unwrap();
        assert!(is_diagonalizable_over_z(&f).unwrap());
        // E8 ⊕ I₁ has a single norm-1 vector up to sign.
        let f = e8_form().direct_sum(&BilinearForm::identity(1));
        assert!(!is_diagonalizable_over_z(&f).unwrap());
    }

    #[test]
    fn diagonalizability_preconditions() {
        assert_eq!(
            is_diagonalizable_over_z(&BilinearForm::hyperbolic()),
            Err(Error::NotPositiveDefinite)
        );
        assert!(matches!(
            is_diagonalizable_over_z(&BilinearForm::diagonal(&[1, 2]).unwrap()),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn asymmetric_rejected() {
        assert_eq!(BilinearForm::from_rows([[0, 1], [-1, 0]]), Err(Error::NotSymmetric));
    }
}
