//! Finite groups by Cayley table, integral group rings `Z[Γ]`, and the trace
//! (Frobenius) form on them.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};
use crate::exactla::{IntMatrix, Signature};
use crate::quadform::BilinearForm;

/// Largest order accepted for groups given as direct sums of cyclic groups.
pub const MAX_ABELIAN_ORDER: u64 = 512;
/// Largest order accepted for explicit Cayley tables.
pub const MAX_TABLE_ORDER: usize = 24;

/// Finite group on labels `0..order`, `0` the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    abelian: bool,
    invariants: Option<Vec<u64>>,
}

impl FiniteGroup {
    /// `Z/m₁ ⊕ … ⊕ Z/m_k`; the empty list gives the trivial group.
    ///
    /// Element `(a₁, …, a_k)` has label `Σ aᵢ·strideᵢ` with the last
    /// component varying fastest.
    pub fn abelian(invariants: &[u64]) -> Result<Arc<Self>> {
        if let Some(&bad) = invariants.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidArgument(format!(
                "cyclic factor orders must be >= 2, got {bad}"
            )));
        }
        let mut order: u64 = 1;
        for &m in invariants {
            order = order.saturating_mul(m);
            if order > MAX_ABELIAN_ORDER {
                return Err(Error::CapExceeded {
                    what: "group order",
                    value: order,
                    cap: MAX_ABELIAN_ORDER,
                });
            }
        }
        let order = order as usize;
        let moduli: Vec<usize> = invariants.iter().map(|&m| m as usize).collect();
        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; moduli.len()];
            for (slot, &m) in d.iter_mut().zip(&moduli).rev() {
                *slot = x % m;
                x /= m;
            }
            d
        };
        let label = |d: &[usize]| d.iter().zip(&moduli).fold(0, |acc, (a, m)| acc * m + a);
        let coords: Vec<Vec<usize>> = (0..order).map(digits).collect();
        let mut table = Vec::with_capacity(order * order);
        for a in &coords {
            for b in &coords {
                let sum: Vec<usize> = a.iter().zip(b).zip(&moduli).map(|((x, y), m)| (x + y) % m).collect();
                table.push(label(&sum));
            }
        }
        let inverses = coords
            .iter()
            .map(|a| {
                let neg: Vec<usize> = a.iter().zip(&moduli).map(|(x, m)| (m - x) % m).collect();
                label(&neg)
            })
            .collect();
        Ok(Arc::new(FiniteGroup {
            order,
            table,
            inverses,
            abelian: true,
            invariants: Some(invariants.to_vec()),
        }))
    }

    /// Validates a Cayley table: square, Latin, `0` a two-sided identity,
    /// associative (checked exhaustively).
    pub fn from_cayley_table(rows: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidCayleyTable("empty table".into()));
        }
        if order > MAX_TABLE_ORDER {
            return Err(Error::CapExceeded {
                what: "Cayley table order",
                value: order as u64,
                cap: MAX_TABLE_ORDER as u64,
            });
        }
        if let Some(i) = rows.iter().position(|r| r.len() != order) {
            return Err(Error::InvalidCayleyTable(format!("row {i} has wrong length")));
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidCayleyTable(format!("label {bad} out of range")));
        }
        let at = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidCayleyTable("0 is not a two-sided identity".into()));
            }
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for b in 0..order {
                row_seen[at(a, b)] = true;
                col_seen[at(b, a)] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                return Err(Error::InvalidCayleyTable(format!(
                    "row or column {a} is not a permutation"
                )));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::InvalidCayleyTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverses = (0..order)
            .map(|a| (0..order).find(|&b| at(a, b) == 0).expect("Latin square"))
            .collect();
        let abelian = (0..order).all(|a| (0..order).all(|b| at(a, b) == at(b, a)));
        Ok(Arc::new(FiniteGroup {
            order,
            table,
            inverses,
            abelian,
            invariants: None,
        }))
    }

    /// `S₃` acting on `{0, 1, 2}`, composition `(gh)(x) = g(h(x))`.
    ///
    /// Labels: `0` identity, `1..=3` the transpositions `(01)`, `(02)`, `(12)`,
    /// `4` and `5` the 3-cycles `(012)`, `(021)`.
    pub fn symmetric_group_s3() -> Arc<Self> {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let index = |p: [usize; 3]| PERMS.iter().position(|q| *q == p).expect("closed");
        let rows = PERMS
            .iter()
            .map(|g| {
                PERMS
                    .iter()
                    .map(|h| index([g[h[0]], g[h[1]], g[h[2]]]))
                    .collect()
            })
            .collect();
        Self::from_cayley_table(rows).expect("S3 table is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Cyclic factor orders when built by [`FiniteGroup::abelian`].
    pub fn abelian_invariants(&self) -> Option<&[u64]> {
        self.invariants.as_deref()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    /// Closure of `gens` under multiplication, as a membership mask.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    frontier.push(y);
                }
            }
        }
        inside
    }

    /// A generating set: the unit vectors for direct sums, otherwise a
    /// greedy choice preferring elements of large order.
    pub fn generators(&self) -> Vec<usize> {
        if let Some(inv) = &self.invariants {
            let mut gens = Vec::with_capacity(inv.len());
            let mut stride = 1;
            for &m in inv.iter().rev() {
                gens.push(stride);
                stride *= m as usize;
            }
            gens.reverse();
            return gens;
        }
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by_key(|&g| std::cmp::Reverse(self.element_order(g)));
        let mut gens = Vec::new();
        let mut inside = self.generated_subgroup(&gens);
        for g in by_order {
            if !inside[g] {
                gens.push(g);
                inside = self.generated_subgroup(&gens);
            }
        }
        gens
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.invariants {
            Some(inv) => write!(f, "FiniteGroup(Z/{inv:?})"),
            None => write!(f, "FiniteGroup(order {}, abelian {})", self.order, self.abelian),
        }
    }
}

pub fn abelian_group(invariants: &[u64]) -> Result<Arc<FiniteGroup>> {
    FiniteGroup::abelian(invariants)
}

pub fn symmetric_group_s3() -> Arc<FiniteGroup> {
    FiniteGroup::symmetric_group_s3()
}

/// Element `Σ c_g g` of `Z[Γ]`.
#[derive(Clone)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement {}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GroupRingElement {
    pub fn new<T: Into<BigInt>>(group: &Arc<FiniteGroup>, coeffs: impl IntoIterator<Item = T>) -> Result<Self> {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(GroupRingElement {
            group: Arc::clone(group),
            coeffs,
        })
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupRingElement {
            group: Arc::clone(group),
            coeffs: vec![BigInt::zero(); group.order()],
        }
    }

    /// The basis element `g`.
    pub fn basis(group: &Arc<FiniteGroup>, g: usize) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[g] = 1.into();
        e
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::basis(group, 0)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, g: usize) -> &BigInt {
        &self.coeffs[g]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::Mismatch("group ring elements over different groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(GroupRingElement { group: Arc::clone(&self.group), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(GroupRingElement { group: Arc::clone(&self.group), coeffs })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GroupRingElement {
            group: Arc::clone(&self.group),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Convolution `(Σ x_g g)(Σ y_h h) = Σ x_g y_h (gh)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let g = &self.group;
        let mut out = vec![BigInt::zero(); g.order()];
        for (a, xa) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out[g.mul(a, b)] += xa * yb;
            }
        }
        Ok(GroupRingElement { group: Arc::clone(g), coeffs: out })
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| format!("{c}*g{g}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

pub fn gr_mul(x: &GroupRingElement, y: &GroupRingElement) -> Result<GroupRingElement> {
    x.mul(y)
}

/// Inner automorphism `x ↦ g⁻¹ x g`, extended linearly.
pub fn conjugate(x: &GroupRingElement, g: usize) -> Result<GroupRingElement> {
    let group = &x.group;
    if g >= group.order() {
        return Err(Error::InvalidArgument(format!(
            "element {g} outside group of order {}",
            group.order()
        )));
    }
    let g_inv = group.inverse(g);
    // coefficient of k in g⁻¹xg is x_{g k g⁻¹}
    let coeffs = (0..group.order())
        .map(|k| x.coeffs[group.mul(group.mul(g, k), g_inv)].clone())
        .collect();
    Ok(GroupRingElement { group: Arc::clone(group), coeffs })
}

/// Matrix of left multiplication by `x` on the group basis.
pub fn regular_representation(x: &GroupRingElement) -> IntMatrix {
    let group = &x.group;
    let n = group.order();
    let mut entries = vec![BigInt::zero(); n * n];
    for (g, c) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for h in 0..n {
            entries[group.mul(g, h) * n + h] += c;
        }
    }
    IntMatrix::new(n, n, entries).expect("n x n")
}

/// `Q(x, y) = tr(regular_representation(x·y))`, which equals `|Γ|` times the
/// identity coefficient of `x·y`.
pub fn frobenius_pairing(x: &GroupRingElement, y: &GroupRingElement) -> Result<BigInt> {
    let xy = x.mul(y)?;
    Ok(BigInt::from(x.group.order()) * xy.coefficient(0))
}

/// Gram matrix of the Frobenius form: `|Γ|` where `gh = e`, else `0`.
pub fn frobenius_gram(group: &FiniteGroup) -> IntMatrix {
    let n = group.order();
    let order = BigInt::from(n);
    let entries = (0..n)
        .flat_map(|g| (0..n).map(move |h| (g, h)))
        .map(|(g, h)| if group.mul(g, h) == 0 { order.clone() } else { BigInt::zero() })
        .collect();
    IntMatrix::new(n, n, entries).expect("n x n")
}

pub fn frobenius_form(group: &FiniteGroup) -> Result<BilinearForm> {
    if group.order() as u64 > MAX_ABELIAN_ORDER {
        return Err(Error::CapExceeded {
            what: "group order",
            value: group.order() as u64,
            cap: MAX_ABELIAN_ORDER,
        });
    }
    BilinearForm::new(frobenius_gram(group))
}

/// `G == Gᵀ`
pub fn is_symmetric_form(gram: &IntMatrix) -> bool {
    gram.is_symmetric()
}

/// Invariants of the Frobenius form read off the inversion map, without
/// eliminating the `|Γ| × |Γ|` Gram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusSummary {
    pub order: usize,
    pub symmetric: bool,
    pub commutative: bool,
    #[serde(with = "crate::formats::bigint")]
    pub determinant: BigInt,
    pub signature: Signature,
    pub unimodular: bool,
}

/// The Gram is `|Γ|·P` for the permutation `g ↦ g⁻¹`. With `s` self-inverse
/// elements and `t = (|Γ| − s)/2` swapped pairs, the signature is
/// `(s + t, t, 0)` and the determinant is `(−1)^t |Γ|^{|Γ|}`.
pub fn frobenius_summary(group: &FiniteGroup) -> FrobeniusSummary {
    let n = group.order();
    let s = (0..n).filter(|&g| group.inverse(g) == g).count();
    let t = (n - s) / 2;
    let magnitude = BigInt::from(n).pow(n as u32);
    let determinant = if t.is_multiple_of(2) { magnitude } else { -magnitude };
    FrobeniusSummary {
        order: n,
        symmetric: true,
        commutative: group.is_abelian(),
        unimodular: n == 1,
        determinant,
        signature: Signature::new(s + t, t, 0),
    }
}

/// `Q(ζ_d)` appearing `multiplicity` times in `Q[Γ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicSummand {
    pub conductor: u64,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WedderburnDecomposition {
    /// One entry per divisor of the exponent, ascending.
    pub census: Vec<CyclotomicSummand>,
    /// Summands `Z(ζ_{mᵢ})` read off the cyclic factors `Z/mᵢ`, if the group
    /// was built as a direct sum.
    pub invariant_summands: Option<Vec<CyclotomicSummand>>,
    pub notes: Vec<String>,
}

impl WedderburnDecomposition {
    pub fn dimension(&self) -> u64 {
        self.census
            .iter()
            .map(|s| s.multiplicity * euler_phi(s.conductor))
            .sum()
    }

    /// True when the full census equals the list read off the cyclic factors.
    pub fn matches_invariant_summands(&self) -> Option<bool> {
        self.invariant_summands.as_ref().map(|l| *l == self.census)
    }
}

/// `Q[Γ] ≅ ⊕_{d | exp Γ} Q(ζ_d)^{m_d}` with `m_d = #{g : ord g = d} / φ(d)`.
pub fn wedderburn_decompose(group: &FiniteGroup) -> Result<WedderburnDecomposition> {
    if !group.is_abelian() {
        return Err(Error::NonAbelian);
    }
    let mut order_counts = vec![0u64; group.order() + 1];
    for g in 0..group.order() {
        order_counts[group.element_order(g)] += 1;
    }
    let census: Vec<CyclotomicSummand> = divisors(group.exponent() as u64)
        .into_iter()
        .map(|d| {
            let count = order_counts[d as usize];
            debug_assert_eq!(count % euler_phi(d), 0);
            CyclotomicSummand {
                conductor: d,
                multiplicity: count / euler_phi(d),
            }
        })
        .collect();
    let invariant_summands = group.abelian_invariants().map(|inv| {
        let mut distinct: Vec<u64> = inv.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        distinct
            .into_iter()
            .map(|m| CyclotomicSummand {
                conductor: m,
                multiplicity: inv.iter().filter(|&&x| x == m).count() as u64,
            })
            .collect::<Vec<_>>()
    });
    let mut notes = Vec::new();
    match &invariant_summands {
        Some(listed) if *listed != census => {
            let listed_dim: u64 = listed.iter().map(|s| s.multiplicity * euler_phi(s.conductor)).sum();
            notes.push(format!(
                "summands read off the cyclic factors differ from the character census: \
                 {} listed vs {} in census (dimension {} vs {})",
                listed.len(),
                census.len(),
                listed_dim,
                group.order()
            ));
            if !listed.iter().any(|s| s.conductor == 1) {
                notes.push("trivial summand Q(zeta_1) = Q is absent from the factor list".into());
            }
        }
        Some(_) => {}
        None => notes.push("group given by Cayley table; no cyclic-factor list available".into()),
    }
    Ok(WedderburnDecomposition {
        census,
        invariant_summands,
        notes,
    })
}

/// Order bookkeeping for `1 → Γ → G → G/Γ → 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub quotient_order: usize,
    /// Rank of `Z[Γ]` as a free `Z`-module.
    pub group_ring_rank: usize,
}

/// Checks that `subgroup` is a normal subgroup of `group` and reports orders.
pub fn quotient_bookkeeping(group: &FiniteGroup, subgroup: &[usize]) -> Result<QuotientReport> {
    let n = group.order();
    let mut member = vec![false; n];
    for &s in subgroup {
        if s >= n {
            return Err(Error::InvalidArgument(format!("element {s} outside group")));
        }
        member[s] = true;
    }
    if !member[0] {
        return Err(Error::InvalidArgument("subgroup must contain the identity".into()));
    }
    let elems: Vec<usize> = (0..n).filter(|&g| member[g]).collect();
    for &a in &elems {
        for &b in &elems {
            if !member[group.mul(a, b)] {
                return Err(Error::InvalidArgument("subset is not closed".into()));
            }
        }
    }
    for g in 0..n {
        for &s in &elems {
            if !member[group.mul(group.mul(group.inverse(g), s), g)] {
                return Err(Error::InvalidArgument("subgroup is not normal".into()));
            }
        }
    }
    Ok(QuotientReport {
        group_order: n,
        subgroup_order: elems.len(),
        quotient_order: n / elems.len(),
        group_ring_rank: elems.len(),
    })
}
