//! Finitely presented groups: abelianization through the relator
//! exponent-sum matrix, and automorphism groups of finite abelian groups.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{euler_phi, first_non_coprime_pair};
use crate::error::{Error, Result};
use crate::exactla::{snf, IntMatrix};
use crate::groupring::{abelian_group, FiniteGroup};

/// Largest group order handed to [`aut_bruteforce`].
pub const MAX_BRUTEFORCE_ORDER: usize = 200;
/// Largest automorphism count the brute-force search will collect before
/// giving up (the commutativity check is quadratic in it).
pub const MAX_AUTOMORPHISMS: usize = 20_000;

/// `⟨x₁, …, x_g | r₁, …⟩`; letter `±i` is `xᵢ^{±1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Vec<i64>>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Vec<i64>>) -> Result<Self> {
        for (r, word) in relators.iter().enumerate() {
            if let Some(&bad) = word
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > generators)
            {
                return Err(Error::MalformedRelator {
                    relator: r,
                    index: bad,
                    generators,
                });
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<i64>] {
        &self.relators
    }

    /// Rows are relators, columns generators, entries exponent sums.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|word| {
                let mut row = vec![0i64; self.generators];
                for &letter in word {
                    row[letter.unsigned_abs() as usize - 1] += letter.signum();
                }
                row
            })
            .collect()
    }
}

/// `H₁ ≅ Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_m`, `t₁ | t₂ | …`, each `tᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianizationResult {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianizationResult {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion_order(&self) -> u128 {
        self.torsion.iter().map(|&t| t as u128).product()
    }
}

pub fn abelianize(p: &GroupPresentation) -> Result<AbelianizationResult> {
    let g = p.generators;
    if g == 0 {
        return Ok(AbelianizationResult {
            free_rank: 0,
            torsion: Vec::new(),
        });
    }
    let rows = p.exponent_matrix();
    if rows.is_empty() {
        return Ok(AbelianizationResult {
            free_rank: g,
            torsion: Vec::new(),
        });
    }
    let matrix = IntMatrix::from_rows(rows)?;
    let reduced = snf(&matrix)?;
    let torsion = reduced
        .diagonal
        .iter()
        .filter(|d| d > &&BigInt::one())
        .map(|d| {
            d.to_u64().ok_or(Error::CapExceeded {
                what: "torsion coefficient",
                value: u64::MAX,
                cap: u64::MAX,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianizationResult {
        free_rank: g - reduced.rank(),
        torsion,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AutMethod {
    BruteForce,
    CoprimeFormula,
}

/// Automorphisms of the finite (torsion) part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionAut {
    pub invariants: Vec<u64>,
    pub order: u64,
    pub is_abelian: bool,
    pub method: AutMethod,
}

/// Contribution of the free part `Z^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FreePart {
    /// `k = 0`
    None,
    /// `k = 1`: `Aut(Z) ≅ Z/2`.
    AutZ,
    /// `k ≥ 2`: `GL_k(Z)`, infinite and nonabelian.
    GeneralLinear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutReport {
    pub free_rank: usize,
    pub free_part: FreePart,
    pub free_rank_note: Option<String>,
    pub torsion: TorsionAut,
    /// Order of `Aut(Z^k) × Aut(Tors)` taken factor by factor; `None` when infinite.
    pub split_order: Option<u64>,
    /// Whether `Aut(Z^k) × Aut(Tors)` is abelian.
    pub is_abelian: bool,
    pub notes: Vec<String>,
}

impl AutReport {
    fn torsion_only(torsion: TorsionAut) -> Self {
        AutReport {
            free_rank: 0,
            free_part: FreePart::None,
            free_rank_note: None,
            split_order: Some(torsion.order),
            is_abelian: torsion.is_abelian,
            torsion,
            notes: Vec::new(),
        }
    }
}

/// Homomorphism determined by generator images, as the full image table.
fn extend_hom(group: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = group.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = group.mul(x, g);
            let fy = group.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                frontier.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Enumerates `Aut(Γ)` by choosing generator images one at a time and
/// keeping only consistent, injective partial maps.
fn enumerate_automorphisms(group: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    let gens = group.generators();
    let orders: Vec<usize> = gens.iter().map(|&g| group.element_order(g)).collect();
    let mut found = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search(group, &gens, &orders, &mut images, &mut found)?;
    Ok(found)
}

fn search(
    group: &FiniteGroup,
    gens: &[usize],
    orders: &[usize],
    images: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let k = images.len();
    if k == gens.len() {
        let map = extend_hom(group, gens, images).expect("checked while extending");
        found.push(images.clone());
        debug_assert!(map.iter().all(|&m| m != usize::MAX));
        if found.len() > MAX_AUTOMORPHISMS {
            return Err(Error::CapExceeded {
                what: "automorphism count",
                value: found.len() as u64,
                cap: MAX_AUTOMORPHISMS as u64,
            });
        }
        return Ok(());
    }
    for candidate in 0..group.order() {
        if group.element_order(candidate) != orders[k] {
            continue;
        }
        images.push(candidate);
        let partial = &gens[..=k];
        // Injective on the subgroup generated so far ⟺ the image has the same size.
        let ok = extend_hom(group, partial, images).is_some_and(|map| {
            let domain = group.generated_subgroup(partial);
            let mut hit = vec![false; group.order()];
            for (x, &inside) in domain.iter().enumerate() {
                if inside {
                    if hit[map[x]] {
                        return false;
                    }
                    hit[map[x]] = true;
                }
            }
            true
        });
        if ok {
            search(group, gens, orders, images, found)?;
        }
        images.pop();
    }
    Ok(())
}

/// `|Aut Γ|` and commutativity of `Aut Γ` by exhaustive enumeration.
pub fn aut_bruteforce(group: &FiniteGroup) -> Result<AutReport> {
    if !group.is_abelian() {
        return Err(Error::NonAbelian);
    }
    if group.order() > MAX_BRUTEFORCE_ORDER {
        return Err(Error::CapExceeded {
            what: "group order for brute-force Aut",
            value: group.order() as u64,
            cap: MAX_BRUTEFORCE_ORDER as u64,
        });
    }
    let gens = group.generators();
    let autos = enumerate_automorphisms(group)?;
    let maps: Vec<Vec<usize>> = autos
        .iter()
        .map(|img| extend_hom(group, &gens, img).expect("automorphism"))
        .collect();
    // Compare f∘g with g∘f on the generators.
    let commute = |f: &[usize], g: &[usize]| gens.iter().all(|&x| f[g[x]] == g[f[x]]);
    let is_abelian = (0..maps.len()).all(|i| (i + 1..maps.len()).all(|j| commute(&maps[i], &maps[j])));
    let invariants = group
        .abelian_invariants()
        .map(<[u64]>::to_vec)
        .unwrap_or_default();
    Ok(AutReport::torsion_only(TorsionAut {
        invariants,
        order: maps.len() as u64,
        is_abelian,
        method: AutMethod::BruteForce,
    }))
}

/// `|Aut(⊕ Z/mᵢ)| = Π φ(mᵢ)` for pairwise coprime `mᵢ`; refuses otherwise.
pub fn aut_coprime_formula(moduli: &[u64]) -> Result<AutReport> {
    if let Some(&bad) = moduli.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidArgument(format!("cyclic orders must be >= 2, got {bad}")));
    }
    if let Some((a, b)) = first_non_coprime_pair(moduli) {
        return Err(Error::NotCoprime(a, b));
    }
    let order = moduli.iter().map(|&m| euler_phi(m)).product();
    Ok(AutReport::torsion_only(TorsionAut {
        invariants: moduli.to_vec(),
        order,
        is_abelian: true,
        method: AutMethod::CoprimeFormula,
    }))
}

/// Abelianizes and reports `Aut(H₁)`: the torsion factor exactly, the free
/// factor by its standard description, and the factor-by-factor product.
pub fn galois_surrogate(p: &GroupPresentation) -> Result<(AbelianizationResult, AutReport)> {
    let h1 = abelianize(p)?;
    let torsion = match h1.torsion.len() {
        0 | 1 => aut_coprime_formula(&h1.torsion)?.torsion,
        _ => {
            let order = h1.torsion_order();
            if order > MAX_BRUTEFORCE_ORDER as u128 {
                return Err(Error::CapExceeded {
                    what: "torsion order for brute-force Aut",
                    value: order.min(u64::MAX as u128) as u64,
                    cap: MAX_BRUTEFORCE_ORDER as u64,
                });
            }
            aut_bruteforce(abelian_group(&h1.torsion)?.as_ref())?.torsion
        }
    };
    let mut notes = Vec::new();
    if h1.torsion.len() > 1 {
        notes.push(format!(
            "torsion invariants {:?} are not pairwise coprime; coprime splitting does not apply",
            h1.torsion
        ));
        if !torsion.is_abelian {
            notes.push("Aut of the torsion part is nonabelian".into());
        }
    }
    let (free_part, free_rank_note, split_order, is_abelian) = match h1.free_rank {
        0 => (FreePart::None, None, Some(torsion.order), torsion.is_abelian),
        1 => {
            notes.push(
                "split decomposition Aut(Z) x Aut(Tors); not the full automorphism group of Z + Tors when Tors is nontrivial"
                    .into(),
            );
            (
                FreePart::AutZ,
                Some("Aut(Z) = Z/2".to_string()),
                Some(2 * torsion.order),
                torsion.is_abelian,
            )
        }
        k => (
            FreePart::GeneralLinear,
            Some(format!("infinite, nonabelian (GL_{k}(Z))")),
            None,
            false,
        ),
    };
    if !h1.is_finite() {
        notes.push(format!("H1 is infinite (free rank {})", h1.free_rank));
    }
    Ok((
        h1.clone(),
        AutReport {
            free_rank: h1.free_rank,
            free_part,
            free_rank_note,
            torsion,
            split_order,
            is_abelian,
            notes,
        },
    ))
}

/// `|GL_k(F_p)|`, used to sanity-check elementary abelian brute force.
pub fn general_linear_order(k: u32, p: u64) -> BigInt {
    let q = BigInt::from(p);
    let qk = q.pow(k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (&qk - q.pow(i)))
}
