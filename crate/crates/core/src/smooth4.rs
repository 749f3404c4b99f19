//! Rokhlin and Donaldson obstructions for candidate intersection forms.
//!
//! A unimodular symmetric form is *Rokhlin-obstructed* when it is even and
//! its signature is not divisible by 16, and *Donaldson-obstructed* when it
//! is definite but not isometric to `±I`. Either makes it impossible for the
//! form to be the intersection form of a smooth closed simply connected
//! 4-manifold.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::Signature;
use crate::groupring::{frobenius_form, FiniteGroup};
use crate::quadform::{
    self, is_diagonalizable_over_z, trace_form_odd_prime, trace_form_two_power, BilinearForm,
    Definiteness, FormInvariants, Parity, MAX_ENUMERATION_RANK,
};

/// Largest group handed to [`h2_from_group_ring`].
pub const MAX_H2_GROUP_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagonalizable {
    Yes,
    No,
    NotEvaluated,
}

impl Serialize for Diagonalizable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Diagonalizable::Yes => serializer.serialize_bool(true),
            Diagonalizable::No => serializer.serialize_bool(false),
            Diagonalizable::NotEvaluated => serializer.serialize_str("not_evaluated"),
        }
    }
}

/// Verdict for one candidate intersection form. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub rank: usize,
    pub parity: Parity,
    pub signature: Signature,
    pub signature_value: i64,
    pub unimodular: bool,
    pub definite: bool,
    pub diagonalizable: Diagonalizable,
    pub rokhlin_violation: bool,
    pub donaldson_violation: bool,
    pub smooth_obstructed: bool,
    pub notes: Vec<String>,
}

impl ObstructionReport {
    fn check_invariants(&self) {
        if self.rokhlin_violation {
            assert_eq!(self.parity, Parity::Even);
            assert_ne!(self.signature_value.rem_euclid(16), 0);
        }
        if self.donaldson_violation {
            assert!(self.definite);
            assert_eq!(self.diagonalizable, Diagonalizable::No);
        }
        assert_eq!(
            self.smooth_obstructed,
            self.rokhlin_violation || self.donaldson_violation
        );
        assert_eq!(self.signature_value, self.signature.value());
    }

    /// Compact JSON with the fixed key order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn analyze_intersection_form(f: &BilinearForm) -> Result<ObstructionReport> {
    let inv = f.invariants();
    if !inv.unimodular {
        return Err(Error::NotUnimodular {
            determinant: inv.determinant.to_string(),
        });
    }
    Ok(analyze_unimodular(f, &inv))
}

fn analyze_unimodular(f: &BilinearForm, inv: &FormInvariants) -> ObstructionReport {
    let mut notes = Vec::new();
    let definite = inv.definiteness.is_definite();
    let signature_value = inv.signature.value();
    let even = inv.parity == Parity::Even;

    if even {
        // Even unimodular lattices have signature ≡ 0 mod 8.
        debug_assert_eq!(signature_value.rem_euclid(8), 0, "even unimodular form with signature {signature_value}");
    }

    let diagonalizable = if !definite {
        notes.push("indefinite form: diagonalizability over Z not evaluated".into());
        Diagonalizable::NotEvaluated
    } else if f.rank() > MAX_ENUMERATION_RANK {
        notes.push(format!(
            "definite form of rank {} exceeds the enumeration cap {}; diagonalizability not evaluated",
            f.rank(),
            MAX_ENUMERATION_RANK
        ));
        Diagonalizable::NotEvaluated
    } else {
        let positive = if inv.definiteness == Definiteness::Negative {
            f.negated()
        } else {
            f.clone()
        };
        match is_diagonalizable_over_z(&positive).expect("preconditions checked") {
            true => Diagonalizable::Yes,
            false => Diagonalizable::No,
        }
    };

    let rokhlin_violation = even && signature_value.rem_euclid(16) != 0;
    if rokhlin_violation {
        notes.push(format!(
            "even form with signature {signature_value}, not divisible by 16"
        ));
    }
    let donaldson_violation = definite && diagonalizable == Diagonalizable::No;
    if donaldson_violation {
        notes.push("definite form not isometric to a diagonal form over Z".into());
    }

    let report = ObstructionReport {
        rank: inv.rank,
        parity: inv.parity,
        signature: inv.signature,
        signature_value,
        unimodular: inv.unimodular,
        definite,
        diagonalizable,
        rokhlin_violation,
        donaldson_violation,
        smooth_obstructed: rokhlin_violation || donaldson_violation,
        notes,
    };
    report.check_invariants();
    report
}

/// Outcome of treating `Z[Γ]` with its Frobenius form as a second homology group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum H2Outcome {
    Analyzed { report: ObstructionReport },
    Rejected {
        #[serde(with = "crate::formats::bigint")]
        determinant: BigInt,
        signature: Signature,
        note: String,
    },
}

/// Builds `Z^{|Γ|}` with the Frobenius Gram and analyzes it when unimodular.
pub fn h2_from_group_ring(group: &Arc<FiniteGroup>) -> Result<(BilinearForm, H2Outcome)> {
    if group.order() > MAX_H2_GROUP_ORDER {
        return Err(Error::CapExceeded {
            what: "group order for H2 candidate",
            value: group.order() as u64,
            cap: MAX_H2_GROUP_ORDER as u64,
        });
    }
    let form = frobenius_form(group)?;
    let inv = form.invariants();
    let outcome = if inv.unimodular {
        H2Outcome::Analyzed {
            report: analyze_unimodular(&form, &inv),
        }
    } else {
        H2Outcome::Rejected {
            note: format!(
                "Frobenius form of a group of order {} has determinant {}; not unimodular, so not an intersection form of a closed 4-manifold",
                group.order(),
                inv.determinant
            ),
            determinant: inv.determinant,
            signature: inv.signature,
        }
    };
    Ok((form, outcome))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceFormKind {
    /// `p⟨1⟩` for an odd prime `p`.
    OddPrime(u64),
    /// The `2^{n+1}`-dimensional diagonal form, `n ≥ 4`.
    TwoPower(u32),
}

/// Report for one of the explicit diagonal trace forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceFormAnalysis {
    pub report: ObstructionReport,
    pub computed_signature: i64,
    /// Signature stated for the closed form (two-power case only).
    pub asserted_signature: Option<i64>,
    pub signature_discrepancy: bool,
}

pub fn analyze_trace_form(kind: TraceFormKind) -> Result<TraceFormAnalysis> {
    match kind {
        TraceFormKind::OddPrime(p) => {
            let form = trace_form_odd_prime(p)?;
            let report = analyze_intersection_form(&form)?;
            Ok(TraceFormAnalysis {
                computed_signature: report.signature_value,
                report,
                asserted_signature: None,
                signature_discrepancy: false,
            })
        }
        TraceFormKind::TwoPower(n) => {
            let t = trace_form_two_power(n)?;
            let mut report = analyze_intersection_form(&t.form)?;
            let computed = t.computed_signature.value();
            report.notes.push(format!(
                "asserted signature {} (2^{n}); computed signature {computed} from the diagonal ({} positive, {} negative)",
                t.asserted_signature, t.computed_signature.positive, t.computed_signature.negative
            ));
            report.notes.push(format!(
                "asserted {} mod 16 = {}; computed {computed} mod 16 = {}",
                t.asserted_signature,
                t.asserted_signature.rem_euclid(16),
                computed.rem_euclid(16)
            ));
            Ok(TraceFormAnalysis {
                computed_signature: computed,
                signature_discrepancy: t.discrepancy(),
                asserted_signature: Some(t.asserted_signature),
                report,
            })
        }
    }
}

/// Named test fixtures: `e8`, `e8e8`, `In:<n>`.
pub fn fixture(name: &str) -> Result<BilinearForm> {
    match name {
        "e8" => Ok(quadform::e8_form()),
        "e8e8" => Ok(quadform::e8_form().direct_sum(&quadform::e8_form())),
        other => {
            let n = other
                .strip_prefix("In:")
                .or_else(|| other.strip_prefix("in:"))
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown fixture {other:?}")))?;
            if n > 512 {
                return Err(Error::CapExceeded {
                    what: "fixture rank",
                    value: n as u64,
                    cap: 512,
                });
            }
            Ok(BilinearForm::identity(n))
        }
    }
}
