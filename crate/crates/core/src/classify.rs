//! Presentations per principal graph and their isomorphism classes.
//!
//! Two presentations with the same principal graph are isomorphic exactly when
//! they have the same duality type for `P_1` and the same click eigenvalue.
//! Both invariants are computed, the eigenvalue through the evaluator.

use std::fmt;

use serde_json::{json, Value};

use crate::cyclotomic::CycloScalar;
use crate::diagram::Dsu;
use crate::error::{Error, Result};
use crate::evaluate::inner_product;
use crate::theory::{BoxKind, Family, Theory};
use crate::Morphism;

/// Presentations grouped by principal graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    /// Shaded, `Ã_{2n-1}`.
    ShadedAOdd,
    /// Unshaded, `Ã_{2n-1}`: arrow and colour presentations.
    UnshadedAOdd,
    /// Unshaded, `Ã_{2n}`.
    UnshadedAEven,
    ShadedAInf,
    UnshadedAInf,
}

impl GraphClass {
    pub const ALL: [GraphClass; 5] = [
        GraphClass::ShadedAOdd,
        GraphClass::UnshadedAOdd,
        GraphClass::UnshadedAEven,
        GraphClass::ShadedAInf,
        GraphClass::UnshadedAInf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::ShadedAOdd => "shaded-a-odd",
            GraphClass::UnshadedAOdd => "unshaded-a-odd",
            GraphClass::UnshadedAEven => "unshaded-a-even",
            GraphClass::ShadedAInf => "shaded-a-inf",
            GraphClass::UnshadedAInf => "unshaded-a-inf",
        }
    }

    /// Accepts the class names and, for convenience, any family name.
    pub fn parse(s: &str) -> Result<GraphClass> {
        if let Some(c) = GraphClass::ALL.into_iter().find(|c| c.name() == s) {
            return Ok(c);
        }
        Family::parse(s).and_then(GraphClass::of_family)
    }

    pub fn of_family(f: Family) -> Result<GraphClass> {
        Ok(match f {
            Family::ShadedAOdd => GraphClass::ShadedAOdd,
            Family::ArrowAOdd | Family::ColorAOdd => GraphClass::UnshadedAOdd,
            Family::ArrowAEven => GraphClass::UnshadedAEven,
            Family::ShadedAInf => GraphClass::ShadedAInf,
            Family::ArrowAInf | Family::ColorAInf => GraphClass::UnshadedAInf,
            _ => {
                return Err(Error::Invalid(format!(
                    "{f} is not a planar algebra presentation"
                )))
            }
        })
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, GraphClass::ShadedAInf | GraphClass::UnshadedAInf)
    }

    fn families(self) -> &'static [Family] {
        match self {
            GraphClass::ShadedAOdd => &[Family::ShadedAOdd],
            GraphClass::UnshadedAOdd => &[Family::ArrowAOdd, Family::ColorAOdd],
            GraphClass::UnshadedAEven => &[Family::ArrowAEven],
            GraphClass::ShadedAInf => &[Family::ShadedAInf],
            GraphClass::UnshadedAInf => &[Family::ArrowAInf, Family::ColorAInf],
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every presentation with the given principal graph: one per legal root.
/// `n` is ignored for the `Ã_∞` classes.
pub fn enumerate_presentations(class: GraphClass, n: u32) -> Result<Vec<Theory>> {
    if class.is_infinite() {
        return Ok(class
            .families()
            .iter()
            .map(|&f| Theory::infinite(f))
            .collect());
    }
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let mut out = Vec::new();
    for &f in class.families() {
        let modulus = Theory {
            family: f,
            n,
            root: crate::Root::ONE,
        }
        .root_modulus();
        for k in 0..modulus as i64 {
            out.push(Theory::with_root_exp(f, n, k)?);
        }
    }
    Ok(out)
}

/// Whether `P_1` is self-dual (colour, shaded) or dual to `Q_1` (arrow).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Duality {
    SelfDual,
    DualPair,
}

pub fn duality(th: &Theory) -> Duality {
    if th.family.is_oriented() {
        Duality::DualPair
    } else {
        Duality::SelfDual
    }
}

/// The box whose click eigenvalue is the presentation's root.
fn distinguished(th: &Theory) -> Result<BoxKind> {
    match th.family {
        Family::ShadedAOdd | Family::ArrowAOdd | Family::ArrowAEven => Ok(BoxKind::U),
        Family::ColorAOdd => Ok(BoxKind::V),
        f => Err(Error::Invalid(format!("{f} has no generator box"))),
    }
}

/// `λ` with `F^steps(K) = λ K'`, where `K'` is the box that `steps` clicks
/// lead to, read off as `⟨K', F^steps(K)⟩ / ⟨K', K'⟩`.
fn eigenvalue(th: &Theory, k: BoxKind, steps: i64) -> Result<CycloScalar> {
    let mut partner = k;
    for _ in 0..steps {
        partner = th
            .click_rule(partner)
            .ok_or_else(|| Error::Invalid(format!("{k} has no click rule")))?
            .0;
    }
    let clicked = Morphism::generator(*th, k)?.click(steps);
    let p = Morphism::generator(*th, partner)?;
    let num = inner_product(&p, &clicked)?;
    let den = inner_product(&p, &p)?;
    let inv = den
        .inv()
        .ok_or_else(|| Error::Internal(format!("{partner} has zero norm in {th}")))?;
    Ok(num.mul_ref(&inv))
}

/// The scalar of the click relation on the distinguished generator: `ω` for
/// arrow, `σ` for shaded and `τ` for colour presentations.
pub fn click_eigenvalue(th: &Theory) -> Result<CycloScalar> {
    eigenvalue(th, distinguished(th)?, 1)
}

/// Click eigenvalues seen under the two ways of matching generators
/// (`P_1 ↦ P_1` or `P_1 ↦ Q_1`). Swapping the generators exchanges the
/// distinguished box with its partner; for shaded and colour presentations
/// the box kind changes under one click, so the two-click value is used.
pub fn relabeled_eigenvalues(th: &Theory) -> Result<[CycloScalar; 2]> {
    let k = distinguished(th)?;
    match th.family {
        Family::ArrowAOdd | Family::ArrowAEven => {
            Ok([eigenvalue(th, k, 1)?, eigenvalue(th, k.adjoint(), 1)?])
        }
        _ => {
            let other = th.click_rule(k).map(|x| x.0).unwrap_or(k);
            Ok([eigenvalue(th, k, 2)?, eigenvalue(th, other, 2)?])
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub isomorphic: bool,
    /// Why they are, or why they cannot be.
    pub reason: String,
}

pub fn are_isomorphic(t1: &Theory, t2: &Theory) -> Result<Verdict> {
    let (c1, c2) = (
        GraphClass::of_family(t1.family)?,
        GraphClass::of_family(t2.family)?,
    );
    if c1 != c2 || t1.n != t2.n {
        return Ok(Verdict {
            isomorphic: false,
            reason: "different principal graphs".into(),
        });
    }
    if duality(t1) != duality(t2) {
        return Ok(Verdict {
            isomorphic: false,
            reason: format!(
                "duality of P_1 differs: {:?} vs {:?}",
                duality(t1),
                duality(t2)
            ),
        });
    }
    if c1.is_infinite() {
        return Ok(Verdict {
            isomorphic: true,
            reason: "same presentation".into(),
        });
    }
    let e1 = relabeled_eigenvalues(t1)?;
    let e2 = relabeled_eigenvalues(t2)?;
    // any isomorphism sends P_1 to P_1 or to Q_1; both force equal eigenvalues
    let same = e1.iter().any(|a| e2.iter().any(|b| a == b));
    let reason = if same {
        format!("click eigenvalue {} on both sides", e1[0])
    } else {
        format!(
            "click eigenvalues {} and {} differ under both relabelings",
            e1[0], e2[0]
        )
    };
    Ok(Verdict {
        isomorphic: same,
        reason,
    })
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub class: GraphClass,
    pub n: u32,
    pub theories: Vec<Theory>,
    /// Click eigenvalue per theory; `None` for box-free presentations.
    pub eigenvalues: Vec<Option<CycloScalar>>,
    pub class_ids: Vec<usize>,
    pub count: usize,
}

pub fn classify(class: GraphClass, n: u32) -> Result<Classification> {
    let theories = enumerate_presentations(class, n)?;
    let k = theories.len();
    let mut dsu = Dsu::new(k);
    for i in 0..k {
        for j in i + 1..k {
            if are_isomorphic(&theories[i], &theories[j])?.isomorphic {
                dsu.union(i, j);
            }
        }
    }
    let roots: Vec<usize> = (0..k).map(|i| dsu.find(i)).collect();
    let mut ids = Vec::new();
    let class_ids: Vec<usize> = roots
        .iter()
        .map(|r| match ids.iter().position(|x| x == r) {
            Some(p) => p,
            None => {
                ids.push(*r);
                ids.len() - 1
            }
        })
        .collect();
    let eigenvalues = theories.iter().map(|t| click_eigenvalue(t).ok()).collect();
    Ok(Classification {
        class,
        n,
        count: ids.len(),
        theories,
        eigenvalues,
        class_ids,
    })
}

pub fn count_classes(class: GraphClass, n: u32) -> Result<usize> {
    Ok(classify(class, n)?.count)
}

impl Classification {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.class.name(),
            "n": if self.class.is_infinite() { Value::Null } else { json!(self.n) },
            "count": self.count,
            "theories": self.theories.iter().enumerate().map(|(i, t)| json!({
                "theory": t.to_string(),
                "eigenvalue": self.eigenvalues[i].as_ref().map(|e| e.to_string()),
                "class": self.class_ids[i],
            })).collect::<Vec<_>>(),
        })
    }
}
