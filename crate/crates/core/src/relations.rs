//! The defining relations of every target presentation, as pairs of morphisms
//! that must be equal in the planar algebra.

use crate::diagram::{Morphism, Side};
use crate::error::Result;
use crate::evaluate::morphism_eq;
use crate::theory::{Family, Label, Theory};
use crate::CycloScalar;

#[derive(Clone, Debug)]
pub struct Relation {
    /// Roman numeral of the relation group it belongs to.
    pub group: &'static str,
    pub name: String,
    pub lhs: Morphism,
    pub rhs: Morphism,
}

impl Relation {
    pub(crate) fn new(
        group: &'static str,
        name: impl Into<String>,
        lhs: Morphism,
        rhs: Morphism,
    ) -> Relation {
        Relation {
            group,
            name: name.into(),
            lhs,
            rhs,
        }
    }

    pub fn holds(&self) -> Result<bool> {
        morphism_eq(&self.lhs, &self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub group: &'static str,
    pub name: String,
    pub holds: bool,
}

/// Every defining relation of a target theory. Source categories have their
/// own lists in [`crate::equiv`].
pub fn defining_relations(th: &Theory) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    let species: Vec<Label> = th.plain_parts().map(|p| p.to_vec()).unwrap_or_default();
    let one = Morphism::scalar(*th, CycloScalar::one());
    // shaded relations come in both shadings, the second one clicked across a strand
    let shadings: &[i64] = if th.family.is_shaded() { &[0, 1] } else { &[0] };

    for &l in &species {
        let id = Morphism::identity(*th, &[l]);
        for side in [Side::Left, Side::Right] {
            out.push(Relation::new(
                "i",
                format!("bubble {l} closed {side:?}"),
                id.trace_close(side)?,
                one.clone(),
            ));
        }
    }

    if let [p, q] = species[..] {
        for &s in shadings {
            let x = Morphism::identity(*th, &[Label::Plain]).click(s);
            let sum = Morphism::projection(*th, &[p])
                .add(&Morphism::projection(*th, &[q]))?
                .click(s);
            out.push(Relation::new(
                "ii",
                format!("strand decomposition, shading {s}"),
                x,
                sum,
            ));
        }
        for (a, b) in [(p, q), (q, p)] {
            let lhs = Morphism::projection(*th, &[a]).compose(&Morphism::projection(*th, &[b]))?;
            let zero = Morphism::zero(*th, vec![Label::Plain], vec![Label::Plain]);
            out.push(Relation::new(
                "iii",
                format!("{a} over {b} vanishes"),
                lhs,
                zero,
            ));
        }
    }

    for (a, b) in saddle_pairs(th) {
        for &s in shadings {
            let lhs = Morphism::cup(*th, a, b)
                .compose(&Morphism::cap(*th, a, b))?
                .click(s);
            let rhs = Morphism::identity(*th, &[a, b]).click(s);
            out.push(Relation::new(
                "iv",
                format!("saddle {a} {b}, shading {s}"),
                lhs,
                rhs,
            ));
        }
    }

    for &k in th.box_kinds() {
        let g = Morphism::generator(*th, k)?;
        let ga = g.adjoint();
        out.push(Relation::new(
            "v",
            format!("{k} {}* is the identity", k),
            g.compose(&ga)?,
            Morphism::identity(*th, &g.top),
        ));
    }

    for &k in th.box_kinds() {
        let g = Morphism::generator(*th, k)?;
        if let Some((k2, e)) = th.click_rule(k) {
            let rhs = Morphism::generator(*th, k2)?.scale(&root_pow(th, e));
            out.push(Relation::new(
                "vi",
                format!("F({k}) = s^{e} {k2}"),
                g.click(1),
                rhs,
            ));
        }
        if let Some((k2, e)) = th.click_rule_inv(k) {
            let rhs = Morphism::generator(*th, k2)?.scale(&root_pow(th, e));
            out.push(Relation::new(
                "vi",
                format!("F^-1({k}) = s^{e} {k2}"),
                g.click(-1),
                rhs,
            ));
        }
    }
    Ok(out)
}

/// `σ^e` for the theory's click scalar `σ`.
pub fn root_pow(th: &Theory, e: i64) -> CycloScalar {
    CycloScalar::root_power(th.root.spec(), th.root.exp as i64 * e)
}

/// Adjacent pairs that can be joined by a cap.
fn saddle_pairs(th: &Theory) -> Vec<(Label, Label)> {
    match th.family {
        Family::ArrowAOdd | Family::ArrowAEven | Family::ArrowAInf => {
            vec![(Label::Up, Label::Down), (Label::Down, Label::Up)]
        }
        Family::ShadedAOdd | Family::ShadedAInf | Family::ColorAOdd | Family::ColorAInf => {
            vec![(Label::Red, Label::Red), (Label::Blue, Label::Blue)]
        }
        _ => vec![],
    }
}

pub fn check_relations(th: &Theory) -> Result<Vec<RelationOutcome>> {
    defining_relations(th)?
        .into_iter()
        .map(|r| {
            Ok(RelationOutcome {
                holds: r.holds()?,
                group: r.group,
                name: r.name,
            })
        })
        .collect()
}

/// Every finite theory of the given family with `n` in `1..=max_n` and every
/// legal root, or the single `Ã_∞` theory.
pub fn theories_up_to(family: Family, max_n: u32) -> Vec<Theory> {
    if family.is_infinite() {
        return vec![Theory::infinite(family)];
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        let probe = Theory {
            family,
            n,
            root: crate::theory::Root::ONE,
        };
        for k in 0..probe.root_modulus() as i64 {
            if let Ok(t) = Theory::with_root_exp(family, n, k) {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    out
}
