use std::collections::BTreeMap;

use super::ops::{cap, cup};
use super::{Diagram, Side};
use crate::cyclotomic::CycloScalar;
use crate::error::{Error, Result};
use crate::theory::{BoxKind, Label, Theory};

/// A finite linear combination of diagrams sharing theory and boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub theory: Theory,
    pub bottom: Vec<Label>,
    pub top: Vec<Label>,
    /// Canonical diagrams with nonzero coefficients.
    pub terms: BTreeMap<Diagram, CycloScalar>,
}

impl Morphism {
    pub fn zero(theory: Theory, bottom: Vec<Label>, top: Vec<Label>) -> Morphism {
        Morphism {
            theory,
            bottom,
            top,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: Diagram) -> Morphism {
        Self::scaled(d, CycloScalar::one())
    }

    pub fn scaled(d: Diagram, c: CycloScalar) -> Morphism {
        let mut m = Morphism::zero(d.theory, d.bottom.clone(), d.top.clone());
        m.add_term(d, c);
        m
    }

    /// The empty closed diagram times `c`.
    pub fn scalar(theory: Theory, c: CycloScalar) -> Morphism {
        Self::scaled(Diagram::empty(theory), c)
    }

    pub fn identity(theory: Theory, word: &[Label]) -> Morphism {
        Self::from_diagram(Diagram::identity(theory, word))
    }

    pub fn projection(theory: Theory, labels: &[Label]) -> Morphism {
        Self::from_diagram(Diagram::projection(theory, labels))
    }

    pub fn generator(theory: Theory, kind: BoxKind) -> Result<Morphism> {
        Ok(Self::from_diagram(Diagram::generator(theory, kind)?))
    }

    /// Cup `∅ → [l1, l2]`; the zero morphism when the labels cannot be joined.
    pub fn cup(theory: Theory, l1: Label, l2: Label) -> Morphism {
        match cup(theory, l1, l2) {
            Some(d) => Self::from_diagram(d),
            None => Morphism::zero(theory, vec![], vec![l1, l2]),
        }
    }

    /// Cap `[l1, l2] → ∅`.
    pub fn cap(theory: Theory, l1: Label, l2: Label) -> Morphism {
        match cap(theory, l1, l2) {
            Some(d) => Self::from_diagram(d),
            None => Morphism::zero(theory, vec![l1, l2], vec![]),
        }
    }

    /// Nested cups `∅ → left ⊗ right`, or nested caps `left ⊗ right → ∅`.
    pub fn nested(theory: Theory, left: &[Label], right: &[Label], cup: bool) -> Result<Morphism> {
        if left.len() != right.len() {
            return Err(Error::Boundary(
                "nested cups need halves of equal length".into(),
            ));
        }
        Ok(Self::from_diagram(super::ops::nested_cups(
            theory, left, right, cup,
        )?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.bottom.is_empty() && self.top.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Accumulate `c · d`, canonicalizing `d`.
    pub fn add_term(&mut self, d: Diagram, c: CycloScalar) {
        debug_assert!(
            d.bottom == self.bottom && d.top == self.top,
            "boundary mismatch in add_term"
        );
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(d.canonical()) {
            Entry::Occupied(mut o) => {
                let v = o.get().add_ref(&c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check_same(&self, other: &Morphism) -> Result<()> {
        if self.theory != other.theory {
            return Err(Error::TheoryMismatch(format!(
                "{} vs {}",
                self.theory, other.theory
            )));
        }
        if self.bottom != other.bottom || self.top != other.top {
            return Err(Error::Boundary(format!(
                "{:?}->{:?} vs {:?}->{:?}",
                self.bottom, self.top, other.bottom, other.top
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.add(&other.scale(&CycloScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &CycloScalar) -> Morphism {
        let mut out = Morphism::zero(self.theory, self.bottom.clone(), self.top.clone());
        if c.is_zero() {
            return out;
        }
        for (d, v) in &self.terms {
            out.terms.insert(d.clone(), v.mul_ref(c));
        }
        out
    }

    pub fn tensor(&self, other: &Morphism) -> Result<Morphism> {
        if self.theory != other.theory {
            return Err(Error::TheoryMismatch(format!(
                "{} vs {}",
                self.theory, other.theory
            )));
        }
        let mut out = Morphism::zero(
            self.theory,
            [self.bottom.as_slice(), other.bottom.as_slice()].concat(),
            [self.top.as_slice(), other.top.as_slice()].concat(),
        );
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                out.add_term(d1.tensor(d2)?, c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    /// `self ∘ below`.
    pub fn compose(&self, below: &Morphism) -> Result<Morphism> {
        if self.theory != below.theory {
            return Err(Error::TheoryMismatch(format!(
                "{} vs {}",
                self.theory, below.theory
            )));
        }
        if self.bottom.len() != below.top.len() {
            return Err(Error::Boundary(format!(
                "cannot stack {} points onto {}",
                below.top.len(),
                self.bottom.len()
            )));
        }
        let mut out = Morphism::zero(self.theory, below.bottom.clone(), self.top.clone());
        if self
            .bottom
            .iter()
            .zip(&below.top)
            .any(|(&x, &y)| super::ops::merge_label(x, y).is_none())
        {
            return Ok(out);
        }
        for (d1, c1) in &self.terms {
            for (d2, c2) in &below.terms {
                if let Some(d) = d1.compose(d2)? {
                    out.add_term(d, c1.mul_ref(c2));
                }
            }
        }
        Ok(out)
    }

    /// Anti-linear vertical mirror.
    pub fn adjoint(&self) -> Morphism {
        let mut out = Morphism::zero(self.theory, self.top.clone(), self.bottom.clone());
        for (d, c) in &self.terms {
            out.add_term(d.adjoint(), c.conj());
        }
        out
    }

    /// Apply the click tangle `steps` times (negative steps click backwards).
    pub fn click(&self, steps: i64) -> Morphism {
        let mut shell = Diagram::empty(self.theory);
        shell.bottom = self.bottom.clone();
        shell.top = self.top.clone();
        let shell = shell.click(steps);
        let mut out = Morphism::zero(self.theory, shell.bottom, shell.top);
        for (d, c) in &self.terms {
            out.add_term(d.click(steps), c.clone());
        }
        out
    }

    pub fn trace_close(&self, side: Side) -> Result<Morphism> {
        if self.bottom != self.top {
            return Err(Error::Boundary(
                "trace needs equal bottom and top words".into(),
            ));
        }
        let mut out = Morphism::zero(self.theory, vec![], vec![]);
        for (d, c) in &self.terms {
            if let Some(t) = d.trace_close(side)? {
                out.add_term(t, c.clone());
            }
        }
        Ok(out)
    }

    pub fn expand_plain(&self) -> Morphism {
        let mut out = Morphism::zero(self.theory, self.bottom.clone(), self.top.clone());
        for (d, c) in &self.terms {
            for e in d.expand_plain() {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        for d in self.terms.keys() {
            if d.theory != self.theory || d.bottom != self.bottom || d.top != self.top {
                return Err(Error::Invalid(
                    "term does not share the morphism's signature".into(),
                ));
            }
            d.validate()?;
        }
        Ok(())
    }
}
