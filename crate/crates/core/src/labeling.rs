//! Region labellings of closed diagrams by the van Kampen group of the theory,
//! and the invariant `f = σ^ℓ` read off from the regions holding box stars.
//!
//! Shaded and colour theories label regions by the dihedral group
//! `D_n = ⟨r, b | r² = b² = (rb)^n = 1⟩`; arrow theories by `Z_{2n}` or
//! `Z_{2n+1}` generated by `u`.

use std::collections::VecDeque;
use std::fmt;

use crate::cyclotomic::CycloScalar;
use crate::diagram::{Corner, Diagram, End, Flow, Morphism, Vertex};
use crate::error::{Error, Result};
use crate::theory::{BoxKind, Family, Label, Theory};

/// An element of `D_n` as `ρ^rot b^refl` with `ρ = rb`, or `u^k` in `Z_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Dihedral { n: u32, rot: u32, refl: bool },
    Cyclic { m: u32, k: u32 },
}

impl GroupElement {
    pub fn identity(th: &Theory) -> GroupElement {
        let g = th.group_modulus().max(1);
        if th.family.is_oriented() {
            GroupElement::Cyclic { m: g, k: 0 }
        } else {
            GroupElement::Dihedral {
                n: g,
                rot: 0,
                refl: false,
            }
        }
    }

    /// Right multiplication by `r` (`red = true`) or `b`.
    pub fn times_gen(self, red: bool) -> GroupElement {
        match self {
            GroupElement::Dihedral { n, rot, refl } => {
                // ρ^j b^s · b = ρ^j b^{s+1};  ρ^j b^s · r = ρ^j b^s ρ b = ρ^{j ± 1} b^{s+1}
                let step: i64 = if !red {
                    0
                } else if refl {
                    -1
                } else {
                    1
                };
                let rot = (rot as i64 + step).rem_euclid(n as i64) as u32;
                GroupElement::Dihedral {
                    n,
                    rot,
                    refl: !refl,
                }
            }
            c => c,
        }
    }

    /// Right multiplication by `u^e`.
    pub fn times_u(self, e: i64) -> GroupElement {
        match self {
            GroupElement::Cyclic { m, k } => GroupElement::Cyclic {
                m,
                k: (k as i64 + e).rem_euclid(m as i64) as u32,
            },
            d => d,
        }
    }

    /// Normal-form word: `(rb)^m`, `b(rb)^m`, or `u^k`.
    pub fn word(&self) -> String {
        match *self {
            GroupElement::Dihedral { n, rot, refl } => {
                // ρ^j = (rb)^j and ρ^j b = b(rb)^{-j}
                let m = if refl { (n - rot) % n } else { rot };
                let body = "rb".repeat(m as usize);
                match (refl, m) {
                    (false, 0) => "1".into(),
                    (false, _) => body,
                    (true, _) => format!("b{body}"),
                }
            }
            GroupElement::Cyclic { k, .. } => match k {
                0 => "1".into(),
                1 => "u".into(),
                k => format!("u^{k}"),
            },
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

#[derive(Clone, Debug)]
pub struct RegionLabeling {
    /// Corners bounding each face.
    pub faces: Vec<Vec<Corner>>,
    pub labels: Vec<GroupElement>,
    pub star_face: usize,
    /// Face holding each box's star.
    pub box_face: Vec<usize>,
}

/// The faces of a diagram as corner lists.
pub fn regions(d: &Diagram) -> Vec<Vec<Corner>> {
    d.faces().corners()
}

/// Which generator a strand label records.
fn records_red(th: &Theory, l: Label) -> bool {
    let red = l == Label::Red;
    if matches!(th.family, Family::ColorAOdd | Family::ColorAInf) {
        !red
    } else {
        red
    }
}

/// Label every region of `d`, starting from the star region (or from the
/// region of `start` if given, returning labels relative to it).
fn label_from(d: &Diagram, start: Corner) -> Result<(crate::diagram::Faces, Vec<GroupElement>)> {
    let th = d.theory;
    let faces = d.faces();
    // (neighbour, red?, u-exponent)
    let mut adj: Vec<Vec<(usize, Option<bool>, i64)>> = vec![Vec::new(); faces.count];
    for s in &d.strands {
        if s.label == Label::Plain {
            return Err(Error::Invalid(
                "region labels need every plain strand resolved".into(),
            ));
        }
        let from = match s.flow {
            Flow::BtoA => s.b,
            _ => s.a,
        };
        let (l, r) = d.sides(from);
        let (fl, fr) = (faces.face(l), faces.face(r));
        if th.family.is_oriented() {
            adj[fl].push((fr, None, 1));
            adj[fr].push((fl, None, -1));
        } else {
            let red = records_red(&th, s.label);
            adj[fl].push((fr, Some(red), 0));
            adj[fr].push((fl, Some(red), 0));
        }
    }
    let mut labels: Vec<Option<GroupElement>> = vec![None; faces.count];
    let f0 = faces.face(start);
    labels[f0] = Some(GroupElement::identity(&th));
    let mut queue = VecDeque::from([f0]);
    while let Some(f) = queue.pop_front() {
        let x = labels[f].unwrap();
        for &(g, red, e) in &adj[f] {
            let y = match red {
                Some(red) => x.times_gen(red),
                None => x.times_u(e),
            };
            match labels[g] {
                None => {
                    labels[g] = Some(y);
                    queue.push_back(g);
                }
                Some(z) if z != y => {
                    return Err(Error::Internal(format!(
                        "inconsistent region labels: {z} vs {y}"
                    )));
                }
                _ => {}
            }
        }
    }
    let labels = labels
        .into_iter()
        .map(|l| l.ok_or_else(|| Error::Internal("unreachable region".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((faces, labels))
}

pub fn label_regions(d: &Diagram) -> Result<RegionLabeling> {
    if !d.is_closed() {
        return Err(Error::Boundary(
            "region labels are defined for closed diagrams".into(),
        ));
    }
    let (faces, labels) = label_from(d, Corner::new(Vertex::Bnd, 0))?;
    let box_face = (0..d.boxes.len())
        .map(|k| faces.face(Corner::new(Vertex::Box(k), 0)))
        .collect();
    Ok(RegionLabeling {
        star_face: faces.face(Corner::new(Vertex::Bnd, 0)),
        faces: faces.corners(),
        labels,
        box_face,
    })
}

/// Relabel from the region of `start`, for the uniqueness check: the result
/// times the original label of `start` reproduces the original labels.
pub fn label_regions_from(d: &Diagram, start: Corner) -> Result<Vec<GroupElement>> {
    Ok(label_from(d, start)?.1)
}

/// Left multiplication `g · x`, used to translate labellings.
pub fn left_mul(g: GroupElement, x: GroupElement) -> GroupElement {
    match (g, x) {
        (
            GroupElement::Dihedral {
                n,
                rot: j1,
                refl: s1,
            },
            GroupElement::Dihedral {
                rot: j2, refl: s2, ..
            },
        ) => {
            let j2 = if s1 { -(j2 as i64) } else { j2 as i64 };
            GroupElement::Dihedral {
                n,
                rot: (j1 as i64 + j2).rem_euclid(n as i64) as u32,
                refl: s1 ^ s2,
            }
        }
        (GroupElement::Cyclic { m, k: a }, GroupElement::Cyclic { k: b, .. }) => {
            GroupElement::Cyclic { m, k: (a + b) % m }
        }
        _ => x,
    }
}

/// Overall sign applied to `Σℓ`, fixed by calibration against the evaluator.
pub fn calibrated_sign(family: Family) -> i64 {
    match family {
        Family::ArrowAOdd | Family::ArrowAEven => ARROW_SIGN,
        _ => 1,
    }
}

/// `f_U` with `ℓ_U(u^m) = -m`, `ℓ_{U*}(u^m) = m` summed as they stand.
const ARROW_SIGN: i64 = 1;

/// `ℓ` of a box whose star lies in a region labelled `w`.
pub fn ell(kind: BoxKind, w: GroupElement) -> i64 {
    let base = match w {
        // ρ^j ↦ j, ρ^j b ↦ 1 - j
        GroupElement::Dihedral { rot, refl, .. } => {
            if refl {
                1 - rot as i64
            } else {
                rot as i64
            }
        }
        GroupElement::Cyclic { k, .. } => -(k as i64),
    };
    match kind {
        BoxKind::U | BoxKind::V => base,
        BoxKind::Ustar | BoxKind::Vstar => -base,
        _ => 0,
    }
}

/// `ℓ^D` for a closed diagram with no plain strands, before reduction.
pub fn ell_of(d: &Diagram, sign: i64) -> Result<i64> {
    let lab = label_regions(d)?;
    let mut total = 0;
    for (k, &kind) in d.boxes.iter().enumerate() {
        total += ell(kind, lab.labels[lab.box_face[k]]);
    }
    Ok(sign * total)
}

/// `f` on one diagram, expanding plain strands.
pub fn invariant_diagram(d: &Diagram, sign: i64) -> Result<CycloScalar> {
    let th = d.theory;
    let mut v = CycloScalar::zero();
    for e in expand_resolved(d) {
        let l = ell_of(&e, sign)?;
        v = v.add_ref(&CycloScalar::root_power(
            th.root.spec(),
            th.root.exp as i64 * l,
        ));
    }
    Ok(v)
}

/// Expansion of plain strands, with each leg-to-leg strand also checked.
fn expand_resolved(d: &Diagram) -> Vec<Diagram> {
    d.expand_plain()
        .into_iter()
        .filter(|e| {
            e.strands.iter().all(|s| match (s.a, s.b) {
                (End::Leg(..), End::Leg(..)) => e.strand_compatible(s),
                _ => true,
            })
        })
        .collect()
}

/// `f(m) = Σ coeff · σ^{ℓ^D}` with the calibrated convention.
pub fn invariant(m: &Morphism) -> Result<CycloScalar> {
    invariant_with(m, calibrated_sign(m.theory.family))
}

pub fn invariant_with(m: &Morphism, sign: i64) -> Result<CycloScalar> {
    if !m.is_closed() {
        return Err(Error::Boundary(
            "the invariant is defined on closed morphisms".into(),
        ));
    }
    if m.theory.family.is_source() {
        return invariant_with(&crate::equiv::image(m)?, sign);
    }
    let mut v = CycloScalar::zero();
    for (d, c) in &m.terms {
        v = v.add_ref(&invariant_diagram(d, sign)?.mul_ref(c));
    }
    Ok(v)
}

/// `ℓ^D` and region labels for the `label` report of a single closed diagram.
pub fn report(d: &Diagram) -> Result<(RegionLabeling, i64, CycloScalar)> {
    let sign = calibrated_sign(d.theory.family);
    let lab = label_regions(d)?;
    let l = ell_of(d, sign)?;
    let modulus = d.theory.group_modulus().max(1) as i64;
    let value = invariant_diagram(d, sign)?;
    Ok((lab, l.rem_euclid(modulus), value))
}
