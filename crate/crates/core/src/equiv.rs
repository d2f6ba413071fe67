//! The two source categories and their functors into the arrow planar algebras.
//!
//! `vec-cyclic(m, ζ)` is the dot calculus for `Vec_{Z_m}^ζ`: one strand type,
//! a box `𝒰` with `m` legs on top and its adjoint. `su2-rep(m)` is the signed
//! calculus for `Rep(C_m)`: `±` strands, signed cups and caps, and four boxes
//! with `m` legs of one sign. Both map into the arrow theory with
//! `2n` or `2n + 1 = m` by relabelling: the topology of a diagram is kept and
//! every box becomes `U` or `U*` with the same intrinsic legs, which is the
//! bent drawing `Ũ` of the generator.

use serde_json::{json, Value};

use crate::cyclotomic::CycloScalar;
use crate::diagram::{dual_word, Diagram, End, Flow, Morphism, Strand};
use crate::error::{Error, Result};
use crate::evaluate::{eval_closed, inner_product};
use crate::fusion::{box_bound, gram_matrix, hom_dim};
use crate::relations::{Relation, RelationOutcome};
use crate::theory::{BoxKind, Family, Label, Root, Theory};

/// The arrow theory receiving a source theory with `m` legs per box.
pub fn target_theory(src: &Theory) -> Result<Theory> {
    let m = src.n;
    let (family, n) = if m % 2 == 0 {
        (Family::ArrowAOdd, m / 2)
    } else {
        (Family::ArrowAEven, (m - 1) / 2)
    };
    match src.family {
        // sliding a dot past Ũ costs the click scalar of the target, so the
        // slide relation `id_1 ⊗ 𝒰 = ζ 𝒰 ⊗ id_1` pins the target root to ζ
        Family::VecCyclic => Theory::new(family, n, src.root),
        Family::Su2Rep => Theory::new(family, n, Root::ONE),
        f => Err(Error::Invalid(format!("{f} is not a source category"))),
    }
}

pub fn source_theory(family: Family, m: u32, zeta_exp: i64) -> Result<Theory> {
    if !family.is_source() {
        return Err(Error::Invalid(format!("{family} is not a source category")));
    }
    if m == 0 {
        return Err(Error::Invalid("m must be positive".into()));
    }
    Theory::with_root_exp(family, m, zeta_exp)
}

fn image_label(l: Label) -> Result<Label> {
    match l {
        Label::Dot | Label::Minus => Ok(Label::Down),
        Label::Plus => Ok(Label::Up),
        _ => Err(Error::Alphabet(format!("{l} is not a source label"))),
    }
}

fn image_kind(k: BoxKind) -> Result<BoxKind> {
    use BoxKind::*;
    match k {
        // legs running into the box become U, legs leaving it U*
        ScriptU | NCapPlus | NCupMinus => Ok(U),
        ScriptUstar | NCapMinus | NCupPlus => Ok(Ustar),
        _ => Err(Error::Alphabet(format!("{k} is not a source box"))),
    }
}

fn image_diagram(d: &Diagram, target: Theory) -> Result<Diagram> {
    let mut out = Diagram::empty(target);
    out.bottom = d
        .bottom
        .iter()
        .map(|&l| image_label(l))
        .collect::<Result<_>>()?;
    out.top = d
        .top
        .iter()
        .map(|&l| image_label(l))
        .collect::<Result<_>>()?;
    out.boxes = d
        .boxes
        .iter()
        .map(|&k| image_kind(k))
        .collect::<Result<_>>()?;
    out.anchors = d.anchors;
    out.nest = d.nest.clone();
    let species = target.oriented_species();
    for s in &d.strands {
        let flow = match (d.theory.family, s.a) {
            (Family::Su2Rep, _) => s.flow,
            (_, End::Anchor(..)) => Flow::AtoB,
            _ => out
                .infer_flow(s.a, s.b)?
                .ok_or_else(|| Error::Internal("unoriented image strand".into()))?,
        };
        out.strands.push(Strand {
            a: s.a,
            b: s.b,
            label: species,
            flow,
        });
    }
    Ok(out)
}

/// `𝒜` on `vec-cyclic`, `ℛ` on `su2-rep`.
pub fn image(m: &Morphism) -> Result<Morphism> {
    let target = target_theory(&m.theory)?;
    let bottom = m
        .bottom
        .iter()
        .map(|&l| image_label(l))
        .collect::<Result<_>>()?;
    let top = m
        .top
        .iter()
        .map(|&l| image_label(l))
        .collect::<Result<_>>()?;
    let mut out = Morphism::zero(target, bottom, top);
    for (d, c) in &m.terms {
        out.add_term(image_diagram(d, target)?, c.clone());
    }
    Ok(out)
}

pub fn functor_vec_image(m: &Morphism) -> Result<Morphism> {
    if m.theory.family != Family::VecCyclic {
        return Err(Error::TheoryMismatch(format!(
            "expected vec-cyclic, got {}",
            m.theory
        )));
    }
    image(m)
}

pub fn functor_rep_image(m: &Morphism) -> Result<Morphism> {
    if m.theory.family != Family::Su2Rep {
        return Err(Error::TheoryMismatch(format!(
            "expected su2-rep, got {}",
            m.theory
        )));
    }
    image(m)
}

/// Defining relations of a source category, as pairs of source morphisms.
pub fn source_relations(th: &Theory) -> Result<Vec<Relation>> {
    use Label::{Minus, Plus};
    let m = th.n as usize;
    let one = Morphism::scalar(*th, CycloScalar::one());
    let mut out = Vec::new();
    match th.family {
        Family::VecCyclic => {
            let u = Morphism::generator(*th, BoxKind::ScriptU)?;
            let us = Morphism::generator(*th, BoxKind::ScriptUstar)?;
            let dot = Morphism::identity(*th, &[Label::Dot]);
            out.push(Relation::new("i", "U* U = id_0", us.compose(&u)?, one));
            out.push(Relation::new(
                "ii",
                "U U* = id_1^m",
                u.compose(&us)?,
                Morphism::identity(*th, &vec![Label::Dot; m]),
            ));
            let zeta = th.root_value();
            out.push(Relation::new(
                "iii",
                "id_1 U = ζ U id_1",
                dot.tensor(&u)?,
                u.tensor(&dot)?.scale(&zeta),
            ));
        }
        Family::Su2Rep => {
            let id = |l: Label| Morphism::identity(*th, &[l]);
            let cup = |a, b| Morphism::cup(*th, a, b);
            let cap = |a, b| Morphism::cap(*th, a, b);
            let g = |k| Morphism::generator(*th, k);
            for (a, b) in [(Plus, Minus), (Minus, Plus)] {
                // the strand is the first label of the cup on the left
                out.push(Relation::new(
                    "i",
                    format!("cup({a},{b}) {a} = {a} cup({b},{a})"),
                    cup(a, b).tensor(&id(a))?,
                    id(a).tensor(&cup(b, a))?,
                ));
                out.push(Relation::new(
                    "ii",
                    format!("cap({a},{b}) {a} = {a} cap({b},{a})"),
                    cap(a, b).tensor(&id(a))?,
                    id(a).tensor(&cap(b, a))?,
                ));
                out.push(Relation::new(
                    "iii",
                    format!("cap({a},{b}) cup({a},{b}) = 1"),
                    cap(a, b).compose(&cup(a, b))?,
                    one.clone(),
                ));
                out.push(Relation::new(
                    "ix",
                    format!("{a} {b} = cup cap"),
                    id(a).tensor(&id(b))?,
                    cup(a, b).compose(&cap(a, b))?,
                ));
            }
            let (cp, cm, up, um) = (
                g(BoxKind::NCapPlus)?,
                g(BoxKind::NCapMinus)?,
                g(BoxKind::NCupPlus)?,
                g(BoxKind::NCupMinus)?,
            );
            out.push(Relation::new(
                "iv",
                "ncap+ ncup+ = 1",
                cp.compose(&up)?,
                one.clone(),
            ));
            out.push(Relation::new(
                "iv",
                "ncap- ncup- = 1",
                cm.compose(&um)?,
                one.clone(),
            ));
            out.push(Relation::new(
                "v",
                "ncap- - = - ncap-",
                cm.tensor(&id(Minus))?,
                id(Minus).tensor(&cm)?,
            ));
            out.push(Relation::new(
                "vi",
                "ncap+ + = + ncap+",
                cp.tensor(&id(Plus))?,
                id(Plus).tensor(&cp)?,
            ));
            let (pm, mp) = (vec![Plus; m], vec![Minus; m]);
            out.push(Relation::new(
                "vii",
                "ncap+ ncap- = nested caps",
                cp.tensor(&cm)?,
                Morphism::nested(*th, &pm, &mp, false)?,
            ));
            out.push(Relation::new(
                "viii",
                "ncap- ncap+ = nested caps",
                cm.tensor(&cp)?,
                Morphism::nested(*th, &mp, &pm, false)?,
            ));
            // matching opposite signs is zero
            let clash = id(Plus).compose(&id(Minus))?;
            out.push(Relation::new(
                "0",
                "+ over - vanishes",
                clash,
                Morphism::zero(*th, vec![Minus], vec![Plus]),
            ));
        }
        f => return Err(Error::Invalid(format!("{f} is not a source category"))),
    }
    Ok(out)
}

/// The associator data `ω_ζ(i, j, k) = ζ^{i (j + k - [j + k]) / m}` of `Vec_{Z_m}^ζ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CocycleSpec {
    pub m: u32,
    pub zeta: Root,
}

impl CocycleSpec {
    /// `ζ = ζ_m^k`.
    pub fn new(m: u32, k: i64) -> Result<CocycleSpec> {
        if m == 0 {
            return Err(Error::Invalid("m must be positive".into()));
        }
        Ok(CocycleSpec {
            m,
            zeta: Root::from_power(m, k),
        })
    }

    pub fn zeta_value(&self) -> CycloScalar {
        self.zeta.value()
    }
}

pub fn cocycle(spec: &CocycleSpec, i: u32, j: u32, k: u32) -> CycloScalar {
    let m = spec.m;
    let (i, j, k) = (i % m, j % m, k % m);
    let carry = (j + k - (j + k) % m) / m;
    spec.zeta_value().pow(u64::from(i * carry))
}

/// The 3-cocycle identity over all of `Z_m^4`.
pub fn check_cocycle(spec: &CocycleSpec) -> bool {
    let m = spec.m;
    let w = |i, j, k| cocycle(spec, i, j, k);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let lhs = w((a + b) % m, c, d).mul_ref(&w(a, b, (c + d) % m));
                    let rhs = w(a, b, c)
                        .mul_ref(&w(a, (b + c) % m, d))
                        .mul_ref(&w(b, c, d));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Vec,
    Rep,
}

impl Which {
    pub fn parse(s: &str) -> Result<Which> {
        match s {
            "vec" => Ok(Which::Vec),
            "rep" => Ok(Which::Rep),
            _ => Err(Error::Parse(format!(
                "unknown functor {s:?}; expected vec or rep"
            ))),
        }
    }

    pub fn family(self) -> Family {
        match self {
            Which::Vec => Family::VecCyclic,
            Which::Rep => Family::Su2Rep,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimCheck {
    pub bottom: Vec<Label>,
    pub top: Vec<Label>,
    pub source: usize,
    pub target: usize,
    /// Rank of the Gram matrix of the bent target hom space, where computed.
    pub gram: Option<usize>,
}

impl DimCheck {
    pub fn ok(&self) -> bool {
        self.source == self.target && self.gram.is_none_or(|g| g == self.target)
    }
}

#[derive(Clone, Debug)]
pub struct FunctorReport {
    pub source: Theory,
    pub target: Theory,
    pub relations: Vec<RelationOutcome>,
    pub dims: Vec<DimCheck>,
    /// `(name, ⟨F(f), F(f)⟩)` for the nontriviality witnesses.
    pub witnesses: Vec<(String, CycloScalar)>,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
            && self.dims.iter().all(DimCheck::ok)
            && self.witnesses.iter().all(|(_, v)| v.is_one())
    }

    pub fn to_json(&self) -> Value {
        let words = |w: &[Label]| w.iter().map(|l| l.name()).collect::<Vec<_>>().join(" ");
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "passed": self.passed(),
            "relations": self.relations.iter().map(|r| json!({"group": r.group, "name": r.name, "holds": r.holds})).collect::<Vec<_>>(),
            "dims": self.dims.iter().filter(|d| !d.ok() || d.source > 0).map(|d| json!({
                "bottom": words(&d.bottom), "top": words(&d.top),
                "source": d.source, "target": d.target, "gram": d.gram, "ok": d.ok(),
            })).collect::<Vec<_>>(),
            "dims_checked": self.dims.len(),
            "witnesses": self.witnesses.iter().map(|(n, v)| json!({"name": n, "value": v.to_string()})).collect::<Vec<_>>(),
        })
    }
}

/// Gram ranks are cross-checked on bent words up to this length.
const GRAM_LEN: usize = 8;

/// Relations, hom dimensions for boundaries of total length `≤ 2m`, and
/// nontriviality of the images of tensor powers of the boxes.
pub fn check_functor(which: Which, m: u32, zeta_exp: i64) -> Result<FunctorReport> {
    let src = source_theory(which.family(), m, zeta_exp)?;
    let target = target_theory(&src)?;
    let relations = source_relations(&src)?
        .into_iter()
        .map(|r| {
            let holds = crate::evaluate::morphism_eq(&image(&r.lhs)?, &image(&r.rhs)?)?;
            Ok(RelationOutcome {
                group: r.group,
                name: r.name,
                holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let max = 2 * m as usize;
    let letters: &[Label] = match which {
        Which::Vec => &[Label::Dot],
        Which::Rep => &[Label::Plus, Label::Minus],
    };
    let mut gram_cache = std::collections::BTreeMap::new();
    let mut dims = Vec::new();
    for total in 0..=max {
        for u in all_words(letters, total) {
            for cut in 0..=total {
                let (bottom, top) = (u[..cut].to_vec(), u[cut..].to_vec());
                let source = source_hom_dim(&src, &bottom, &top);
                let (tb, tt) = (image_word(&bottom)?, image_word(&top)?);
                let target_dim = hom_dim(&target, &tb, &tt)?;
                let gram = if total <= GRAM_LEN {
                    let bent: Vec<Label> = [tt.clone(), dual_word(&tb)].concat();
                    if let Some(&r) = gram_cache.get(&bent) {
                        Some(r)
                    } else {
                        let r = gram_matrix(&target, &bent, box_bound(&target, bent.len()))?.rank;
                        gram_cache.insert(bent, r);
                        Some(r)
                    }
                } else {
                    None
                };
                dims.push(DimCheck {
                    bottom,
                    top,
                    source,
                    target: target_dim,
                    gram,
                });
            }
        }
    }

    let mut witnesses = Vec::new();
    let kinds: &[BoxKind] = match which {
        Which::Vec => &[BoxKind::ScriptU, BoxKind::ScriptUstar],
        Which::Rep => &[
            BoxKind::NCupPlus,
            BoxKind::NCupMinus,
            BoxKind::NCapPlus,
            BoxKind::NCapMinus,
        ],
    };
    for &k in kinds {
        let g = Morphism::generator(src, k)?;
        let mut power = Morphism::scalar(src, CycloScalar::one());
        for l in 1..=2 {
            power = power.tensor(&g)?;
            let f = image(&power)?;
            witnesses.push((format!("{k}^{l}"), inner_product(&f, &f)?));
        }
    }
    Ok(FunctorReport {
        source: src,
        target,
        relations,
        dims,
        witnesses,
    })
}

fn image_word(w: &[Label]) -> Result<Vec<Label>> {
    w.iter().map(|&l| image_label(l)).collect()
}

fn all_words(letters: &[Label], len: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out
}

/// Dimension of a source hom space from its known basis: `[k ≡ l mod m]` for
/// dots, one diagram per labelling with equal signed counts mod `m` for signs.
pub fn source_hom_dim(th: &Theory, bottom: &[Label], top: &[Label]) -> usize {
    let m = i64::from(th.n);
    let signed = |w: &[Label]| -> i64 {
        w.iter()
            .map(|&l| if l == Label::Minus { -1 } else { 1 })
            .sum()
    };
    usize::from((signed(bottom) - signed(top)).rem_euclid(m) == 0)
}

/// Evaluation in a source category goes through the functor.
pub fn eval_source(m: &Morphism) -> Result<CycloScalar> {
    eval_closed(&image(m)?)
}
