//! Presentations: strand alphabets, generator boxes and their leg signatures,
//! and the click rewrite table of each family.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{root_power, CycloScalar, RootSpec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "shaded-a-odd")]
    ShadedAOdd,
    #[serde(rename = "arrow-a-odd")]
    ArrowAOdd,
    #[serde(rename = "arrow-a-even")]
    ArrowAEven,
    #[serde(rename = "color-a-odd")]
    ColorAOdd,
    #[serde(rename = "shaded-a-inf")]
    ShadedAInf,
    #[serde(rename = "arrow-a-inf")]
    ArrowAInf,
    #[serde(rename = "color-a-inf")]
    ColorAInf,
    #[serde(rename = "vec-cyclic")]
    VecCyclic,
    #[serde(rename = "su2-rep")]
    Su2Rep,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::ShadedAOdd,
        Family::ArrowAOdd,
        Family::ArrowAEven,
        Family::ColorAOdd,
        Family::ShadedAInf,
        Family::ArrowAInf,
        Family::ColorAInf,
        Family::VecCyclic,
        Family::Su2Rep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ShadedAOdd => "shaded-a-odd",
            Family::ArrowAOdd => "arrow-a-odd",
            Family::ArrowAEven => "arrow-a-even",
            Family::ColorAOdd => "color-a-odd",
            Family::ShadedAInf => "shaded-a-inf",
            Family::ArrowAInf => "arrow-a-inf",
            Family::ColorAInf => "color-a-inf",
            Family::VecCyclic => "vec-cyclic",
            Family::Su2Rep => "su2-rep",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }

    pub fn is_shaded(self) -> bool {
        matches!(self, Family::ShadedAOdd | Family::ShadedAInf)
    }

    /// Strands carry an orientation.
    pub fn is_oriented(self) -> bool {
        matches!(
            self,
            Family::ArrowAOdd | Family::ArrowAEven | Family::ArrowAInf | Family::Su2Rep
        )
    }

    pub fn is_infinite(self) -> bool {
        matches!(
            self,
            Family::ShadedAInf | Family::ArrowAInf | Family::ColorAInf
        )
    }

    pub fn is_source(self) -> bool {
        matches!(self, Family::VecCyclic | Family::Su2Rep)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The chosen root `ζ_order^exp`, normalized so that `gcd(exp, order) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub order: u32,
    pub exp: u32,
}

impl Root {
    pub const ONE: Root = Root { order: 1, exp: 0 };

    /// `ζ_modulus^k`, reduced to its exact order.
    pub fn from_power(modulus: u32, k: i64) -> Root {
        let m = modulus.max(1) as i64;
        let k = k.rem_euclid(m);
        let g = k.gcd(&m);
        let order = (m / g) as u32;
        let exp = if order == 1 { 0 } else { (k / g) as u32 };
        Root { order, exp }
    }

    pub fn value(self) -> CycloScalar {
        root_power(RootSpec { order: self.order }, self.exp as i64)
    }

    pub fn spec(self) -> RootSpec {
        RootSpec { order: self.order }
    }

    pub fn conj(self) -> Root {
        Root::from_power(self.order, -(self.exp as i64))
    }

    /// All roots whose order divides `modulus`, indexed by `k` in `ζ_modulus^k`.
    pub fn all_dividing(modulus: u32) -> Vec<Root> {
        (0..modulus.max(1) as i64)
            .map(|k| Root::from_power(modulus, k))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Theory {
    pub family: Family,
    /// Size parameter `n` (or `m` for the source categories); 0 for the `Ã_∞` families.
    pub n: u32,
    pub root: Root,
}

impl Theory {
    pub fn new(family: Family, n: u32, root: Root) -> Result<Theory> {
        let t = Theory {
            family,
            n,
            root: Root::from_power(root.order, root.exp as i64),
        };
        t.check()?;
        Ok(t)
    }

    /// Theory with root `ζ_N^k`, where `N` is the family's root modulus.
    pub fn with_root_exp(family: Family, n: u32, k: i64) -> Result<Theory> {
        let probe = Theory {
            family,
            n,
            root: Root::ONE,
        };
        let modulus = probe.root_modulus();
        Theory::new(family, n, Root::from_power(modulus, k))
    }

    pub fn infinite(family: Family) -> Theory {
        debug_assert!(family.is_infinite());
        Theory {
            family,
            n: 0,
            root: Root::ONE,
        }
    }

    fn check(&self) -> Result<()> {
        let min_n = match self.family {
            Family::ArrowAEven => 0,
            f if f.is_infinite() => {
                if self.n != 0 || self.root != Root::ONE {
                    return Err(Error::Invalid(format!("{f} takes no size or root")));
                }
                return Ok(());
            }
            _ => 1,
        };
        if self.n < min_n {
            return Err(Error::Invalid(format!(
                "{} needs n >= {min_n}",
                self.family
            )));
        }
        if self.n > 64 {
            return Err(Error::Invalid(format!(
                "n = {} is beyond supported range",
                self.n
            )));
        }
        let modulus = self.root_modulus();
        if modulus % self.root.order != 0 {
            return Err(Error::Invalid(format!(
                "root order {} does not divide {modulus} for {}",
                self.root.order, self.family
            )));
        }
        Ok(())
    }

    /// `N` such that the root must be an `N`-th root of unity.
    pub fn root_modulus(&self) -> u32 {
        match self.family {
            Family::ShadedAOdd | Family::ColorAOdd | Family::VecCyclic | Family::Su2Rep => self.n,
            Family::ArrowAOdd => 2 * self.n,
            Family::ArrowAEven => 2 * self.n + 1,
            _ => 1,
        }
    }

    /// Order of the van-Kampen cyclic group, or of the rotation subgroup for dihedral ones.
    pub fn group_modulus(&self) -> u32 {
        match self.family {
            Family::ShadedAOdd | Family::ColorAOdd => self.n,
            Family::ArrowAOdd => 2 * self.n,
            Family::ArrowAEven => 2 * self.n + 1,
            Family::VecCyclic | Family::Su2Rep => self.n,
            _ => 0,
        }
    }

    /// The click scalar `σ`, `ω` or `τ` (or `ζ` for the source categories).
    pub fn root_value(&self) -> CycloScalar {
        self.root.value()
    }

    pub fn alphabet(&self) -> Vec<Label> {
        use Label::*;
        match self.family {
            Family::ShadedAOdd | Family::ShadedAInf | Family::ColorAOdd | Family::ColorAInf => {
                vec![Red, Blue, Plain]
            }
            Family::ArrowAOdd | Family::ArrowAEven | Family::ArrowAInf => vec![Up, Down, Plain],
            Family::VecCyclic => vec![Dot],
            Family::Su2Rep => vec![Plus, Minus],
        }
    }

    pub fn allows(&self, l: Label) -> bool {
        self.alphabet().contains(&l)
    }

    /// The two species a plain strand decomposes into.
    pub fn plain_parts(&self) -> Option<[Label; 2]> {
        match self.family {
            Family::ShadedAOdd | Family::ShadedAInf | Family::ColorAOdd | Family::ColorAInf => {
                Some([Label::Red, Label::Blue])
            }
            Family::ArrowAOdd | Family::ArrowAEven | Family::ArrowAInf => {
                Some([Label::Up, Label::Down])
            }
            _ => None,
        }
    }

    /// Label stored on an oriented strand (its direction lives in the flow).
    pub fn oriented_species(&self) -> Label {
        if self.family == Family::Su2Rep {
            Label::Plus
        } else {
            Label::Up
        }
    }

    pub fn box_kinds(&self) -> &'static [BoxKind] {
        use BoxKind::*;
        match self.family {
            Family::ShadedAOdd => &[U, Ustar, V, Vstar],
            Family::ArrowAOdd | Family::ArrowAEven => &[U, Ustar],
            Family::ColorAOdd => &[V, Vstar],
            Family::VecCyclic => &[ScriptU, ScriptUstar],
            Family::Su2Rep => &[NCapPlus, NCapMinus, NCupPlus, NCupMinus],
            _ => &[],
        }
    }

    /// Intrinsic legs of a box: top left to right, then bottom right to left.
    pub fn box_legs(&self, kind: BoxKind) -> Result<Vec<LegSpec>> {
        use Label::*;
        if !self.box_kinds().contains(&kind) {
            return Err(Error::Invalid(format!(
                "box {kind} is not a generator of {}",
                self.family
            )));
        }
        let n = self.n as usize;
        let alt = |start: Label, len: usize| -> Vec<LegSpec> {
            let other = if start == Red { Blue } else { Red };
            (0..len)
                .map(|i| LegSpec {
                    label: if i % 2 == 0 { start } else { other },
                    io: Io::None,
                })
                .collect()
        };
        let legs = match (self.family, kind) {
            (Family::ShadedAOdd, BoxKind::U | BoxKind::V) => alt(Red, 2 * n),
            (Family::ShadedAOdd, _) => alt(Blue, 2 * n),
            (Family::ColorAOdd, BoxKind::V) => alt(Blue, 2 * n),
            (Family::ColorAOdd, _) => alt(Red, 2 * n),
            (Family::ArrowAOdd | Family::ArrowAEven, k) => {
                let (t, b) = self.box_shape(k);
                let (tl, bl, io) = if k == BoxKind::U {
                    (Down, Up, Io::In)
                } else {
                    (Up, Down, Io::Out)
                };
                let mut v: Vec<LegSpec> = (0..t).map(|_| LegSpec { label: tl, io }).collect();
                v.extend((0..b).map(|_| LegSpec { label: bl, io }));
                v
            }
            (Family::VecCyclic, _) => vec![
                LegSpec {
                    label: Dot,
                    io: Io::None
                };
                n
            ],
            (Family::Su2Rep, k) => {
                let (label, io) = match k {
                    BoxKind::NCapPlus => (Plus, Io::In),
                    BoxKind::NCapMinus => (Minus, Io::Out),
                    BoxKind::NCupPlus => (Plus, Io::Out),
                    _ => (Minus, Io::In),
                };
                vec![LegSpec { label, io }; n]
            }
            _ => unreachable!(),
        };
        Ok(legs)
    }

    /// `(top, bottom)` leg counts in the standard drawing.
    pub fn box_shape(&self, kind: BoxKind) -> (usize, usize) {
        let n = self.n as usize;
        match (self.family, kind) {
            (Family::ArrowAEven, BoxKind::U) => (n, n + 1),
            (Family::ArrowAEven, _) => (n + 1, n),
            (Family::VecCyclic, BoxKind::ScriptU) => (n, 0),
            (Family::VecCyclic, _) => (0, n),
            (Family::Su2Rep, BoxKind::NCupPlus | BoxKind::NCupMinus) => (n, 0),
            (Family::Su2Rep, _) => (0, n),
            _ => (n, n),
        }
    }

    /// Leg labels `(bottom, top)` in the standard drawing, rotation 0.
    pub fn box_signature(&self, kind: BoxKind) -> Result<(Vec<Label>, Vec<Label>)> {
        let legs = self.box_legs(kind)?;
        let (t, _) = self.box_shape(kind);
        let top = legs[..t].iter().map(|l| l.label).collect();
        let bottom = legs[t..].iter().rev().map(|l| l.label).collect();
        Ok((bottom, top))
    }

    /// One counterclockwise step of a box's legs: `K[e_0..e_{L-1}] = σ^s · K'[e_{L-1}, e_0, ..]`.
    /// Returns `(K', s)` with `s` an exponent of the theory's root.
    pub fn click_rule(&self, kind: BoxKind) -> Option<(BoxKind, i64)> {
        use BoxKind::*;
        match (self.family, kind) {
            (Family::ShadedAOdd, U) => Some((Vstar, 1)),
            (Family::ShadedAOdd, Ustar) => Some((V, 0)),
            (Family::ShadedAOdd, V) => Some((Ustar, 1)),
            (Family::ShadedAOdd, Vstar) => Some((U, 0)),
            (Family::ArrowAOdd | Family::ArrowAEven, U) => Some((U, 1)),
            (Family::ArrowAOdd | Family::ArrowAEven, Ustar) => Some((Ustar, 1)),
            (Family::ColorAOdd, V) => Some((Vstar, 1)),
            (Family::ColorAOdd, Vstar) => Some((V, 0)),
            _ => None,
        }
    }

    /// Inverse of [`Theory::click_rule`]: one clockwise step.
    pub fn click_rule_inv(&self, kind: BoxKind) -> Option<(BoxKind, i64)> {
        self.box_kinds()
            .iter()
            .find_map(|&k| match self.click_rule(k) {
                Some((k2, s)) if k2 == kind => Some((k, -s)),
                _ => None,
            })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.name(),
            "n": self.n,
            "root": {"order": self.root.order, "exp": self.root.exp},
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Theory> {
        let fam = v
            .get("family")
            .and_then(|f| f.as_str())
            .ok_or_else(|| Error::Parse("theory: missing \"family\"".into()))?;
        let family = Family::parse(fam)?;
        let n = match v.get("n") {
            Some(x) => x
                .as_u64()
                .ok_or_else(|| Error::Parse("theory: \"n\" must be an integer".into()))?
                as u32,
            None if family.is_infinite() => 0,
            None => return Err(Error::Parse("theory: missing \"n\"".into())),
        };
        let root = match v.get("root") {
            None | Some(serde_json::Value::Null) => Root::ONE,
            Some(r) => {
                let order = r.get("order").and_then(|o| o.as_u64()).unwrap_or(1).max(1);
                let exp = r
                    .get("exp")
                    .and_then(|o| o.as_i64())
                    .unwrap_or(if order == 1 { 0 } else { 1 });
                Root::from_power(order as u32, exp)
            }
        };
        Theory::new(family, n, root)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_infinite() {
            write!(f, "{}", self.family)
        } else {
            write!(
                f,
                "{}(n={}, root=z{}^{})",
                self.family, self.n, self.root.order, self.root.exp
            )
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Red,
    Blue,
    Up,
    Down,
    Plain,
    Dot,
    Plus,
    Minus,
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::Red => "Red",
            Label::Blue => "Blue",
            Label::Up => "Up",
            Label::Down => "Down",
            Label::Plain => "Plain",
            Label::Dot => "Dot",
            Label::Plus => "Plus",
            Label::Minus => "Minus",
        }
    }

    pub fn parse(s: &str) -> Result<Label> {
        let l = match s {
            "Red" | "red" | "R" => Label::Red,
            "Blue" | "blue" | "B" => Label::Blue,
            "Up" | "up" => Label::Up,
            "Down" | "down" => Label::Down,
            "Plain" | "plain" | "X" => Label::Plain,
            "Dot" | "dot" => Label::Dot,
            "Plus" | "plus" | "+" => Label::Plus,
            "Minus" | "minus" | "-" => Label::Minus,
            _ => return Err(Error::Parse(format!("unknown strand label {s:?}"))),
        };
        Ok(l)
    }

    /// Vertical orientation reversed: `Up ↔ Down`, `Plus ↔ Minus`.
    pub fn flipped(self) -> Label {
        match self {
            Label::Up => Label::Down,
            Label::Down => Label::Up,
            Label::Plus => Label::Minus,
            Label::Minus => Label::Plus,
            l => l,
        }
    }

    /// Whether this is a vertical orientation label.
    pub fn is_directional(self) -> bool {
        matches!(self, Label::Up | Label::Down | Label::Plus | Label::Minus)
    }

    /// `Up`/`Plus` point upward.
    pub fn points_up(self) -> bool {
        matches!(self, Label::Up | Label::Plus)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoxKind {
    U,
    Ustar,
    V,
    Vstar,
    ScriptU,
    ScriptUstar,
    NCapPlus,
    NCapMinus,
    NCupPlus,
    NCupMinus,
}

impl BoxKind {
    pub fn name(self) -> &'static str {
        match self {
            BoxKind::U => "U",
            BoxKind::Ustar => "Ustar",
            BoxKind::V => "V",
            BoxKind::Vstar => "Vstar",
            BoxKind::ScriptU => "ScriptU",
            BoxKind::ScriptUstar => "ScriptUstar",
            BoxKind::NCapPlus => "NCapPlus",
            BoxKind::NCapMinus => "NCapMinus",
            BoxKind::NCupPlus => "NCupPlus",
            BoxKind::NCupMinus => "NCupMinus",
        }
    }

    /// Parses a kind; `UTilde`/`UTildeStar` are drawings of `U`/`U*` and parse to them.
    pub fn parse(s: &str) -> Result<BoxKind> {
        let k = match s {
            "U" | "UTilde" => BoxKind::U,
            "Ustar" | "U*" | "UTildeStar" => BoxKind::Ustar,
            "V" => BoxKind::V,
            "Vstar" | "V*" => BoxKind::Vstar,
            "ScriptU" => BoxKind::ScriptU,
            "ScriptUstar" => BoxKind::ScriptUstar,
            "NCapPlus" => BoxKind::NCapPlus,
            "NCapMinus" => BoxKind::NCapMinus,
            "NCupPlus" => BoxKind::NCupPlus,
            "NCupMinus" => BoxKind::NCupMinus,
            _ => return Err(Error::Parse(format!("unknown box kind {s:?}"))),
        };
        Ok(k)
    }

    pub fn adjoint(self) -> BoxKind {
        use BoxKind::*;
        match self {
            U => Ustar,
            Ustar => U,
            V => Vstar,
            Vstar => V,
            ScriptU => ScriptUstar,
            ScriptUstar => ScriptU,
            NCapPlus => NCupPlus,
            NCupPlus => NCapPlus,
            NCapMinus => NCupMinus,
            NCupMinus => NCapMinus,
        }
    }
}

impl fmt::Display for BoxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Direction of an oriented strand relative to a box leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Io {
    In,
    Out,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegSpec {
    pub label: Label,
    pub io: Io,
}
