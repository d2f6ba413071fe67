//! Diagram and morphism files.
//!
//! A term is `{"theory", "bottom", "top", "boxes", "strands", "anchors",
//! "embedding", "nest", "coeff"}`. A morphism file is a list of terms, or an
//! object `{"theory", "bottom", "top", "terms": [...]}` (needed to carry the
//! signature of the zero morphism).

use serde_json::{json, Map, Value};

use super::{Corner, Diagram, End, Flow, Morphism, Strand, Vertex};
use crate::cyclotomic::CycloScalar;
use crate::error::{Error, Result};
use crate::theory::{BoxKind, Label, Theory};

fn perr(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

fn get<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| perr(path, format!("missing {key:?}")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| perr(path, "expected a non-negative integer"))
}

fn labels(v: &Value, path: &str) -> Result<Vec<Label>> {
    let arr = v
        .as_array()
        .ok_or_else(|| perr(path, "expected a list of labels"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            let s = x
                .as_str()
                .ok_or_else(|| perr(&format!("{path}[{i}]"), "expected a string"))?;
            Label::parse(s).map_err(|e| perr(&format!("{path}[{i}]"), e))
        })
        .collect()
}

fn end_to_json(e: End) -> Value {
    match e {
        End::Bottom(i) => json!({"bnd": "bottom", "i": i}),
        End::Top(i) => json!({"bnd": "top", "i": i}),
        End::Leg(k, j) => json!({"box": k, "leg": j}),
        End::Anchor(a, s) => json!({"anchor": a, "side": s}),
    }
}

fn corner_to_json(c: Corner) -> Value {
    match c.v {
        Vertex::Bnd => json!({"bnd": c.c}),
        Vertex::Box(k) => json!({"box": k, "corner": c.c}),
        Vertex::Anchor(a) => json!({"anchor": a, "corner": c.c}),
    }
}

impl Diagram {
    pub fn to_json(&self) -> Value {
        self.term_json(&CycloScalar::one())
    }

    fn term_json(&self, coeff: &CycloScalar) -> Value {
        let oriented = self.theory.family.is_oriented();
        let strands: Vec<Value> = self
            .strands
            .iter()
            .map(|s| {
                let mut m = Map::new();
                m.insert("a".into(), end_to_json(s.a));
                m.insert("b".into(), end_to_json(s.b));
                m.insert("label".into(), json!(s.label.name()));
                if oriented && s.flow != Flow::None {
                    m.insert(
                        "dir".into(),
                        json!(if s.flow == Flow::AtoB { "a->b" } else { "b->a" }),
                    );
                }
                Value::Object(m)
            })
            .collect();
        let mut embedding = Map::new();
        let at = |e: End| self.strands.iter().position(|s| s.a == e || s.b == e);
        embedding.insert(
            "bnd".into(),
            json!((0..self.boundary_len())
                .map(|p| at(self.point_end(p)))
                .collect::<Vec<_>>()),
        );
        for k in 0..self.boxes.len() {
            embedding.insert(
                format!("box{k}"),
                json!((0..self.box_degree(k))
                    .map(|j| at(End::Leg(k, j)))
                    .collect::<Vec<_>>()),
            );
        }
        for a in 0..self.anchors {
            embedding.insert(
                format!("anchor{a}"),
                json!([at(End::Anchor(a, 0)), at(End::Anchor(a, 1))]),
            );
        }
        json!({
            "theory": self.theory.to_json(),
            "bottom": self.bottom.iter().map(|l| l.name()).collect::<Vec<_>>(),
            "top": self.top.iter().map(|l| l.name()).collect::<Vec<_>>(),
            "boxes": self.boxes.iter().map(|k| json!({"kind": k.name(), "rot": 0})).collect::<Vec<_>>(),
            "strands": strands,
            "anchors": self.anchors,
            "embedding": Value::Object(embedding),
            "nest": self.nest.iter().map(|&(c, p)| json!({"child": corner_to_json(c), "parent": corner_to_json(p)})).collect::<Vec<_>>(),
            "coeff": coeff.to_json(),
        })
    }

    /// Parse one term; returns the diagram and its coefficient.
    pub fn from_json_term(v: &Value, path: &str) -> Result<(Diagram, CycloScalar)> {
        if !v.is_object() {
            return Err(perr(path, "expected an object"));
        }
        let theory = Theory::from_json(get(v, "theory", path)?).map_err(|e| perr(path, e))?;
        let mut d = Diagram::empty(theory);
        d.bottom = match v.get("bottom") {
            Some(x) => labels(x, &format!("{path}.bottom"))?,
            None => vec![],
        };
        d.top = match v.get("top") {
            Some(x) => labels(x, &format!("{path}.top"))?,
            None => vec![],
        };
        let mut rots = Vec::new();
        if let Some(bx) = v.get("boxes") {
            let arr = bx
                .as_array()
                .ok_or_else(|| perr(&format!("{path}.boxes"), "expected a list"))?;
            for (i, b) in arr.iter().enumerate() {
                let p = format!("{path}.boxes[{i}]");
                let kind = get(b, "kind", &p)?
                    .as_str()
                    .ok_or_else(|| perr(&p, "kind must be a string"))?;
                let kind = BoxKind::parse(kind).map_err(|e| perr(&p, e))?;
                let rot = b.get("rot").and_then(|r| r.as_i64()).unwrap_or(0);
                d.boxes.push(kind);
                rots.push(rot);
            }
        }
        for (k, &kind) in d.boxes.iter().enumerate() {
            if !theory.box_kinds().contains(&kind) {
                return Err(Error::Alphabet(format!(
                    "{path}.boxes[{k}]: {kind} is not a generator of {}",
                    theory.family
                )));
            }
        }
        d.anchors = match v.get("anchors") {
            Some(x) => as_usize(x, &format!("{path}.anchors"))?,
            None => 0,
        };
        let phys_leg = |k: usize, j: usize, d: &Diagram| -> usize {
            let l = d.box_degree(k) as i64;
            (j as i64 - rots[k]).rem_euclid(l.max(1)) as usize
        };
        let parse_end = |x: &Value, p: &str, d: &Diagram| -> Result<End> {
            if let Some(side) = x.get("bnd") {
                let i = as_usize(get(x, "i", p)?, p)?;
                match side.as_str() {
                    Some("bottom") => Ok(End::Bottom(i)),
                    Some("top") => Ok(End::Top(i)),
                    _ => Err(perr(p, "bnd must be \"bottom\" or \"top\"")),
                }
            } else if let Some(b) = x.get("box") {
                let k = as_usize(b, p)?;
                let j = as_usize(get(x, "leg", p)?, p)?;
                if k >= d.boxes.len() {
                    return Err(perr(p, format!("box {k} does not exist")));
                }
                if j >= d.box_degree(k) {
                    return Err(Error::LegCount(format!(
                        "{p}: box {k} ({}) has {} legs, strand uses leg {j}",
                        d.boxes[k],
                        d.box_degree(k)
                    )));
                }
                Ok(End::Leg(k, phys_leg(k, j, d)))
            } else if let Some(a) = x.get("anchor") {
                let a = as_usize(a, p)?;
                let s = as_usize(get(x, "side", p)?, p)?;
                Ok(End::Anchor(a, s))
            } else {
                Err(perr(p, "unknown endpoint encoding"))
            }
        };
        let species = theory.oriented_species();
        let oriented = theory.family.is_oriented();
        let strands = match v.get("strands") {
            Some(s) => s
                .as_array()
                .ok_or_else(|| perr(&format!("{path}.strands"), "expected a list"))?
                .clone(),
            None => vec![],
        };
        for (i, s) in strands.iter().enumerate() {
            let p = format!("{path}.strands[{i}]");
            let a = parse_end(get(s, "a", &p)?, &format!("{p}.a"), &d)?;
            let b = parse_end(get(s, "b", &p)?, &format!("{p}.b"), &d)?;
            let lab = get(s, "label", &p)?
                .as_str()
                .ok_or_else(|| perr(&p, "label must be a string"))?;
            let lab = Label::parse(lab).map_err(|e| perr(&p, e))?;
            let in_range = |e: End| match e {
                End::Bottom(i) => i < d.bottom.len(),
                End::Top(i) => i < d.top.len(),
                End::Anchor(x, s) => x < d.anchors && s < 2,
                End::Leg(..) => true,
            };
            if !in_range(a) || !in_range(b) {
                return Err(perr(&p, "endpoint out of range"));
            }
            let (label, flow) = if oriented && lab != Label::Plain {
                if !lab.is_directional() {
                    return Err(Error::Alphabet(format!(
                        "{p}: label {lab} not allowed in {}",
                        theory.family
                    )));
                }
                let flow = match s.get("dir").and_then(|x| x.as_str()) {
                    Some("a->b") | Some("ab") => Flow::AtoB,
                    Some("b->a") | Some("ba") => Flow::BtoA,
                    Some(other) => return Err(perr(&p, format!("bad dir {other:?}"))),
                    None => match d.infer_flow(a, b) {
                        Ok(Some(f)) => f,
                        Ok(None) => {
                            if lab.points_up() {
                                Flow::AtoB
                            } else {
                                Flow::BtoA
                            }
                        }
                        Err(e) => return Err(perr(&p, e)),
                    },
                };
                (species, flow)
            } else {
                (lab, Flow::None)
            };
            d.strands.push(Strand { a, b, label, flow });
        }
        let parse_corner = |x: &Value, p: &str, d: &Diagram| -> Result<Corner> {
            if let Some(g) = x.get("bnd") {
                Ok(Corner::new(Vertex::Bnd, as_usize(g, p)?))
            } else if let Some(b) = x.get("box") {
                let k = as_usize(b, p)?;
                let c = as_usize(get(x, "corner", p)?, p)?;
                if k >= d.boxes.len() {
                    return Err(perr(p, format!("box {k} does not exist")));
                }
                Ok(Corner::new(Vertex::Box(k), phys_leg(k, c, d)))
            } else if let Some(a) = x.get("anchor") {
                Ok(Corner::new(
                    Vertex::Anchor(as_usize(a, p)?),
                    as_usize(get(x, "corner", p)?, p)?,
                ))
            } else {
                Err(perr(p, "unknown corner encoding"))
            }
        };
        match v.get("nest") {
            Some(n) => {
                let arr = n
                    .as_array()
                    .ok_or_else(|| perr(&format!("{path}.nest"), "expected a list"))?;
                for (i, e) in arr.iter().enumerate() {
                    let p = format!("{path}.nest[{i}]");
                    let c = parse_corner(get(e, "child", &p)?, &p, &d)?;
                    let q = parse_corner(get(e, "parent", &p)?, &p, &d)?;
                    d.nest.push((c, q));
                }
                d.nest.sort();
            }
            None => d.default_nesting(),
        }
        if let Some(emb) = v.get("embedding") {
            d.check_embedding(emb, &rots, path)?;
        }
        let coeff = match v.get("coeff") {
            Some(c) => CycloScalar::from_json(c).map_err(|e| perr(&format!("{path}.coeff"), e))?,
            None => CycloScalar::one(),
        };
        d.validate()?;
        Ok((d, coeff))
    }

    /// Without explicit nesting every floating component sits beside the rest,
    /// in the face of the outer star.
    fn default_nesting(&mut self) {
        let (comp, ncomp) = self.components();
        let mut done = vec![false; ncomp];
        done[0] = true;
        let idx = self.corner_index();
        for i in 0..idx.total {
            let c = idx.corner(i);
            let k = comp[self.vertex_id(c.v)];
            if !done[k] {
                done[k] = true;
                self.nest.push((c, Corner::new(Vertex::Bnd, 0)));
            }
        }
        self.nest.sort();
    }

    fn check_embedding(&self, emb: &Value, rots: &[i64], path: &str) -> Result<()> {
        let obj = emb
            .as_object()
            .ok_or_else(|| perr(&format!("{path}.embedding"), "expected an object"))?;
        let at = |e: End| self.strands.iter().position(|s| s.a == e || s.b == e);
        for (node, list) in obj {
            let p = format!("{path}.embedding.{node}");
            let got: Vec<Option<usize>> = list
                .as_array()
                .ok_or_else(|| perr(&p, "expected a list"))?
                .iter()
                .map(|x| x.as_u64().map(|y| y as usize))
                .collect();
            let want: Vec<Option<usize>> = if node == "bnd" {
                (0..self.boundary_len())
                    .map(|q| at(self.point_end(q)))
                    .collect()
            } else if let Some(k) = node
                .strip_prefix("box")
                .and_then(|x| x.parse::<usize>().ok())
            {
                if k >= self.boxes.len() {
                    return Err(perr(&p, "no such box"));
                }
                let l = self.box_degree(k) as i64;
                (0..l)
                    .map(|j| at(End::Leg(k, (j - rots[k]).rem_euclid(l) as usize)))
                    .collect()
            } else if let Some(a) = node
                .strip_prefix("anchor")
                .and_then(|x| x.parse::<usize>().ok())
            {
                vec![at(End::Anchor(a, 0)), at(End::Anchor(a, 1))]
            } else {
                return Err(perr(&p, "unknown node"));
            };
            if got != want {
                return Err(Error::Planarity(format!(
                    "{p}: cyclic order disagrees with the strands"
                )));
            }
        }
        Ok(())
    }
}

impl Morphism {
    pub fn to_json(&self) -> Value {
        json!({
            "theory": self.theory.to_json(),
            "bottom": self.bottom.iter().map(|l| l.name()).collect::<Vec<_>>(),
            "top": self.top.iter().map(|l| l.name()).collect::<Vec<_>>(),
            "terms": self.terms.iter().map(|(d, c)| d.term_json(c)).collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn parse(text: &str) -> Result<Morphism> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        Morphism::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Morphism> {
        let (header, terms): (Option<&Value>, Vec<Value>) = match v {
            Value::Array(a) => (None, a.clone()),
            Value::Object(o) if o.contains_key("terms") => {
                let t = o["terms"]
                    .as_array()
                    .ok_or_else(|| perr("terms", "expected a list"))?;
                (Some(v), t.clone())
            }
            Value::Object(_) => (None, vec![v.clone()]),
            _ => {
                return Err(Error::Parse(
                    "expected a term, a list of terms, or a morphism object".into(),
                ))
            }
        };
        let mut parsed = Vec::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            parsed.push(Diagram::from_json_term(t, &format!("terms[{i}]"))?);
        }
        let (theory, bottom, top) = match header {
            Some(h) => (
                Theory::from_json(get(h, "theory", "$")?).map_err(|e| perr("$.theory", e))?,
                h.get("bottom")
                    .map(|x| labels(x, "$.bottom"))
                    .transpose()?
                    .unwrap_or_default(),
                h.get("top")
                    .map(|x| labels(x, "$.top"))
                    .transpose()?
                    .unwrap_or_default(),
            ),
            None => match parsed.first() {
                Some((d, _)) => (d.theory, d.bottom.clone(), d.top.clone()),
                None => return Err(Error::Parse("$: missing theory".into())),
            },
        };
        let mut m = Morphism::zero(theory, bottom, top);
        for (i, (d, c)) in parsed.into_iter().enumerate() {
            if d.theory != m.theory || d.bottom != m.bottom || d.top != m.top {
                return Err(Error::Parse(format!(
                    "terms[{i}]: signature differs from the morphism"
                )));
            }
            m.add_term(d, c);
        }
        Ok(m)
    }
}
