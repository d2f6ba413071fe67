//! Structural operations on single diagrams. The linear extensions live on
//! [`Morphism`](super::Morphism).

use super::{Corner, Diagram, Dsu, End, Flow, Strand, Vertex};
use crate::error::{Error, Result};
use crate::theory::{Label, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Diagram {
    /// Side-by-side placement, `self` on the left.
    pub fn tensor(&self, other: &Diagram) -> Result<Diagram> {
        if self.theory != other.theory {
            return Err(Error::TheoryMismatch(format!(
                "{} vs {}",
                self.theory, other.theory
            )));
        }
        let (ta, ba) = (self.top.len(), self.bottom.len());
        let (tb, bb) = (other.top.len(), other.bottom.len());
        let (la, lb) = (ta + ba, tb + bb);
        let l = la + lb;
        let nbox = self.boxes.len();
        let nanc = self.anchors;
        let mut out = Diagram::empty(self.theory);
        out.top = [self.top.as_slice(), other.top.as_slice()].concat();
        out.bottom = [self.bottom.as_slice(), other.bottom.as_slice()].concat();
        out.boxes = [self.boxes.as_slice(), other.boxes.as_slice()].concat();
        out.anchors = nanc + other.anchors;
        let map_a = |e: End| e;
        let map_b = |e: End| match e {
            End::Top(i) => End::Top(ta + i),
            End::Bottom(i) => End::Bottom(ba + i),
            End::Leg(k, j) => End::Leg(nbox + k, j),
            End::Anchor(x, s) => End::Anchor(nanc + x, s),
        };
        let newpos = |e: End| -> usize {
            match e {
                End::Top(i) => i,
                End::Bottom(i) => l - 1 - i,
                _ => unreachable!(),
            }
        };
        let gap_a = |g: usize| -> usize {
            if la == 0 {
                0
            } else {
                let p = self.point_end((g + la - 1) % la);
                (newpos(map_a(p)) + 1) % l
            }
        };
        let gap_b = |g: usize| -> usize {
            if lb == 0 {
                if l == 0 {
                    0
                } else {
                    (l - ba) % l
                }
            } else {
                let p = other.point_end((g + lb - 1) % lb);
                (newpos(map_b(p)) + 1) % l
            }
        };
        let corner_a = |c: Corner| match c.v {
            Vertex::Bnd => Corner::new(Vertex::Bnd, gap_a(c.c)),
            _ => c,
        };
        let corner_b = |c: Corner| match c.v {
            Vertex::Bnd => Corner::new(Vertex::Bnd, gap_b(c.c)),
            Vertex::Box(k) => Corner::new(Vertex::Box(nbox + k), c.c),
            Vertex::Anchor(x) => Corner::new(Vertex::Anchor(nanc + x), c.c),
        };
        for s in &self.strands {
            out.strands.push(Strand {
                a: map_a(s.a),
                b: map_a(s.b),
                ..*s
            });
        }
        for s in &other.strands {
            out.strands.push(Strand {
                a: map_b(s.a),
                b: map_b(s.b),
                ..*s
            });
        }
        for &(c, p) in &self.nest {
            out.nest.push((corner_a(c), corner_a(p)));
        }
        for &(c, p) in &other.nest {
            out.nest.push((corner_b(c), corner_b(p)));
        }
        out.nest.sort();
        out.shading_agrees(self.has_boxes() && other.has_boxes())?;
        Ok(out)
    }

    /// Pieces glued from two diagrams with boxes must agree on which regions
    /// are shaded.
    fn shading_agrees(&self, both: bool) -> Result<()> {
        if both && self.theory.family.is_shaded() {
            self.check_shading().map_err(|_| {
                Error::Boundary("the pieces disagree on the shading of their regions".into())
            })?;
        }
        Ok(())
    }

    /// Vertical mirror with boxes starred and arrows reversed.
    pub fn adjoint(&self) -> Diagram {
        let l = self.boundary_len();
        let mut out = Diagram::empty(self.theory);
        out.top = self.bottom.clone();
        out.bottom = self.top.clone();
        out.boxes = self.boxes.iter().map(|k| k.adjoint()).collect();
        out.anchors = self.anchors;
        let map = |e: End| match e {
            End::Top(i) => End::Bottom(i),
            End::Bottom(i) => End::Top(i),
            End::Leg(k, j) => End::Leg(k, self.box_degree(k) - 1 - j),
            End::Anchor(x, s) => End::Anchor(x, 1 - s),
        };
        let corner = |c: Corner| match c.v {
            Vertex::Bnd => Corner::new(Vertex::Bnd, if l == 0 { 0 } else { (l - c.c) % l }),
            Vertex::Box(k) => {
                let d = self.box_degree(k);
                Corner::new(c.v, (d - c.c) % d)
            }
            Vertex::Anchor(_) => c,
        };
        for s in &self.strands {
            out.strands.push(Strand {
                a: map(s.a),
                b: map(s.b),
                label: s.label,
                flow: s.flow.reversed(),
            });
        }
        out.nest = self
            .nest
            .iter()
            .map(|&(c, p)| (corner(c), corner(p)))
            .collect();
        out.nest.sort();
        out
    }

    /// The click tangle applied `steps` times: the inner star moves clockwise,
    /// so new point `q` carries the strand of old point `q - steps`.
    pub fn click(&self, steps: i64) -> Diagram {
        let l = self.boundary_len();
        if l == 0 {
            return self.clone();
        }
        let s = (-steps).rem_euclid(l as i64) as usize;
        if s == 0 {
            return self.clone();
        }
        let t = self.top.len();
        let mut out = self.clone();
        let oriented = self.theory.family.is_oriented();
        // new point q is old point q + s
        let old_end = |q: usize| self.point_end((q + s) % l);
        for q in 0..l {
            let old = old_end(q);
            let was_top = matches!(old, End::Top(_));
            let is_top = q < t;
            let mut lab = self.point_label((q + s) % l);
            if oriented && was_top != is_top {
                lab = lab.flipped();
            }
            if is_top {
                out.top[q] = lab;
            } else {
                out.bottom[l - 1 - q] = lab;
            }
        }
        let map = |e: End| match e {
            End::Top(_) | End::Bottom(_) => {
                let (_, p) = self.dart(e);
                out_point_end(t, l, (p + l - s) % l)
            }
            e => e,
        };
        for st in out.strands.iter_mut() {
            st.a = map(st.a);
            st.b = map(st.b);
        }
        for (c, p) in out.nest.iter_mut() {
            for x in [c, p] {
                if x.v == Vertex::Bnd {
                    x.c = (x.c + l - s) % l;
                }
            }
        }
        out.nest.sort();
        out
    }

    /// Vertical stacking `self ∘ below`: `below` feeds into the bottom of `self`.
    ///
    /// Returns `Ok(None)` when a glued label or orientation disagrees, which
    /// is the zero morphism.
    pub fn compose(&self, below: &Diagram) -> Result<Option<Diagram>> {
        let a = self;
        let b = below;
        if a.theory != b.theory {
            return Err(Error::TheoryMismatch(format!(
                "{} vs {}",
                a.theory, b.theory
            )));
        }
        if a.bottom.len() != b.top.len() {
            return Err(Error::Boundary(format!(
                "cannot stack: {} points below, {} above",
                b.top.len(),
                a.bottom.len()
            )));
        }
        let th = a.theory;
        let k = a.bottom.len();
        let (tt, bb) = (a.top.len(), b.bottom.len());
        let na = a.boxes.len();
        let aa = a.anchors;

        // glue labels
        let mut glue_label = Vec::with_capacity(k);
        for i in 0..k {
            match merge_label(a.bottom[i], b.top[i]) {
                Some(l) => glue_label.push(l),
                None => return Ok(None),
            }
        }

        // auxiliary map: O, glue vertices, then corners of a and b
        let lo = tt + bb + 2;
        let idx_a = a.corner_index();
        let idx_b = b.corner_index();
        let off_glue = lo;
        let off_a = off_glue + 4 * k;
        let off_b = off_a + idx_a.total;
        let total = off_b + idx_b.total;
        let o_corner = |c: usize| c % lo;
        let glue_corner = |i: usize, c: usize| off_glue + 4 * i + c;
        // darts of M: ("O", p) | ("G", i, dir) | a/b darts
        #[derive(Clone, Copy)]
        enum MDart {
            O(usize),
            G(usize, usize),
            A(End),
            B(End),
        }
        let to_m_a = |e: End| match e {
            End::Top(j) => MDart::O(1 + j),
            End::Bottom(i) => MDart::G(i, 0),
            e => MDart::A(e),
        };
        let to_m_b = |e: End| match e {
            End::Top(i) => MDart::G(i, 2),
            End::Bottom(j) => MDart::O(tt + 2 + (bb - 1 - j)),
            e => MDart::B(e),
        };
        let sides = |d: MDart| -> (usize, usize) {
            match d {
                MDart::O(p) => (o_corner(p + 1), o_corner(p)),
                MDart::G(i, dir) => (glue_corner(i, dir), glue_corner(i, (dir + 1) % 4)),
                MDart::A(e) => {
                    let (l, r) = a.sides(e);
                    (off_a + idx_a.of(l), off_a + idx_a.of(r))
                }
                MDart::B(e) => {
                    let (l, r) = b.sides(e);
                    (off_b + idx_b.of(l), off_b + idx_b.of(r))
                }
            }
        };
        let mut dsu = Dsu::new(total);
        let join = |dsu: &mut Dsu, x: MDart, y: MDart| {
            let (lx, rx) = sides(x);
            let (ly, ry) = sides(y);
            dsu.union(lx, ry);
            dsu.union(rx, ly);
        };
        for s in &a.strands {
            join(&mut dsu, to_m_a(s.a), to_m_a(s.b));
        }
        for s in &b.strands {
            join(&mut dsu, to_m_b(s.a), to_m_b(s.b));
        }
        let mut line: Vec<(MDart, MDart)> = Vec::new();
        if k == 0 {
            line.push((MDart::O(0), MDart::O(tt + 1)));
        } else {
            line.push((MDart::O(0), MDart::G(0, 3)));
            for i in 0..k - 1 {
                line.push((MDart::G(i, 1), MDart::G(i + 1, 3)));
            }
            line.push((MDart::G(k - 1, 1), MDart::O(tt + 1)));
        }
        for &(x, y) in &line {
            join(&mut dsu, x, y);
            let (l, r) = sides(x);
            dsu.union(l, r);
        }
        let gap_a = |g: usize| -> usize {
            if g == 0 {
                o_corner(1)
            } else if g <= tt {
                o_corner(g + 1)
            } else {
                glue_corner(tt + k - 1 - g, 1)
            }
        };
        let gap_b = |g: usize| -> usize {
            if g == 0 {
                o_corner(0)
            } else if g <= k {
                glue_corner(g - 1, 2)
            } else {
                o_corner(tt + 2 + g - k)
            }
        };
        let m_a = |c: Corner| match c.v {
            Vertex::Bnd => gap_a(c.c),
            _ => off_a + idx_a.of(c),
        };
        let m_b = |c: Corner| match c.v {
            Vertex::Bnd => gap_b(c.c),
            _ => off_b + idx_b.of(c),
        };
        for &(c, p) in &a.nest {
            dsu.union(m_a(c), m_a(p));
        }
        for &(c, p) in &b.nest {
            dsu.union(m_b(c), m_b(p));
        }

        // final diagram skeleton
        let mut out = Diagram::empty(th);
        out.top = a.top.clone();
        out.bottom = b.bottom.clone();
        out.boxes = [a.boxes.as_slice(), b.boxes.as_slice()].concat();
        out.anchors = aa + b.anchors;
        let fin_a = |e: End| e;
        let fin_b = |e: End| match e {
            End::Leg(x, j) => End::Leg(na + x, j),
            End::Anchor(x, s) => End::Anchor(aa + x, s),
            e => e,
        };

        // strands through the glue line are merged into chains
        let mut above: Vec<Option<usize>> = vec![None; k];
        let mut below_s: Vec<Option<usize>> = vec![None; k];
        for (si, s) in a.strands.iter().enumerate() {
            for e in [s.a, s.b] {
                if let End::Bottom(i) = e {
                    above[i] = Some(si);
                }
            }
        }
        for (si, s) in b.strands.iter().enumerate() {
            for e in [s.a, s.b] {
                if let End::Top(i) = e {
                    below_s[i] = Some(si);
                }
            }
        }
        let species = th.oriented_species();
        let oriented = th.family.is_oriented();
        let mut used_a = vec![false; a.strands.len()];
        let mut used_b = vec![false; b.strands.len()];

        // walk a chain starting on strand `si` of side `from_a`, leaving endpoint `start`
        struct Walk {
            end: End,
            label: Label,
            dir: Option<bool>,
            clash: bool,
        }
        let walk = |from_a: bool,
                    si: usize,
                    start: End,
                    used_a: &mut Vec<bool>,
                    used_b: &mut Vec<bool>|
         -> Walk {
            let mut label = Label::Plain;
            let mut dir: Option<bool> = None; // true = along the walk
            let mut clash = false;
            let mut side_a = from_a;
            let mut cur = si;
            let mut at = start;
            let note = |l: Label,
                        forward: Option<bool>,
                        label: &mut Label,
                        dir: &mut Option<bool>,
                        clash: &mut bool| {
                if !oriented {
                    match merge_label(*label, l) {
                        Some(m) => *label = m,
                        None => *clash = true,
                    }
                } else if let Some(f) = forward {
                    *label = species;
                    match dir {
                        Some(d) if *d != f => *clash = true,
                        _ => *dir = Some(f),
                    }
                }
            };
            loop {
                let s = if side_a {
                    &a.strands[cur]
                } else {
                    &b.strands[cur]
                };
                if side_a {
                    used_a[cur] = true;
                } else {
                    used_b[cur] = true;
                }
                let fwd = s.leaves(at);
                note(s.label, fwd, &mut label, &mut dir, &mut clash);
                let nxt = s.other(at);
                let glue = match (side_a, nxt) {
                    (true, End::Bottom(i)) => Some(i),
                    (false, End::Top(i)) => Some(i),
                    _ => None,
                };
                match glue {
                    None => {
                        let end = if side_a { fin_a(nxt) } else { fin_b(nxt) };
                        return Walk {
                            end,
                            label,
                            dir,
                            clash,
                        };
                    }
                    Some(i) => {
                        // crossing the glue line downward if coming from a
                        let gl = glue_label[i];
                        if gl.is_directional() {
                            let going_up = !side_a;
                            note(
                                gl,
                                Some(gl.points_up() == going_up),
                                &mut label,
                                &mut dir,
                                &mut clash,
                            );
                        } else if !oriented {
                            note(gl, None, &mut label, &mut dir, &mut clash);
                        }
                        side_a = !side_a;
                        let next = if side_a { above[i] } else { below_s[i] };
                        cur = next.expect("glue point without strand");
                        at = if side_a { End::Bottom(i) } else { End::Top(i) };
                        let done = if side_a { used_a[cur] } else { used_b[cur] };
                        if done {
                            // closed loop back to the start
                            return Walk {
                                end: start,
                                label,
                                dir,
                                clash,
                            };
                        }
                    }
                }
            }
        };

        let mut new_loops: Vec<(usize, Label, Flow)> = Vec::new();
        for (from_a, strands) in [(true, &a.strands), (false, &b.strands)] {
            for si in 0..strands.len() {
                let s = strands[si];
                let used = if from_a { used_a[si] } else { used_b[si] };
                if used {
                    continue;
                }
                let is_glue = |e: End| {
                    if from_a {
                        matches!(e, End::Bottom(_))
                    } else {
                        matches!(e, End::Top(_))
                    }
                };
                let (ga, gb) = (is_glue(s.a), is_glue(s.b));
                let fin = |e: End| if from_a { fin_a(e) } else { fin_b(e) };
                if !ga && !gb {
                    if from_a {
                        used_a[si] = true;
                    } else {
                        used_b[si] = true;
                    }
                    out.strands.push(Strand {
                        a: fin(s.a),
                        b: fin(s.b),
                        ..s
                    });
                    continue;
                }
                if ga && gb {
                    // handled as part of a chain from a free end or as a loop below
                    continue;
                }
                let start = if ga { s.b } else { s.a };
                let w = walk(from_a, si, start, &mut used_a, &mut used_b);
                if w.clash {
                    return Ok(None);
                }
                let flow = match w.dir {
                    None => Flow::None,
                    Some(true) => Flow::AtoB,
                    Some(false) => Flow::BtoA,
                };
                let st = Strand {
                    a: fin(start),
                    b: w.end,
                    label: w.label,
                    flow,
                };
                out.strands.push(st);
            }
        }
        // remaining glue-only strands form closed loops
        for i in 0..k {
            let si = above[i].expect("glue point without strand");
            if used_a[si] {
                continue;
            }
            let w = walk(true, si, End::Bottom(i), &mut used_a, &mut used_b);
            if w.clash {
                return Ok(None);
            }
            let flow = match w.dir {
                None => Flow::None,
                Some(true) => Flow::AtoB,
                Some(false) => Flow::BtoA,
            };
            new_loops.push((i, w.label, flow));
        }
        for &(_, label, flow) in &new_loops {
            let x = out.anchors;
            out.anchors += 1;
            out.strands.push(Strand {
                a: End::Anchor(x, 0),
                b: End::Anchor(x, 1),
                label,
                flow,
            });
        }
        for s in &out.strands {
            if !out.strand_compatible(s) {
                return Ok(None);
            }
        }

        // face classes of the final corners
        let idx = out.corner_index();
        let first_new = aa + b.anchors;
        let mut class_root = Vec::with_capacity(idx.total);
        for fi in 0..idx.total {
            let c = idx.corner(fi);
            let m = match c.v {
                Vertex::Bnd => {
                    let g = c.c;
                    if g == 0 {
                        o_corner(0)
                    } else if g <= tt {
                        o_corner(g + 1)
                    } else {
                        o_corner(g + 2)
                    }
                }
                Vertex::Box(x) if x < na => off_a + idx_a.of(c),
                Vertex::Box(x) => off_b + idx_b.of(Corner::new(Vertex::Box(x - na), c.c)),
                Vertex::Anchor(x) if x < aa => off_a + idx_a.of(c),
                Vertex::Anchor(x) if x < first_new => {
                    off_b + idx_b.of(Corner::new(Vertex::Anchor(x - aa), c.c))
                }
                Vertex::Anchor(x) => glue_corner(new_loops[x - first_new].0, c.c),
            };
            class_root.push(dsu.find(m));
        }
        let class_of = compress(&class_root);
        out.rebuild_nesting(&class_of);
        out.shading_agrees(a.has_boxes() && b.has_boxes())?;
        Ok(Some(out))
    }

    /// Close every strand around the chosen side; requires `bottom == top`.
    /// `Ok(None)` when the closed strands join clashing labels.
    pub fn trace_close(&self, side: Side) -> Result<Option<Diagram>> {
        if self.bottom != self.top {
            return Err(Error::Boundary(
                "trace needs equal bottom and top words".into(),
            ));
        }
        let th = self.theory;
        let w = self.top.clone();
        let wbar = dual_word(&w);
        let closed: Option<Diagram> = match side {
            Side::Right => {
                let mid = self.tensor(&Diagram::identity(th, &wbar))?;
                let cups = nested_cups(th, &w, &wbar, true)?;
                let caps = nested_cups(th, &w, &wbar, false)?;
                let lower = mid.compose(&cups)?;
                lower
                    .and_then(|x| caps.compose(&x).transpose())
                    .transpose()?
            }
            Side::Left => {
                let mid = Diagram::identity(th, &wbar).tensor(self)?;
                let cups = nested_cups(th, &wbar, &w, true)?;
                let caps = nested_cups(th, &wbar, &w, false)?;
                let lower = mid.compose(&cups)?;
                lower
                    .and_then(|x| caps.compose(&x).transpose())
                    .transpose()?
            }
        };
        Ok(closed)
    }

    /// Replace every plain strand by its labelled variants, dropping those that
    /// disagree with their endpoints.
    pub fn expand_plain(&self) -> Vec<Diagram> {
        let th = self.theory;
        let mut out = vec![self.clone()];
        for si in 0..self.strands.len() {
            if self.strands[si].label != Label::Plain {
                continue;
            }
            let variants: Vec<(Label, Flow)> = if th.family.is_oriented() {
                vec![
                    (th.oriented_species(), Flow::AtoB),
                    (th.oriented_species(), Flow::BtoA),
                ]
            } else {
                match th.plain_parts() {
                    Some([x, y]) => vec![(x, Flow::None), (y, Flow::None)],
                    None => continue,
                }
            };
            let mut next = Vec::with_capacity(out.len() * 2);
            for d in &out {
                for &(label, flow) in &variants {
                    let mut e = d.clone();
                    e.strands[si].label = label;
                    e.strands[si].flow = flow;
                    if e.strand_compatible(&e.strands[si]) {
                        next.push(e);
                    }
                }
            }
            out = next;
        }
        out
    }
}

fn out_point_end(t: usize, l: usize, q: usize) -> End {
    if q < t {
        End::Top(q)
    } else {
        End::Bottom(l - 1 - q)
    }
}

/// `Plain` absorbs; two different species clash.
pub(crate) fn merge_label(x: Label, y: Label) -> Option<Label> {
    if x == Label::Plain {
        Some(y)
    } else if y == Label::Plain || x == y {
        Some(x)
    } else {
        None
    }
}

/// Mirror image of a word: reversed, with vertical orientation flipped.
pub fn dual_word(w: &[Label]) -> Vec<Label> {
    w.iter().rev().map(|l| l.flipped()).collect()
}

/// Nested cups `∅ → left ⊗ right` (or caps when `cup` is false), pairing point
/// `i` with point `2k - 1 - i`.
pub(crate) fn nested_cups(
    th: Theory,
    left: &[Label],
    right: &[Label],
    cup: bool,
) -> Result<Diagram> {
    let word: Vec<Label> = [left, right].concat();
    let n = word.len();
    let mut d = Diagram::empty(th);
    if cup {
        d.top = word;
    } else {
        d.bottom = word;
    }
    let end = |i: usize| if cup { End::Top(i) } else { End::Bottom(i) };
    for i in 0..n / 2 {
        let s = joining_strand(&d, end(i), end(n - 1 - i))?;
        d.strands.push(s);
    }
    Ok(d)
}

/// The strand joining two endpoints of `d`, labelled and oriented as they demand.
pub(crate) fn joining_strand(d: &Diagram, a: End, b: End) -> Result<Strand> {
    let th = d.theory;
    let flow = d.infer_flow(a, b)?.unwrap_or(Flow::None);
    let (la, lb) = (
        d.endpoint_label(a).unwrap_or(Label::Plain),
        d.endpoint_label(b).unwrap_or(Label::Plain),
    );
    let label = if th.family.is_oriented() && flow != Flow::None {
        th.oriented_species()
    } else {
        merge_label(la, lb).ok_or_else(|| Error::Boundary(format!("cannot bend {la} onto {lb}")))?
    };
    Ok(Strand { a, b, label, flow })
}

/// Renumber arbitrary class representatives densely, in order of first appearance.
pub(crate) fn compress(roots: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    roots
        .iter()
        .map(|r| {
            let n = map.len();
            *map.entry(*r).or_insert(n)
        })
        .collect()
}

/// A single cup `∅ → [l1, l2]`; `None` when the labels cannot be joined.
pub fn cup(th: Theory, l1: Label, l2: Label) -> Option<Diagram> {
    nested_cups(th, &[l1], &[l2], true).ok()
}

/// A single cap `[l1, l2] → ∅`.
pub fn cap(th: Theory, l1: Label, l2: Label) -> Option<Diagram> {
    nested_cups(th, &[l1], &[l2], false).ok()
}
