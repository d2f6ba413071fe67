//! Planar diagrams as combinatorial maps.
//!
//! A diagram is a set of vertices (the collapsed outer rectangle, the boxes,
//! and degree-2 anchors that carry free loops) joined by strands. Each vertex
//! has a cyclic order of darts; corner `c` of a vertex sits between darts
//! `c - 1` and `c`. Faces are the classes of corners glued across strands.
//! Components that float inside a face are attached by a `nest` pair saying
//! which corner of the child lies in the same face as which corner of its
//! parent.
//!
//! Boundary points are numbered clockwise from the inside: `top[0..t)` left to
//! right, then `bottom` right to left. Gap `g` lies between points `g - 1` and
//! `g`; gap 0 is the left side, where the outer star sits.

mod canon;
mod json;
mod morphism;
mod ops;

pub use morphism::Morphism;
pub(crate) use ops::{cap, cup, joining_strand, nested_cups};
pub use ops::{dual_word, Side};

use crate::error::{Error, Result};
use crate::theory::{BoxKind, Io, Label, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Bottom(usize),
    Top(usize),
    /// `(box, intrinsic leg)`
    Leg(usize, usize),
    /// `(anchor, side)`
    Anchor(usize, usize),
}

/// Orientation of a strand relative to its stored endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flow {
    None,
    AtoB,
    BtoA,
}

impl Flow {
    pub fn reversed(self) -> Flow {
        match self {
            Flow::AtoB => Flow::BtoA,
            Flow::BtoA => Flow::AtoB,
            Flow::None => Flow::None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strand {
    pub a: End,
    pub b: End,
    pub label: Label,
    pub flow: Flow,
}

impl Strand {
    pub fn other(&self, e: End) -> End {
        if self.a == e {
            self.b
        } else {
            self.a
        }
    }

    /// Whether the strand leaves endpoint `e` (oriented strands only).
    pub fn leaves(&self, e: End) -> Option<bool> {
        match self.flow {
            Flow::None => None,
            Flow::AtoB => Some(self.a == e),
            Flow::BtoA => Some(self.b == e),
        }
    }

    /// Swap the stored endpoints, keeping the geometry.
    pub fn swapped(&self) -> Strand {
        Strand {
            a: self.b,
            b: self.a,
            label: self.label,
            flow: self.flow.reversed(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Bnd,
    Box(usize),
    Anchor(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub v: Vertex,
    pub c: usize,
}

impl Corner {
    pub fn new(v: Vertex, c: usize) -> Corner {
        Corner { v, c }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub theory: Theory,
    pub bottom: Vec<Label>,
    pub top: Vec<Label>,
    pub boxes: Vec<BoxKind>,
    pub strands: Vec<Strand>,
    pub anchors: usize,
    /// `(child corner, parent corner)` for every floating component.
    pub nest: Vec<(Corner, Corner)>,
}

/// Plain union-find over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller root wins so representatives are deterministic
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}

/// Flat numbering of the corners of a diagram.
#[derive(Clone, Debug)]
pub(crate) struct CornerIndex {
    pub bnd_len: usize,
    pub box_offset: Vec<usize>,
    pub anchor_offset: usize,
    pub total: usize,
}

impl CornerIndex {
    pub(crate) fn of(&self, c: Corner) -> usize {
        match c.v {
            Vertex::Bnd => c.c,
            Vertex::Box(k) => self.box_offset[k] + c.c,
            Vertex::Anchor(a) => self.anchor_offset + 2 * a + c.c,
        }
    }

    pub(crate) fn corner(&self, i: usize) -> Corner {
        if i < self.bnd_len.max(1) {
            return Corner::new(Vertex::Bnd, i);
        }
        if i >= self.anchor_offset {
            let r = i - self.anchor_offset;
            return Corner::new(Vertex::Anchor(r / 2), r % 2);
        }
        let k = self.box_offset.partition_point(|&o| o <= i) - 1;
        Corner::new(Vertex::Box(k), i - self.box_offset[k])
    }
}

/// Face structure: corner classes plus the component of every vertex.
#[derive(Clone, Debug)]
pub struct Faces {
    pub(crate) index: CornerIndex,
    /// Face id of every flat corner; ids are ordered by smallest corner.
    pub face_of: Vec<usize>,
    pub count: usize,
}

impl Faces {
    pub fn face(&self, c: Corner) -> usize {
        self.face_of[self.index.of(c)]
    }

    /// Corners of each face in flat order.
    pub fn corners(&self) -> Vec<Vec<Corner>> {
        let mut out = vec![Vec::new(); self.count];
        for (i, &f) in self.face_of.iter().enumerate() {
            out[f].push(self.index.corner(i));
        }
        out
    }
}

impl Diagram {
    /// The empty diagram on no points.
    pub fn empty(theory: Theory) -> Diagram {
        Diagram {
            theory,
            bottom: vec![],
            top: vec![],
            boxes: vec![],
            strands: vec![],
            anchors: 0,
            nest: vec![],
        }
    }

    pub fn is_closed(&self) -> bool {
        self.bottom.is_empty() && self.top.is_empty()
    }

    pub fn boundary_len(&self) -> usize {
        self.bottom.len() + self.top.len()
    }

    pub fn box_degree(&self, k: usize) -> usize {
        let (t, b) = self.theory.box_shape(self.boxes[k]);
        t + b
    }

    pub fn degree(&self, v: Vertex) -> usize {
        match v {
            Vertex::Bnd => self.boundary_len(),
            Vertex::Box(k) => self.box_degree(k),
            Vertex::Anchor(_) => 2,
        }
    }

    /// Vertex and dart position of an endpoint.
    pub fn dart(&self, e: End) -> (Vertex, usize) {
        let l = self.boundary_len();
        match e {
            End::Top(i) => (Vertex::Bnd, i),
            End::Bottom(i) => (Vertex::Bnd, l - 1 - i),
            End::Leg(k, j) => (Vertex::Box(k), j),
            End::Anchor(a, s) => (Vertex::Anchor(a), s),
        }
    }

    /// Endpoint at boundary point `p`.
    pub fn point_end(&self, p: usize) -> End {
        let t = self.top.len();
        if p < t {
            End::Top(p)
        } else {
            End::Bottom(self.boundary_len() - 1 - p)
        }
    }

    pub fn point_label(&self, p: usize) -> Label {
        match self.point_end(p) {
            End::Top(i) => self.top[i],
            End::Bottom(i) => self.bottom[i],
            _ => unreachable!(),
        }
    }

    /// Corners to the left and right when walking out of a vertex along `e`.
    pub fn sides(&self, e: End) -> (Corner, Corner) {
        let (v, i) = self.dart(e);
        let d = self.degree(v);
        match v {
            Vertex::Bnd => (Corner::new(v, (i + 1) % d), Corner::new(v, i)),
            _ => (Corner::new(v, i), Corner::new(v, (i + 1) % d)),
        }
    }

    pub(crate) fn corner_index(&self) -> CornerIndex {
        let bnd_len = self.boundary_len();
        let mut box_offset = Vec::with_capacity(self.boxes.len());
        let mut off = bnd_len.max(1);
        for k in 0..self.boxes.len() {
            box_offset.push(off);
            let d = self.box_degree(k);
            off += d;
        }
        CornerIndex {
            bnd_len,
            box_offset,
            anchor_offset: off,
            total: off + 2 * self.anchors,
        }
    }

    /// Union-find over corners glued across strands (and, optionally, nests).
    pub(crate) fn corner_dsu(&self, with_nest: bool) -> (CornerIndex, Dsu) {
        let idx = self.corner_index();
        let mut dsu = Dsu::new(idx.total);
        for s in &self.strands {
            let (la, ra) = self.sides(s.a);
            let (lb, rb) = self.sides(s.b);
            dsu.union(idx.of(la), idx.of(rb));
            dsu.union(idx.of(ra), idx.of(lb));
        }
        if with_nest {
            for &(c, p) in &self.nest {
                dsu.union(idx.of(c), idx.of(p));
            }
        }
        (idx, dsu)
    }

    /// The faces of the diagram, including nesting.
    pub fn faces(&self) -> Faces {
        let (index, mut dsu) = self.corner_dsu(true);
        let mut id_of_root = vec![usize::MAX; index.total];
        let mut face_of = vec![0; index.total];
        let mut count = 0;
        for i in 0..index.total {
            let r = dsu.find(i);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = count;
                count += 1;
            }
            face_of[i] = id_of_root[r];
        }
        Faces {
            index,
            face_of,
            count,
        }
    }

    /// Connected components of the vertex graph; component 0 contains `Bnd`.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let nb = self.boxes.len();
        let nv = 1 + nb + self.anchors;
        let vid = |v: Vertex| match v {
            Vertex::Bnd => 0,
            Vertex::Box(k) => 1 + k,
            Vertex::Anchor(a) => 1 + nb + a,
        };
        let mut dsu = Dsu::new(nv);
        for s in &self.strands {
            dsu.union(vid(self.dart(s.a).0), vid(self.dart(s.b).0));
        }
        let mut comp = vec![usize::MAX; nv];
        let mut count = 0;
        let mut out = vec![0; nv];
        for (v, slot) in out.iter_mut().enumerate() {
            let r = dsu.find(v);
            if comp[r] == usize::MAX {
                comp[r] = count;
                count += 1;
            }
            *slot = comp[r];
        }
        (out, count)
    }

    pub(crate) fn vertex_id(&self, v: Vertex) -> usize {
        match v {
            Vertex::Bnd => 0,
            Vertex::Box(k) => 1 + k,
            Vertex::Anchor(a) => 1 + self.boxes.len() + a,
        }
    }

    /// Required direction at an endpoint: `Some(true)` if an oriented strand must leave it.
    pub fn endpoint_role(&self, e: End) -> Option<bool> {
        match e {
            End::Bottom(i) => {
                let l = self.bottom[i];
                l.is_directional().then(|| l.points_up())
            }
            End::Top(i) => {
                let l = self.top[i];
                l.is_directional().then(|| !l.points_up())
            }
            End::Leg(k, j) => {
                let legs = self.theory.box_legs(self.boxes[k]).ok()?;
                match legs.get(j)?.io {
                    Io::In => Some(false),
                    Io::Out => Some(true),
                    Io::None => None,
                }
            }
            End::Anchor(..) => None,
        }
    }

    /// Label demanded at an endpoint.
    pub fn endpoint_label(&self, e: End) -> Option<Label> {
        match e {
            End::Bottom(i) => self.bottom.get(i).copied(),
            End::Top(i) => self.top.get(i).copied(),
            End::Leg(k, j) => Some(self.theory.box_legs(self.boxes[k]).ok()?.get(j)?.label),
            End::Anchor(..) => None,
        }
    }

    /// Orientation forced by the endpoints, if any; errors on a clash.
    pub fn infer_flow(&self, a: End, b: End) -> Result<Option<Flow>> {
        let ra = self.endpoint_role(a);
        let rb = self.endpoint_role(b);
        let from_a = ra.map(|x| if x { Flow::AtoB } else { Flow::BtoA });
        let from_b = rb.map(|x| if x { Flow::BtoA } else { Flow::AtoB });
        match (from_a, from_b) {
            (Some(x), Some(y)) if x != y => Err(Error::Invalid(format!(
                "orientation clash between {a:?} and {b:?}"
            ))),
            (Some(x), _) | (None, Some(x)) => Ok(Some(x)),
            (None, None) => Ok(None),
        }
    }

    /// Whether a strand's label/flow is compatible with both of its endpoints.
    pub fn strand_compatible(&self, s: &Strand) -> bool {
        if self.theory.family.is_oriented() {
            if s.label == Label::Plain {
                return s.flow == Flow::None;
            }
            if s.flow == Flow::None {
                return false;
            }
            [s.a, s.b].into_iter().all(|e| match self.endpoint_role(e) {
                Some(r) => s.leaves(e) == Some(r),
                None => true,
            })
        } else {
            [s.a, s.b]
                .into_iter()
                .all(|e| match self.endpoint_label(e) {
                    Some(l) => l == s.label || l == Label::Plain || s.label == Label::Plain,
                    None => true,
                })
        }
    }

    /// Check alphabet, leg counts, labels, planarity and nesting.
    pub fn validate(&self) -> Result<()> {
        let th = &self.theory;
        for (side, word) in [("bottom", &self.bottom), ("top", &self.top)] {
            for (i, &l) in word.iter().enumerate() {
                if !th.allows(l) {
                    return Err(Error::Alphabet(format!(
                        "{side}[{i}] = {l} not allowed in {}",
                        th.family
                    )));
                }
            }
        }
        for (k, &kind) in self.boxes.iter().enumerate() {
            if !th.box_kinds().contains(&kind) {
                return Err(Error::Alphabet(format!(
                    "box {k}: {kind} is not a generator of {}",
                    th.family
                )));
            }
        }
        let species = th.oriented_species();
        for (i, s) in self.strands.iter().enumerate() {
            let ok = if th.family.is_oriented() {
                s.label == species || (s.label == Label::Plain && th.allows(Label::Plain))
            } else {
                th.allows(s.label)
            };
            if !ok {
                return Err(Error::Alphabet(format!(
                    "strand {i}: label {} not allowed",
                    s.label
                )));
            }
        }
        self.check_matching()?;
        for (i, s) in self.strands.iter().enumerate() {
            if !self.strand_compatible(s) {
                return Err(Error::Invalid(format!(
                    "strand {i} ({:?} - {:?}, {}) disagrees with its endpoints",
                    s.a, s.b, s.label
                )));
            }
        }
        self.check_planar()?;
        self.check_nesting()?;
        if th.family.is_shaded() {
            self.check_shading()?;
        }
        Ok(())
    }

    fn check_matching(&self) -> Result<()> {
        let idx = self.corner_index();
        let mut seen = vec![false; idx.total];
        let mut legs_seen = vec![0usize; self.boxes.len()];
        for s in &self.strands {
            for e in [s.a, s.b] {
                match e {
                    End::Bottom(i) if i >= self.bottom.len() => {
                        return Err(Error::Invalid(format!("bottom point {i} out of range")))
                    }
                    End::Top(i) if i >= self.top.len() => {
                        return Err(Error::Invalid(format!("top point {i} out of range")))
                    }
                    End::Leg(k, j) => {
                        if k >= self.boxes.len() {
                            return Err(Error::Invalid(format!("box {k} out of range")));
                        }
                        if j >= self.box_degree(k) {
                            return Err(Error::LegCount(format!(
                                "box {k} ({}) has {} legs, strand uses leg {j}",
                                self.boxes[k],
                                self.box_degree(k)
                            )));
                        }
                        legs_seen[k] += 1;
                    }
                    End::Anchor(a, side) if a >= self.anchors || side > 1 => {
                        return Err(Error::Invalid(format!(
                            "anchor endpoint {a}:{side} out of range"
                        )))
                    }
                    _ => {}
                }
                let (v, i) = self.dart(e);
                // darts and corners share numbering at every vertex
                let slot = idx.of(Corner::new(v, i));
                if std::mem::replace(&mut seen[slot], true) {
                    return Err(Error::Invalid(format!("endpoint {e:?} used twice")));
                }
            }
            if let (End::Anchor(x, _), End::Anchor(y, _)) = (s.a, s.b) {
                if x != y {
                    return Err(Error::Invalid(
                        "a strand joins two different anchors".into(),
                    ));
                }
            } else if matches!(s.a, End::Anchor(..)) || matches!(s.b, End::Anchor(..)) {
                return Err(Error::Invalid("anchors carry only free loops".into()));
            }
        }
        for (k, &n) in legs_seen.iter().enumerate() {
            if n != self.box_degree(k) {
                return Err(Error::LegCount(format!(
                    "box {k} ({}) needs {} legs, {n} connected",
                    self.boxes[k],
                    self.box_degree(k)
                )));
            }
        }
        for p in 0..self.boundary_len() {
            if !seen[p] {
                return Err(Error::Invalid(format!(
                    "boundary point {p} is not connected"
                )));
            }
        }
        for a in 0..self.anchors {
            if !seen[idx.of(Corner::new(Vertex::Anchor(a), 0))] {
                return Err(Error::Invalid(format!("anchor {a} carries no loop")));
            }
        }
        Ok(())
    }

    /// Euler's formula `V - E + F = 2` for every component.
    fn check_planar(&self) -> Result<()> {
        let (comp, ncomp) = self.components();
        let (idx, mut dsu) = self.corner_dsu(false);
        let mut v = vec![0i64; ncomp];
        let mut e = vec![0i64; ncomp];
        let mut f = vec![0i64; ncomp];
        for i in 0..(1 + self.boxes.len() + self.anchors) {
            v[comp[i]] += 1;
        }
        for s in &self.strands {
            e[comp[self.vertex_id(self.dart(s.a).0)]] += 1;
        }
        for i in 0..idx.total {
            if dsu.find(i) == i {
                let c = idx.corner(i);
                f[comp[self.vertex_id(c.v)]] += 1;
            }
        }
        for c in 0..ncomp {
            if v[c] - e[c] + f[c] != 2 {
                return Err(Error::Planarity(format!(
                    "component {c}: V - E + F = {} - {} + {} != 2",
                    v[c], e[c], f[c]
                )));
            }
        }
        Ok(())
    }

    fn check_nesting(&self) -> Result<()> {
        let (comp, ncomp) = self.components();
        let mut parent = vec![usize::MAX; ncomp];
        for &(child, par) in &self.nest {
            for c in [child, par] {
                let ok = match c.v {
                    Vertex::Bnd => c.c < self.boundary_len().max(1),
                    Vertex::Box(k) => k < self.boxes.len() && c.c < self.box_degree(k),
                    Vertex::Anchor(a) => a < self.anchors && c.c < 2,
                };
                if !ok {
                    return Err(Error::Invalid(format!("nest corner {c:?} out of range")));
                }
            }
            let cc = comp[self.vertex_id(child.v)];
            let pc = comp[self.vertex_id(par.v)];
            if cc == 0 {
                return Err(Error::Invalid(
                    "the boundary component cannot be nested".into(),
                ));
            }
            if cc == pc {
                return Err(Error::Invalid("component nested in itself".into()));
            }
            if parent[cc] != usize::MAX {
                return Err(Error::Invalid(format!("component {cc} nested twice")));
            }
            parent[cc] = pc;
        }
        for c in 1..ncomp {
            if parent[c] == usize::MAX {
                return Err(Error::Invalid(format!(
                    "floating component {c} has no nesting"
                )));
            }
            let mut cur = c;
            for _ in 0..ncomp {
                cur = parent[cur];
                if cur == 0 {
                    break;
                }
            }
            if cur != 0 {
                return Err(Error::Invalid("nesting has a cycle".into()));
            }
        }
        Ok(())
    }

    /// Shaded theories: faces 2-colour and box stars sit on consistent sides.
    pub(crate) fn check_shading(&self) -> Result<()> {
        self.shading().map(|_| ())
    }

    /// Whether the boxes ask for the region at the left of the boundary to be
    /// shaded; `None` without boxes. Errors if they cannot agree.
    pub fn shading(&self) -> Result<Option<bool>> {
        let faces = self.faces();
        let mut color = vec![u8::MAX; faces.count];
        let mut adj = vec![Vec::new(); faces.count];
        for s in &self.strands {
            let (l, r) = self.sides(s.a);
            let (fl, fr) = (faces.face(l), faces.face(r));
            adj[fl].push(fr);
            adj[fr].push(fl);
        }
        for start in 0..faces.count {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                for &g in &adj[f] {
                    if color[g] == u8::MAX {
                        color[g] = 1 - color[f];
                        stack.push(g);
                    } else if color[g] == color[f] {
                        return Err(Error::Planarity(
                            "faces cannot be shaded alternately".into(),
                        ));
                    }
                }
            }
        }
        let mut want: Option<u8> = None;
        for (k, &kind) in self.boxes.iter().enumerate() {
            let star = color[faces.face(Corner::new(Vertex::Box(k), 0))];
            let parity = star ^ u8::from(matches!(kind, BoxKind::V | BoxKind::Vstar));
            match want {
                None => want = Some(parity),
                Some(w) if w != parity => {
                    return Err(Error::Invalid(format!(
                        "box {k} ({kind}) has its star on the wrong shading"
                    )))
                }
                _ => {}
            }
        }
        let outer = color[faces.face(Corner::new(Vertex::Bnd, 0))];
        Ok(want.map(|w| w != outer))
    }

    /// Recompute `nest` from face classes of all corners.
    ///
    /// `class_of` gives the face class of every flat corner. Components are
    /// attached breadth-first from the boundary component, each to the
    /// smallest corner of its parent in the shared face.
    pub(crate) fn rebuild_nesting(&mut self, class_of: &[usize]) {
        let idx = self.corner_index();
        let (comp, ncomp) = self.components();
        let nclass = class_of.iter().copied().max().map_or(0, |m| m + 1);
        // min corner of each component in each class
        let mut by_class: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nclass];
        for i in 0..idx.total {
            let c = comp[self.vertex_id(idx.corner(i).v)];
            let list = &mut by_class[class_of[i]];
            if !list.iter().any(|&(cc, _)| cc == c) {
                list.push((c, i));
            }
        }
        let mut classes_of_comp: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for (k, list) in by_class.iter().enumerate() {
            for &(c, _) in list {
                classes_of_comp[c].push(k);
            }
        }
        let mut assigned = vec![false; ncomp];
        let mut outer_class = vec![usize::MAX; ncomp];
        let mut nest = Vec::new();
        assigned[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for &k in &classes_of_comp[cur] {
                if k == outer_class[cur] {
                    continue;
                }
                let parent_corner = by_class[k].iter().find(|&&(c, _)| c == cur).unwrap().1;
                for &(c, child_corner) in &by_class[k] {
                    if !assigned[c] {
                        assigned[c] = true;
                        outer_class[c] = k;
                        nest.push((idx.corner(child_corner), idx.corner(parent_corner)));
                        queue.push_back(c);
                    }
                }
            }
        }
        debug_assert!(assigned.iter().all(|&a| a), "disconnected face structure");
        nest.sort();
        self.nest = nest;
    }

    /// Strand attached at an endpoint.
    pub fn strand_at(&self, e: End) -> Option<&Strand> {
        self.strands.iter().find(|s| s.a == e || s.b == e)
    }

    /// Whether `family` has boxes other than the source generators.
    pub fn has_boxes(&self) -> bool {
        !self.boxes.is_empty()
    }
}

/// Builders for the elementary diagrams.
impl Diagram {
    /// Identity on a word.
    pub fn identity(theory: Theory, word: &[Label]) -> Diagram {
        let mut d = Diagram::empty(theory);
        d.bottom = word.to_vec();
        d.top = word.to_vec();
        for (i, &l) in word.iter().enumerate() {
            let (label, flow) = strand_style(&theory, l, Flow::AtoB);
            d.strands.push(Strand {
                a: End::Bottom(i),
                b: End::Top(i),
                label,
                flow,
            });
        }
        d
    }

    /// Labelled strands between plain endpoints: the projection `P_1`, `Q_1`, ...
    /// onto a summand of `X^{⊗k}`.
    pub fn projection(theory: Theory, labels: &[Label]) -> Diagram {
        let mut d = Diagram::empty(theory);
        d.bottom = vec![Label::Plain; labels.len()];
        d.top = vec![Label::Plain; labels.len()];
        for (i, &l) in labels.iter().enumerate() {
            let (label, flow) = strand_style(&theory, l, Flow::AtoB);
            d.strands.push(Strand {
                a: End::Bottom(i),
                b: End::Top(i),
                label,
                flow,
            });
        }
        d
    }

    /// A single generator box with its legs running to the boundary.
    pub fn generator(theory: Theory, kind: BoxKind) -> Result<Diagram> {
        let legs = theory.box_legs(kind)?;
        let (t, b) = theory.box_shape(kind);
        let (bottom, top) = theory.box_signature(kind)?;
        let mut d = Diagram::empty(theory);
        d.bottom = bottom;
        d.top = top;
        d.boxes = vec![kind];
        for (j, leg) in legs.iter().enumerate() {
            let pt = if j < t {
                End::Top(j)
            } else {
                End::Bottom(t + b - 1 - j)
            };
            let (label, flow) = match leg.io {
                Io::In => (theory.oriented_species(), Flow::AtoB),
                Io::Out => (theory.oriented_species(), Flow::BtoA),
                Io::None => (leg.label, Flow::None),
            };
            d.strands.push(Strand {
                a: pt,
                b: End::Leg(0, j),
                label,
                flow,
            });
        }
        Ok(d)
    }

    /// A free loop of the given label; oriented loops run from side 0 to side 1.
    pub fn push_loop(&mut self, label: Label, flow: Flow, parent: Corner) {
        let a = self.anchors;
        self.anchors += 1;
        self.strands.push(Strand {
            a: End::Anchor(a, 0),
            b: End::Anchor(a, 1),
            label,
            flow,
        });
        self.nest.push((Corner::new(Vertex::Anchor(a), 0), parent));
        self.nest.sort();
    }
}

/// How a boundary label is drawn as a strand running from `a` (bottom) to `b` (top).
pub(crate) fn strand_style(theory: &Theory, l: Label, up_flow: Flow) -> (Label, Flow) {
    if theory.family.is_oriented() && l.is_directional() {
        let f = if l.points_up() {
            up_flow
        } else {
            up_flow.reversed()
        };
        (theory.oriented_species(), f)
    } else {
        (l, Flow::None)
    }
}
