//! Canonical numbering of boxes, anchors and strands, so that diagrams equal
//! as planar maps compare equal as values.

use std::collections::{HashMap, VecDeque};

use super::{Corner, Diagram, End, Flow, Strand, Vertex};

enum Choice {
    Root(Vec<usize>),
    Boxes(Vec<usize>),
    Anchor(usize, bool),
}

struct Ctx<'a> {
    d: &'a Diagram,
    face: Vec<usize>,
    idx: super::CornerIndex,
    comp_boxes: Vec<Vec<usize>>,
    comp_anchor: Vec<Option<usize>>,
    outer: Vec<usize>,
    children: Vec<Vec<(usize, usize)>>,
    strand_at: HashMap<End, usize>,
    enc: Vec<Option<Vec<i64>>>,
    choice: Vec<Option<Choice>>,
}

impl Diagram {
    /// Representative of this diagram's isomorphism class as a planar map.
    pub fn canonical(&self) -> Diagram {
        let faces = self.faces();
        let (comp_of_vertex, ncomp) = self.components();
        let nb = self.boxes.len();
        let mut comp_boxes = vec![Vec::new(); ncomp];
        let mut comp_anchor = vec![None; ncomp];
        for k in 0..nb {
            comp_boxes[comp_of_vertex[1 + k]].push(k);
        }
        for a in 0..self.anchors {
            comp_anchor[comp_of_vertex[1 + nb + a]] = Some(a);
        }
        let mut strand_at = HashMap::new();
        for (i, s) in self.strands.iter().enumerate() {
            strand_at.insert(s.a, i);
            strand_at.insert(s.b, i);
        }
        // nesting tree from face classes
        let idx = &faces.index;
        let mut comps_in_class: Vec<Vec<usize>> = vec![Vec::new(); faces.count];
        let mut classes_of: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for i in 0..idx.total {
            let c = comp_of_vertex[self.vertex_id(idx.corner(i).v)];
            let k = faces.face_of[i];
            if !comps_in_class[k].contains(&c) {
                comps_in_class[k].push(c);
                classes_of[c].push(k);
            }
        }
        let mut outer = vec![usize::MAX; ncomp];
        let mut children = vec![Vec::new(); ncomp];
        let mut seen = vec![false; ncomp];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for &k in &classes_of[cur] {
                if k == outer[cur] {
                    continue;
                }
                for &c in &comps_in_class[k] {
                    if !seen[c] {
                        seen[c] = true;
                        outer[c] = k;
                        children[cur].push((k, c));
                        queue.push_back(c);
                    }
                }
            }
        }
        let mut ctx = Ctx {
            d: self,
            face: faces.face_of.clone(),
            idx: faces.index.clone(),
            comp_boxes,
            comp_anchor,
            outer,
            children,
            strand_at,
            enc: (0..ncomp).map(|_| None).collect(),
            choice: (0..ncomp).map(|_| None).collect(),
        };
        ctx.root_order();
        let mut new_boxes = Vec::with_capacity(nb);
        let mut new_anchors = Vec::with_capacity(self.anchors);
        ctx.place(0, &mut new_boxes, &mut new_anchors);

        let mut box_map = vec![0; nb];
        for (new, &old) in new_boxes.iter().enumerate() {
            box_map[old] = new;
        }
        let mut anchor_map = vec![(0, false); self.anchors];
        for (new, &(old, flip)) in new_anchors.iter().enumerate() {
            anchor_map[old] = (new, flip);
        }
        let map_end = |e: End| match e {
            End::Leg(k, j) => End::Leg(box_map[k], j),
            End::Anchor(a, s) => {
                let (n, flip) = anchor_map[a];
                End::Anchor(n, if flip { 1 - s } else { s })
            }
            e => e,
        };
        let mut out = Diagram::empty(self.theory);
        out.bottom = self.bottom.clone();
        out.top = self.top.clone();
        out.boxes = new_boxes.iter().map(|&k| self.boxes[k]).collect();
        out.anchors = self.anchors;
        out.strands = self
            .strands
            .iter()
            .map(|s| {
                let t = Strand {
                    a: map_end(s.a),
                    b: map_end(s.b),
                    ..*s
                };
                if t.a > t.b {
                    t.swapped()
                } else {
                    t
                }
            })
            .collect();
        out.strands.sort();
        let oidx = out.corner_index();
        let class_of: Vec<usize> = (0..oidx.total)
            .map(|i| {
                let c = oidx.corner(i);
                let old = match c.v {
                    Vertex::Bnd => c,
                    Vertex::Box(k) => Corner::new(Vertex::Box(new_boxes[k]), c.c),
                    Vertex::Anchor(a) => {
                        let (old, flip) = new_anchors[a];
                        Corner::new(Vertex::Anchor(old), if flip { 1 - c.c } else { c.c })
                    }
                };
                faces.face(old)
            })
            .collect();
        out.rebuild_nesting(&class_of);
        out
    }
}

impl Ctx<'_> {
    fn other(&self, e: End) -> (End, &Strand) {
        let s = &self.d.strands[self.strand_at[&e]];
        (s.other(e), s)
    }

    fn bfs_boxes(&self, seeds: &[End], start: Option<usize>) -> Vec<usize> {
        let mut order = Vec::new();
        let mut seen = vec![false; self.d.boxes.len()];
        let mut queue = VecDeque::new();
        let mut visit = |e: End, order: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
            if let End::Leg(k, _) = e {
                if !seen[k] {
                    seen[k] = true;
                    order.push(k);
                    queue.push_back(k);
                }
            }
        };
        if let Some(s) = start {
            visit(End::Leg(s, 0), &mut order, &mut queue);
        }
        for &e in seeds {
            let (o, _) = self.other(e);
            visit(o, &mut order, &mut queue);
        }
        while let Some(k) = queue.pop_front() {
            for j in 0..self.d.box_degree(k) {
                let (o, _) = self.other(End::Leg(k, j));
                visit(o, &mut order, &mut queue);
            }
        }
        order
    }

    fn root_order(&mut self) {
        let seeds: Vec<End> = (0..self.d.boundary_len())
            .map(|p| self.d.point_end(p))
            .collect();
        let order = self.bfs_boxes(&seeds, None);
        self.choice[0] = Some(Choice::Root(order));
    }

    fn corner_face(&self, c: Corner) -> usize {
        self.face[self.idx.of(c)]
    }

    /// Smallest `(local box, corner)` of a box component lying in face `k`.
    fn min_local_corner(&self, order: &[usize], k: usize) -> (usize, usize) {
        for (li, &b) in order.iter().enumerate() {
            for c in 0..self.d.box_degree(b) {
                if self.corner_face(Corner::new(Vertex::Box(b), c)) == k {
                    return (li, c);
                }
            }
        }
        unreachable!("component does not touch face")
    }

    fn encode(&mut self, c: usize) -> Vec<i64> {
        if let Some(e) = &self.enc[c] {
            return e.clone();
        }
        let kids: Vec<(usize, usize)> = self.children[c].clone();
        let kid_enc: Vec<Vec<i64>> = kids.iter().map(|&(_, ch)| self.encode(ch)).collect();
        let (tokens, choice) = if let Some(a) = self.comp_anchor[c] {
            let s = self.d.strands[self.strand_at[&End::Anchor(a, 0)]];
            let oriented = s.flow != Flow::None;
            let oc = (0..2)
                .find(|&x| self.corner_face(Corner::new(Vertex::Anchor(a), x)) == self.outer[c])
                .unwrap();
            let flip = if oriented {
                s.leaves(End::Anchor(a, 0)) != Some(true)
            } else {
                oc == 1
            };
            let attach = if flip { 1 - oc } else { oc };
            let mut t = vec![2, s.label as i64, oriented as i64, attach as i64];
            let mut ks = kid_enc.clone();
            ks.sort();
            push_children(&mut t, ks.into_iter().map(|e| ((0, 0), e)).collect());
            (t, Choice::Anchor(a, flip))
        } else {
            let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
            for &s in &self.comp_boxes[c] {
                let order = self.bfs_boxes(&[], Some(s));
                let mut local = HashMap::new();
                for (li, &b) in order.iter().enumerate() {
                    local.insert(b, li);
                }
                let mut t = vec![1, order.len() as i64];
                for &b in &order {
                    t.push(self.d.boxes[b] as i64);
                    for j in 0..self.d.box_degree(b) {
                        let (o, st) = self.other(End::Leg(b, j));
                        let (ob, oj) = match o {
                            End::Leg(k, j2) => (local[&k], j2),
                            _ => unreachable!("floating box joined to boundary"),
                        };
                        let role = match st.leaves(End::Leg(b, j)) {
                            None => 0,
                            Some(false) => 1,
                            Some(true) => 2,
                        };
                        t.extend([ob as i64, oj as i64, st.label as i64, role]);
                    }
                }
                let (ab, ac) = self.min_local_corner(&order, self.outer[c]);
                t.extend([ab as i64, ac as i64]);
                let mut ks: Vec<((usize, usize), Vec<i64>)> = kids
                    .iter()
                    .zip(&kid_enc)
                    .map(|(&(k, _), e)| (self.min_local_corner(&order, k), e.clone()))
                    .collect();
                ks.sort();
                push_children(&mut t, ks);
                if best.as_ref().is_none_or(|(bt, _)| t < *bt) {
                    best = Some((t, order));
                }
            }
            let (t, order) = best.expect("empty component");
            (t, Choice::Boxes(order))
        };
        self.choice[c] = Some(choice);
        self.enc[c] = Some(tokens.clone());
        tokens
    }

    fn place(&mut self, c: usize, boxes: &mut Vec<usize>, anchors: &mut Vec<(usize, bool)>) {
        if c != 0 {
            self.encode(c);
        }
        let kids = self.children[c].clone();
        let mut keyed: Vec<((usize, usize), Vec<i64>, usize)> = Vec::new();
        match self.choice[c].as_ref().unwrap() {
            Choice::Root(order) => {
                let order = order.clone();
                boxes.extend(order.iter().copied());
                let base = boxes.len() - order.len();
                for &(k, ch) in &kids {
                    let key = self.root_corner_key(&order, base, k);
                    let e = self.encode(ch);
                    keyed.push((key, e, ch));
                }
            }
            Choice::Boxes(order) => {
                let order = order.clone();
                boxes.extend(order.iter().copied());
                for &(k, ch) in &kids {
                    let key = self.min_local_corner(&order, k);
                    let e = self.encode(ch);
                    keyed.push((key, e, ch));
                }
            }
            Choice::Anchor(a, flip) => {
                anchors.push((*a, *flip));
                for &(_, ch) in &kids {
                    let e = self.encode(ch);
                    keyed.push(((0, 0), e, ch));
                }
            }
        }
        keyed.sort();
        for (_, _, ch) in keyed {
            self.place(ch, boxes, anchors);
        }
    }

    fn root_corner_key(&self, order: &[usize], base: usize, k: usize) -> (usize, usize) {
        for g in 0..self.d.boundary_len().max(1) {
            if self.corner_face(Corner::new(Vertex::Bnd, g)) == k {
                return (0, g);
            }
        }
        for (li, &b) in order.iter().enumerate() {
            for c in 0..self.d.box_degree(b) {
                if self.corner_face(Corner::new(Vertex::Box(b), c)) == k {
                    return (1 + base + li, c);
                }
            }
        }
        unreachable!("root does not touch face")
    }
}

fn push_children(t: &mut Vec<i64>, kids: Vec<((usize, usize), Vec<i64>)>) {
    t.push(kids.len() as i64);
    for ((x, y), e) in kids {
        t.extend([x as i64, y as i64, e.len() as i64]);
        t.extend(e);
    }
}
