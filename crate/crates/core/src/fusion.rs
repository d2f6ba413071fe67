//! Simple objects, principal graphs and hom spaces.
//!
//! Every simple object is invertible, so a word in the generators is simple
//! and its class is its image in the van Kampen group: `Z_m` for the arrow
//! families (`Q_1 ↦ 1`, `P_1 ↦ -1`) and the dihedral group generated by the
//! two strand colours otherwise. Hom spaces are checked independently through
//! Gram matrices of explicit spanning sets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::{json, Value};

use crate::cyclotomic::CycloScalar;
use crate::diagram::{joining_strand, Diagram, End, Morphism, Side};
use crate::error::{Error, Result};
use crate::evaluate::{eval_closed, inner_product};
use crate::theory::{Family, Label, Theory};

/// Element of the grading group, reduced for its theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grade {
    Cyclic(i64),
    /// `ρ^rot b^refl`, where the two colours act as `b` and `ρ b`.
    Dihedral {
        rot: i64,
        refl: bool,
    },
}

fn is_dihedral(th: &Theory) -> bool {
    matches!(
        th.family,
        Family::ShadedAOdd | Family::ShadedAInf | Family::ColorAOdd | Family::ColorAInf
    )
}

fn reduce(th: &Theory, g: Grade) -> Grade {
    let m = th.group_modulus() as i64;
    let r = |k: i64| if m == 0 { k } else { k.rem_euclid(m) };
    match g {
        Grade::Cyclic(k) => Grade::Cyclic(r(k)),
        Grade::Dihedral { rot, refl } => Grade::Dihedral { rot: r(rot), refl },
    }
}

pub fn identity_grade(th: &Theory) -> Grade {
    if is_dihedral(th) {
        Grade::Dihedral {
            rot: 0,
            refl: false,
        }
    } else {
        Grade::Cyclic(0)
    }
}

/// Image of a single strand label.
pub fn letter(th: &Theory, l: Label) -> Result<Grade> {
    let g = match (l, is_dihedral(th)) {
        (Label::Red, true) => Grade::Dihedral { rot: 1, refl: true },
        (Label::Blue, true) => Grade::Dihedral { rot: 0, refl: true },
        (Label::Down | Label::Dot | Label::Plus, false) => Grade::Cyclic(1),
        (Label::Up | Label::Minus, false) => Grade::Cyclic(-1),
        _ => {
            return Err(Error::Alphabet(format!(
                "{l} is not a simple generator of {}",
                th.family
            )))
        }
    };
    if !th.allows(l) {
        return Err(Error::Alphabet(format!("{l} not allowed in {}", th.family)));
    }
    Ok(reduce(th, g))
}

pub fn mul(th: &Theory, a: Grade, b: Grade) -> Grade {
    let g = match (a, b) {
        (Grade::Cyclic(x), Grade::Cyclic(y)) => Grade::Cyclic(x + y),
        (Grade::Dihedral { rot: r1, refl: s1 }, Grade::Dihedral { rot: r2, refl: s2 }) => {
            Grade::Dihedral {
                rot: if s1 { r1 - r2 } else { r1 + r2 },
                refl: s1 ^ s2,
            }
        }
        _ => unreachable!("grades from different groups"),
    };
    reduce(th, g)
}

pub fn grading(th: &Theory, w: &[Label]) -> Result<Grade> {
    w.iter().try_fold(identity_grade(th), |acc, &l| {
        Ok(mul(th, acc, letter(th, l)?))
    })
}

/// `dim Hom(w1, w2)`: one when the words have the same class, else zero.
pub fn hom_dim(th: &Theory, w1: &[Label], w2: &[Label]) -> Result<usize> {
    Ok(usize::from(grading(th, w1)? == grading(th, w2)?))
}

/// The two generating letters of the fusion graph.
fn generators(th: &Theory) -> Result<[Label; 2]> {
    match th.family {
        Family::VecCyclic => Err(Error::Invalid("vec-cyclic has a single generator".into())),
        Family::Su2Rep => Ok([Label::Plus, Label::Minus]),
        _ => th
            .plain_parts()
            .ok_or_else(|| Error::Invalid(format!("{} has no strand generators", th.family))),
    }
}

/// Shortest word in the class `g`, found breadth first with `P_1`/red tried first.
pub fn shortest_word(th: &Theory, g: Grade) -> Result<Vec<Label>> {
    let gens = generators(th)?;
    let g = reduce(th, g);
    let start = identity_grade(th);
    let mut seen = BTreeMap::from([(start, Vec::new())]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let word = seen[&x].clone();
        if x == g {
            return Ok(word);
        }
        for l in gens {
            let y = mul(th, x, letter(th, l)?);
            if !seen.contains_key(&y) {
                let mut w = word.clone();
                w.push(l);
                seen.insert(y, w);
                queue.push_back(y);
            }
        }
    }
    Err(Error::Internal(format!("{g:?} is unreachable in {th}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simple {
    pub grade: Grade,
    pub word: Vec<Label>,
}

pub fn simple_decompose(th: &Theory, w: &[Label]) -> Result<Simple> {
    let grade = grading(th, w)?;
    Ok(Simple {
        grade,
        word: shortest_word(th, grade)?,
    })
}

/// `tr(id_w)`, closing the identity on the right.
pub fn trace_of_word(th: &Theory, w: &[Label]) -> Result<CycloScalar> {
    eval_closed(&Morphism::identity(*th, w).trace_close(Side::Right)?)
}

pub fn word_string(w: &[Label]) -> String {
    if w.is_empty() {
        "∅".into()
    } else {
        w.iter().map(|l| l.name()).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Clone, Debug)]
pub struct GraphVertex {
    pub grade: Grade,
    pub word: Vec<Label>,
    pub trace: CycloScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub mult: usize,
}

#[derive(Clone, Debug)]
pub struct FusionGraph {
    pub theory: Theory,
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
    /// Whether every neighbour of every vertex is present.
    pub complete: bool,
}

/// Classes of simples joined by tensoring with `X = P_1 ⊕ Q_1`; `Ã_∞`
/// families need a radius.
pub fn principal_graph(th: &Theory, radius: Option<usize>) -> Result<FusionGraph> {
    let gens = generators(th)?;
    if th.family.is_infinite() && radius.is_none() {
        return Err(Error::Invalid(format!(
            "{} has an infinite principal graph; give a radius",
            th.family
        )));
    }
    let limit = radius.unwrap_or(usize::MAX);
    let start = identity_grade(th);
    let mut index = BTreeMap::from([(start, 0usize)]);
    let mut order = vec![(start, 0usize)];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let depth = order[index[&x]].1;
        if depth == limit {
            continue;
        }
        for l in gens {
            let y = mul(th, x, letter(th, l)?);
            if !index.contains_key(&y) {
                index.insert(y, order.len());
                order.push((y, depth + 1));
                queue.push_back(y);
            }
        }
    }
    let mut vertices = Vec::with_capacity(order.len());
    for &(g, _) in &order {
        let word = shortest_word(th, g)?;
        let trace = trace_of_word(th, &word)?;
        vertices.push(GraphVertex {
            grade: g,
            word,
            trace,
        });
    }
    let mut arcs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut complete = true;
    for (i, &(g, _)) in order.iter().enumerate() {
        for l in gens {
            match index.get(&mul(th, g, letter(th, l)?)) {
                // each edge is seen once from either end; count it from the smaller one
                Some(&j) if i <= j => *arcs.entry((i, j)).or_default() += 1,
                Some(_) => {}
                None => complete = false,
            }
        }
    }
    let edges = arcs
        .into_iter()
        .map(|((a, b), mult)| GraphEdge { a, b, mult })
        .collect();
    Ok(FusionGraph {
        theory: *th,
        vertices,
        edges,
        complete,
    })
}

impl FusionGraph {
    /// Neighbours with multiplicity.
    pub fn neighbours(&self, v: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some((e.b, e.mult))
                } else if e.b == v {
                    Some((e.a, e.mult))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours(v)
            .iter()
            .map(|&(w, m)| if w == v { 2 * m } else { m })
            .sum()
    }

    /// Vertices all of whose neighbours were generated.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.degree(v) == 2)
            .collect()
    }

    /// `2 tr(P) = Σ_{Q ∈ N(P)} tr(Q)` at every interior vertex.
    pub fn trace_formula_holds(&self) -> bool {
        self.interior().into_iter().all(|v| {
            let lhs = self.vertices[v].trace.mul_ref(&CycloScalar::from_int(2));
            let rhs: CycloScalar = self
                .neighbours(v)
                .into_iter()
                .map(|(w, m)| {
                    self.vertices[w]
                        .trace
                        .mul_ref(&CycloScalar::from_int(m as i64))
                })
                .sum();
            lhs == rhs
        })
    }

    /// Connected, with every vertex of degree two.
    pub fn is_cycle(&self) -> bool {
        let n = self.vertices.len();
        if !self.complete || n == 0 || (0..n).any(|v| self.degree(v) != 2) {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (w, _) in self.neighbours(v) {
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theory": self.theory.to_json(),
            "complete": self.complete,
            "trace_formula": self.trace_formula_holds(),
            "vertices": self.vertices.iter().enumerate().map(|(i, v)| json!({
                "id": i,
                "word": word_string(&v.word),
                "trace": v.trace.to_string(),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({"a": e.a, "b": e.b, "mult": e.mult})).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph principal {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!(
                "  v{i} [label=\"{}\\ntr={}\"];\n",
                word_string(&v.word),
                v.trace
            ));
        }
        for e in &self.edges {
            for _ in 0..e.mult {
                s.push_str(&format!("  v{} -- v{};\n", e.a, e.b));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Rows of the Bratteli diagram of `X^{⊗k}`: class multiplicities per row.
#[derive(Clone, Debug)]
pub struct Bratteli {
    pub theory: Theory,
    pub rows: Vec<Vec<(Simple, u64)>>,
}

pub fn bratteli(th: &Theory, rows: usize) -> Result<Bratteli> {
    let gens = generators(th)?;
    let mut cur = BTreeMap::from([(identity_grade(th), 1u64)]);
    let mut out = Vec::with_capacity(rows + 1);
    for k in 0..=rows {
        let mut row = Vec::new();
        for (&g, &m) in &cur {
            row.push((
                Simple {
                    grade: g,
                    word: shortest_word(th, g)?,
                },
                m,
            ));
        }
        row.sort_by(|a, b| (a.0.word.len(), &a.0.word).cmp(&(b.0.word.len(), &b.0.word)));
        out.push(row);
        if k == rows {
            break;
        }
        let mut next = BTreeMap::new();
        for (&g, &m) in &cur {
            for l in gens {
                *next.entry(mul(th, g, letter(th, l)?)).or_insert(0u64) += m;
            }
        }
        cur = next;
    }
    Ok(Bratteli {
        theory: *th,
        rows: out,
    })
}

impl Bratteli {
    /// `dim End(X^{⊗k})`, the sum of squared multiplicities of row `k`.
    pub fn dim(&self, k: usize) -> u64 {
        self.rows[k].iter().map(|(_, m)| m * m).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theory": self.theory.to_json(),
            "rows": self.rows.iter().enumerate().map(|(k, row)| json!({
                "k": k,
                "dim": self.dim(k),
                "classes": row.iter().map(|(s, m)| json!({"word": word_string(&s.word), "mult": m})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n");
        let th = &self.theory;
        for (k, row) in self.rows.iter().enumerate() {
            for (i, (c, m)) in row.iter().enumerate() {
                s.push_str(&format!(
                    "  r{k}_{i} [label=\"{} : {m}\"];\n",
                    word_string(&c.word)
                ));
            }
        }
        for k in 1..self.rows.len() {
            for (i, (c, _)) in self.rows[k - 1].iter().enumerate() {
                for (j, (d, _)) in self.rows[k].iter().enumerate() {
                    let joined = generators(th)
                        .map(|gens| {
                            gens.iter().any(|&l| {
                                letter(th, l).is_ok_and(|x| mul(th, c.grade, x) == d.grade)
                            })
                        })
                        .unwrap_or(false);
                    if joined {
                        s.push_str(&format!("  r{}_{i} -> r{k}_{j};\n", k - 1));
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

enum Block {
    Arc(usize, usize),
    Boxed(Vec<usize>),
}

/// Diagrams `∅ → w` whose strands are arcs between boundary points or legs of
/// boxes wired straight to the boundary, with at most `max_boxes` boxes.
/// Boxes joined to each other or to themselves reduce, so together with the
/// arcs these span the hom space. Each box is attached in one rotation only:
/// a rotated box is a scalar times another generator by the click relations.
///
/// In shaded families the hom spaces with the left region unshaded and shaded
/// are different; `shaded` picks one.
pub fn spanning_diagrams(
    th: &Theory,
    w: &[Label],
    max_boxes: usize,
    shaded: bool,
) -> Result<Vec<Diagram>> {
    let degree = th
        .box_kinds()
        .first()
        .map(|&k| th.box_legs(k).map(|l| l.len()))
        .transpose()?;
    let mut structures = Vec::new();
    fill(
        w,
        &mut vec![(0, w.len())],
        degree,
        max_boxes,
        th,
        &mut Vec::new(),
        &mut structures,
    );
    let mut out = BTreeSet::new();
    for blocks in structures {
        let nboxes = blocks
            .iter()
            .filter(|b| matches!(b, Block::Boxed(_)))
            .count();
        let mut choices: Vec<Vec<crate::theory::BoxKind>> = vec![Vec::new()];
        for _ in 0..nboxes {
            choices = choices
                .into_iter()
                .flat_map(|c| {
                    th.box_kinds().iter().map(move |&k| {
                        let mut c = c.clone();
                        c.push(k);
                        c
                    })
                })
                .collect();
        }
        for choice in choices {
            if let Some(d) = build(th, w, &blocks, &choice) {
                if th.family.is_shaded() && d.shading()? == Some(!shaded) {
                    continue;
                }
                out.insert(d.canonical());
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn arc_ok(th: &Theory, x: Label, y: Label) -> bool {
    if x == Label::Plain || y == Label::Plain {
        return true;
    }
    if th.family.is_oriented() {
        x.points_up() != y.points_up()
    } else {
        x == y
    }
}

fn fill(
    w: &[Label],
    pending: &mut Vec<(usize, usize)>,
    degree: Option<usize>,
    budget: usize,
    th: &Theory,
    acc: &mut Vec<Block>,
    out: &mut Vec<Vec<Block>>,
) {
    let Some((lo, hi)) = pending.pop() else {
        out.push(acc.iter().map(clone_block).collect());
        return;
    };
    if lo == hi {
        fill(w, pending, degree, budget, th, acc, out);
        pending.push((lo, hi));
        return;
    }
    for p in lo + 1..hi {
        if !arc_ok(th, w[lo], w[p]) {
            continue;
        }
        acc.push(Block::Arc(lo, p));
        pending.push((p + 1, hi));
        pending.push((lo + 1, p));
        fill(w, pending, degree, budget, th, acc, out);
        pending.truncate(pending.len() - 2);
        acc.pop();
    }
    if let Some(l) = degree.filter(|&l| budget > 0 && l > 0 && hi - lo >= l) {
        let mut pos = vec![lo];
        choose_box(
            w,
            lo,
            hi,
            l,
            &mut pos,
            pending,
            degree,
            budget - 1,
            th,
            acc,
            out,
        );
    }
    pending.push((lo, hi));
}

#[allow(clippy::too_many_arguments)]
fn choose_box(
    w: &[Label],
    lo: usize,
    hi: usize,
    l: usize,
    pos: &mut Vec<usize>,
    pending: &mut Vec<(usize, usize)>,
    degree: Option<usize>,
    budget: usize,
    th: &Theory,
    acc: &mut Vec<Block>,
    out: &mut Vec<Vec<Block>>,
) {
    if pos.len() == l {
        let n = pending.len();
        pending.push((pos[l - 1] + 1, hi));
        for t in (0..l - 1).rev() {
            pending.push((pos[t] + 1, pos[t + 1]));
        }
        acc.push(Block::Boxed(pos.clone()));
        fill(w, pending, degree, budget, th, acc, out);
        acc.pop();
        pending.truncate(n);
        return;
    }
    let last = *pos.last().unwrap();
    let remaining = l - pos.len();
    for p in last + 1..=hi - remaining {
        pos.push(p);
        choose_box(w, lo, hi, l, pos, pending, degree, budget, th, acc, out);
        pos.pop();
    }
}

fn clone_block(b: &Block) -> Block {
    match b {
        Block::Arc(a, b) => Block::Arc(*a, *b),
        Block::Boxed(v) => Block::Boxed(v.clone()),
    }
}

fn build(
    th: &Theory,
    w: &[Label],
    blocks: &[Block],
    choice: &[crate::theory::BoxKind],
) -> Option<Diagram> {
    let mut d = Diagram::empty(*th);
    d.top = w.to_vec();
    d.boxes = choice.to_vec();
    let mut k = 0;
    let mut strands = Vec::new();
    for b in blocks {
        match b {
            Block::Arc(i, j) => strands.push(joining_strand(&d, End::Top(*i), End::Top(*j)).ok()?),
            Block::Boxed(pos) => {
                for (t, &p) in pos.iter().enumerate() {
                    strands.push(joining_strand(&d, End::Top(p), End::Leg(k, t)).ok()?);
                }
                k += 1;
            }
        }
    }
    d.strands = strands;
    d.validate().ok()?;
    Some(d)
}

#[derive(Clone, Debug)]
pub struct Gram {
    pub diagrams: Vec<Diagram>,
    pub matrix: Vec<Vec<CycloScalar>>,
    pub rank: usize,
    pub hermitian: bool,
    pub psd: bool,
}

/// Gram matrix `⟨d_i, d_j⟩` of the spanning set of `Hom(∅, w)`, left region unshaded.
pub fn gram_matrix(th: &Theory, w: &[Label], max_boxes: usize) -> Result<Gram> {
    gram_matrix_shaded(th, w, max_boxes, false)
}

pub fn gram_matrix_shaded(
    th: &Theory,
    w: &[Label],
    max_boxes: usize,
    shaded: bool,
) -> Result<Gram> {
    let diagrams = spanning_diagrams(th, w, max_boxes, shaded)?;
    let ms: Vec<Morphism> = diagrams
        .iter()
        .cloned()
        .map(Morphism::from_diagram)
        .collect();
    let n = ms.len();
    let mut matrix = vec![vec![CycloScalar::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = inner_product(&ms[i], &ms[j])?;
            if i != j {
                matrix[j][i] = inner_product(&ms[j], &ms[i])?;
            }
            matrix[i][j] = v;
        }
    }
    let hermitian = (0..n).all(|i| (0..n).all(|j| matrix[i][j] == matrix[j][i].conj()));
    let rank = rank(&matrix);
    let psd = hermitian && is_psd(&matrix)?;
    Ok(Gram {
        diagrams,
        matrix,
        rank,
        hermitian,
        psd,
    })
}

/// Rank by exact Gaussian elimination over the cyclotomic field.
pub fn rank(matrix: &[Vec<CycloScalar>]) -> usize {
    let mut a: Vec<Vec<CycloScalar>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul_ref(&inv);
            for j in c..cols {
                let x = a[r][j].mul_ref(&f);
                a[i][j] = a[i][j].sub_ref(&x);
            }
        }
        r += 1;
    }
    r
}

/// Positive semidefiniteness of a Hermitian matrix by symmetric elimination.
/// Pivots lie in the real subfield; their signs are read off numerically,
/// which is safe because an exactly nonzero pivot is far from zero here.
pub fn is_psd(matrix: &[Vec<CycloScalar>]) -> Result<bool> {
    let mut a: Vec<Vec<CycloScalar>> = matrix.to_vec();
    let n = a.len();
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        let Some(pos) = live.iter().position(|&i| !a[i][i].is_zero()) else {
            // a zero diagonal forces the whole remaining block to vanish
            return Ok(live
                .iter()
                .all(|&i| live.iter().all(|&j| a[i][j].is_zero())));
        };
        let p = live.remove(pos);
        let d = a[p][p].clone();
        let (re, im) = d.to_complex();
        if im.abs() > 1e-9 {
            return Err(Error::Internal("Hermitian pivot is not real".into()));
        }
        if re.abs() < 1e-9 {
            return Err(Error::Internal("pivot too close to zero to sign".into()));
        }
        if re < 0.0 {
            return Ok(false);
        }
        let dinv = d.inv().expect("nonzero pivot");
        for &i in &live {
            if a[i][p].is_zero() {
                continue;
            }
            let f = a[i][p].mul_ref(&dinv);
            for &j in &live {
                let x = f.mul_ref(&a[p][j]);
                a[i][j] = a[i][j].sub_ref(&x);
            }
        }
    }
    Ok(true)
}

impl Gram {
    pub fn to_json(&self) -> Value {
        json!({
            "size": self.diagrams.len(),
            "rank": self.rank,
            "hermitian": self.hermitian,
            "psd": self.psd,
            "matrix": self.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// The arrow-family letters `P_1 = Up`, `Q_1 = Down`, or the colours otherwise.
pub fn simple_letters(th: &Theory) -> Result<[Label; 2]> {
    generators(th)
}

/// Boxes needed to close a boundary of `len` points.
pub fn box_bound(th: &Theory, len: usize) -> usize {
    match th.box_kinds().first().and_then(|&k| th.box_legs(k).ok()) {
        Some(legs) if !legs.is_empty() => len / legs.len(),
        _ => 0,
    }
}

/// One Gram matrix of `Hom(∅, word)` set against the grading.
#[derive(Clone, Debug)]
pub struct HomDimCheck {
    pub word: Vec<Label>,
    /// Left region shaded (shaded families only).
    pub shaded: bool,
    pub size: usize,
    pub rank: usize,
    pub predicted: usize,
    pub hermitian: bool,
    pub psd: bool,
    /// `hom_dim(dual(w1), w2)` is the same for every split `word = w2 w1`.
    pub cuts_agree: bool,
}

impl HomDimCheck {
    pub fn ok(&self) -> bool {
        self.rank == self.predicted && self.hermitian && self.psd && self.cuts_agree
    }
}

/// Gram rank against `hom_dim` for every word in the simple letters of length
/// at most `max_len`, in both shadings where there are two.
pub fn check_hom_dims(th: &Theory, max_len: usize) -> Result<Vec<HomDimCheck>> {
    let letters = simple_letters(th)?;
    let shadings: &[bool] = if th.family.is_shaded() {
        &[false, true]
    } else {
        &[false]
    };
    let mut out = Vec::new();
    let mut words: Vec<Vec<Label>> = vec![vec![]];
    for len in 0..=max_len {
        for w in &words {
            let predicted = hom_dim(th, &[], w)?;
            let mut cuts_agree = true;
            for cut in 0..=len {
                cuts_agree &=
                    hom_dim(th, &crate::diagram::dual_word(&w[cut..]), &w[..cut])? == predicted;
            }
            for &shaded in shadings {
                let g = gram_matrix_shaded(th, w, box_bound(th, len), shaded)?;
                out.push(HomDimCheck {
                    word: w.clone(),
                    shaded,
                    size: g.diagrams.len(),
                    rank: g.rank,
                    predicted,
                    hermitian: g.hermitian,
                    psd: g.psd,
                    cuts_agree,
                });
            }
        }
        words = words
            .iter()
            .flat_map(|w| letters.iter().map(move |&l| [w.as_slice(), &[l]].concat()))
            .collect();
    }
    Ok(out)
}
