//! Seeded random closed diagrams.
//!
//! A diagram `∅ → w` is grown by inserting cups and fully bent, clicked
//! generator boxes into the top word and capping adjacent points; it is then
//! closed with caps. Every step is a well-typed composition, so the result is
//! planar and valid by construction. Draws are planned on boundary words first
//! and only built once the plan is known to close.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{dual_word, Diagram, End, Flow, Vertex};
use crate::theory::{BoxKind, Label, Theory};

const RETRIES: usize = 24;

/// Random closed diagram with at most `max_boxes` boxes and `max_loops` cups
/// that are not part of a bent box. Deterministic in `seed`.
pub fn random_closed(theory: Theory, max_boxes: usize, max_loops: usize, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pieces = Pieces::new(&theory);
    if pieces.cups.is_empty() {
        return Diagram::empty(theory);
    }
    loop {
        let boxes = if pieces.boxes.is_empty() {
            0
        } else {
            rng.gen_range(0..=max_boxes)
        };
        // some box counts can never close (odd ones, for these theories); a
        // box-free plan always does, so this terminates
        for _ in 0..RETRIES {
            let cups = rng.gen_range(0..=max_loops);
            if let Some(ops) = plan(&pieces, boxes, cups, true, &mut rng) {
                if let Some(d) = build(&theory, &pieces, &ops) {
                    return d;
                }
            }
        }
    }
}

/// Random open diagram `∅ → w`, grown like [`random_closed`] but left unclosed.
pub fn random_state(theory: Theory, max_boxes: usize, max_loops: usize, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pieces = Pieces::new(&theory);
    if pieces.cups.is_empty() {
        return Diagram::empty(theory);
    }
    loop {
        let boxes = if pieces.boxes.is_empty() {
            0
        } else {
            rng.gen_range(0..=max_boxes)
        };
        let cups = rng.gen_range(0..=max_loops);
        if let Some(d) = plan(&pieces, boxes, cups, false, &mut rng)
            .and_then(|ops| build(&theory, &pieces, &ops))
        {
            return d;
        }
    }
}

/// Building blocks `∅ → w`: cups, and every click of every bent generator.
struct Pieces {
    cups: Vec<Diagram>,
    /// Per box kind, its bent drawing clicked `0..L` times.
    boxes: Vec<Vec<Piece>>,
    /// Label pairs a cap can join.
    caps: Vec<(Label, Label)>,
}

struct Piece {
    diagram: Diagram,
    /// Whether the region left of the piece is shaded.
    shading: Option<bool>,
}

impl Pieces {
    fn new(th: &Theory) -> Pieces {
        let cups = th
            .alphabet()
            .into_iter()
            .filter_map(|l| crate::diagram::cup(*th, l, l.flipped()))
            .collect();
        let boxes = th
            .box_kinds()
            .iter()
            .filter_map(|&k| bent_box(th, k))
            .map(|b| {
                (0..b.top.len().max(1) as i64)
                    .map(|s| {
                        let diagram = b.click(s);
                        Piece {
                            shading: diagram.shading().ok().flatten(),
                            diagram,
                        }
                    })
                    .collect()
            })
            .collect();
        let alphabet = th.alphabet();
        let caps = alphabet
            .iter()
            .flat_map(|&a| alphabet.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| crate::diagram::cap(*th, a, b).is_some())
            .collect();
        Pieces { cups, boxes, caps }
    }
}

/// Generator `k` with every leg bent to the top.
fn bent_box(th: &Theory, k: BoxKind) -> Option<Diagram> {
    let g = Diagram::generator(*th, k).ok()?;
    let back = dual_word(&g.bottom);
    let cups = crate::diagram::nested_cups(*th, &g.bottom, &back, true).ok()?;
    g.tensor(&Diagram::identity(*th, &back))
        .ok()?
        .compose(&cups)
        .ok()?
}

enum Op {
    Cup(usize, usize),
    Box(usize, usize, usize),
    Cap(usize),
}

fn plan(
    pieces: &Pieces,
    boxes: usize,
    cups: usize,
    close: bool,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Op>> {
    let mut order = vec![false; cups];
    order.extend(std::iter::repeat_n(true, boxes));
    order.shuffle(rng);
    let can_cap = |w: &[Label], i: usize| pieces.caps.contains(&(w[i], w[i + 1]));
    let mut word: Vec<Label> = Vec::new();
    // shading of the leftmost region, fixed by the first box
    let mut base: Option<bool> = None;
    let mut ops = Vec::new();
    for is_box in order {
        let at = rng.gen_range(0..=word.len());
        let (op, top) = if is_box {
            let k = rng.gen_range(0..pieces.boxes.len());
            let variants = &pieces.boxes[k];
            let mut s = rng.gen_range(0..variants.len());
            let here = base.map(|b| b ^ (at % 2 == 1));
            match (here, variants[s].shading) {
                // one more click flips the shading of the piece
                (Some(h), Some(p)) if h != p => s = (s + 1) % variants.len(),
                (None, Some(p)) => base = Some(p ^ (at % 2 == 1)),
                _ => {}
            }
            (Op::Box(k, s, at), &variants[s].diagram.top)
        } else {
            let c = pick_cup(pieces, rng);
            (Op::Cup(c, at), &pieces.cups[c].top)
        };
        word.splice(at..at, top.iter().copied());
        ops.push(op);
        while word.len() >= 2 && rng.gen_bool(0.3) {
            let i = rng.gen_range(0..word.len() - 1);
            if !can_cap(&word, i) {
                break;
            }
            word.drain(i..i + 2);
            ops.push(Op::Cap(i));
        }
    }
    while close && !word.is_empty() {
        let spots: Vec<usize> = (0..word.len() - 1).filter(|&i| can_cap(&word, i)).collect();
        let &i = spots.choose(rng)?;
        word.drain(i..i + 2);
        ops.push(Op::Cap(i));
    }
    Some(ops)
}

fn pick_cup(pieces: &Pieces, rng: &mut ChaCha8Rng) -> usize {
    let n = pieces.cups.len();
    // the plain cup comes last and expands into sums, so keep it rarer
    if n > 2 && rng.gen_bool(0.8) {
        rng.gen_range(0..n - 1)
    } else {
        rng.gen_range(0..n)
    }
}

fn build(th: &Theory, pieces: &Pieces, ops: &[Op]) -> Option<Diagram> {
    let mut cur = Diagram::empty(*th);
    for op in ops {
        cur = match *op {
            Op::Cup(c, at) => insert(&cur, &pieces.cups[c], at)?,
            Op::Box(k, s, at) => insert(&cur, &pieces.boxes[k][s].diagram, at)?,
            Op::Cap(i) => cap_at(&cur, i)?,
        };
    }
    cur.validate().ok()?;
    Some(cur)
}

fn insert(cur: &Diagram, piece: &Diagram, at: usize) -> Option<Diagram> {
    let th = cur.theory;
    let layer = Diagram::identity(th, &cur.top[..at])
        .tensor(piece)
        .ok()?
        .tensor(&Diagram::identity(th, &cur.top[at..]))
        .ok()?;
    layer.compose(cur).ok()?
}

fn cap_at(cur: &Diagram, i: usize) -> Option<Diagram> {
    let th = cur.theory;
    let cap = crate::diagram::cap(th, cur.top[i], cur.top[i + 1])?;
    let layer = Diagram::identity(th, &cur.top[..i])
        .tensor(&cap)
        .ok()?
        .tensor(&Diagram::identity(th, &cur.top[i + 2..]))
        .ok()?;
    layer.compose(cur).ok()?
}

/// Counters over a batch of generated diagrams.
#[derive(Clone, Debug, Default)]
pub struct Coverage {
    pub draws: usize,
    pub boxes: BTreeMap<BoxKind, usize>,
    /// Free loops by label and orientation.
    pub loops: BTreeMap<(Label, Flow), usize>,
    /// Floating components inside another component.
    pub nested: usize,
    /// Floating components in the outer region.
    pub outer: usize,
}

impl Coverage {
    pub fn record(&mut self, d: &Diagram) {
        self.draws += 1;
        for &k in &d.boxes {
            *self.boxes.entry(k).or_default() += 1;
        }
        for s in &d.strands {
            if let (End::Anchor(a, _), End::Anchor(b, _)) = (s.a, s.b) {
                if a == b {
                    *self.loops.entry((s.label, s.flow)).or_default() += 1;
                }
            }
        }
        for (_, parent) in &d.nest {
            if parent.v == Vertex::Bnd {
                self.outer += 1;
            } else {
                self.nested += 1;
            }
        }
    }
}
