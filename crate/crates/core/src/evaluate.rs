//! Evaluation of closed diagrams by box-pair elimination.
//!
//! Repeatedly take the lowest box `A` that has a bottom leg, follow its
//! bottom-left strand to a box `B`, click `B` until that strand lands on its
//! top-left leg, saddle the neighbouring strands together until `A`'s whole
//! bottom is glued to `B`'s top, and cancel the pair with a unitary relation.
//! What is left is a collection of loops, each worth 1.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::cyclotomic::CycloScalar;
use crate::diagram::{Diagram, End, Morphism, Side};
use crate::error::{Error, Result};
use crate::theory::{BoxKind, Family, Io, Label, Theory};

static MEASURE_CHECKS: AtomicU64 = AtomicU64::new(0);
static MEASURE_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// `(checks, violations)` of the `(#boxes, #loops)` termination measure since
/// process start.
pub fn measure_stats() -> (u64, u64) {
    (
        MEASURE_CHECKS.load(Ordering::Relaxed),
        MEASURE_VIOLATIONS.load(Ordering::Relaxed),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: CycloScalar,
    /// Rewrite steps taken: pair eliminations plus loop pops.
    pub steps: u64,
}

pub fn eval_closed(m: &Morphism) -> Result<CycloScalar> {
    Ok(eval_closed_steps(m)?.value)
}

pub fn eval_closed_steps(m: &Morphism) -> Result<Evaluation> {
    if !m.is_closed() {
        return Err(Error::Boundary(format!(
            "evaluation needs a closed morphism, got {} -> {} points",
            m.bottom.len(),
            m.top.len()
        )));
    }
    if m.theory.family.is_source() {
        return eval_closed_steps(&crate::equiv::image(m)?);
    }
    let mut value = CycloScalar::zero();
    let mut steps = 0;
    for (d, c) in &m.terms {
        let e = eval_diagram(d)?;
        steps += e.steps;
        value = value.add_ref(&e.value.mul_ref(c));
    }
    Ok(Evaluation { value, steps })
}

/// Value of one closed diagram of a target theory.
pub fn eval_diagram(d: &Diagram) -> Result<Evaluation> {
    if !d.is_closed() {
        return Err(Error::Boundary("evaluation needs a closed diagram".into()));
    }
    let mut net = match Net::build(d)? {
        Some(n) => n,
        None => {
            return Ok(Evaluation {
                value: CycloScalar::zero(),
                steps: 0,
            })
        }
    };
    if !net.run()? {
        return Ok(Evaluation {
            value: CycloScalar::zero(),
            steps: net.steps,
        });
    }
    let th = d.theory;
    let root = CycloScalar::root_power(th.root.spec(), th.root.exp as i64 * net.exp);
    let value = root.mul_ref(&CycloScalar::from_int(1i64 << net.plain_loops.min(62)));
    Ok(Evaluation {
        value,
        steps: net.steps,
    })
}

type Leg = (usize, usize);

/// Boxes joined leg to leg; geometry is implicit, every move below is local.
struct Net {
    th: Theory,
    kinds: Vec<BoxKind>,
    alive: Vec<bool>,
    link: Vec<Vec<Leg>>,
    loops: u64,
    plain_loops: u32,
    exp: i64,
    steps: u64,
}

impl Net {
    /// `None` when some strand joins legs of different colours or directions.
    fn build(d: &Diagram) -> Result<Option<Net>> {
        let th = d.theory;
        let nb = d.boxes.len();
        let mut link: Vec<Vec<Leg>> = (0..nb)
            .map(|k| vec![(usize::MAX, 0); d.box_degree(k)])
            .collect();
        let mut loops = 0;
        let mut plain_loops = 0;
        let legs: Vec<_> = d
            .boxes
            .iter()
            .map(|&k| th.box_legs(k))
            .collect::<Result<_>>()?;
        for s in &d.strands {
            match (s.a, s.b) {
                (End::Anchor(..), _) => {
                    if s.label == Label::Plain {
                        plain_loops += 1;
                    } else {
                        loops += 1;
                    }
                }
                (End::Leg(k1, j1), End::Leg(k2, j2)) => {
                    let (x, y) = (legs[k1][j1], legs[k2][j2]);
                    let ok = if th.family.is_oriented() {
                        matches!((x.io, y.io), (Io::In, Io::Out) | (Io::Out, Io::In))
                    } else {
                        x.label == y.label
                    };
                    if !ok {
                        return Ok(None);
                    }
                    link[k1][j1] = (k2, j2);
                    link[k2][j2] = (k1, j1);
                }
                _ => return Err(Error::Invalid("closed diagram touches the boundary".into())),
            }
        }
        let mut net = Net {
            th,
            kinds: d.boxes.clone(),
            alive: vec![true; nb],
            link,
            loops,
            plain_loops,
            exp: 0,
            steps: 0,
        };
        if th.family == Family::ShadedAOdd {
            // V = σ·F⁻¹(U*), V* = F⁻¹(U): keep only U and U*
            for k in 0..nb {
                if matches!(net.kinds[k], BoxKind::V | BoxKind::Vstar) {
                    net.click(k, true);
                }
            }
        }
        Ok(Some(net))
    }

    fn connect(&mut self, a: Leg, b: Leg) {
        self.link[a.0][a.1] = b;
        self.link[b.0][b.1] = a;
    }

    fn degree(&self, k: usize) -> usize {
        self.link[k].len()
    }

    fn bottom_len(&self, k: usize) -> usize {
        self.th.box_shape(self.kinds[k]).1
    }

    /// One click of box `k`: forward renumbers leg `j` as `j + 1`.
    fn click(&mut self, k: usize, forward: bool) {
        let rule = if forward {
            self.th.click_rule(self.kinds[k])
        } else {
            self.th.click_rule_inv(self.kinds[k])
        };
        let (kind, s) = rule.expect("clickable box");
        let l = self.degree(k);
        let old = self.link[k].clone();
        let new: Vec<Leg> = (0..l)
            .map(|j| {
                if forward {
                    old[(j + l - 1) % l]
                } else {
                    old[(j + 1) % l]
                }
            })
            .map(|(b, i)| {
                if b == k {
                    (
                        k,
                        if forward {
                            (i + 1) % l
                        } else {
                            (i + l - 1) % l
                        },
                    )
                } else {
                    (b, i)
                }
            })
            .collect();
        self.kinds[k] = kind;
        self.exp += s;
        self.link[k] = new;
        for j in 0..l {
            let (b, i) = self.link[k][j];
            self.link[b][i] = (k, j);
        }
    }

    fn measure(&self) -> (usize, u64) {
        (self.alive.iter().filter(|&&a| a).count(), self.loops)
    }

    fn check_measure(&self, before: (usize, u64)) -> Result<()> {
        MEASURE_CHECKS.fetch_add(1, Ordering::Relaxed);
        if self.measure() >= before {
            MEASURE_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
            return Err(Error::Internal(format!(
                "termination measure did not decrease: {before:?} -> {:?}",
                self.measure()
            )));
        }
        Ok(())
    }

    /// Returns `false` when the diagram is zero.
    fn run(&mut self) -> Result<bool> {
        let nb = self.kinds.len();
        if (0..nb).any(|k| self.link[k].iter().any(|&(b, _)| b == k)) {
            // a box wired to itself
            return Ok(false);
        }
        let cap = 4 * (nb as u64 + 1) * (nb as u64 + 1) + 16 * (self.loops + nb as u64 * 64 + 1);
        let mut guard = 0u64;
        loop {
            guard += 1;
            if guard > cap {
                return Err(Error::Internal(
                    "evaluation exceeded its iteration cap".into(),
                ));
            }
            let a = match (0..nb).find(|&k| self.alive[k] && self.bottom_len(k) > 0) {
                Some(a) => a,
                None => break,
            };
            self.eliminate(a)?;
        }
        if self.alive.iter().any(|&x| x) {
            return Err(Error::Internal("boxes left without partners".into()));
        }
        while self.loops > 0 {
            let before = self.measure();
            self.loops -= 1;
            self.steps += 1;
            self.check_measure(before)?;
        }
        Ok(true)
    }

    fn eliminate(&mut self, a: usize) -> Result<()> {
        let before = self.measure();
        let la = self.degree(a);
        let (b, p) = self.link[a][la - 1];
        if b == a {
            return Err(Error::Internal("box strand returns to its own box".into()));
        }
        let lb = self.degree(b);
        // bring leg p of b to position 0 the short way round
        if p <= lb / 2 {
            for _ in 0..p {
                self.click(b, false);
            }
        } else {
            for _ in p..lb {
                self.click(b, true);
            }
        }
        debug_assert_eq!(self.link[a][la - 1], (b, 0));
        if self.kinds[b] != self.kinds[a].adjoint() {
            return Err(Error::Internal(format!(
                "paired {} with {}, expected its adjoint",
                self.kinds[a], self.kinds[b]
            )));
        }
        let (ta, ba) = self.th.box_shape(self.kinds[a]);
        for k in 1..ba {
            let x = (a, la - 1 - k);
            let y = (b, k);
            let (px, py) = (self.link[x.0][x.1], self.link[y.0][y.1]);
            if px == y {
                continue;
            }
            self.connect(x, y);
            self.connect(px, py);
        }
        // unitary: a's top leg j continues out of b's bottom leg lb-1-j
        self.alive[a] = false;
        self.alive[b] = false;
        for j in 0..ta {
            let e = (a, j);
            let f = (b, lb - 1 - j);
            let u = self.link[e.0][e.1];
            let v = self.link[f.0][f.1];
            if u == f {
                self.loops += 1;
            } else {
                self.connect(u, v);
            }
        }
        self.steps += 1;
        self.check_measure(before)
    }
}

/// `⟨f, g⟩ = tr(f* g)`, closing on the right.
pub fn inner_product(f: &Morphism, g: &Morphism) -> Result<CycloScalar> {
    if f.theory != g.theory {
        return Err(Error::TheoryMismatch(format!(
            "{} vs {}",
            f.theory, g.theory
        )));
    }
    if f.bottom != g.bottom || f.top != g.top {
        return Err(Error::Boundary(
            "inner product of morphisms with different signatures".into(),
        ));
    }
    let fg = f.adjoint().compose(g)?;
    if fg.is_zero() {
        return Ok(CycloScalar::zero());
    }
    eval_closed(&fg.trace_close(Side::Right)?)
}

/// Equality in the planar algebra, decided by `⟨f - g, f - g⟩ = 0`.
pub fn morphism_eq(f: &Morphism, g: &Morphism) -> Result<bool> {
    let ff = inner_product(f, f)?;
    let fg = inner_product(f, g)?;
    let gf = inner_product(g, f)?;
    let gg = inner_product(g, g)?;
    Ok((ff - fg - gf + gg).is_zero())
}
