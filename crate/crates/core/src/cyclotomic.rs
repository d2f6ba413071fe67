//! Exact arithmetic in the cyclotomic fields `Q(ζ_d)`.
//!
//! A [`CycloScalar`] stores its order `d` and the coefficients of
//! `1, ζ_d, …, ζ_d^{φ(d)-1}` after reduction modulo the cyclotomic
//! polynomial `Φ_d`. Here `ζ_d = exp(2πi/d)`, so complex conjugation is
//! `ζ_d ↦ ζ_d^{-1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The multiplicative order of the generating root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSpec {
    pub order: u32,
}

/// Field operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Conj,
}

struct OrderData {
    phi: usize,
    /// `Φ_d` with integer coefficients, lowest degree first.
    cyclo: Vec<i64>,
    /// `x^k mod Φ_d` for `k` in `0..d`.
    powers: Vec<Vec<i64>>,
}

fn order_data(d: u32) -> Arc<OrderData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<OrderData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(data) = cache.lock().unwrap().get(&d) {
        return data.clone();
    }
    let cyclo = cyclotomic_poly(d);
    let phi = cyclo.len() - 1;
    let mut powers = Vec::with_capacity(d as usize);
    let mut cur = vec![0i64; phi.max(1)];
    cur[0] = 1;
    if phi == 0 {
        cur = vec![1];
    }
    for _ in 0..d {
        powers.push(cur.clone());
        // multiply by x and reduce
        let mut next = vec![0i64; phi + 1];
        next[1..(phi + 1)].copy_from_slice(&cur[..phi]);
        let top = next[phi];
        if top != 0 {
            for j in 0..phi {
                next[j] -= top * cyclo[j];
            }
        }
        next.truncate(phi);
        cur = next;
    }
    let data = Arc::new(OrderData { phi, cyclo, powers });
    cache.lock().unwrap().insert(d, data.clone());
    data
}

/// Integer coefficients of `Φ_d`, lowest degree first.
pub fn cyclotomic_poly(d: u32) -> Vec<i64> {
    assert!(d >= 1, "cyclotomic order must be positive");
    // x^d - 1 divided by Φ_e for every proper divisor e of d.
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in 1..d {
        if d % e == 0 {
            num = exact_div(&num, &cyclotomic_poly(e));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let qlen = rem.len() - dd;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd] / lead;
        q[k] = c;
        for j in 0..=dd {
            rem[k + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// Euler's totient of `d`.
pub fn totient(d: u32) -> usize {
    order_data(d).phi
}

/// An exact element of `Q(ζ_d)` in canonical reduced form.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycloScalar {
    /// Reduce arbitrary polynomial coefficients in `ζ_d` to canonical form.
    pub fn canonicalize(coeffs: &[BigRational], root: RootSpec) -> CycloScalar {
        let d = root.order.max(1);
        let data = order_data(d);
        let mut out = vec![BigRational::zero(); data.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &data.powers[k % d as usize];
            for (slot, &m) in out.iter_mut().zip(row.iter()) {
                if m != 0 {
                    *slot += c * BigRational::from_integer(BigInt::from(m));
                }
            }
        }
        CycloScalar {
            order: d,
            coeffs: out,
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        CycloScalar {
            order: 1,
            coeffs: vec![BigRational::from_integer(BigInt::from(v))],
        }
    }

    pub fn from_rational(v: BigRational) -> Self {
        CycloScalar {
            order: 1,
            coeffs: vec![v],
        }
    }

    /// `ζ_d^k` for any integer `k`.
    pub fn root_power(root: RootSpec, k: i64) -> Self {
        let d = root.order.max(1);
        let e = k.rem_euclid(d as i64) as usize;
        let data = order_data(d);
        let coeffs = data.powers[e]
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        CycloScalar { order: d, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn root(&self) -> RootSpec {
        RootSpec { order: self.order }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in `Q(ζ_target)`; `target` must be a multiple of the order.
    pub fn embed(&self, target: u32) -> CycloScalar {
        if target == self.order {
            return self.clone();
        }
        assert!(
            target % self.order == 0,
            "cannot embed order {} into {}",
            self.order,
            target
        );
        let step = (target / self.order) as usize;
        let mut poly = vec![BigRational::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self::canonicalize(&poly, RootSpec { order: target })
    }

    fn common(a: &Self, b: &Self) -> (CycloScalar, CycloScalar) {
        let l = a.order.lcm(&b.order);
        (a.embed(l), b.embed(l))
    }

    /// Checked field operation; operands must share their order.
    pub fn checked(op: ArithOp, a: &Self, b: Option<&Self>) -> Result<CycloScalar> {
        match op {
            ArithOp::Neg => Ok(a.neg_ref()),
            ArithOp::Conj => Ok(a.conj()),
            ArithOp::Add | ArithOp::Mul => {
                let b =
                    b.ok_or_else(|| Error::Invalid("binary operation needs two operands".into()))?;
                if a.order != b.order {
                    return Err(Error::Invalid(format!(
                        "root mismatch: order {} vs {}",
                        a.order, b.order
                    )));
                }
                Ok(if op == ArithOp::Add {
                    a.add_ref(b)
                } else {
                    a.mul_ref(b)
                })
            }
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.order != other.order {
            let (a, b) = Self::common(self, other);
            return a.add_ref(&b);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        CycloScalar {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        CycloScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.order != other.order {
            let (a, b) = Self::common(self, other);
            return a.mul_ref(&b);
        }
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Self::canonicalize(&prod, self.root())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let d = self.order as usize;
        let mut poly = vec![BigRational::zero(); d];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(d - k) % d] += c;
        }
        Self::canonicalize(&poly, self.root())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let data = order_data(self.order);
        let modulus: Vec<BigRational> = data
            .cyclo
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let s = poly_inverse_mod(&self.coeffs, &modulus)?;
        Some(Self::canonicalize(&s, self.root()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// Floating-point value under `ζ_d = exp(2πi/d)`; display and sign checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let d = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = rational_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / d;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// If the value is `ζ_order^k` for some `k`, return that exponent.
    pub fn root_exponent(&self) -> Option<u32> {
        (0..self.order).find(|&k| *self == Self::root_power(self.root(), k as i64))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let order = v
            .get("order")
            .and_then(|o| o.as_u64())
            .ok_or_else(|| Error::Parse("scalar: missing integer \"order\"".into()))?;
        if order == 0 || order > 100_000 {
            return Err(Error::Parse(format!("scalar: unsupported order {order}")));
        }
        let arr = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Parse("scalar: missing \"coeffs\" array".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for (i, c) in arr.iter().enumerate() {
            let q = match c {
                serde_json::Value::String(s) => parse_rational(s),
                serde_json::Value::Number(n) => {
                    n.as_i64().map(|x| BigRational::from_integer(x.into()))
                }
                _ => None,
            }
            .ok_or_else(|| Error::Parse(format!("scalar: bad coefficient at index {i}")))?;
            coeffs.push(q);
        }
        Ok(Self::canonicalize(
            &coeffs,
            RootSpec {
                order: order as u32,
            },
        ))
    }
}

fn rational_to_f64(c: &BigRational) -> f64 {
    c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN)
}

/// Parse `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len().max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &b[db];
        let shift = dr - db;
        for j in 0..=db {
            let t = &c * &b[j];
            r[shift + j] -= t;
        }
        q[shift] += c;
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Extended Euclid: `s` with `s·a ≡ 1 (mod m)`.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    degree(&r1)?;
    while degree(&r1).is_some_and(|d| d > 0) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        degree(&r1)?;
    }
    let c = r1[0].clone();
    Some(s1.iter().map(|x| x / &c).collect())
}

/// Free-function form of the field operations.
pub fn arith(op: ArithOp, a: &CycloScalar, b: Option<&CycloScalar>) -> Result<CycloScalar> {
    CycloScalar::checked(op, a, b)
}

/// `ζ_d^{k mod d}`.
pub fn root_power(root: RootSpec, k: i64) -> CycloScalar {
    CycloScalar::root_power(root, k)
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloScalar {}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, k),
            };
            let s = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -BigRational::one() {
                format!("-{mono}")
            } else if c.is_integer() || c.is_positive() {
                format!("{c}*{mono}")
            } else {
                format!("({c})*{mono}")
            };
            parts.push(s);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl std::ops::$tr<&CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &CycloScalar) -> CycloScalar {
                self.$inner(rhs)
            }
        }
        impl std::ops::$tr for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl std::ops::Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        self.neg_ref()
    }
}

impl std::iter::Sum for CycloScalar {
    fn sum<I: Iterator<Item = CycloScalar>>(iter: I) -> CycloScalar {
        iter.fold(CycloScalar::zero(), |a, b| a.add_ref(&b))
    }
}
