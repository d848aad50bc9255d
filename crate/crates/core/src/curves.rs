//! The Legendre family `E_lambda: y^2 = x(x-1)(x-lambda)` over `F_p`,
//! point groups of small curves by enumeration, and censuses of
//! isomorphism classes of short Weierstrass curves.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classno::aggregate_h;
use crate::error::{Error, Result};
use crate::fieldcore::{prime_factors, FieldCtx};
use crate::hyper::GaussInt;
use crate::par::{self, Exec};

pub const CENSUS_PMAX: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LegendreCurve {
    pub lambda: u64,
    pub p: u64,
}

impl LegendreCurve {
    pub fn new(lambda: i64, f: &FieldCtx) -> Result<Self> {
        let l = f.reduce(lambda);
        if l <= 1 {
            return Err(Error::SingularCurve(format!("lambda = {l} over F_{}", f.p())));
        }
        Ok(LegendreCurve { lambda: l, p: f.p() })
    }

    /// `y^2 = x^3 - (1+lambda) x^2 + lambda x`.
    pub fn weierstrass(&self) -> Weierstrass {
        let p = self.p;
        Weierstrass { a2: (2 * p - 1 - self.lambda) % p, a4: self.lambda, a6: 0 }
    }
}

fn phi(f: &FieldCtx, x: i64) -> i64 {
    f.legendre(x) as i64
}

/// `-sum_x phi(x (x - 1) (x - lambda))`.
pub fn ap_lambda(lambda: i64, f: &FieldCtx) -> Result<i64> {
    let l = LegendreCurve::new(lambda, f)?.lambda as i64;
    let p = f.p() as i64;
    Ok(-(0..p).map(|x| phi(f, x * (x - 1) % p * (x - l) % p)).sum::<i64>())
}

/// Trace of `y^2 = x(x-t)(x-t lambda)`.
pub fn twist_trace(lambda: i64, t: i64, f: &FieldCtx) -> Result<i64> {
    let l = LegendreCurve::new(lambda, f)?.lambda as i64;
    let t = f.reduce(t) as i64;
    if t == 0 {
        return Err(Error::InvalidArgument("twist parameter t must be nonzero".into()));
    }
    let p = f.p() as i64;
    let tl = t * l % p;
    Ok(-(0..p).map(|x| phi(f, x * (x - t) % p * (x - tl) % p)).sum::<i64>())
}

/// `2^8 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)`.
pub fn j_invariant(lambda: i64, f: &FieldCtx) -> Result<u64> {
    let l = LegendreCurve::new(lambda, f)?.lambda;
    let p = f.p();
    let num = (l * l % p + p - l + 1) % p;
    let num = 256 % p * (num * num % p) % p * num % p;
    let lm1 = l - 1;
    let den = l * l % p * (lm1 * lm1 % p) % p;
    Ok(f.div(num as i64, den as i64).expect("lambda(lambda-1) is a unit"))
}

/// `{l, 1/l, 1-l, 1/(1-l), l/(l-1), (l-1)/l}`, ascending without repeats.
pub fn j_orbit(lambda: i64, f: &FieldCtx) -> Result<Vec<u64>> {
    let l = LegendreCurve::new(lambda, f)?.lambda as i64;
    let inv = |x: i64| f.inv(x).expect("orbit members are units") as i64;
    let members = [l, inv(l), 1 - l, inv(1 - l), l * inv(l - 1), (l - 1) * inv(l)];
    let set: BTreeSet<u64> = members.iter().map(|&x| f.reduce(x)).collect();
    Ok(set.into_iter().collect())
}

/// The chain of twist relations; every entry equals `ap(lambda)`.
pub fn prop43_ladder(lambda: i64, f: &FieldCtx) -> Result<[i64; 6]> {
    let l = LegendreCurve::new(lambda, f)?.lambda as i64;
    let inv = |x: i64| f.inv(x).expect("unit") as i64;
    let ap = |x: i64| ap_lambda(x, f);
    Ok([
        ap(l)?,
        phi(f, l) * ap(inv(l))?,
        phi(f, -1) * ap(1 - l)?,
        phi(f, 1 - l) * ap(l * inv(l - 1))?,
        phi(f, l - 1) * ap(inv(1 - l))?,
        phi(f, -l) * ap((l - 1) * inv(l))?,
    ])
}

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` with reduced coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Weierstrass {
    pub a2: u64,
    pub a4: u64,
    pub a6: u64,
}

type Point = Option<(u64, u64)>;

impl Weierstrass {
    pub fn short(a: u64, b: u64) -> Self {
        Weierstrass { a2: 0, a4: a, a6: b }
    }

    pub fn discriminant(&self, f: &FieldCtx) -> u64 {
        let p = f.p() as i128;
        let (a2, a4, a6) = (self.a2 as i128, self.a4 as i128, self.a6 as i128);
        let b2 = 4 * a2 % p;
        let b4 = 2 * a4 % p;
        let b6 = 4 * a6 % p;
        let b8 = (4 * a2 * a6 - a4 * a4).rem_euclid(p);
        let d = -b2 * b2 % p * b8 - 8 * (b4 * b4 % p) * b4 - 27 * (b6 * b6 % p) + 9 * (b2 * b4 % p) * b6;
        d.rem_euclid(p) as u64
    }

    fn rhs(&self, x: u64, p: u64) -> u64 {
        (((x + self.a2) % p * x + self.a4) % p * x + self.a6) % p
    }

    /// Isomorphic short model `(A, B)`; needs `p >= 5`.
    pub fn short_form(&self, f: &FieldCtx) -> Result<(u64, u64)> {
        if f.p() < 5 {
            return Err(Error::InvalidModulus { p: f.p(), reason: "short Weierstrass models need p >= 5" });
        }
        let p = f.p();
        let (a2, a4) = (self.a2, self.a4);
        let third = f.inv(3).unwrap();
        let a = (a4 + p - a2 * a2 % p * third % p) % p;
        let c27 = f.inv(27).unwrap();
        let b = (2 * (a2 * a2 % p * a2 % p) % p * c27 % p + p - a2 * a4 % p * third % p + self.a6) % p;
        Ok((a, b))
    }

    fn add(&self, f: &FieldCtx, p1: Point, p2: Point) -> Point {
        let p = f.p();
        let ((x1, y1), (x2, y2)) = match (p1, p2) {
            (None, q) | (q, None) => return q,
            (Some(a), Some(b)) => (a, b),
        };
        let slope = if x1 == x2 {
            if (y1 + y2) % p == 0 {
                return None;
            }
            let num = (3 * x1 % p * x1 + 2 * self.a2 * x1 + self.a4) % p;
            f.div(num as i64, (2 * y1) as i64)?
        } else {
            f.div((y2 + p - y1) as i64, (x2 + p - x1) as i64)?
        };
        let x3 = (slope * slope % p + 3 * p - self.a2 - x1 - x2) % p;
        let y3 = (slope * ((x1 + p - x3) % p) % p + p - y1) % p;
        Some((x3, y3))
    }

    fn mul(&self, f: &FieldCtx, mut k: u64, pt: Point) -> Point {
        let mut acc = None;
        let mut base = pt;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(f, acc, base);
            }
            base = self.add(f, base, base);
            k >>= 1;
        }
        acc
    }

    /// Affine points in `(x, y)` order.
    pub fn points(&self, f: &FieldCtx) -> Vec<(u64, u64)> {
        let p = f.p();
        let mut pts = Vec::new();
        for x in 0..p {
            if let Some(y) = f.sqrt(self.rhs(x, p) as i64) {
                pts.push((x, y));
                if y != 0 {
                    pts.push((x, p - y));
                }
            }
        }
        pts
    }
}

/// `(n1, n2)` with `E(F_p) = Z/n1 x Z/n2` and `n1 | n2`.
pub fn group_structure(curve: &Weierstrass, f: &FieldCtx) -> Result<(u64, u64)> {
    if f.p() > CENSUS_PMAX {
        return Err(Error::BoundExceeded { p: f.p(), bound: CENSUS_PMAX });
    }
    if curve.discriminant(f) == 0 {
        return Err(Error::SingularCurve(format!("{curve:?} over F_{}", f.p())));
    }
    let pts = curve.points(f);
    let n = pts.len() as u64 + 1;
    let primes = prime_factors(n);
    // exponent of the group = n2
    let mut e = 1u64;
    for &pt in &pts {
        if e == n {
            break;
        }
        if curve.mul(f, e, Some(pt)).is_none() {
            continue;
        }
        let mut ord = n;
        for &l in &primes {
            while ord.is_multiple_of(l) && curve.mul(f, ord / l, Some(pt)).is_none() {
                ord /= l;
            }
        }
        e = lcm(e, ord);
    }
    Ok((n / e, e))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// One isomorphism class of short Weierstrass curves over `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    /// smallest `(A, B)` in the orbit
    pub a: u64,
    pub b: u64,
    pub size: u64,
    pub n1: u64,
    pub n2: u64,
    pub ap: i64,
}

/// All classes of nonsingular `y^2 = x^3 + A x + B` under `(A, B) ~ (u^4 A, u^6 B)`.
#[derive(Debug, Clone)]
pub struct IsoClassTable {
    pub p: u64,
    pub classes: Vec<IsoClass>,
    class_of: Vec<u32>,
}

const NO_CLASS: u32 = u32::MAX;

impl IsoClassTable {
    pub fn new(f: &FieldCtx, exec: Exec) -> Result<Self> {
        let p = f.p();
        if p < 5 {
            return Err(Error::InvalidModulus { p, reason: "isomorphism census needs p >= 5" });
        }
        if p > CENSUS_PMAX {
            return Err(Error::BoundExceeded { p, bound: CENSUS_PMAX });
        }
        let pu = p as usize;
        let u4: Vec<u64> = (1..p).map(|u| u * u % p * (u * u % p) % p).collect();
        let u6: Vec<u64> = (1..p).map(|u| u * u % p * u % p * (u * u % p * u % p) % p).collect();
        let mut class_of = vec![NO_CLASS; pu * pu];
        let mut reps = Vec::new();
        for a in 0..p {
            for b in 0..p {
                let idx = (a * p + b) as usize;
                if class_of[idx] != NO_CLASS || Weierstrass::short(a, b).discriminant(f) == 0 {
                    continue;
                }
                let id = reps.len() as u32;
                let mut size = 0u64;
                for (s4, s6) in u4.iter().zip(&u6) {
                    let j = ((a * s4 % p) * p + b * s6 % p) as usize;
                    if class_of[j] == NO_CLASS {
                        class_of[j] = id;
                        size += 1;
                    }
                }
                reps.push((a, b, size));
            }
        }
        let classes = par::map(exec, reps, |(a, b, size)| {
            let (n1, n2) = group_structure(&Weierstrass::short(a, b), f)?;
            Ok(IsoClass { a, b, size, n1, n2, ap: p as i64 + 1 - (n1 * n2) as i64 })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        Ok(IsoClassTable { p, classes, class_of })
    }

    pub fn class_of(&self, a: u64, b: u64) -> Option<usize> {
        match self.class_of.get((a * self.p + b) as usize) {
            Some(&c) if c != NO_CLASS => Some(c as usize),
            _ => None,
        }
    }

    pub fn class_of_curve(&self, curve: &Weierstrass, f: &FieldCtx) -> Result<usize> {
        let (a, b) = curve.short_form(f)?;
        self.class_of(a, b).ok_or_else(|| Error::SingularCurve(format!("{curve:?} over F_{}", self.p)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveCensusEntry {
    pub p: u64,
    pub s: i64,
    pub n: u64,
    pub count: u64,
    /// `H((s^2 - 4p) / n^2)`
    pub expected: i64,
}

pub fn census_preconditions(p: u64, s: i64, n: u64) -> Result<()> {
    let pi = p as i64;
    if p < 5 {
        return Err(Error::Precondition(format!("p = {p} must be at least 5")));
    }
    if s * s > 4 * pi {
        return Err(Error::Precondition(format!("s^2 = {} exceeds 4p = {}", s * s, 4 * pi)));
    }
    if s % pi == 0 {
        return Err(Error::Precondition(format!("p = {p} divides s = {s}")));
    }
    if n == 0 || !(p - 1).is_multiple_of(n) {
        return Err(Error::Precondition(format!("n = {n} does not divide p - 1 = {}", p - 1)));
    }
    if (pi + 1 - s) % (n * n) as i64 != 0 {
        return Err(Error::Precondition(format!("n^2 = {} does not divide p + 1 - s = {}", n * n, pi + 1 - s)));
    }
    Ok(())
}

/// Classes with trace `s` whose group contains `Z/n x Z/n`.
pub fn census(s: i64, n: u64, table: &IsoClassTable) -> Result<CurveCensusEntry> {
    let p = table.p;
    census_preconditions(p, s, n)?;
    let count = table.classes.iter().filter(|c| c.ap == s && c.n1 % n == 0).count() as u64;
    let d = (s * s - 4 * p as i64) / (n * n) as i64;
    let expected = aggregate_h(d)?.0.to_integer();
    Ok(CurveCensusEntry { p, s, n, count, expected })
}

/// Every `(s, n)` meeting the census preconditions at `p`.
pub fn census_pairs(p: u64) -> Vec<(i64, u64)> {
    let pi = p as i64;
    let mut out = Vec::new();
    let mut s = 0i64;
    while (s + 1) * (s + 1) <= 4 * pi {
        s += 1;
    }
    for s in -s..=s {
        for n in 1..p {
            if census_preconditions(p, s, n).is_ok() {
                out.push((s, n));
            }
        }
    }
    out
}

/// `chi4(x) = i^{log x}` for `p = 1 mod 4`, 0 at `x = 0`.
pub fn chi4(x: i64, f: &FieldCtx) -> Result<GaussInt> {
    if f.p() % 4 != 1 {
        return Err(Error::NoQuarticCharacter(f.p()));
    }
    const POWERS: [GaussInt; 4] =
        [GaussInt { re: 1, im: 0 }, GaussInt { re: 0, im: 1 }, GaussInt { re: -1, im: 0 }, GaussInt { re: 0, im: -1 }];
    Ok(f.log(x).map_or(GaussInt::new(0, 0), |k| POWERS[(k % 4) as usize]))
}

/// `ap(lambda)` for `lambda = 2..p-1`, indexed by `lambda`.
pub fn ap_table(f: &FieldCtx) -> Result<Vec<i64>> {
    let mut t = vec![0; f.p() as usize];
    for l in 2..f.p() {
        t[l as usize] = ap_lambda(l as i64, f)?;
    }
    Ok(t)
}

/// `(sum over square lambda of ap(lambda), -(1 + phi(-1)))`.
pub fn lemma45_sums(f: &FieldCtx) -> Result<(i64, i64)> {
    let ap = ap_table(f)?;
    let lhs = (2..f.p() as i64).filter(|&l| phi(f, l) == 1).map(|l| ap[l as usize]).sum();
    Ok((lhs, -(1 + phi(f, -1))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma46Sums {
    /// sum over `phi(l(l-1)) = -1`; vanishes
    pub part1: GaussInt,
    /// sum over `phi(l(l-1)) = 1`
    pub part2_lhs: GaussInt,
    /// sum over `phi(l) = 1` of `ap(l) chi4(l) phi(l-1)`
    pub part2_rhs: GaussInt,
}

pub fn lemma46_sums(f: &FieldCtx) -> Result<Lemma46Sums> {
    let ap = ap_table(f)?;
    let zero = GaussInt::new(0, 0);
    let mut out = Lemma46Sums { part1: zero, part2_lhs: zero, part2_rhs: zero };
    for l in 2..f.p() as i64 {
        let a = ap[l as usize];
        let m = l * (l - 1);
        let term = chi4(m, f)? * (a * phi(f, l - 1));
        match phi(f, m) {
            -1 => out.part1 += term,
            1 => out.part2_lhs += term,
            _ => {}
        }
        if phi(f, l) == 1 {
            out.part2_rhs += chi4(l, f)? * (a * phi(f, l - 1));
        }
    }
    Ok(out)
}

fn in_s_lambda(l: i64, f: &FieldCtx) -> Result<bool> {
    Ok(chi4(l, f)? == GaussInt::new(1, 0) && phi(f, l - 1) == -1)
}

fn in_s_psi(l: i64, f: &FieldCtx) -> Result<bool> {
    Ok(phi(f, l) == 1 && chi4(l, f)? == GaussInt::new(-1, 0) && phi(f, l - 1) == 1)
}

/// Sums of `ap` over the two sets exchanged by the 2-isogeny.
pub fn lemma47_sums(f: &FieldCtx) -> Result<(i64, i64)> {
    let ap = ap_table(f)?;
    let (mut lhs, mut rhs) = (0, 0);
    for l in 2..f.p() as i64 {
        if in_s_lambda(l, f)? {
            lhs += ap[l as usize];
        }
        if in_s_psi(l, f)? {
            rhs += ap[l as usize];
        }
    }
    Ok((lhs, rhs))
}

/// `((1 - t)/(1 + t))^2` for the smallest square root `t` of `lambda`.
pub fn isogeny_partner(lambda: i64, f: &FieldCtx) -> Result<u64> {
    let p = f.p();
    if p % 4 != 1 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod 4")));
    }
    let l = LegendreCurve::new(lambda, f)?.lambda as i64;
    let mut t = f.sqrt(l).ok_or_else(|| Error::Precondition(format!("lambda = {l} is not a square mod {p}")))? as i64;
    if (t + 1) % p as i64 == 0 {
        t = p as i64 - t;
    }
    let r = f.div(1 - t, 1 + t).expect("1 + t is a unit") as i64;
    Ok(f.reduce(r * r))
}

/// Outcome of checking both halves of the `Z/2 x Z/8` torsion lemma at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma44Report {
    pub p: u64,
    /// `lambda` with `lambda` a fourth power and `lambda - 1` a nonsquare
    pub qualifying_lambdas: Vec<u64>,
    /// qualifying `lambda` whose group does not have the predicted shape
    pub part1_failures: Vec<u64>,
    /// classes whose group contains `Z/2 x Z/8` but not `Z/4 x Z/4`
    pub qualifying_classes: usize,
    /// such classes not represented by any qualifying `E_lambda`
    pub part2_unmatched: Vec<(u64, u64)>,
}

impl Lemma44Report {
    pub fn holds(&self) -> bool {
        self.part1_failures.is_empty() && self.part2_unmatched.is_empty()
    }
}

fn has_2x8_not_4x4(n1: u64, n2: u64) -> bool {
    n1.is_multiple_of(2) && n2.is_multiple_of(8) && !n1.is_multiple_of(4)
}

pub fn lemma44_check(f: &FieldCtx, table: &IsoClassTable) -> Result<Lemma44Report> {
    let p = f.p();
    if p % 4 != 1 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod 4")));
    }
    let mut qualifying_lambdas = Vec::new();
    let mut part1_failures = Vec::new();
    let mut hit = vec![false; table.classes.len()];
    for l in 2..p {
        let li = l as i64;
        let fourth = f.log(li).is_some_and(|k| k % 4 == 0);
        if !fourth || phi(f, li - 1) != -1 {
            continue;
        }
        qualifying_lambdas.push(l);
        let w = LegendreCurve::new(li, f)?.weierstrass();
        let (n1, n2) = group_structure(&w, f)?;
        if !has_2x8_not_4x4(n1, n2) {
            part1_failures.push(l);
        }
        hit[table.class_of_curve(&w, f)?] = true;
    }
    let mut qualifying_classes = 0;
    let mut part2_unmatched = Vec::new();
    for (i, c) in table.classes.iter().enumerate() {
        if has_2x8_not_4x4(c.n1, c.n2) {
            qualifying_classes += 1;
            if !hit[i] {
                part2_unmatched.push((c.a, c.b));
            }
        }
    }
    Ok(Lemma44Report { p, qualifying_lambdas, part1_failures, qualifying_classes, part2_unmatched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcore::odd_primes_upto;

    fn f(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    /// Oracle: count affine solutions of `y^2 = x(x-1)(x-l)` by brute force.
    fn brute_points(l: u64, p: u64) -> u64 {
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if (y * y) % p == x * ((x + p - 1) % p) % p * ((x + p - l) % p) % p {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn ap_examples() {
        let f5 = f(5);
        assert_eq!(ap_lambda(2, &f5).unwrap(), -2);
        assert_eq!(ap_lambda(4, &f5).unwrap(), -2);
        assert!(matches!(ap_lambda(0, &f5), Err(Error::SingularCurve(_))));
        assert!(ap_lambda(6, &f5).is_err());
        assert_eq!(lemma45_sums(&f5).unwrap(), (-2, -2));
    }

    #[test]
    fn ap_matches_brute_point_count() {
        for p in [5u64, 7, 11, 13] {
            for l in 2..p {
                let ap = ap_lambda(l as i64, &f(p)).unwrap();
                assert_eq!(p as i64 + 1 - ap, brute_points(l, p) as i64);
                assert!(ap * ap <= 4 * p as i64);
            }
        }
    }

    #[test]
    fn twist_examples() {
        let f5 = f(5);
        assert_eq!(twist_trace(2, 2, &f5).unwrap(), 2);
        assert_eq!(twist_trace(2, 4, &f5).unwrap(), ap_lambda(2, &f5).unwrap());
        assert!(twist_trace(2, 0, &f5).is_err());
        for p in [7u64, 11, 13] {
            let fp = f(p);
            for l in 2..p as i64 {
                for t in 1..p as i64 {
                    assert_eq!(ap_lambda(l, &fp).unwrap(), phi(&fp, t) * twist_trace(l, t, &fp).unwrap());
                }
                assert_eq!(twist_trace(l, -1, &fp).unwrap(), phi(&fp, -1) * ap_lambda(l, &fp).unwrap());
            }
        }
    }

    #[test]
    fn j_examples() {
        let f13 = f(13);
        assert_eq!(j_invariant(2, &f13).unwrap(), 1728 % 13);
        assert_eq!(j_orbit(2, &f13).unwrap(), vec![2, 7, 12]);
        let orbit = j_orbit(3, &f13).unwrap();
        assert_eq!(orbit.len(), 6);
        let j = j_invariant(3, &f13).unwrap();
        assert!(orbit.iter().all(|&l| j_invariant(l as i64, &f13).unwrap() == j));
        // 4^2 - 4 + 1 = 13
        assert_eq!(j_invariant(4, &f13).unwrap(), 0);
    }

    #[test]
    fn ladder_holds() {
        for p in odd_primes_upto(60).into_iter().filter(|&p| p >= 5) {
            let fp = f(p);
            for l in 2..p as i64 {
                let rungs = prop43_ladder(l, &fp).unwrap();
                assert!(rungs.iter().all(|&r| r == rungs[0]), "p={p} l={l} {rungs:?}");
            }
        }
    }

    #[test]
    fn legendre_group_has_full_two_torsion() {
        for p in [5u64, 7, 11, 13, 17] {
            let fp = f(p);
            for l in 2..p as i64 {
                let c = LegendreCurve::new(l, &fp).unwrap();
                let (n1, n2) = group_structure(&c.weierstrass(), &fp).unwrap();
                assert_eq!(n1 % 2, 0);
                assert_eq!(n2 % n1, 0);
                assert_eq!((n1 * n2) as i64, p as i64 + 1 - ap_lambda(l, &fp).unwrap());
            }
        }
    }

    #[test]
    fn group_structure_rejects_singular() {
        let f7 = f(7);
        assert!(matches!(group_structure(&Weierstrass::short(0, 0), &f7), Err(Error::SingularCurve(_))));
        // y^2 = x^3 + 1 over F_5 is cyclic of order 6
        assert_eq!(group_structure(&Weierstrass::short(0, 1), &f(5)).unwrap(), (1, 6));
    }

    #[test]
    fn census_examples() {
        let t5 = IsoClassTable::new(&f(5), Exec::Sequential).unwrap();
        let e = census(2, 1, &t5).unwrap();
        assert_eq!((e.count, e.expected), (2, 2));
        let e = census(2, 2, &t5).unwrap();
        assert_eq!((e.count, e.expected), (1, 1));
        assert!(matches!(census(5, 1, &t5), Err(Error::Precondition(_))));
        assert!(census(0, 1, &t5).is_err());
        assert!(census(2, 3, &t5).is_err());
        let total: u64 = t5.classes.iter().map(|c| c.size).sum();
        assert_eq!(total, 5 * 5 - 5);
    }

    #[test]
    fn census_matches_class_numbers() {
        for p in odd_primes_upto(40).into_iter().filter(|&p| p >= 5) {
            let t = IsoClassTable::new(&f(p), Exec::Parallel).unwrap();
            for (s, n) in census_pairs(p) {
                let e = census(s, n, &t).unwrap();
                assert_eq!(e.count as i64, e.expected, "p={p} s={s} n={n}");
            }
        }
    }

    #[test]
    fn census_exec_modes_agree() {
        let fp = f(31);
        let a = IsoClassTable::new(&fp, Exec::Sequential).unwrap();
        let b = IsoClassTable::new(&fp, Exec::Parallel).unwrap();
        assert_eq!(a.classes, b.classes);
    }

    #[test]
    fn lemma46_and_47() {
        for p in odd_primes_upto(100).into_iter().filter(|p| p % 4 == 1) {
            let fp = f(p);
            let s = lemma46_sums(&fp).unwrap();
            assert_eq!(s.part1, GaussInt::new(0, 0), "p={p}");
            assert_eq!(s.part2_lhs, s.part2_rhs, "p={p}");
            let (l, r) = lemma47_sums(&fp).unwrap();
            assert_eq!(l, r, "p={p}");
        }
        assert!(matches!(lemma46_sums(&f(7)), Err(Error::NoQuarticCharacter(7))));
    }

    #[test]
    fn isogeny_partner_properties() {
        for p in [13u64, 17, 29] {
            let fp = f(p);
            for l in (2..p as i64).filter(|&l| fp.is_square(l)) {
                let psi = isogeny_partner(l, &fp).unwrap();
                assert_eq!(ap_lambda(psi as i64, &fp).unwrap(), ap_lambda(l, &fp).unwrap());
                if in_s_lambda(l, &fp).unwrap() {
                    assert!(in_s_psi(psi as i64, &fp).unwrap(), "p={p} l={l} psi={psi}");
                }
            }
        }
        assert!(isogeny_partner(2, &f(13)).is_err());
        assert!(isogeny_partner(2, &f(7)).is_err());
    }

    #[test]
    fn lemma44_small_primes() {
        for p in [13u64, 17, 29, 37, 41] {
            let fp = f(p);
            let t = IsoClassTable::new(&fp, Exec::Parallel).unwrap();
            let r = lemma44_check(&fp, &t).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }
}
