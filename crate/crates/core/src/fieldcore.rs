//! Prime fields, their quadratic extensions, discrete logarithms and
//! quadratic symbols.
//!
//! Every field carries a fixed generator and a complete discrete-log table
//! built by one multiplicative sweep. Elements are addressed by a dense
//! index: the residue itself for `F_p`, and `a + p*b` for `a + b*alpha` in
//! `F_{p^2}`. Contexts are immutable once built.

use crate::error::{Error, Result};

/// Largest prime accepted by [`ExtFieldCtx::new`]; tables there are of size p².
pub const DEFAULT_EXT_PMAX: u64 = 31;

const NO_LOG: u32 = u32::MAX;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Odd primes `3 <= p <= bound`, ascending.
pub fn odd_primes_upto(bound: u64) -> Vec<u64> {
    (3..=bound).step_by(2).filter(|&n| is_prime(n)).collect()
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Exponent of the largest power of 2 dividing `n` (`n != 0`).
pub fn ord2(n: i64) -> u32 {
    debug_assert!(n != 0);
    n.trailing_zeros()
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p.is_multiple_of(2) {
        return Err(Error::InvalidModulus { p, reason: "even modulus" });
    }
    if !is_prime(p) {
        return Err(Error::InvalidModulus { p, reason: "composite (trial division)" });
    }
    if p > u32::MAX as u64 / 2 {
        return Err(Error::InvalidModulus { p, reason: "too large for dense tables" });
    }
    Ok(())
}

/// Common view of `F_p` and `F_{p^2}` used by the character machinery.
pub trait FiniteField: Sync {
    fn characteristic(&self) -> u64;
    /// Number of elements q.
    fn order(&self) -> usize;
    /// Discrete log of the element with the given index, `None` for zero.
    fn dlog(&self, x: usize) -> Option<usize>;
    /// Index of `gen^k`.
    fn exp(&self, k: usize) -> usize;
    /// Absolute trace to `F_p`, as a residue.
    fn trace(&self, x: usize) -> u64;
    /// Index of the image of an integer under `Z -> F_p -> F_q`.
    fn embed(&self, a: i64) -> usize;
}

/// The prime field `F_p` with its smallest primitive root.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u64,
    g: u64,
    dlog: Vec<u32>,
    exp: Vec<u32>,
    sqrt: Vec<u32>,
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let n = p - 1;
        let factors = prime_factors(n);
        let g = (2..p)
            .find(|&c| factors.iter().all(|&l| pow_mod(c, n / l, p) != 1))
            // p = 3: 2 is the only candidate and has order 2.
            .unwrap_or(2);

        let mut dlog = vec![NO_LOG; p as usize];
        let mut exp = Vec::with_capacity(n as usize);
        let mut x = 1u64;
        for k in 0..n {
            dlog[x as usize] = k as u32;
            exp.push(x as u32);
            x = x * g % p;
        }
        debug_assert_eq!(x, 1);

        let mut sqrt = vec![NO_LOG; p as usize];
        for r in 0..p {
            let s = (r * r % p) as usize;
            if sqrt[s] == NO_LOG {
                sqrt[s] = r as u32;
            }
        }
        Ok(FieldCtx { p, g, dlog, exp, sqrt })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn log(&self, a: i64) -> Option<u64> {
        match self.dlog[self.reduce(a) as usize] {
            NO_LOG => None,
            k => Some(k as u64),
        }
    }

    pub fn pow_gen(&self, k: u64) -> u64 {
        self.exp[(k % (self.p - 1)) as usize] as u64
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: i64) -> Option<u64> {
        let k = self.log(a)?;
        Some(self.pow_gen(self.p - 1 - k))
    }

    /// `a / b`, `None` when `b = 0`.
    pub fn div(&self, a: i64, b: i64) -> Option<u64> {
        Some(self.mul(self.reduce(a), self.inv(b)?))
    }

    /// Legendre symbol via discrete-log parity.
    pub fn legendre(&self, a: i64) -> i8 {
        match self.log(a) {
            None => 0,
            Some(k) if k % 2 == 0 => 1,
            Some(_) => -1,
        }
    }

    pub fn is_square(&self, a: i64) -> bool {
        self.sqrt[self.reduce(a) as usize] != NO_LOG
    }

    /// Smallest `r` in `0..p` with `r^2 = a`.
    pub fn sqrt(&self, a: i64) -> Option<u64> {
        match self.sqrt[self.reduce(a) as usize] {
            NO_LOG => None,
            r => Some(r as u64),
        }
    }

    /// Smallest nonsquare residue.
    pub fn smallest_nonsquare(&self) -> u64 {
        (2..self.p).find(|&a| self.legendre(a as i64) == -1).unwrap_or(2)
    }
}

impl FiniteField for FieldCtx {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> usize {
        self.p as usize
    }
    fn dlog(&self, x: usize) -> Option<usize> {
        match self.dlog[x] {
            NO_LOG => None,
            k => Some(k as usize),
        }
    }
    fn exp(&self, k: usize) -> usize {
        self.exp[k % (self.p as usize - 1)] as usize
    }
    fn trace(&self, x: usize) -> u64 {
        x as u64
    }
    fn embed(&self, a: i64) -> usize {
        self.reduce(a) as usize
    }
}

/// Legendre symbol `(a/p)` with the `(0/p) = 0` convention.
pub fn legendre(a: i64, ctx: &FieldCtx) -> i8 {
    ctx.legendre(a)
}

/// Kronecker symbol `(d/n)` for `n >= 1`.
pub fn kronecker(d: i64, n: u64) -> i8 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i8;
    while n.is_multiple_of(2) {
        n /= 2;
        match d.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    result * jacobi(d, n)
}

/// Jacobi symbol for odd positive `n`.
fn jacobi(a: i64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// An element `a + b*alpha` of `F_p[alpha]/(alpha^2 - u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

/// `F_{p^2}` presented as `F_p[x]/(x^2 - u)` with `u` the smallest nonsquare.
#[derive(Debug, Clone)]
pub struct ExtFieldCtx {
    p: u64,
    u: u64,
    gen: Fp2,
    dlog: Vec<u32>,
    exp: Vec<u32>,
}

impl ExtFieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_bound(p, DEFAULT_EXT_PMAX)
    }

    pub fn with_bound(p: u64, bound: u64) -> Result<Self> {
        check_odd_prime(p)?;
        if p > bound {
            return Err(Error::BoundExceeded { p, bound });
        }
        let base = FieldCtx::new(p)?;
        let u = base.smallest_nonsquare();
        let q = p * p;
        let n = q - 1;
        let factors = prime_factors(n);

        let mut ctx = ExtFieldCtx { p, u, gen: Fp2 { a: 0, b: 0 }, dlog: Vec::new(), exp: Vec::new() };
        let gen = (1..q as usize)
            .map(|i| ctx.element(i))
            .find(|&x| factors.iter().all(|&l| ctx.pow(x, n / l) != ctx.one()))
            .expect("F_{p^2}^* is cyclic");
        ctx.gen = gen;

        let mut dlog = vec![NO_LOG; q as usize];
        let mut exp = Vec::with_capacity(n as usize);
        let mut x = ctx.one();
        for k in 0..n {
            let i = ctx.index(x);
            dlog[i] = k as u32;
            exp.push(i as u32);
            x = ctx.mul(x, gen);
        }
        debug_assert_eq!(x, ctx.one());
        ctx.dlog = dlog;
        ctx.exp = exp;
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The `u` of the modulus `x^2 - u`.
    pub fn nonresidue(&self) -> u64 {
        self.u
    }

    /// Coefficients `[c0, c1]` of the monic modulus `x^2 + c1*x + c0`.
    pub fn modulus(&self) -> [u64; 2] {
        [(self.p - self.u) % self.p, 0]
    }

    pub fn generator(&self) -> Fp2 {
        self.gen
    }

    pub fn one(&self) -> Fp2 {
        Fp2 { a: 1, b: 0 }
    }

    pub fn from_base(&self, c: i64) -> Fp2 {
        Fp2 { a: c.rem_euclid(self.p as i64) as u64, b: 0 }
    }

    pub fn index(&self, x: Fp2) -> usize {
        (x.a + self.p * x.b) as usize
    }

    pub fn element(&self, i: usize) -> Fp2 {
        let i = i as u64;
        Fp2 { a: i % self.p, b: i / self.p }
    }

    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + y.a) % self.p, b: (x.b + y.b) % self.p }
    }

    pub fn neg(&self, x: Fp2) -> Fp2 {
        Fp2 { a: (self.p - x.a) % self.p, b: (self.p - x.b) % self.p }
    }

    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 { a: (x.a * y.a + self.u * (x.b * y.b % p)) % p, b: (x.a * y.b + x.b * y.a) % p }
    }

    pub fn pow(&self, mut x: Fp2, mut e: u64) -> Fp2 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    /// `x^p`; alpha^p = -alpha because u is a nonsquare.
    pub fn frobenius(&self, x: Fp2) -> Fp2 {
        Fp2 { a: x.a, b: (self.p - x.b) % self.p }
    }

    /// `x + x^p`.
    pub fn trace_of(&self, x: Fp2) -> u64 {
        2 * x.a % self.p
    }

    /// `x * x^p`.
    pub fn norm(&self, x: Fp2) -> u64 {
        let p = self.p;
        (x.a * x.a % p + p - self.u * (x.b * x.b % p) % p) % p
    }

    pub fn log_of(&self, x: Fp2) -> Option<u64> {
        match self.dlog[self.index(x)] {
            NO_LOG => None,
            k => Some(k as u64),
        }
    }
}

impl FiniteField for ExtFieldCtx {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> usize {
        (self.p * self.p) as usize
    }
    fn dlog(&self, x: usize) -> Option<usize> {
        match self.dlog[x] {
            NO_LOG => None,
            k => Some(k as usize),
        }
    }
    fn exp(&self, k: usize) -> usize {
        self.exp[k % self.exp.len()] as usize
    }
    fn trace(&self, x: usize) -> u64 {
        self.trace_of(self.element(x))
    }
    fn embed(&self, a: i64) -> usize {
        self.index(self.from_base(a))
    }
}
