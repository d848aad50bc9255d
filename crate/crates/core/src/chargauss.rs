//! Multiplicative characters of `F_q^*`, the fixed additive character and
//! the table of Gauss sums.
//!
//! A character is stored as its exponent `k` modulo `q - 1`:
//! `chi_k(gen^j) = exp(2*pi*i*k*j/(q-1))`, extended by `chi(0) = 0` for every
//! `k` including the trivial one. The additive character is
//! `theta(x) = exp(2*pi*i*Tr(x)/p)`.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::fieldcore::{ExtFieldCtx, FieldCtx, FiniteField};

/// Exponent of a character, reduced modulo the group order `n = q - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharRef {
    k: usize,
    n: usize,
}

impl CharRef {
    pub fn new(k: i64, n: usize) -> Self {
        assert!(n > 0, "character group of order zero");
        CharRef { k: k.rem_euclid(n as i64) as usize, n }
    }

    pub fn trivial(n: usize) -> Self {
        CharRef { k: 0, n }
    }

    /// The unique character of order 2.
    pub fn quadratic(n: usize) -> Self {
        debug_assert!(n.is_multiple_of(2));
        CharRef { k: n / 2, n }
    }

    /// `chi_{n/4}`, of exact order 4, when `4 | n`.
    pub fn quartic(n: usize) -> Option<Self> {
        n.is_multiple_of(4).then_some(CharRef { k: n / 4, n })
    }

    pub fn exponent(self) -> usize {
        self.k
    }

    pub fn group_order(self) -> usize {
        self.n
    }

    pub fn conj(self) -> Self {
        CharRef { k: (self.n - self.k) % self.n, n: self.n }
    }

    pub fn pow(self, e: i64) -> Self {
        CharRef::new(self.k as i64 * e, self.n)
    }

    pub fn is_trivial(self) -> bool {
        self.k == 0
    }

    /// Whether this character is the square of another one.
    pub fn is_square(self) -> bool {
        self.k.is_multiple_of(2)
    }

    /// All `r` with `r^2 = self`, ascending by exponent (zero or two of them).
    pub fn square_roots(self) -> Vec<CharRef> {
        (0..self.n).filter(|&r| (2 * r) % self.n == self.k).map(|r| CharRef { k: r, n: self.n }).collect()
    }

    pub fn order(self) -> usize {
        self.n / gcd(self.k, self.n)
    }
}

impl Mul for CharRef {
    type Output = CharRef;
    fn mul(self, rhs: CharRef) -> CharRef {
        assert_eq!(self.n, rhs.n, "characters of different groups");
        CharRef { k: (self.k + rhs.k) % self.n, n: self.n }
    }
}

impl fmt::Display for CharRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_{}", self.k)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GaussMethod {
    /// O(q^2) direct double loop.
    Naive,
    /// One length-(q-1) DFT of `theta(gen^j)`.
    #[default]
    Fft,
}

/// `values[k] = g(chi_k)`.
#[derive(Debug, Clone)]
pub struct GaussTable {
    pub values: Vec<Complex64>,
}

impl GaussTable {
    pub fn get(&self, chi: CharRef) -> Complex64 {
        self.values[chi.k]
    }
}

/// Character group of one field together with its Gauss sums.
#[derive(Debug, Clone)]
pub struct CharGroup {
    p: u64,
    q: usize,
    dlog: Vec<u32>,
    roots: Vec<Complex64>,
    neg_one: usize,
    gauss: GaussTable,
}

const NO_LOG: u32 = u32::MAX;

impl CharGroup {
    pub fn new<F: FiniteField>(field: &F) -> Self {
        Self::with_method(field, GaussMethod::default())
    }

    pub fn with_method<F: FiniteField>(field: &F, method: GaussMethod) -> Self {
        let q = field.order();
        let n = q - 1;
        let p = field.characteristic();
        let dlog = (0..q).map(|x| field.dlog(x).map_or(NO_LOG, |k| k as u32)).collect();
        let roots: Vec<Complex64> = (0..n).map(|j| unit(j as f64 / n as f64)).collect();
        let theta: Vec<Complex64> = (0..p).map(|t| unit(t as f64 / p as f64)).collect();
        let seq: Vec<Complex64> = (0..n).map(|j| theta[field.trace(field.exp(j)) as usize]).collect();
        let values = match method {
            GaussMethod::Naive => (0..n).map(|k| (0..n).map(|j| roots[(k * j) % n] * seq[j]).sum()).collect(),
            GaussMethod::Fft => {
                let mut buf = seq;
                FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
                buf
            }
        };
        CharGroup { p, q, dlog, roots, neg_one: field.embed(-1), gauss: GaussTable { values } }
    }

    pub fn for_prime(p: u64) -> Result<Self> {
        Ok(Self::new(&FieldCtx::new(p)?))
    }

    pub fn for_extension(p: u64, bound: u64) -> Result<Self> {
        Ok(Self::new(&ExtFieldCtx::with_bound(p, bound)?))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Field size q.
    pub fn field_order(&self) -> usize {
        self.q
    }

    /// Number of characters, q - 1.
    pub fn order(&self) -> usize {
        self.q - 1
    }

    pub fn is_extension(&self) -> bool {
        self.q as u64 != self.p
    }

    pub fn eps(&self) -> CharRef {
        CharRef::trivial(self.order())
    }

    pub fn phi(&self) -> CharRef {
        CharRef::quadratic(self.order())
    }

    pub fn chi4(&self) -> Result<CharRef> {
        CharRef::quartic(self.order()).ok_or(Error::NoQuarticCharacter(self.q as u64))
    }

    pub fn char_ref(&self, k: i64) -> CharRef {
        CharRef::new(k, self.order())
    }

    /// Element index of the image of an integer; base-field elements have
    /// the same index in `F_p` and `F_{p^2}`.
    pub fn embed(&self, a: i64) -> usize {
        a.rem_euclid(self.p as i64) as usize
    }

    /// Element index of `-1`.
    pub fn neg_one(&self) -> usize {
        self.neg_one
    }

    pub fn log(&self, x: usize) -> Option<usize> {
        match self.dlog[x] {
            NO_LOG => None,
            k => Some(k as usize),
        }
    }

    pub fn root(&self, j: usize) -> Complex64 {
        self.roots[j % self.roots.len()]
    }

    /// `chi(x)` for an element index `x`.
    pub fn char_eval(&self, chi: CharRef, x: usize) -> Complex64 {
        match self.log(x) {
            None => Complex64::new(0.0, 0.0),
            Some(j) => self.roots[(chi.k * j) % self.order()],
        }
    }

    /// `chi(-1) = (-1)^k`, exactly.
    pub fn sign_at_minus_one(&self, chi: CharRef) -> i64 {
        if chi.k.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn gauss(&self, chi: CharRef) -> Complex64 {
        self.gauss.get(chi)
    }

    pub fn gauss_table(&self) -> &GaussTable {
        &self.gauss
    }
}

/// `char_eval` for an integer residue in a prime field.
pub fn char_eval(chi: CharRef, x: i64, group: &CharGroup) -> Complex64 {
    let x = x.rem_euclid(group.characteristic() as i64) as usize;
    group.char_eval(chi, x)
}

/// Gauss sums of every character of the group's field.
pub fn gauss_table(group: &CharGroup) -> &GaussTable {
    group.gauss_table()
}

fn unit(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * turns)
}
