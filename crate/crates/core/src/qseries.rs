//! Eta-product q-expansions of the elliptic newforms, the coefficient
//! fixture of the weight-3 level-32 form with Gaussian-integer coefficients,
//! and the eigenvalue quantities built from them.
//!
//! - `g  = q prod (1-q^{2m})^4 (1-q^{4m})^4 = sum d(n) q^n` (weight 4, level 8)
//! - `h  = q prod (1-q^{4m})^6               = sum c(n) q^n` (weight 3, level 16)
//! - `f1 = q prod (1-q^{4m})^2 (1-q^{8m})^2  = sum a(n) q^n` (weight 2, level 32)
//! - `f2 = sum b(n) q^n`: printed coefficients up to `q^17`, then
//!   `b(p) = Tr^new_32(p) / 2` for `p = 1 mod 4`.
//!
//! The eigenvalue is `lambda(p) = xi(p) a(p) b(p)` for `p = 1 mod 4` and 0
//! otherwise. The second Euler-factor coefficient is
//! `a_{p^2} = p b(p)^2 + psi(p) p^2 a(p)^2 - 2 psi(p) p^3`, obtained by matching
//! the `p^{-2s}` coefficients of the degree-4 Euler factors.

use serde::Serialize;

use crate::chargauss::CharGroup;
use crate::error::{Error, Result};
use crate::fieldcore::is_prime;
use crate::hyper::{phi4_eps3, GaussInt, HyperValue};
use crate::traceform::trace32_new;

/// Truncated power series `sum_{n <= N} coeffs[n] q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub coeffs: Vec<GaussInt>,
}

impl QSeries {
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Result<GaussInt> {
        self.coeffs.get(n).copied().ok_or_else(|| Error::Unavailable {
            what: format!("coefficient of q^{n}"),
            reason: format!("series truncated at q^{}", self.truncation()),
        })
    }

    /// Real part of a coefficient known to be a rational integer.
    pub fn int_coeff(&self, n: usize) -> Result<i64> {
        Ok(self.coeff(n)?.re)
    }
}

/// `q * prod_{k >= 1} prod_{(m, e)} (1 - q^{m k})^e`, through `q^n`.
pub fn eta_product(factors: &[(usize, u32)], n: usize) -> Result<QSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("truncation must be at least 1".into()));
    }
    // body has degree < n
    let mut body = vec![0i128; n];
    body[0] = 1;
    for &(m, e) in factors {
        if m == 0 {
            return Err(Error::InvalidArgument("eta factor with period 0".into()));
        }
        let mut step = m;
        while step < n {
            for _ in 0..e {
                for i in (step..n).rev() {
                    body[i] = body[i].checked_sub(body[i - step]).ok_or(Error::Overflow("eta product expansion"))?;
                }
            }
            step += m;
        }
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(GaussInt::new(0, 0));
    for c in body {
        let c = i64::try_from(c).map_err(|_| Error::Overflow("eta product coefficient"))?;
        coeffs.push(GaussInt::new(c, 0));
    }
    Ok(QSeries { coeffs })
}

pub const LEVEL8_WEIGHT4: &[(usize, u32)] = &[(2, 4), (4, 4)];
pub const LEVEL16_WEIGHT3: &[(usize, u32)] = &[(4, 6)];
pub const LEVEL32_WEIGHT2: &[(usize, u32)] = &[(4, 2), (8, 2)];

/// The printed coefficients `b(p)` for the primes through 17.
const B_FIXTURE: &[(u64, GaussInt)] = &[
    (3, GaussInt { re: 0, im: 4 }),
    (5, GaussInt { re: 2, im: 0 }),
    (7, GaussInt { re: 0, im: -8 }),
    (11, GaussInt { re: 0, im: -4 }),
    (13, GaussInt { re: -14, im: 0 }),
    (17, GaussInt { re: 18, im: 0 }),
];

pub const B_FIXTURE_BOUND: u64 = 17;

/// Expansions of `g`, `h` and `f1` through a common truncation.
#[derive(Debug, Clone)]
pub struct Newforms {
    /// `f1`, level 32, weight 2.
    pub a: QSeries,
    /// `h`, level 16, weight 3.
    pub c: QSeries,
    /// `g`, level 8, weight 4.
    pub d: QSeries,
}

impl Newforms {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Newforms {
            a: eta_product(LEVEL32_WEIGHT2, n)?,
            c: eta_product(LEVEL16_WEIGHT3, n)?,
            d: eta_product(LEVEL8_WEIGHT4, n)?,
        })
    }

    pub fn truncation(&self) -> usize {
        self.a.truncation()
    }

    pub fn a(&self, n: u64) -> Result<i64> {
        self.a.int_coeff(n as usize)
    }

    pub fn c(&self, n: u64) -> Result<i64> {
        self.c.int_coeff(n as usize)
    }

    pub fn d(&self, n: u64) -> Result<i64> {
        self.d.int_coeff(n as usize)
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::InvalidModulus { p, reason: "expected an odd prime" });
    }
    Ok(())
}

/// `b(p)`: printed value through 17, trace route for larger `p = 1 mod 4`.
pub fn b_coeff(p: u64) -> Result<GaussInt> {
    check_odd_prime(p)?;
    if let Some(&(_, b)) = B_FIXTURE.iter().find(|(q, _)| *q == p) {
        return Ok(b);
    }
    if p % 4 == 1 {
        let tr = trace32_new(p)?;
        if tr % 2 != 0 {
            return Err(Error::NonIntegralTrace { p, value: format!("{tr}/2") });
        }
        return Ok(GaussInt::new(tr / 2, 0));
    }
    Err(Error::Unavailable {
        what: format!("b({p})"),
        reason: "purely imaginary for p = 3 mod 4 and beyond the printed coefficients".into(),
    })
}

/// `(2/p)`: +1 iff `p = +-1 mod 8`.
pub fn xi(p: u64) -> i64 {
    match p % 8 {
        1 | 7 => 1,
        _ => -1,
    }
}

/// `(-4/p)`.
pub fn psi(p: u64) -> i64 {
    if p % 4 == 1 {
        1
    } else {
        -1
    }
}

/// Eigenvalue of `T(p)` on the degree-2 eigenform.
pub fn lambda_p(p: u64, nf: &Newforms) -> Result<i64> {
    check_odd_prime(p)?;
    if p % 4 == 3 {
        return Ok(0);
    }
    let b = b_coeff(p)?;
    debug_assert_eq!(b.im, 0);
    Ok(xi(p) * nf.a(p)? * b.re)
}

/// `p b(p)^2 + psi(p) p^2 a(p)^2 - 2 psi(p) p^3`.
pub fn a_p2(p: u64, nf: &Newforms) -> Result<i64> {
    check_odd_prime(p)?;
    let b = b_coeff(p)?;
    let a = nf.a(p)? as i128;
    let (pi, ps) = (p as i128, psi(p) as i128);
    let b2 = GaussInt::new(b.re, b.im) * GaussInt::new(b.re, b.im);
    if b2.im != 0 {
        return Err(Error::InvalidArgument(format!("b({p})^2 is not real")));
    }
    let v = pi * b2.re as i128 + ps * pi * pi * a * a - 2 * ps * pi * pi * pi;
    i64::try_from(v).map_err(|_| Error::Overflow("a_{p^2}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EigenvalueBridge {
    pub p: u64,
    pub a_p: i64,
    #[serde(serialize_with = "ser_opt_gauss")]
    pub b_p: Option<GaussInt>,
    pub xi_p: i64,
    pub lambda_p: i64,
    pub a_p2: Option<i64>,
}

fn ser_opt_gauss<S: serde::Serializer>(z: &Option<GaussInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match z {
        Some(z) => s.serialize_str(&crate::hyper::format_gauss(*z)),
        None => s.serialize_none(),
    }
}

pub fn bridge(p: u64, nf: &Newforms) -> Result<EigenvalueBridge> {
    check_odd_prime(p)?;
    let b_p = b_coeff(p).ok();
    Ok(EigenvalueBridge {
        p,
        a_p: nf.a(p)?,
        b_p,
        xi_p: xi(p),
        lambda_p: lambda_p(p, nf)?,
        a_p2: b_p.map(|_| a_p2(p, nf)).transpose()?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjectureRecord {
    pub p: u64,
    /// `lambda(p)^2 - 2 a_{p^2}`
    pub lhs: i64,
    /// `4F3(phi, phi, phi, phi; eps, eps, eps | -1)` over `F_{p^2}`.
    pub rhs: HyperValue,
}

/// Integer side of the `F_{p^2}` identity.
pub fn conjecture_lhs(p: u64, nf: &Newforms) -> Result<i64> {
    let lam = lambda_p(p, nf)?;
    Ok(lam * lam - 2 * a_p2(p, nf)?)
}

/// Both sides of `lambda(p)^2 - 2 a_{p^2} = 4F3(phi^4; eps^3 | -1)_{p^2}`.
pub fn conjecture6_check(p: u64, nf: &Newforms, ext_bound: u64) -> Result<ConjectureRecord> {
    let lhs = conjecture_lhs(p, nf)?;
    let group = CharGroup::for_extension(p, ext_bound)?;
    let rhs = phi4_eps3(&group, -1)?;
    Ok(ConjectureRecord { p, lhs, rhs })
}
