//! The normalized hypergeometric character sum
//!
//! ```text
//! F(A_0..A_n; B_1..B_n | x) = 1/(q-1) * sum_chi prod_i g(A_i chi)/g(A_i)
//!                              * prod_j g(conj(B_j chi))/g(conj(B_j))
//!                              * g(conj chi) * chi(-1)^(n+1) * chi(x)
//! ```
//!
//! evaluated in double precision from a [`CharGroup`], plus the
//! well-poised `4F3 -> 3F2` reduction at `-1` and the Gauss-sum closed form
//! of `2F1(phi, phi; eps | -1)`.

use num_complex::{Complex, Complex64};
use serde::Serialize;

use crate::chargauss::{CharGroup, CharRef};
use crate::error::{Error, Result};

pub type GaussInt = Complex<i64>;

/// One evaluation request: `upper.len() == lower.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperSpec {
    pub upper: Vec<CharRef>,
    pub lower: Vec<CharRef>,
    /// Element index of the argument in the field of the group it is evaluated over.
    pub x: usize,
}

impl HyperSpec {
    pub fn new(upper: Vec<CharRef>, lower: Vec<CharRef>, x: usize) -> Result<Self> {
        if upper.len() != lower.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "need n+1 upper and n lower parameters, got {} and {}",
                upper.len(),
                lower.len()
            )));
        }
        Ok(HyperSpec { upper, lower, x })
    }

    /// Spec whose argument is the image of an integer.
    pub fn at(group: &CharGroup, upper: &[CharRef], lower: &[CharRef], x: i64) -> Result<Self> {
        Self::new(upper.to_vec(), lower.to_vec(), group.embed(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperValue {
    #[serde(serialize_with = "ser_complex")]
    pub raw: Complex64,
    #[serde(serialize_with = "ser_gauss")]
    pub rounded: GaussInt,
    pub residual: f64,
}

impl HyperValue {
    pub fn from_raw(raw: Complex64) -> Self {
        let rounded = GaussInt::new(raw.re.round() as i64, raw.im.round() as i64);
        let residual = (raw - Complex64::new(rounded.re as f64, rounded.im as f64)).norm();
        HyperValue { raw, rounded, residual }
    }

    /// The rounded value when it is a rational integer.
    pub fn as_integer(&self) -> Option<i64> {
        (self.rounded.im == 0).then_some(self.rounded.re)
    }
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_gauss<S: serde::Serializer>(z: &GaussInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_gauss(*z))
}

/// `3`, `-4i`, `2+3i`.
pub fn format_gauss(z: GaussInt) -> String {
    match (z.re, z.im) {
        (re, 0) => re.to_string(),
        (0, 1) => "i".into(),
        (0, -1) => "-i".into(),
        (0, im) => format!("{im}i"),
        (re, 1) => format!("{re}+i"),
        (re, -1) => format!("{re}-i"),
        (re, im) if im > 0 => format!("{re}+{im}i"),
        (re, im) => format!("{re}{im}i"),
    }
}

fn check_group(group: &CharGroup, chars: &[CharRef]) -> Result<()> {
    let n = group.order();
    match chars.iter().find(|c| c.group_order() != n) {
        Some(c) => Err(Error::InvalidArgument(format!(
            "character {c} belongs to a group of order {}, field has {n}",
            c.group_order()
        ))),
        None => Ok(()),
    }
}

/// Raw character sum, without rounding.
pub fn eval_raw(group: &CharGroup, spec: &HyperSpec) -> Result<Complex64> {
    check_group(group, &spec.upper)?;
    check_group(group, &spec.lower)?;
    if spec.x >= group.field_order() {
        return Err(Error::InvalidArgument(format!("argument index {} outside the field", spec.x)));
    }
    let Some(log_x) = group.log(spec.x) else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let n = group.order();
    let depth = spec.lower.len();

    let denom: Complex64 = spec.upper.iter().map(|&a| group.gauss(a)).product::<Complex64>()
        * spec.lower.iter().map(|&b| group.gauss(b.conj())).product::<Complex64>();

    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..n {
        let chi = group.char_ref(m as i64);
        let mut term = group.gauss(chi.conj());
        for &a in &spec.upper {
            term *= group.gauss(a * chi);
        }
        for &b in &spec.lower {
            term *= group.gauss((b * chi).conj());
        }
        if (m * (depth + 1)) % 2 == 1 {
            term = -term;
        }
        total += term * group.root(m * log_x);
    }
    Ok(total / denom / n as f64)
}

pub fn eval_hyper(group: &CharGroup, spec: &HyperSpec) -> Result<HyperValue> {
    eval_raw(group, spec).map(HyperValue::from_raw)
}

/// Shorthand: evaluate at the image of an integer argument.
pub fn hyp(group: &CharGroup, upper: &[CharRef], lower: &[CharRef], x: i64) -> Result<HyperValue> {
    eval_hyper(group, &HyperSpec::at(group, upper, lower, x)?)
}

/// `4F3(phi, phi, phi, phi; eps, eps, eps | x)`.
pub fn phi4_eps3(group: &CharGroup, x: i64) -> Result<HyperValue> {
    let (phi, eps) = (group.phi(), group.eps());
    hyp(group, &[phi; 4], &[eps; 3], x)
}

/// `3F2(phi, phi, phi; eps, eps | 1)`.
pub fn phi3_eps2(group: &CharGroup) -> Result<HyperValue> {
    let (phi, eps) = (group.phi(), group.eps());
    hyp(group, &[phi; 3], &[eps; 2], 1)
}

/// `2F1(phi, phi; eps | x)`.
pub fn phi2_eps1(group: &CharGroup, x: i64) -> Result<HyperValue> {
    let (phi, eps) = (group.phi(), group.eps());
    hyp(group, &[phi; 2], &[eps], x)
}

/// `3F2(chi, phi, phi; eps, eps | 1)` for a quartic `chi`.
pub fn quartic_3f2(group: &CharGroup, chi4: CharRef) -> Result<HyperValue> {
    let (phi, eps) = (group.phi(), group.eps());
    hyp(group, &[chi4, phi, phi], &[eps, eps], 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WhippleBranch {
    /// `A` is not a square: the sum vanishes.
    NonSquare,
    /// `A` is a square with `A, B != eps`, `B^2 != A`, `CD != A`.
    Square,
    /// Neither hypothesis holds; nothing is asserted.
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhippleRecord {
    pub lhs: Complex64,
    /// `None` for [`WhippleBranch::NotApplicable`].
    pub rhs: Option<Complex64>,
    pub branch: WhippleBranch,
}

impl WhippleRecord {
    pub fn discrepancy(&self) -> Option<f64> {
        self.rhs.map(|r| (self.lhs - r).norm())
    }
}

/// Both sides of the well-poised reduction
/// `4F3(A, B, C, D; A/B, A/C, A/D | -1)`.
pub fn whipple_check(a: CharRef, b: CharRef, c: CharRef, d: CharRef, group: &CharGroup) -> Result<WhippleRecord> {
    let minus_one = group.neg_one();
    let lhs =
        eval_raw(group, &HyperSpec::new(vec![a, b, c, d], vec![a * b.conj(), a * c.conj(), a * d.conj()], minus_one)?)?;

    if !a.is_square() {
        return Ok(WhippleRecord { lhs, rhs: Some(Complex64::new(0.0, 0.0)), branch: WhippleBranch::NonSquare });
    }
    let admissible = !a.is_trivial() && !b.is_trivial() && b * b != a && c * d != a;
    if !admissible {
        return Ok(WhippleRecord { lhs, rhs: None, branch: WhippleBranch::NotApplicable });
    }

    let abar = a.conj();
    let prefactor = group.gauss(abar) * group.gauss(abar * c * d) / (group.gauss(abar * c) * group.gauss(abar * d));
    let one = group.embed(1);
    let mut sum = Complex64::new(0.0, 0.0);
    for r in a.square_roots() {
        let spec = HyperSpec::new(vec![r * b.conj(), c, d], vec![r, a * b.conj()], one)?;
        sum += eval_raw(group, &spec)?;
    }
    Ok(WhippleRecord { lhs, rhs: Some(prefactor * sum), branch: WhippleBranch::Square })
}

/// `-g(phi) g(chi4)/g(conj chi4) - g(phi) g(conj chi4)/g(chi4)`; needs `q = 1 mod 4`.
pub fn two_f_one_gauss(group: &CharGroup) -> Result<Complex64> {
    let chi4 = group.chi4()?;
    let gphi = group.gauss(group.phi());
    let (g4, g4bar) = (group.gauss(chi4), group.gauss(chi4.conj()));
    Ok(-gphi * g4 / g4bar - gphi * g4bar / g4)
}

/// Sign in `2F1(phi, phi; eps | lambda) = sign * a_p(E_lambda)`.
///
/// Pinned by exhaustive comparison with Legendre-family point counts (see the
/// `koike` tests): the sign is `phi(-1)`.
pub fn koike_sign(group: &CharGroup) -> i64 {
    group.sign_at_minus_one(group.phi())
}
