//! The verification sweeps. Each suite runs one identity over the odd primes
//! up to the configured bound and returns one record per prime (or per case).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::RunConfig;
use super::report::{Quantity, Record, SuiteReport};
use crate::chargauss::{CharGroup, CharRef};
use crate::classno::{aggregate_h, class_number, hstar_by_conductor, is_fundamental};
use crate::curves::{
    census, census_pairs, lemma44_check, lemma45_sums, lemma46_sums, lemma47_sums, prop43_ladder, IsoClassTable,
    CENSUS_PMAX,
};
use crate::error::{Error, Result};
use crate::fieldcore::{odd_primes_upto, FieldCtx};
use crate::hyper::{phi2_eps1, phi3_eps2, phi4_eps3, quartic_3f2, whipple_check, GaussInt, HyperValue, WhippleBranch};
use crate::par::{self, Exec};
use crate::qseries::{b_coeff, conjecture_lhs, lambda_p, xi, Newforms};
use crate::traceform::{prop31_classify, prop31_traces, trace16, trace32, trace32_new};

pub const SUITE_IDS: &[&str] = &[
    "thm1.1",
    "thm1.2",
    "thm1.3",
    "thm1.5",
    "thm1.6",
    "eq1.4",
    "thm2.2",
    "lem2.1",
    "prop3.1",
    "thm3.2-dim1",
    "cor3.4-consistency",
    "prop4.3",
    "lem4.4",
    "lem4.5",
    "lem4.6",
    "lem4.7",
    "thm5.2",
    "conj6",
];

/// Random tuples per prime and branch in the Whipple sweep.
pub const WHIPPLE_SAMPLES: usize = 50;
/// Random `(D, f)` pairs in the conductor-formula sweep.
pub const CONDUCTOR_SAMPLES: usize = 200;
const CONDUCTOR_FMAX: i64 = 12;
const CONDUCTOR_DMIN: i64 = -400;

struct Ctx<'a> {
    cfg: &'a RunConfig,
    exec: Exec,
    nf: Newforms,
}

type Job<'a> = dyn Fn(u64) -> Result<Vec<Record>> + Sync + 'a;

impl Ctx<'_> {
    fn sweep(&self, suite: &'static str, primes: Vec<u64>, job: &Job<'_>) -> Vec<Record> {
        par::map(self.exec, primes, |p| job(p).unwrap_or_else(|e| vec![Record::error(suite, Some(p), &e)]))
            .into_iter()
            .flatten()
            .collect()
    }

    fn primes(&self) -> Vec<u64> {
        odd_primes_upto(self.cfg.pmax)
    }

    fn primes_1mod4(&self) -> Vec<u64> {
        self.primes().into_iter().filter(|p| p % 4 == 1).collect()
    }

    fn census_primes(&self) -> Vec<u64> {
        odd_primes_upto(self.cfg.pmax.min(CENSUS_PMAX)).into_iter().filter(|&p| p >= 5).collect()
    }
}

fn int(n: i64) -> Quantity {
    Quantity::Int(n)
}

fn gauss(z: GaussInt) -> Quantity {
    Quantity::gauss(z)
}

/// Ids selected by `id`, expanding `all`.
pub fn resolve(id: &str) -> Result<Vec<&'static str>> {
    if id == "all" {
        return Ok(SUITE_IDS.to_vec());
    }
    SUITE_IDS
        .iter()
        .find(|s| **s == id)
        .map(|s| vec![*s])
        .ok_or_else(|| Error::UnknownSuite { id: id.to_string(), valid: valid_ids() })
}

fn valid_ids() -> Vec<&'static str> {
    let mut v = SUITE_IDS.to_vec();
    v.push("all");
    v
}

/// Runs one suite id, or every suite for `all`.
pub fn run_suites(id: &str, cfg: &RunConfig) -> Result<Vec<SuiteReport>> {
    let ids = resolve(id)?;
    cfg.validate()?;
    par::with_threads(cfg.threads, || {
        let nmax = cfg.pmax.max(cfg.ext_pmax) as usize + 1;
        let ctx = Ctx { cfg, exec: Exec::from_threads(cfg.threads), nf: Newforms::new(nmax)? };
        Ok(ids.into_iter().map(|id| run_one(&ctx, id)).collect())
    })
}

/// Runs a single suite.
pub fn run_suite(id: &str, cfg: &RunConfig) -> Result<SuiteReport> {
    if id == "all" {
        return Err(Error::InvalidArgument("run_suite takes a single id; use run_suites for `all`".into()));
    }
    Ok(run_suites(id, cfg)?.remove(0))
}

fn run_one(ctx: &Ctx<'_>, id: &'static str) -> SuiteReport {
    let start = Instant::now();
    let records = match id {
        "thm1.1" => thm1_1(ctx),
        "thm1.2" => thm1_2(ctx),
        "thm1.3" => thm1_3(ctx),
        "thm1.5" => thm1_5(ctx),
        "thm1.6" => thm1_6(ctx),
        "eq1.4" => eq1_4(ctx),
        "thm2.2" => thm2_2(ctx),
        "lem2.1" => lem2_1(ctx),
        "prop3.1" => prop3_1(ctx),
        "thm3.2-dim1" => thm3_2_dim1(ctx),
        "cor3.4-consistency" => cor3_4(ctx),
        "prop4.3" => prop4_3(ctx),
        "lem4.4" => lem4_4(ctx),
        "lem4.5" => lem4_5(ctx),
        "lem4.6" => lem4_6(ctx),
        "lem4.7" => lem4_7(ctx),
        "thm5.2" => thm5_2(ctx),
        "conj6" => conj6(ctx),
        _ => unreachable!("ids come from SUITE_IDS"),
    };
    SuiteReport::new(id, records, start.elapsed())
}

fn thm1_1(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "thm1.1";
    ctx.sweep(ID, ctx.primes(), &|p| {
        let g = CharGroup::for_prime(p)?;
        let rhs = ctx.nf.d(p)? + p as i64;
        Ok(vec![Record::hyper(ID, Some(p), &phi4_eps3(&g, 1)?, int(rhs), ctx.cfg.tol)])
    })
}

fn thm1_2(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "thm1.2";
    ctx.sweep(ID, ctx.primes(), &|p| {
        let g = CharGroup::for_prime(p)?;
        Ok(vec![Record::hyper(ID, Some(p), &phi3_eps2(&g)?, int(ctx.nf.c(p)?), ctx.cfg.tol)])
    })
}

fn thm1_3(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "thm1.3";
    ctx.sweep(ID, ctx.primes(), &|p| {
        let g = CharGroup::for_prime(p)?;
        let rhs = xi(p) * lambda_p(p, &ctx.nf)?;
        Ok(vec![Record::hyper(ID, Some(p), &phi4_eps3(&g, -1)?, int(rhs), ctx.cfg.tol)])
    })
}

fn thm1_5(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "thm1.5";
    ctx.sweep(ID, ctx.primes(), &|p| {
        let g = CharGroup::for_prime(p)?;
        Ok(vec![Record::hyper(ID, Some(p), &phi2_eps1(&g, -1)?, int(ctx.nf.a(p)?), ctx.cfg.tol)])
    })
}

fn thm1_6(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "thm1.6";
    let tol = ctx.cfg.tol;
    ctx.sweep(ID, ctx.primes_1mod4(), &|p| {
        let g = CharGroup::for_prime(p)?;
        let chi = g.chi4()?;
        let b = gauss(b_coeff(p)?);
        let v = quartic_3f2(&g, chi)?;
        let vbar = quartic_3f2(&g, chi.conj())?;
        let gap = (v.raw - vbar.raw).norm();
        Ok(vec![
            Record::hyper(ID, Some(p), &v, b, tol).case("chi4"),
            Record::hyper(ID, Some(p), &vbar, b, tol).case("chi4bar"),
            Record::approx(ID, Some(p), gauss(v.rounded), gauss(vbar.rounded), gap, tol).case("independence"),
        ])
    })
}

fn eq1_4(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "eq1.4";
    ctx.sweep(ID, ctx.primes_1mod4(), &|p| {
        let g = CharGroup::for_prime(p)?;
        let four = phi4_eps3(&g, -1)?;
        let product = HyperValue::from_raw(phi2_eps1(&g, -1)?.raw * quartic_3f2(&g, g.chi4()?)?.raw);
        let residual = four.residual.max(product.residual).max((four.raw - product.raw).norm());
        Ok(vec![Record::approx(ID, Some(p), gauss(four.rounded), gauss(product.rounded), residual, ctx.cfg.tol)])
    })
}

fn thm2_2(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "thm2.2";
    ctx.sweep(ID, ctx.census_primes(), &|p| {
        let f = FieldCtx::new(p)?;
        let table = IsoClassTable::new(&f, Exec::Sequential)?;
        census_pairs(p)
            .into_iter()
            .map(|(s, n)| {
                let e = census(s, n, &table)?;
                Ok(Record::exact(ID, Some(p), int(e.count as i64), int(e.expected)).case(format!("s={s} n={n}")))
            })
            .collect()
    })
}

fn lem2_1(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "lem2.1";
    let funds: Vec<i64> = (CONDUCTOR_DMIN..0).rev().filter(|&d| is_fundamental(d)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
    let mut out = Vec::with_capacity(CONDUCTOR_SAMPLES + 2);
    for _ in 0..CONDUCTOR_SAMPLES {
        let d = funds[rng.gen_range(0..funds.len())];
        let f = rng.gen_range(1..=CONDUCTOR_FMAX);
        let rec = hstar_by_conductor(d, f).and_then(|lhs| {
            let rhs = class_number(f * f * d)?.hstar;
            Ok(Record::exact(ID, None, Quantity::rational(lhs), Quantity::rational(rhs)))
        });
        out.push(rec.unwrap_or_else(|e| Record::error(ID, None, &e)).case(format!("D={d} f={f}")));
    }
    // aggregate spot values at D = -16
    match aggregate_h(-16) {
        Ok((h, hstar)) => {
            out.push(Record::exact(ID, None, Quantity::rational(h), int(2)).case("H(-16)"));
            out.push(
                Record::exact(ID, None, Quantity::rational(hstar), Quantity::rational((3, 2).into())).case("H*(-16)"),
            );
        }
        Err(e) => out.push(Record::error(ID, None, &e)),
    }
    out
}

fn prop3_1(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "prop3.1";
    ctx.sweep(ID, ctx.primes(), &|p| {
        let mut constrained = 0;
        let mut consistent = 0;
        let mut bad = Vec::new();
        for s in prop31_traces(p) {
            match prop31_classify(p, s)?.consistent {
                Some(true) => {
                    constrained += 1;
                    consistent += 1;
                }
                Some(false) => {
                    constrained += 1;
                    bad.push(s.to_string());
                }
                None => {}
            }
        }
        let rec = Record::exact(ID, Some(p), int(consistent), int(constrained)).case("consistent/constrained");
        Ok(vec![if bad.is_empty() { rec } else { rec.detail(format!("violations at s = {}", bad.join(" "))) }])
    })
}

fn thm3_2_dim1(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "thm3.2-dim1";
    ctx.sweep(ID, ctx.primes(), &|p| Ok(vec![Record::exact(ID, Some(p), int(trace16(p)?), int(ctx.nf.c(p)?))]))
}

fn cor3_4(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "cor3.4-consistency";
    let tol = ctx.cfg.tol;
    ctx.sweep(ID, ctx.primes(), &|p| {
        let (t16, t32, tnew) = (trace16(p)?, trace32(p)?, trace32_new(p)?);
        let mut out = vec![Record::exact(ID, Some(p), int(tnew), int(t32 - 2 * t16)).case("new = full - 2 old")];
        if p % 4 == 3 {
            out.push(Record::exact(ID, Some(p), int(t16.abs() + t32.abs() + tnew.abs()), int(0)).case("vanishing"));
        } else if p <= crate::qseries::B_FIXTURE_BOUND {
            out.push(Record::exact(ID, Some(p), int(tnew), gauss(b_coeff(p)? * 2)).case("2b fixture"));
        } else {
            // independent b(p) from the quartic 3F2
            let g = CharGroup::for_prime(p)?;
            let v = quartic_3f2(&g, g.chi4()?)?;
            out.push(Record::approx(ID, Some(p), int(tnew), gauss(v.rounded * 2), v.residual, tol).case("2b 3F2"));
        }
        Ok(out)
    })
}

fn prop4_3(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "prop4.3";
    let primes = ctx.primes().into_iter().filter(|&p| p >= 5).collect();
    ctx.sweep(ID, primes, &|p| {
        let f = FieldCtx::new(p)?;
        let mut holds = 0;
        let mut first_bad = None;
        for l in 2..p as i64 {
            let rungs = prop43_ladder(l, &f)?;
            if rungs.iter().all(|&r| r == rungs[0]) {
                holds += 1;
            } else if first_bad.is_none() {
                first_bad = Some(format!("lambda = {l}: {rungs:?}"));
            }
        }
        let rec = Record::exact(ID, Some(p), int(holds), int(p as i64 - 2)).case("lambdas with equal ladder");
        Ok(vec![match first_bad {
            Some(d) => rec.detail(d),
            None => rec,
        }])
    })
}

fn lem4_4(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "lem4.4";
    let primes = ctx.census_primes().into_iter().filter(|p| p % 4 == 1).collect();
    ctx.sweep(ID, primes, &|p| {
        let f = FieldCtx::new(p)?;
        let table = IsoClassTable::new(&f, Exec::Sequential)?;
        let r = lemma44_check(&f, &table)?;
        let nl = r.qualifying_lambdas.len() as i64;
        let part1 = Record::exact(ID, Some(p), int(nl - r.part1_failures.len() as i64), int(nl))
            .case("part1: lambdas with Z/2xZ/8, no Z/4xZ/4");
        let nc = r.qualifying_classes as i64;
        let part2 = Record::exact(ID, Some(p), int(nc - r.part2_unmatched.len() as i64), int(nc))
            .case("part2: classes reached by a qualifying lambda");
        Ok(vec![part1, part2])
    })
}

fn lem4_5(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "lem4.5";
    ctx.sweep(ID, ctx.primes(), &|p| {
        let (lhs, rhs) = lemma45_sums(&FieldCtx::new(p)?)?;
        Ok(vec![Record::exact(ID, Some(p), int(lhs), int(rhs))])
    })
}

fn lem4_6(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "lem4.6";
    ctx.sweep(ID, ctx.primes_1mod4(), &|p| {
        let s = lemma46_sums(&FieldCtx::new(p)?)?;
        Ok(vec![
            Record::exact(ID, Some(p), gauss(s.part1), int(0)).case("part1"),
            Record::exact(ID, Some(p), gauss(s.part2_lhs), gauss(s.part2_rhs)).case("part2"),
        ])
    })
}

fn lem4_7(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "lem4.7";
    ctx.sweep(ID, ctx.primes_1mod4(), &|p| {
        let (lhs, rhs) = lemma47_sums(&FieldCtx::new(p)?)?;
        Ok(vec![Record::exact(ID, Some(p), int(lhs), int(rhs))])
    })
}

fn whipple_rng(seed: u64, p: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_char(rng: &mut ChaCha8Rng, n: usize) -> CharRef {
    CharRef::new(rng.gen_range(0..n as i64), n)
}

fn thm5_2(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "thm5.2";
    let tol = ctx.cfg.tol;
    ctx.sweep(ID, ctx.primes(), &|p| {
        let g = CharGroup::for_prime(p)?;
        let n = g.order();
        let mut rng = whipple_rng(ctx.cfg.seed, p);

        let mut zero_ok = 0;
        let mut zero_worst = 0.0f64;
        for _ in 0..WHIPPLE_SAMPLES {
            let a = CharRef::new(2 * rng.gen_range(0..n as i64 / 2) + 1, n);
            let (b, c, d) = (random_char(&mut rng, n), random_char(&mut rng, n), random_char(&mut rng, n));
            let w = whipple_check(a, b, c, d, &g)?;
            debug_assert_eq!(w.branch, WhippleBranch::NonSquare);
            let gap = w.discrepancy().unwrap_or(f64::INFINITY);
            zero_worst = zero_worst.max(gap);
            if gap < tol {
                zero_ok += 1;
            }
        }
        let samples = WHIPPLE_SAMPLES as i64;
        let zero = Record::approx(ID, Some(p), int(zero_ok), int(samples), zero_worst, tol).case("non-square A");

        let mut eq_ok = 0;
        let mut eq_worst = 0.0f64;
        let mut drawn = 0;
        let mut attempts = 0;
        while drawn < WHIPPLE_SAMPLES && attempts < 100 * WHIPPLE_SAMPLES {
            attempts += 1;
            let a = CharRef::new(2 * rng.gen_range(0..n as i64 / 2), n);
            let (b, c, d) = (random_char(&mut rng, n), random_char(&mut rng, n), random_char(&mut rng, n));
            let w = whipple_check(a, b, c, d, &g)?;
            let Some(gap) = (w.branch == WhippleBranch::Square).then(|| w.discrepancy()).flatten() else {
                continue;
            };
            drawn += 1;
            eq_worst = eq_worst.max(gap);
            if gap < tol {
                eq_ok += 1;
            }
        }
        let equality = if drawn == 0 {
            Record::unavailable(
                ID,
                Some(p),
                Quantity::Missing,
                Quantity::Missing,
                format!("no square A with admissible B, C, D modulo {p}"),
            )
            .case("square A")
        } else {
            Record::approx(ID, Some(p), int(eq_ok), int(drawn as i64), eq_worst, tol).case("square A")
        };
        Ok(vec![zero, equality])
    })
}

fn conj6(ctx: &Ctx<'_>) -> Vec<Record> {
    const ID: &str = "conj6";
    let tol = ctx.cfg.tol;
    let bound = ctx.cfg.ext_pmax;
    ctx.sweep(ID, odd_primes_upto(bound), &|p| {
        let g = CharGroup::for_extension(p, bound)?;
        let rhs: HyperValue = phi4_eps3(&g, -1)?;
        let rec = match conjecture_lhs(p, &ctx.nf) {
            // hyper value on the left, like every other suite
            Ok(lhs) => Record::hyper(ID, Some(p), &rhs, int(lhs), tol),
            Err(e @ Error::Unavailable { .. }) => {
                Record::unavailable(ID, Some(p), Quantity::Missing, gauss(rhs.rounded), e.to_string())
            }
            Err(e) => return Err(e),
        };
        Ok(vec![rec.case("F_{p^2}")])
    })
}
