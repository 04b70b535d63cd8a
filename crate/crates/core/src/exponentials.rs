//! Finite families of exponentials `e^{i lambda x}` on `L^2(-pi, pi)`.
//!
//! The exponentials are not normalized, so an orthogonal family has Gram
//! matrix `2 pi I`.

use std::f64::consts::{LN_10, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::hiprec::{self, Ctx};
use crate::linalg::{hermitian_eigen, CMatrix};

/// Strictly increasing frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LambdaSetJson", into = "LambdaSetJson")]
pub struct LambdaSet {
    lambdas: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct LambdaSetJson {
    lambdas: Vec<f64>,
}

impl TryFrom<LambdaSetJson> for LambdaSet {
    type Error = FrameError;

    fn try_from(v: LambdaSetJson) -> Result<Self> {
        LambdaSet::new(v.lambdas)
    }
}

impl From<LambdaSet> for LambdaSetJson {
    fn from(v: LambdaSet) -> Self {
        LambdaSetJson { lambdas: v.lambdas }
    }
}

impl LambdaSet {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(FrameError::Domain("empty frequency set".into()));
        }
        if lambdas.iter().any(|l| !l.is_finite()) {
            return Err(FrameError::Domain("frequencies must be finite".into()));
        }
        if lambdas.windows(2).any(|w| w[1] <= w[0]) {
            return Err(FrameError::Domain("frequencies must be strictly increasing".into()));
        }
        Ok(Self { lambdas })
    }

    /// `start, start + step, ...` with `n` terms.
    pub fn arithmetic(start: f64, step: f64, n: usize) -> Result<Self> {
        Self::new((0..n).map(|k| start + step * k as f64).collect())
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Minimal gap; infinite for a singleton.
    pub fn delta(&self) -> f64 {
        self.lambdas.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    pub fn shifted(&self, c: f64) -> Result<Self> {
        Self::new(self.lambdas.iter().map(|l| l + c).collect())
    }
}

fn gram_entry(d: f64) -> f64 {
    if d == 0.0 {
        2.0 * PI
    } else {
        2.0 * (PI * d).sin() / d
    }
}

/// `G_jk = int_{-pi}^{pi} e^{i (lambda_j - lambda_k) x} dx = 2 sin(pi d) / d`.
pub fn exp_gram(ls: &LambdaSet) -> CMatrix {
    let l = &ls.lambdas;
    let n = l.len();
    DMatrix::from_fn(n, n, |j, k| {
        if j == k {
            Complex64::new(2.0 * PI, 0.0)
        } else {
            Complex64::new(gram_entry(l[j] - l[k]), 0.0)
        }
    })
}

fn hp_gram(ctx: &mut Ctx, ls: &LambdaSet) -> Vec<Vec<astro_float::BigFloat>> {
    let l = &ls.lambdas;
    let n = l.len();
    let pi = ctx.pi();
    let two = ctx.num(2.0);
    let diag = ctx.mul(&two, &pi);
    let mut g = vec![vec![ctx.num(0.0); n]; n];
    for j in 0..n {
        g[j][j] = diag.clone();
        for k in 0..j {
            let d = ctx.sub(&ctx.num(l[j]), &ctx.num(l[k]));
            let s = ctx.sin(&ctx.mul(&pi, &d));
            let v = ctx.div(&ctx.mul(&two, &s), &d);
            g[j][k] = v.clone();
            g[k][j] = v;
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: f64,
    pub log10: f64,
    /// Bits of the precision that produced `value`.
    pub precision_bits: usize,
    /// Relative difference to the run at twice the precision.
    pub cross_check: f64,
    pub iterations: usize,
}

fn min_eigen_at(ls: &LambdaSet, prec: usize, start: &[f64]) -> Result<Option<(f64, usize)>> {
    let mut ctx = Ctx::new(prec)?;
    let g = hp_gram(&mut ctx, ls);
    Ok(hiprec::spd_min_eigenvalue(&ctx, &g, start, 1e-30, 2000).map(|e| (hiprec::to_f64(&e.value), e.iterations)))
}

/// Smallest eigenvalue of the Gram matrix, the optimal lower frame bound of
/// the family on its span. Double precision gives the starting vector; the
/// value comes from inverse iteration in high precision, repeated at twice
/// the precision until both runs agree.
pub fn lower_bound_report(ls: &LambdaSet) -> Result<LowerBound> {
    let n = ls.len();
    let g = exp_gram(ls);
    let (vals, vecs) = hermitian_eigen(&g);
    let guess = vals[0].max(0.0);
    if n == 1 {
        return Ok(LowerBound {
            value: 2.0 * PI,
            log10: (2.0 * PI).log10(),
            precision_bits: 53,
            cross_check: 0.0,
            iterations: 0,
        });
    }
    let start: Vec<f64> = (0..n).map(|i| vecs[(i, 0)].re + 1e-3 / (1.0 + i as f64)).collect();
    let mut prec = 256;
    while prec <= 4096 {
        let lo = min_eigen_at(ls, prec, &start)?;
        let hi = min_eigen_at(ls, 2 * prec, &start)?;
        if let (Some((a, it)), Some((b, _))) = (lo, hi) {
            let rel = (a - b).abs() / b.abs();
            if a > 0.0 && rel <= 1e-12 {
                return Ok(LowerBound {
                    value: b,
                    log10: b.log10(),
                    precision_bits: 2 * prec,
                    cross_check: rel,
                    iterations: it,
                });
            }
        }
        prec *= 2;
    }
    Err(FrameError::Truncation(format!(
        "smallest Gram eigenvalue not resolved at 8192 bits (double-precision estimate {guess:e})"
    )))
}

pub fn lower_bound(ls: &LambdaSet) -> Result<f64> {
    lower_bound_report(ls).map(|r| r.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrudeBound {
    /// Underflows to 0 for large `N`; `log10` stays exact.
    pub value: f64,
    pub log10: f64,
}

/// `1.6e-14 (delta/2)^{2N+1} / ((N+1)!)^8`, evaluated through logarithms.
pub fn crude_bound(n: usize, delta: f64) -> Result<CrudeBound> {
    if n == 0 {
        return Err(FrameError::Domain("N must be at least 1".into()));
    }
    if !(delta > 0.0) {
        return Err(FrameError::Domain(format!("delta must be positive (got {delta})")));
    }
    if delta > 1.0 {
        return Err(FrameError::Precondition(format!("the estimate assumes delta <= 1 (got {delta})")));
    }
    let ln_fact: f64 = (2..=n + 1).map(|k| (k as f64).ln()).sum();
    let ln = 1.6e-14f64.ln() + (2 * n + 1) as f64 * (delta / 2.0).ln() - 8.0 * ln_fact;
    Ok(CrudeBound {
        value: ln.exp(),
        log10: ln / LN_10,
    })
}

/// Nested families `Lambda_1 ⊂ Lambda_2 ⊂ ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// `{0, step, 2 step, ...}`.
    Arithmetic { step: f64 },
    /// Prefixes of an explicit increasing list.
    Prefixes { lambdas: Vec<f64> },
}

impl Family {
    pub fn integers() -> Self {
        Family::Arithmetic { step: 1.0 }
    }

    pub fn half_integers() -> Self {
        Family::Arithmetic { step: 0.5 }
    }

    pub fn section(&self, n: usize) -> Result<LambdaSet> {
        match self {
            Family::Arithmetic { step } => LambdaSet::arithmetic(0.0, *step, n),
            Family::Prefixes { lambdas } => {
                if n > lambdas.len() {
                    return Err(FrameError::Domain(format!("family has only {} terms", lambdas.len())));
                }
                LambdaSet::new(lambdas[..n].to_vec())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub n: usize,
    pub lower_bound: f64,
    pub crude_log10: f64,
    /// `log10(lower_bound / crude)`; non-negative when the estimate holds.
    pub log10_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayStudy {
    pub rows: Vec<DecayRow>,
    pub strictly_decreasing: bool,
    pub crude_below_exact: bool,
}

/// Lower bounds of the sections `N = 1..=n_max` next to the crude estimate
/// with `delta = min(gap, 1)`.
pub fn decay_study(family: &Family, n_max: usize) -> Result<DecayStudy> {
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let ls = family.section(n)?;
            let lb = lower_bound(&ls)?;
            let crude = crude_bound(n, ls.delta().min(1.0))?;
            Ok(DecayRow {
                n,
                lower_bound: lb,
                crude_log10: crude.log10,
                log10_ratio: lb.log10() - crude.log10,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let strictly_decreasing = rows.windows(2).all(|w| w[1].lower_bound < w[0].lower_bound);
    let crude_below_exact = rows.iter().all(|r| r.log10_ratio >= 0.0);
    Ok(DecayStudy {
        rows,
        strictly_decreasing,
        crude_below_exact,
    })
}
