//! Small dense real linear algebra in arbitrary precision.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

use crate::error::{FrameError, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision plus the constant cache needed by `sin` and `pi`.
pub struct Ctx {
    pub prec: usize,
    cc: Consts,
}

impl Ctx {
    pub fn new(prec: usize) -> Result<Self> {
        let cc = Consts::new().map_err(|e| FrameError::Unsupported(format!("high-precision constants: {e:?}")))?;
        Ok(Self { prec, cc })
    }

    pub fn num(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.prec)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }

    pub fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(self.prec, RM, &mut self.cc)
    }

    pub fn add(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.add(y, self.prec, RM)
    }

    pub fn sub(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.sub(y, self.prec, RM)
    }

    pub fn mul(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.mul(y, self.prec, RM)
    }

    pub fn div(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.div(y, self.prec, RM)
    }

    pub fn sqrt(&self, x: &BigFloat) -> BigFloat {
        x.sqrt(self.prec, RM)
    }

    pub fn dot(&self, x: &[BigFloat], y: &[BigFloat]) -> BigFloat {
        x.iter().zip(y).fold(self.num(0.0), |acc, (a, b)| self.add(&acc, &self.mul(a, b)))
    }
}

/// Nearest `f64` (flushes to 0 or infinity outside the `f64` range).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    match x.as_raw_parts() {
        Some((m, _, s, e, _)) => {
            let top = m.last().copied().unwrap_or(0) as f64 / 2f64.powi(64);
            let mag = if e as i64 > 1100 {
                f64::INFINITY
            } else if (e as i64) < -1100 {
                0.0
            } else {
                top * 2f64.powi(e as i32)
            };
            if s == Sign::Neg {
                -mag
            } else {
                mag
            }
        }
        None => 0.0,
    }
}

/// Lower-triangular `L` with `A = L L^T`; `None` when a pivot is not positive.
pub fn cholesky(ctx: &Ctx, a: &[Vec<BigFloat>]) -> Option<Vec<Vec<BigFloat>>> {
    let n = a.len();
    let mut l = vec![vec![ctx.num(0.0); n]; n];
    for j in 0..n {
        let mut d = a[j][j].clone();
        for k in 0..j {
            d = ctx.sub(&d, &ctx.mul(&l[j][k], &l[j][k]));
        }
        if !d.is_positive() || d.is_zero() {
            return None;
        }
        let djj = ctx.sqrt(&d);
        for i in (j + 1)..n {
            let mut s = a[i][j].clone();
            for k in 0..j {
                s = ctx.sub(&s, &ctx.mul(&l[i][k], &l[j][k]));
            }
            l[i][j] = ctx.div(&s, &djj);
        }
        l[j][j] = djj;
    }
    Some(l)
}

/// Solves `L L^T x = y`.
pub fn cholesky_solve(ctx: &Ctx, l: &[Vec<BigFloat>], y: &[BigFloat]) -> Vec<BigFloat> {
    let n = l.len();
    let mut z: Vec<BigFloat> = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = y[i].clone();
        for k in 0..i {
            s = ctx.sub(&s, &ctx.mul(&l[i][k], &z[k]));
        }
        z.push(ctx.div(&s, &l[i][i]));
    }
    let mut x = vec![ctx.num(0.0); n];
    for i in (0..n).rev() {
        let mut s = z[i].clone();
        for k in (i + 1)..n {
            s = ctx.sub(&s, &ctx.mul(&l[k][i], &x[k]));
        }
        x[i] = ctx.div(&s, &l[i][i]);
    }
    x
}

fn mat_vec(ctx: &Ctx, a: &[Vec<BigFloat>], x: &[BigFloat]) -> Vec<BigFloat> {
    a.iter().map(|row| ctx.dot(row, x)).collect()
}

#[derive(Debug, Clone)]
pub struct MinEigen {
    pub value: BigFloat,
    pub iterations: usize,
    pub converged: bool,
}

/// Smallest eigenvalue of a symmetric positive definite matrix by inverse
/// iteration with Rayleigh quotients. Returns `None` if the Cholesky
/// factorization breaks down at this precision.
pub fn spd_min_eigenvalue(ctx: &Ctx, a: &[Vec<BigFloat>], start: &[f64], rel_tol: f64, max_iter: usize) -> Option<MinEigen> {
    let l = cholesky(ctx, a)?;
    let mut x: Vec<BigFloat> = start.iter().map(|&v| ctx.num(v)).collect();
    let tol = ctx.num(rel_tol);
    let mut prev: Option<BigFloat> = None;
    for it in 1..=max_iter {
        let y = cholesky_solve(ctx, &l, &x);
        let norm = ctx.sqrt(&ctx.dot(&y, &y));
        x = y.iter().map(|v| ctx.div(v, &norm)).collect();
        let rq = ctx.dot(&x, &mat_vec(ctx, a, &x));
        if let Some(p) = &prev {
            let change = ctx.div(&ctx.sub(p, &rq).abs(), &rq.abs());
            if change.cmp(&tol).is_some_and(|c| c <= 0) {
                return Some(MinEigen {
                    value: rq,
                    iterations: it,
                    converged: true,
                });
            }
        }
        prev = Some(rq);
    }
    prev.map(|value| MinEigen {
        value,
        iterations: max_iter,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversion_round_trips() {
        let ctx = Ctx::new(256).unwrap();
        for v in [1.0, -2.5, 1e-300, 3.0e200, std::f64::consts::PI, 0.0] {
            assert_eq!(to_f64(&ctx.num(v)), v);
        }
        let tiny = ctx.mul(&ctx.num(1e-200), &ctx.num(1e-200));
        assert_eq!(to_f64(&tiny), 0.0);
    }

    #[test]
    fn min_eigenvalue_of_small_matrix() {
        let ctx = Ctx::new(256).unwrap();
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3
        let a = vec![vec![ctx.num(2.0), ctx.num(1.0)], vec![ctx.num(1.0), ctx.num(2.0)]];
        let e = spd_min_eigenvalue(&ctx, &a, &[1.0, 0.3], 1e-40, 500).unwrap();
        assert!(e.converged);
        assert!((to_f64(&e.value) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn indefinite_matrix_has_no_cholesky() {
        let ctx = Ctx::new(128).unwrap();
        let a = vec![vec![ctx.num(1.0), ctx.num(2.0)], vec![ctx.num(2.0), ctx.num(1.0)]];
        assert!(cholesky(&ctx, &a).is_none());
    }
}
