//! Dually flat cubic forms: `R^∇ = 0` restricted to the conjugate-symmetric
//! span.

use std::fmt;

use crate::algebra::LieAlgebra;
use crate::classify::cs::{cs_subspace, CsBasis};
use crate::connection::{difference_tensor, levi_civita, statistical_connection};
use crate::curvature::{curvature, is_flat};
use crate::error::{Error, Result};
use crate::linalg::{definiteness, Definiteness, Mat};
use crate::scalar::{rationalize, Context, Rational, Scalar};
use crate::symtensor::{CubicForm, FourTensor};

/// Largest conjugate-symmetric dimension handled by the Newton search.
pub const MAX_NEWTON_DIM: usize = 4;

/// `R^∇ = 0` for the statistical connection of `(spec, C)`.
pub fn df_check<S: Scalar>(spec: &LieAlgebra<S>, c: &CubicForm<S>, ctx: &Context) -> Result<bool> {
    let lc = levi_civita(spec)?;
    let st = statistical_connection(&lc, &difference_tensor(c));
    Ok(is_flat(&curvature(&st, spec, ctx), ctx))
}

/// Search parameters for [`df_solutions`].
#[derive(Clone, Debug, PartialEq)]
pub struct DfOptions {
    /// Starting points per axis of the multi-start lattice.
    pub grid: usize,
    /// Half-width of the starting lattice in basis coordinates.
    pub radius: f64,
    pub newton_iters: usize,
    pub dedupe_tol: f64,
}

impl Default for DfOptions {
    fn default() -> Self {
        Self {
            grid: 5,
            radius: 2.0,
            newton_iters: 100,
            dedupe_tol: 1e-6,
        }
    }
}

/// A dually flat cubic form, exact when the root could be certified over the
/// rationals.
#[derive(Clone, Debug, PartialEq)]
pub enum DfSolution {
    Exact(CubicForm<Rational>),
    Approximate(CubicForm<f64>),
}

impl DfSolution {
    pub fn to_f64(&self) -> CubicForm<f64> {
        match self {
            DfSolution::Exact(c) => c.to_f64(),
            DfSolution::Approximate(c) => c.clone(),
        }
    }
}

/// Non-isolated solution set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub description: String,
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

/// Proof that some curvature entry stays away from zero on the whole span.
#[derive(Clone, Debug, PartialEq)]
pub struct EmptinessCertificate {
    /// 0-based `(i, j, k, l)`.
    pub entry: [usize; 4],
    /// `inf |R_ijkl|` over the span.
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DfOutcome {
    Solutions(Vec<DfSolution>),
    Empty(Option<EmptinessCertificate>),
    Family(FamilyDescriptor),
}

/// Curvature of `C = Σ c_a B_a` as a quadratic polynomial per entry:
/// `R(c) = R0 + Σ c_a L_a + Σ_ab c_a c_b Q_ab` with `Q` symmetric.
struct CurvaturePolynomial {
    d: usize,
    r0: FourTensor<Rational>,
    lin: Vec<FourTensor<Rational>>,
    quad: Vec<Vec<FourTensor<Rational>>>,
}

impl CurvaturePolynomial {
    fn build(spec: &LieAlgebra<Rational>, basis: &CsBasis<Rational>, ctx: &Context) -> Result<Self> {
        let lc = levi_civita(spec)?;
        let d = basis.dim();
        let eval = |coeffs: &[Rational]| {
            let c = basis.combine(coeffs);
            curvature(&statistical_connection(&lc, &difference_tensor(&c)), spec, ctx)
        };
        let unit = |a: usize, s: i64| {
            (0..d)
                .map(|i| Rational::from_int(if i == a { s } else { 0 }))
                .collect::<Vec<_>>()
        };
        let r0 = eval(&vec![Rational::from_int(0); d]);
        let half = Rational::from_ratio(1, 2);
        let mut lin = Vec::with_capacity(d);
        let mut diag = Vec::with_capacity(d);
        for a in 0..d {
            let plus = eval(&unit(a, 1));
            let minus = eval(&unit(a, -1));
            lin.push(plus.add(&minus.scale(&-Rational::from_int(1))).scale(&half));
            diag.push(plus.add(&minus).scale(&half).add(&r0.scale(&-Rational::from_int(1))));
        }
        let mut quad: Vec<Vec<FourTensor<Rational>>> = vec![Vec::with_capacity(d); d];
        for a in 0..d {
            for b in 0..d {
                let q = if a == b {
                    diag[a].clone()
                } else if b < a {
                    quad[b][a].clone()
                } else {
                    let mut e = unit(a, 1);
                    e[b] = Rational::from_int(1);
                    // f(e_a + e_b) = R0 + L_a + L_b + Q_aa + Q_bb + 2 Q_ab.
                    let neg = -Rational::from_int(1);
                    eval(&e)
                        .add(&r0.scale(&neg))
                        .add(&lin[a].scale(&neg))
                        .add(&lin[b].scale(&neg))
                        .add(&diag[a].scale(&neg))
                        .add(&diag[b].scale(&neg))
                        .scale(&half)
                };
                quad[a].push(q);
            }
        }
        Ok(Self { d, r0, lin, quad })
    }

    fn entries(&self) -> usize {
        self.r0.data().len()
    }

    fn constant(&self, e: usize) -> &Rational {
        &self.r0.data()[e]
    }

    fn linear(&self, e: usize) -> Vec<Rational> {
        self.lin.iter().map(|t| t.data()[e].clone()).collect()
    }

    fn quadratic(&self, e: usize) -> Mat<Rational> {
        Mat::from_fn(self.d, self.d, |a, b| self.quad[a][b].data()[e].clone())
    }

    fn entry_index(&self, e: usize) -> [usize; 4] {
        let n = self.r0.dim();
        [e / (n * n * n), (e / (n * n)) % n, (e / n) % n, e % n]
    }

    fn is_identically_zero(&self, e: usize) -> bool {
        self.constant(e).is_negligible(0.0)
            && self.linear(e).iter().all(|v| v.is_negligible(0.0))
            && self
                .quad
                .iter()
                .all(|row| row.iter().all(|t| t.data()[e].is_negligible(0.0)))
    }

    fn eval(&self, e: usize, c: &[Rational]) -> Rational {
        let mut v = self.r0.data()[e].clone();
        for a in 0..self.d {
            v += self.lin[a].data()[e].clone() * c[a].clone();
            for b in 0..self.d {
                v += self.quad[a][b].data()[e].clone() * c[a].clone() * c[b].clone();
            }
        }
        v
    }

    fn vanishes_at(&self, active: &[usize], c: &[Rational]) -> bool {
        active.iter().all(|&e| self.eval(e, c).is_negligible(0.0))
    }

    fn eval_f64(&self, e: usize, c: &[f64]) -> f64 {
        let mut v = self.r0.data()[e].to_f64();
        for a in 0..self.d {
            v += self.lin[a].data()[e].to_f64() * c[a];
            for b in 0..self.d {
                v += self.quad[a][b].data()[e].to_f64() * c[a] * c[b];
            }
        }
        v
    }

    fn grad_f64(&self, e: usize, c: &[f64]) -> Vec<f64> {
        (0..self.d)
            .map(|a| {
                let mut g = self.lin[a].data()[e].to_f64();
                for b in 0..self.d {
                    g += 2.0 * self.quad[a][b].data()[e].to_f64() * c[b];
                }
                g
            })
            .collect()
    }

    /// Exact `inf |p_e|` over the span when that infimum is positive and
    /// provable: the quadratic part is semidefinite and the extremum is
    /// attained with the right sign.
    fn certificate(&self, e: usize) -> Option<Rational> {
        let r0 = self.constant(e).clone();
        if self.d == 0 {
            return (!r0.is_negligible(0.0)).then(|| r0.abs());
        }
        let q = self.quadratic(e);
        let l = self.linear(e);
        let sign = match definiteness(&q, 0.0) {
            Definiteness::PositiveSemidefinite => Rational::from_int(1),
            Definiteness::NegativeSemidefinite => Rational::from_int(-1),
            Definiteness::Indefinite => return None,
        };
        // Stationary point: 2Qc = −L; the extremum is r0 + L·c/2.
        let rhs: Vec<Rational> = l.iter().map(|v| -v.clone()).collect();
        let c = q.scale(&Rational::from_int(2)).solve(&rhs, 0.0)?;
        let extremum = l.iter().zip(&c).fold(r0, |acc, (a, b)| {
            acc + a.clone() * b.clone() * Rational::from_ratio(1, 2)
        });
        let signed = extremum * sign;
        (signed > Rational::from_int(0)).then_some(signed)
    }
}

/// All dually flat cubic forms of `spec`, searched inside the
/// conjugate-symmetric span.
///
/// Abelian algebras have a non-isolated solution set (diagonal forms) and
/// return [`DfOutcome::Family`]. Otherwise an exact emptiness certificate is
/// tried first; then the span dimension decides between an exact
/// one-variable solve and a multi-start Newton search, which is capped at
/// [`MAX_NEWTON_DIM`].
pub fn df_solutions(spec: &LieAlgebra<Rational>, opts: &DfOptions, ctx: &Context) -> Result<DfOutcome> {
    if spec.is_abelian() {
        return Ok(DfOutcome::Family(FamilyDescriptor {
            description: "diagonal forms Σ λ_i x_i^3 in an orthonormal basis; see abelian_df_normal_form".into(),
        }));
    }
    let basis = cs_subspace(spec)?;
    let poly = CurvaturePolynomial::build(spec, &basis, ctx)?;

    let best = (0..poly.entries())
        .filter_map(|e| poly.certificate(e).map(|b| (e, b)))
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
    if let Some((e, bound)) = best {
        return Ok(DfOutcome::Empty(Some(EmptinessCertificate {
            entry: poly.entry_index(e),
            bound,
        })));
    }

    let active: Vec<usize> = (0..poly.entries()).filter(|&e| !poly.is_identically_zero(e)).collect();
    match basis.dim() {
        0 => Ok(if active.is_empty() {
            DfOutcome::Solutions(vec![DfSolution::Exact(CubicForm::zero(spec.dim()))])
        } else {
            DfOutcome::Empty(None)
        }),
        1 => Ok(solve_line(&poly, &basis, &active, ctx)),
        d if d <= MAX_NEWTON_DIM => Ok(newton_search(&poly, &basis, &active, opts)),
        d => Err(Error::Unsupported(format!(
            "dually flat search needs conjugate-symmetric dimension ≤ {MAX_NEWTON_DIM}, got {d}; \
             test candidates with df_check instead"
        ))),
    }
}

fn solve_line(poly: &CurvaturePolynomial, basis: &CsBasis<Rational>, active: &[usize], ctx: &Context) -> DfOutcome {
    if active.is_empty() {
        return DfOutcome::Family(FamilyDescriptor {
            description: "every element of the conjugate-symmetric line is dually flat".into(),
        });
    }
    let zero = Rational::from_int(0);
    // Pick the entry of highest degree to generate candidate roots.
    let (r0, l, q) = active
        .iter()
        .map(|&e| {
            (
                poly.constant(e).clone(),
                poly.linear(e)[0].clone(),
                poly.quadratic(e)[(0, 0)].clone(),
            )
        })
        .max_by_key(|(_, l, q)| 2 * u8::from(!q.is_negligible(0.0)) + u8::from(!l.is_negligible(0.0)))
        .expect("active entries exist");
    let mut exact_roots: Vec<Rational> = Vec::new();
    let mut float_roots: Vec<f64> = Vec::new();
    if q != zero {
        let disc = l.clone() * l.clone() - Rational::from_int(4) * q.clone() * r0.clone();
        if disc >= zero {
            match disc.sqrt() {
                Some(s) => {
                    let two_q = Rational::from_int(2) * q.clone();
                    exact_roots.push((-l.clone() + s.clone()) / two_q.clone());
                    exact_roots.push((-l.clone() - s) / two_q);
                }
                None => {
                    let (l, q, s) = (l.to_f64(), q.to_f64(), disc.to_f64().sqrt());
                    float_roots.push((-l + s) / (2.0 * q));
                    float_roots.push((-l - s) / (2.0 * q));
                }
            }
        }
    } else if l != zero {
        exact_roots.push(-r0 / l);
    }
    exact_roots.sort_by(|a, b| b.cmp(a));
    exact_roots.dedup();
    float_roots.sort_by(|a, b| b.total_cmp(a));
    float_roots.dedup();

    let mut out = Vec::new();
    for root in exact_roots {
        let c = [root];
        if poly.vanishes_at(active, &c) {
            out.push(DfSolution::Exact(basis.combine(&c)));
        }
    }
    for root in float_roots {
        let scale = 1.0 + root.abs() * root.abs();
        if active
            .iter()
            .all(|&e| poly.eval_f64(e, &[root]).abs() <= ctx.eps * scale)
        {
            out.push(DfSolution::Approximate(basis.convert(|v| v.to_f64()).combine(&[root])));
        }
    }
    if out.is_empty() {
        DfOutcome::Empty(None)
    } else {
        DfOutcome::Solutions(out)
    }
}

fn residual(poly: &CurvaturePolynomial, active: &[usize], c: &[f64]) -> Vec<f64> {
    active.iter().map(|&e| poly.eval_f64(e, c)).collect()
}

fn jacobian(poly: &CurvaturePolynomial, active: &[usize], c: &[f64]) -> nalgebra::DMatrix<f64> {
    let rows: Vec<Vec<f64>> = active.iter().map(|&e| poly.grad_f64(e, c)).collect();
    nalgebra::DMatrix::from_fn(rows.len(), poly.d, |i, j| rows[i][j])
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

// Levenberg–Marquardt on the stacked residual.
fn newton_from(poly: &CurvaturePolynomial, active: &[usize], start: Vec<f64>, opts: &DfOptions) -> Option<Vec<f64>> {
    let d = poly.d;
    let mut c = start;
    let mut lambda = 1e-3;
    let mut r = residual(poly, active, &c);
    for _ in 0..opts.newton_iters {
        let rn = norm(&r);
        if rn < 1e-14 {
            break;
        }
        let j = jacobian(poly, active, &c);
        let jt = j.transpose();
        let jtj = &jt * &j;
        let g = &jt * nalgebra::DVector::from_column_slice(&r);
        let mut improved = false;
        for _ in 0..20 {
            let a = &jtj + nalgebra::DMatrix::<f64>::identity(d, d) * lambda;
            let Some(step) = a.lu().solve(&(-&g)) else {
                lambda *= 10.0;
                continue;
            };
            let trial: Vec<f64> = c.iter().zip(step.iter()).map(|(x, s)| x + s).collect();
            let tr = residual(poly, active, &trial);
            if norm(&tr) < rn {
                c = trial;
                r = tr;
                lambda = (lambda * 0.3).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    let scale = 1.0 + c.iter().map(|x| x * x).sum::<f64>();
    (norm(&r) <= 1e-9 * scale).then_some(c)
}

fn newton_search(
    poly: &CurvaturePolynomial,
    basis: &CsBasis<Rational>,
    active: &[usize],
    opts: &DfOptions,
) -> DfOutcome {
    let d = poly.d;
    if active.is_empty() {
        return DfOutcome::Family(FamilyDescriptor {
            description: format!("the whole {d}-dimensional conjugate-symmetric span is dually flat"),
        });
    }
    let grid = opts.grid.max(2);
    let axis: Vec<f64> = (0..grid)
        .map(|i| -opts.radius + 2.0 * opts.radius * i as f64 / (grid - 1) as f64)
        .collect();
    let mut starts: Vec<Vec<f64>> = vec![Vec::new()];
    for _ in 0..d {
        starts = starts
            .into_iter()
            .flat_map(|s| {
                axis.iter().map(move |&x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    // Starting points are visited in sorted order so the result does not
    // depend on scheduling.
    let mut roots: Vec<Vec<f64>> = Vec::new();
    for start in starts {
        let Some(root) = newton_from(poly, active, start, opts) else {
            continue;
        };
        let dup = roots
            .iter()
            .any(|r| r.iter().zip(&root).all(|(a, b)| (a - b).abs() <= opts.dedupe_tol));
        if !dup {
            roots.push(root);
        }
    }
    for root in &roots {
        let j = jacobian(poly, active, root);
        let rank = j.svd(false, false).rank(1e-7);
        if rank < d {
            return DfOutcome::Family(FamilyDescriptor {
                description: format!("non-isolated dually flat set: Jacobian rank {rank} < {d} at a root"),
            });
        }
    }
    roots.sort_by(|a, b| {
        b.iter()
            .zip(a)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let fbasis = basis.convert(|v| v.to_f64());
    let out: Vec<DfSolution> = roots
        .into_iter()
        .map(|root| {
            let exact: Option<Vec<Rational>> = root.iter().map(|&x| rationalize(x, 1000)).collect();
            match exact {
                Some(q) if poly.vanishes_at(active, &q) => DfSolution::Exact(basis.combine(&q)),
                _ => DfSolution::Approximate(fbasis.combine(&root)),
            }
        })
        .collect();
    if out.is_empty() {
        DfOutcome::Empty(None)
    } else {
        DfOutcome::Solutions(out)
    }
}
