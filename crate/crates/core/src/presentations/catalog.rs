//! Built-in presentations.

use std::sync::Arc;

use super::{CoactionData, HopfData, Presentation, TensorAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{mat_inv, Matrix};
use crate::ncpoly::{Alphabet, NCPoly, StarMap, TensorPoly};
use crate::rewrite::{CompletionConfig, DEFAULT_COMPLETION_DEGREE, DEFAULT_RULE_CAP};
use crate::scalars::CScalar;

pub const CATALOG_NAMES: &[&str] = &["GLq2", "GLq2m2", "GLqm22", "Uq2", "Uq2m2", "Onp", "AuFG", "AuF"];

#[derive(Clone, Debug)]
pub struct CatalogParams {
    pub completion_degree: usize,
    pub rule_cap: usize,
    /// Rows of the generating matrix of `Onp`.
    pub n: usize,
    /// Columns of the generating matrix of `Onp`.
    pub p: usize,
    /// `F` of `AuFG`/`AuF`; defaults to `f_matrix(1)`.
    pub f: Option<Matrix>,
    /// `G` of `AuFG`; defaults to `f_matrix(-1)`.
    pub g: Option<Matrix>,
}

impl Default for CatalogParams {
    fn default() -> Self {
        CatalogParams {
            completion_degree: DEFAULT_COMPLETION_DEGREE,
            rule_cap: DEFAULT_RULE_CAP,
            n: 2,
            p: 1,
            f: None,
            g: None,
        }
    }
}

impl CatalogParams {
    pub fn with_degree(degree: usize) -> Self {
        CatalogParams { completion_degree: degree, ..Self::default() }
    }

    fn config(&self) -> CompletionConfig {
        CompletionConfig { degree: self.completion_degree, rule_cap: self.rule_cap }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub presentation: Arc<Presentation>,
    pub hopf: Option<Arc<HopfData>>,
    pub coaction: Option<Arc<CoactionData>>,
}

/// `((0, 1, 0), (-sign*q, 0, 0), (0, 0, 1))`; `f_matrix(1)` is `F_q` and
/// `f_matrix(-1)` is `F_{-q}`.
pub fn f_matrix(sign: i64) -> Matrix {
    let z = CScalar::zero;
    let o = CScalar::one;
    vec![vec![z(), o(), z()], vec![&CScalar::from_int(-sign) * &CScalar::q_pow(1), z(), z()], vec![z(), z(), o()]]
}

pub fn catalog(name: &str, params: &CatalogParams) -> Result<CatalogEntry> {
    match name {
        "GLq2" => {
            let p = Arc::new(glq2(false, params)?);
            Ok(CatalogEntry { hopf: Some(Arc::new(glq2_hopf(p.clone())?)), presentation: p, coaction: None })
        }
        "Uq2" => {
            let p = Arc::new(glq2(true, params)?);
            Ok(CatalogEntry { hopf: Some(Arc::new(glq2_hopf(p.clone())?)), presentation: p, coaction: None })
        }
        "GLq2m2" | "Uq2m2" => {
            let star = name == "Uq2m2";
            let base = catalog(if star { "Uq2" } else { "GLq2" }, params)?;
            let z = Arc::new(glq2m2(star, params)?);
            let hopf = base.hopf.expect("base has Hopf data");
            let t = TensorAlgebra::new(hopf.algebra.clone(), z.clone());
            let alpha = ["tau", "z11", "z12", "z21", "z22"]
                .iter()
                .map(|g| {
                    let src = match *g {
                        "tau" => "t (x) tau".to_string(),
                        _ => {
                            let (i, j) = (&g[1..2], &g[2..3]);
                            format!("x{i}1 (x) z1{j} + x{i}2 (x) z2{j}")
                        }
                    };
                    t.parse(&src)
                })
                .collect::<Result<Vec<_>>>()?;
            let coaction = Arc::new(CoactionData::new(hopf, z.clone(), alpha));
            Ok(CatalogEntry { presentation: z, hopf: None, coaction: Some(coaction) })
        }
        "GLqm22" => Ok(CatalogEntry { presentation: Arc::new(glqm22(params)?), hopf: None, coaction: None }),
        "Onp" => Ok(CatalogEntry {
            presentation: Arc::new(unitary_matrix_algebra("Onp", params.n, params.p, None, params)?),
            hopf: None,
            coaction: None,
        }),
        "AuF" => {
            let f = params.f.clone().unwrap_or_else(|| f_matrix(1));
            let a = Arc::new(unitary_matrix_algebra("AuF", f.len(), f.len(), Some((&f, &f)), params)?);
            Ok(CatalogEntry { hopf: Some(Arc::new(auf_hopf(a.clone(), &f)?)), presentation: a, coaction: None })
        }
        "AuFG" => {
            let f = params.f.clone().unwrap_or_else(|| f_matrix(1));
            let g = params.g.clone().unwrap_or_else(|| f_matrix(-1));
            let base = catalog("AuF", &CatalogParams { f: Some(f.clone()), ..params.clone() })?;
            let hopf = base.hopf.expect("AuF has Hopf data");
            let z = Arc::new(unitary_matrix_algebra("AuFG", f.len(), g.len(), Some((&f, &g)), params)?);
            let (n, p) = (f.len(), g.len());
            let mut alpha = vec![TensorPoly::zero(); 2 * n * p];
            for i in 0..n {
                for j in 0..p {
                    for k in 0..n {
                        let a = NCPoly::generator(i * n + k);
                        let zz = NCPoly::generator(k * p + j);
                        alpha[i * p + j].add_simple(&a, &zz, &CScalar::one());
                        let a_s = NCPoly::generator(n * n + i * n + k);
                        let z_s = NCPoly::generator(n * p + k * p + j);
                        alpha[n * p + i * p + j].add_simple(&a_s, &z_s, &CScalar::one());
                    }
                }
            }
            let coaction = Arc::new(CoactionData::new(hopf, z.clone(), alpha));
            Ok(CatalogEntry { presentation: z, hopf: None, coaction: Some(coaction) })
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

fn glq2(star: bool, params: &CatalogParams) -> Result<Presentation> {
    Presentation::from_strings(
        if star { "Uq2" } else { "GLq2" },
        &["x11", "x12", "x21", "x22", "t"],
        &[
            "x12*x11 - q*x11*x12",
            "x21*x11 - q*x11*x21",
            "x22*x12 - q*x12*x22",
            "x22*x21 - q*x21*x22",
            "x12*x21 - x21*x12",
            "x11*x22 - x22*x11 - (q^-1 - q)*x12*x21",
            "x11*t - t*x11",
            "x22*t - t*x22",
            "x12*t - t*x12",
            "x21*t - t*x21",
            "(x11*x22 - q^-1*x12*x21)*t - 1",
        ],
        star.then_some(&["x22*t", "-q^-1*x21*t", "-q*x12*t", "x11*t", "x11*x22 - q^-1*x12*x21"][..]),
        params.config(),
    )
}

fn glq2_hopf(a: Arc<Presentation>) -> Result<HopfData> {
    let t = TensorAlgebra::new(a.clone(), a.clone());
    let delta = [
        "x11 (x) x11 + x12 (x) x21",
        "x11 (x) x12 + x12 (x) x22",
        "x21 (x) x11 + x22 (x) x21",
        "x21 (x) x12 + x22 (x) x22",
        "t (x) t",
    ]
    .iter()
    .map(|s| t.parse(s))
    .collect::<Result<Vec<_>>>()?;
    let counit = [1, 0, 0, 1, 1].iter().map(|&k| CScalar::from_int(k)).collect();
    let antipode = ["x22*t", "-q*x12*t", "-q^-1*x21*t", "x11*t", "x11*x22 - q^-1*x12*x21"]
        .iter()
        .map(|s| a.parse(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(HopfData::new(a, delta, counit, antipode))
}

fn glq2m2(star: bool, params: &CatalogParams) -> Result<Presentation> {
    Presentation::from_strings(
        if star { "Uq2m2" } else { "GLq2m2" },
        &["tau", "z11", "z12", "z21", "z22"],
        &[
            "z12*z11 + q*z11*z12",
            "z21*z11 - q*z11*z21",
            "z22*z12 - q*z12*z22",
            "z22*z21 + q*z21*z22",
            "z12*z21 + z21*z12",
            "z11*z22 + z22*z11 - (q - q^-1)*z12*z21",
            "z11*tau + tau*z11",
            "z22*tau + tau*z22",
            "z12*tau + tau*z12",
            "z21*tau + tau*z21",
            "(z11*z22 + q^-1*z12*z21)*tau - 1",
        ],
        star.then_some(&["z11*z22 + q^-1*z12*z21", "z22*tau", "q^-1*z21*tau", "q*tau*z12", "tau*z11"][..]),
        params.config(),
    )
}

fn glqm22(params: &CatalogParams) -> Result<Presentation> {
    Presentation::from_strings(
        "GLqm22",
        &["xi", "t11", "t12", "t21", "t22"],
        &[
            "t12*t11 - q*t11*t12",
            "t21*t11 + q*t11*t21",
            "t22*t12 + q*t12*t22",
            "t22*t21 - q*t21*t22",
            "t12*t21 + t21*t12",
            "t11*t22 + t22*t11 - (q^-1 - q)*t12*t21",
            "t11*xi + xi*t11",
            "t12*xi + xi*t12",
            "t21*xi + xi*t21",
            "t22*xi + xi*t22",
            "(t11*t22 - q^-1*t12*t21)*xi - 1",
        ],
        None,
        params.config(),
    )
}

/// Generators `a{i}{j}` then `as{i}{j}` (the star of `a{i}{j}`), row-major.
fn matrix_alphabet(n: usize, p: usize) -> Result<Alphabet> {
    if n == 0 || p == 0 || n > 9 || p > 9 {
        return Err(Error::Invalid(format!("matrix size {n}x{p} must be between 1x1 and 9x9")));
    }
    let mut names = Vec::new();
    for prefix in ["a", "as"] {
        for i in 1..=n {
            for j in 1..=p {
                names.push(format!("{prefix}{i}{j}"));
            }
        }
    }
    Alphabet::new(&names)
}

/// `zz* = 1`, `z*z = 1` for an `n x p` matrix `z`, and, when `(F, G)` is
/// given, the same for `u = F zbar G^-1` where `zbar` is the entrywise star.
fn unitary_matrix_algebra(
    name: &str,
    n: usize,
    p: usize,
    fg: Option<(&Matrix, &Matrix)>,
    params: &CatalogParams,
) -> Result<Presentation> {
    let alphabet = matrix_alphabet(n, p)?;
    let z = |i: usize, j: usize| NCPoly::generator(i * p + j);
    let zs = |i: usize, j: usize| NCPoly::generator(n * p + i * p + j);
    let delta = |i: usize, j: usize| if i == j { NCPoly::one() } else { NCPoly::zero() };
    let mut rels = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let mut r = -&delta(i, k);
            for j in 0..p {
                r = &r + &(&z(i, j) * &zs(k, j));
            }
            rels.push(r);
        }
    }
    for j in 0..p {
        for l in 0..p {
            let mut r = -&delta(j, l);
            for i in 0..n {
                r = &r + &(&zs(i, j) * &z(i, l));
            }
            rels.push(r);
        }
    }
    if let Some((f, g)) = fg {
        if f.len() != n || g.len() != p {
            return Err(Error::Invalid("F must be n x n and G must be p x p".into()));
        }
        let ginv = mat_inv(g)?;
        mat_inv(f)?;
        // u[i][j] = sum F[i][k] as[k][l] Ginv[l][j]; ustar[j][i] = u[i][j]*.
        let mut u = vec![vec![NCPoly::zero(); p]; n];
        let mut ustar = vec![vec![NCPoly::zero(); n]; p];
        for i in 0..n {
            for j in 0..p {
                for k in 0..n {
                    for l in 0..p {
                        let c = &f[i][k] * &ginv[l][j];
                        u[i][j].add_scaled(&zs(k, l), &c);
                        ustar[j][i].add_scaled(&z(k, l), &c.conj());
                    }
                }
            }
        }
        for i in 0..n {
            for k in 0..n {
                let mut r = -&delta(i, k);
                for j in 0..p {
                    r = &r + &(&u[i][j] * &ustar[j][k]);
                }
                rels.push(r);
            }
        }
        for j in 0..p {
            for l in 0..p {
                let mut r = -&delta(j, l);
                for i in 0..n {
                    r = &r + &(&ustar[j][i] * &u[i][l]);
                }
                rels.push(r);
            }
        }
    }
    let rels: Vec<NCPoly> = rels.into_iter().filter(|r| !r.is_zero()).collect();
    let mut images = Vec::with_capacity(2 * n * p);
    for k in 0..n * p {
        images.push(Some(NCPoly::generator(n * p + k)));
    }
    for k in 0..n * p {
        images.push(Some(NCPoly::generator(k)));
    }
    Presentation::new(name, alphabet, rels, Some(StarMap::new(images)), params.config())
}

/// `delta(a_ij) = sum a_ik (x) a_kj`, the same for `as`, `eps = delta_ij`,
/// `S(a_ij) = as_ji` and `S(abar) = F^-1 u* F` with `u = F abar F^-1`.
fn auf_hopf(a: Arc<Presentation>, f: &Matrix) -> Result<HopfData> {
    let n = f.len();
    let z = |i: usize, j: usize| NCPoly::generator(i * n + j);
    let zs = |i: usize, j: usize| NCPoly::generator(n * n + i * n + j);
    let finv = mat_inv(f)?;
    let mut delta = vec![TensorPoly::zero(); 2 * n * n];
    let mut counit = vec![CScalar::zero(); 2 * n * n];
    let mut antipode = vec![NCPoly::zero(); 2 * n * n];
    // ustar[k][l] = (u[l][k])* = sum conj(F[l][m]) a[m][r] conj(Finv[r][k]).
    let mut ustar = vec![vec![NCPoly::zero(); n]; n];
    for k in 0..n {
        for l in 0..n {
            for m in 0..n {
                for r in 0..n {
                    let c = (&f[l][m] * &finv[r][k]).conj();
                    ustar[k][l].add_scaled(&z(m, r), &c);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                delta[i * n + j].add_simple(&z(i, k), &z(k, j), &CScalar::one());
                delta[n * n + i * n + j].add_simple(&zs(i, k), &zs(k, j), &CScalar::one());
            }
            if i == j {
                counit[i * n + j] = CScalar::one();
                counit[n * n + i * n + j] = CScalar::one();
            }
            antipode[i * n + j] = zs(j, i);
            let mut s = NCPoly::zero();
            for k in 0..n {
                for l in 0..n {
                    s.add_scaled(&ustar[k][l], &(&finv[i][k] * &f[l][j]));
                }
            }
            antipode[n * n + i * n + j] = s;
        }
    }
    Ok(HopfData::new(a, delta, counit, antipode))
}

/// Generator images of the map `AuFG(F_q, F_-q) -> Uq2m2` sending the
/// upper 2x2 block of `a` to `z`, `a33` to `tau` and the mixed entries to 0;
/// the starred generators go to the stars of those images.
pub fn aufg_to_uq2m2(aufg: &Presentation, target: &Presentation) -> Result<Vec<NCPoly>> {
    if aufg.ngens() != 18 {
        return Err(Error::Invalid("expected the 3x3 AuFG presentation".into()));
    }
    let mut images = vec![NCPoly::zero(); 18];
    for i in 0..3 {
        for j in 0..3 {
            let img = match (i, j) {
                (2, 2) => target.gen("tau"),
                (0..=1, 0..=1) => target.gen(&format!("z{}{}", i + 1, j + 1)),
                _ => NCPoly::zero(),
            };
            images[9 + i * 3 + j] = target.star_of(&img)?;
            images[i * 3 + j] = img;
        }
    }
    Ok(images)
}
