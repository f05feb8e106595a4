//! The cotensor product `V [] Z`: elements `sum_i v_i (x) z_i` of `V (x) Z`
//! on which `alpha_V (x) 1` and `1 (x) alpha_Z` agree. For a matrix
//! corepresentation this is `sum_j v_ij (x) z_j = alpha(z_i)` for every `i`.

use std::collections::BTreeMap;

use crate::comodules::{conjugate, tensor, Corep};
use crate::error::{Error, Result};
use crate::haar::LinearFunctional;
use crate::linalg::{rref, LinearSystem};
use crate::ncpoly::{NCPoly, TensorPoly, Word};
use crate::presentations::{CoactionData, Presentation};
use crate::report::Report;
use crate::scalars::CScalar;

#[derive(Clone, Debug)]
pub struct CotensorElement {
    pub comodule: Corep,
    pub coeffs: Vec<NCPoly>,
}

impl CotensorElement {
    pub fn show(&self, z: &Presentation) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("v{i} (x) ({})", z.show(c)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `sum_j v_ij (x) z_j - alpha(z_i)` for each `i`.
fn defect(v: &Corep, coeffs: &[NCPoly], c: &CoactionData) -> Vec<TensorPoly> {
    (0..v.dim())
        .map(|i| {
            let t = c.alpha_of(&coeffs[i]);
            let mut out = TensorPoly::zero();
            for (j, zj) in coeffs.iter().enumerate() {
                out.add_simple(&v.matrix[i][j], zj, &CScalar::one());
            }
            out.add_scaled(&t, &CScalar::from_int(-1));
            c.alpha.target.nf(&out)
        })
        .collect()
}

/// Membership in the kernel of the double arrow.
pub fn in_cotensor(x: &CotensorElement, c: &CoactionData) -> bool {
    defect(&x.comodule, &x.coeffs, c).iter().all(TensorPoly::is_zero)
}

/// A basis of `V [] Z` inside `V (x) Z_{<= d}`, in reduced echelon form with
/// unknowns ordered by component, then by normal word.
pub fn compute_cotensor(v: &Corep, c: &CoactionData, d: usize) -> Result<Vec<CotensorElement>> {
    if !std::sync::Arc::ptr_eq(v.algebra(), &c.base) {
        return Err(Error::AlphabetMismatch(format!("{} vs {}", v.algebra().name, c.base.name)));
    }
    c.total.require_degree(d + 1)?;
    let words = c.total.basis(d)?;
    let (n, m) = (v.dim(), words.len());
    let var = |i: usize, k: usize| i * m + k;
    let mut sys = LinearSystem::new(n * m);
    let alphas: Vec<_> = words.iter().map(|w| c.alpha.image_word(w)).collect();
    for i in 0..n {
        let mut eqs: BTreeMap<(Word, Word), Vec<(usize, CScalar)>> = BTreeMap::new();
        for j in 0..n {
            for (u, a) in v.matrix[i][j].terms() {
                for (k, w) in words.iter().enumerate() {
                    eqs.entry((u.clone(), w.clone())).or_default().push((var(j, k), a.clone()));
                }
            }
        }
        for (k, al) in alphas.iter().enumerate() {
            for (key, a) in al.terms() {
                eqs.entry(key.clone()).or_default().push((var(i, k), -a.clone()));
            }
        }
        for (_, row) in eqs {
            sys.add_equation(row, CScalar::zero());
        }
    }
    let kernel = rref(&sys.kernel_basis());
    Ok(kernel
        .into_iter()
        .map(|vec| {
            let coeffs = (0..n)
                .map(|i| {
                    let mut p = NCPoly::zero();
                    for (k, w) in words.iter().enumerate() {
                        p.add_term(w.clone(), vec[var(i, k)].clone());
                    }
                    p
                })
                .collect();
            CotensorElement { comodule: v.clone(), coeffs }
        })
        .collect())
}

/// `dim(V [] Z_{<= d})` for `d = 0..=d_max`.
pub fn cotensor_dimensions(v: &Corep, c: &CoactionData, d_max: usize) -> Result<Vec<usize>> {
    (0..=d_max).map(|d| compute_cotensor(v, c, d).map(|b| b.len())).collect()
}

/// `mu(sum_i star(x_i) y_i)`.
pub fn cotensor_inner(
    x: &CotensorElement,
    y: &CotensorElement,
    mu: &LinearFunctional,
    z: &Presentation,
) -> Result<CScalar> {
    if x.coeffs.len() != y.coeffs.len() {
        return Err(Error::Invalid("elements over different comodules".into()));
    }
    let mut acc = NCPoly::zero();
    for (a, b) in x.coeffs.iter().zip(&y.coeffs) {
        acc = &acc + &z.rewrite.mul(&z.star_of(a)?, b);
    }
    mu.apply(&acc)
}

/// `(v_i (x) x_i) (x) (w_j (x) y_j) -> (v_i (x) w_j) (x) x_i y_j`.
pub fn monoidal_constraint(x: &CotensorElement, y: &CotensorElement, z: &Presentation) -> Result<CotensorElement> {
    let vw = tensor(&x.comodule, &y.comodule)?;
    let mut coeffs = Vec::with_capacity(x.coeffs.len() * y.coeffs.len());
    for a in &x.coeffs {
        for b in &y.coeffs {
            coeffs.push(z.rewrite.mul(a, b));
        }
    }
    Ok(CotensorElement { comodule: vw, coeffs })
}

/// `sum v_i (x) z_i -> sum vbar_i (x) star(z_i)`, into the conjugate comodule.
pub fn conjugation_map(x: &CotensorElement, z: &Presentation) -> Result<CotensorElement> {
    let coeffs = x.coeffs.iter().map(|c| z.star_of(c)).collect::<Result<Vec<_>>>()?;
    Ok(CotensorElement { comodule: conjugate(&x.comodule)?, coeffs })
}

/// `sum_i star(z_ij) z_ik = delta_jk` and `sum_j z_ij star(z_kj) = delta_ik`.
pub fn verify_biunitarity(z: &Presentation, block: &[Vec<NCPoly>]) -> Result<Report> {
    let n = block.len();
    let p = block.first().map_or(0, Vec::len);
    let stars =
        block.iter().map(|r| r.iter().map(|x| z.star_of(x)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    let mut rep = Report::new(format!("biunitarity({n}x{p} block of {})", z.name));
    let mut check = |desc: String, mut acc: NCPoly, diag: bool| {
        if diag {
            acc = &acc - &NCPoly::one();
        }
        rep.check(desc, acc.is_zero(), if acc.is_zero() { String::new() } else { z.show(&acc) });
    };
    for j in 0..p {
        for k in 0..p {
            let acc = (0..n).fold(NCPoly::zero(), |acc, i| &acc + &z.rewrite.mul(&stars[i][j], &block[i][k]));
            check(format!("sum_i z*_i{j} z_i{k} = {}", u8::from(j == k)), acc, j == k);
        }
    }
    for i in 0..n {
        for k in 0..n {
            let acc = (0..p).fold(NCPoly::zero(), |acc, j| &acc + &z.rewrite.mul(&block[i][j], &stars[k][j]));
            check(format!("sum_j z_{i}j z*_{k}j = {}", u8::from(i == k)), acc, i == k);
        }
    }
    Ok(rep.finish())
}
