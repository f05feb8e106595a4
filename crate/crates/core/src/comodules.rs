//! Finite-dimensional corepresentations given by matrices over a Hopf
//! presentation: `delta(v_ij) = sum_k v_ik (x) v_kj`, `eps(v_ij) = delta_ij`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::haar::{specialized_extremes, DEFAULT_Q_SAMPLES};
use crate::linalg::{identity, mat_inv, mat_mul, LinearSystem, Matrix};
use crate::ncpoly::{NCPoly, TensorPoly};
use crate::presentations::{HopfData, Presentation};
use crate::report::Report;
use crate::scalars::CScalar;

#[derive(Clone, Debug)]
pub struct Corep {
    pub hopf: Arc<HopfData>,
    pub matrix: Vec<Vec<NCPoly>>,
}

impl Corep {
    /// Entries are put in normal form.
    pub fn new(hopf: Arc<HopfData>, matrix: Vec<Vec<NCPoly>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("corepresentation matrix is not square".into()));
        }
        let a = hopf.algebra.clone();
        let matrix = matrix.iter().map(|r| r.iter().map(|x| a.nf(x)).collect()).collect();
        Ok(Corep { hopf, matrix })
    }

    pub fn from_strings(hopf: Arc<HopfData>, rows: &[&[&str]]) -> Result<Self> {
        let a = hopf.algebra.clone();
        let m = rows
            .iter()
            .map(|r| r.iter().map(|s| a.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(hopf, m)
    }

    /// The one-dimensional corepresentation `(1)`.
    pub fn trivial(hopf: Arc<HopfData>) -> Self {
        Corep { hopf, matrix: vec![vec![NCPoly::one()]] }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn algebra(&self) -> &Arc<Presentation> {
        &self.hopf.algebra
    }

    pub fn show(&self) -> String {
        let a = self.algebra();
        let rows: Vec<String> =
            self.matrix.iter().map(|r| r.iter().map(|x| a.show(x)).collect::<Vec<_>>().join(", ")).collect();
        format!("[{}]", rows.join("; "))
    }
}

fn same_base(v: &Corep, w: &Corep) -> Result<()> {
    if Arc::ptr_eq(v.algebra(), w.algebra()) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch(format!("{} vs {}", v.algebra().name, w.algebra().name)))
    }
}

/// Entrywise star.
pub fn conjugate(v: &Corep) -> Result<Corep> {
    let a = v.algebra();
    let m = v.matrix.iter().map(|r| r.iter().map(|x| a.star_of(x)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
    Ok(Corep { hopf: v.hopf.clone(), matrix: m })
}

/// Entry `v_ik w_jl` at row `(i, j)` and column `(k, l)`, pairs ordered
/// lexicographically.
pub fn tensor(v: &Corep, w: &Corep) -> Result<Corep> {
    same_base(v, w)?;
    let (n, m) = (v.dim(), w.dim());
    let a = v.algebra();
    let mut out = vec![vec![NCPoly::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..m {
            for k in 0..n {
                for l in 0..m {
                    out[i * m + j][k * m + l] = a.rewrite.mul(&v.matrix[i][k], &w.matrix[j][l]);
                }
            }
        }
    }
    Ok(Corep { hopf: v.hopf.clone(), matrix: out })
}

/// Block diagonal matrix `diag(v, w)`.
pub fn direct_sum(v: &Corep, w: &Corep) -> Result<Corep> {
    same_base(v, w)?;
    let (n, m) = (v.dim(), w.dim());
    let mut out = vec![vec![NCPoly::zero(); n + m]; n + m];
    for i in 0..n {
        out[i][..n].clone_from_slice(&v.matrix[i]);
    }
    for j in 0..m {
        out[n + j][n..].clone_from_slice(&w.matrix[j]);
    }
    Ok(Corep { hopf: v.hopf.clone(), matrix: out })
}

pub fn verify_corep(v: &Corep) -> Report {
    let h = &v.hopf;
    let a = v.algebra();
    let t = &h.delta.target;
    let n = v.dim();
    let mut rep = Report::new(format!("corep({n}-dim over {})", a.name));
    for i in 0..n {
        for j in 0..n {
            let lhs = h.delta.image(&v.matrix[i][j]);
            let mut rhs = TensorPoly::zero();
            for k in 0..n {
                rhs.add_simple(&v.matrix[i][k], &v.matrix[k][j], &CScalar::one());
            }
            let diff = t.nf(&{
                let mut d = lhs;
                d.add_scaled(&rhs, &CScalar::from_int(-1));
                d
            });
            rep.check(
                format!("delta(v{i}{j}) = sum_k v{i}k (x) vk{j}"),
                diff.is_zero(),
                if diff.is_zero() { String::new() } else { t.show(&diff) },
            );
            let e = h.counit_of(&v.matrix[i][j]);
            let ok = if i == j { e.is_one() } else { e.is_zero() };
            rep.check(format!("eps(v{i}{j})"), ok, if ok { String::new() } else { e.to_string() });
        }
    }
    rep.finish()
}

/// `F v G` with scalar matrices on either side.
fn scalar_sandwich(p: &Presentation, f: &Matrix, v: &[Vec<NCPoly>], g: &Matrix) -> Vec<Vec<NCPoly>> {
    let (n, m) = (f.len(), g.first().map_or(0, Vec::len));
    let mut out = vec![vec![NCPoly::zero(); m]; n];
    for (i, frow) in f.iter().enumerate() {
        for j in 0..m {
            let mut acc = NCPoly::zero();
            for (k, fk) in frow.iter().enumerate() {
                if fk.is_zero() {
                    continue;
                }
                for (l, vkl) in v[k].iter().enumerate() {
                    let c = fk * &g[l][j];
                    if !c.is_zero() {
                        acc.add_scaled(vkl, &c);
                    }
                }
            }
            out[i][j] = p.nf(&acc);
        }
    }
    out
}

/// Checks `w w* = w* w = I` where `(w*)_ij = star(w_ji)`.
pub fn verify_unitary(p: &Presentation, w: &[Vec<NCPoly>]) -> Result<Report> {
    let n = w.len();
    let m = w.first().map_or(0, Vec::len);
    let ws: Vec<Vec<NCPoly>> = (0..m).map(|i| (0..n).map(|j| p.star_of(&w[j][i])).collect()).collect::<Result<_>>()?;
    let mut rep = Report::new(format!("unitarity({n}x{m} over {})", p.name));
    for (name, x, y, size) in [("w w*", w, &ws[..], n), ("w* w", &ws[..], w, m)] {
        for i in 0..size {
            for j in 0..size {
                let mut acc = NCPoly::zero();
                for k in 0..y.len() {
                    acc = &acc + &p.rewrite.mul(&x[i][k], &y[k][j]);
                }
                if i == j {
                    acc = &acc - &NCPoly::one();
                }
                rep.check(
                    format!("({name})_{i}{j} = {}", u8::from(i == j)),
                    acc.is_zero(),
                    if acc.is_zero() { String::new() } else { p.show(&acc) },
                );
            }
        }
    }
    Ok(rep.finish())
}

/// Checks that `F vbar F^-1` is unitary, with `vbar` the entrywise star.
pub fn unitarity_conjugator(v: &Corep, f: &Matrix) -> Result<Report> {
    if f.len() != v.dim() {
        return Err(Error::Invalid("F has the wrong size".into()));
    }
    let finv = mat_inv(f)?;
    let vbar = conjugate(v)?;
    let w = scalar_sandwich(v.algebra(), f, &vbar.matrix, &finv);
    verify_unitary(v.algebra(), &w)
}

/// An invariant scalar product on a corepresentation.
#[derive(Clone, Debug)]
pub struct UnitaryStructure {
    pub corep: Corep,
    pub gram: Matrix,
}

/// Checks `sum_kl star(v_ki) g_kl v_lj = g_ij 1`.
pub fn verify_invariant_gram(u: &UnitaryStructure) -> Result<Report> {
    let v = &u.corep;
    let a = v.algebra();
    let n = v.dim();
    let mut rep = Report::new(format!("invariant scalar product({n}-dim)"));
    let vs = conjugate(v)?;
    for i in 0..n {
        for j in 0..n {
            let mut acc = NCPoly::constant(-u.gram[i][j].clone());
            for k in 0..n {
                for l in 0..n {
                    if !u.gram[k][l].is_zero() {
                        acc.add_scaled(&a.rewrite.mul(&vs.matrix[k][i], &v.matrix[l][j]), &u.gram[k][l]);
                    }
                }
            }
            rep.check(
                format!("(v* g v)_{i}{j} = g_{i}{j}"),
                acc.is_zero(),
                if acc.is_zero() { String::new() } else { a.show(&acc) },
            );
        }
    }
    Ok(rep.finish())
}

/// Searches for a diagonal invariant scalar product with `g_00 = 1`.
/// `None` when no diagonal one exists; an error when it is not unique.
pub fn find_diagonal_gram(v: &Corep) -> Result<Option<UnitaryStructure>> {
    let a = v.algebra();
    let n = v.dim();
    let vs = conjugate(v)?;
    let mut sys = LinearSystem::new(n);
    sys.add_equation([(0, CScalar::one())], CScalar::one());
    for i in 0..n {
        for j in 0..n {
            // sum_k star(v_ki) v_kj g_k - delta_ij g_i = 0, one equation per word.
            let mut per_word: std::collections::BTreeMap<_, Vec<(usize, CScalar)>> = Default::default();
            for k in 0..n {
                for (w, c) in a.rewrite.mul(&vs.matrix[k][i], &v.matrix[k][j]).terms() {
                    per_word.entry(w.clone()).or_default().push((k, c.clone()));
                }
            }
            if i == j {
                per_word.entry(crate::ncpoly::Word::empty()).or_default().push((i, CScalar::from_int(-1)));
            }
            for (_, row) in per_word {
                sys.add_equation(row, CScalar::zero());
            }
        }
    }
    match sys.unique_solution() {
        Ok(g) => {
            let mut gram = identity(n);
            for (i, x) in g.into_iter().enumerate() {
                gram[i][i] = x;
            }
            Ok(Some(UnitaryStructure { corep: v.clone(), gram }))
        }
        Err(Error::InconsistentSystem) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Matrix forms of `phi: Vbar (x) V -> C`, `phi(ebar_i (x) e_j) = g_ij`, and
/// `kappa: C -> V (x) Vbar`, `kappa(1) = sum K_ij e_i (x) ebar_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityPair {
    pub eval: Matrix,
    pub coeval: Matrix,
}

/// `kappa = g^-1`, after checking `g` is numerically positive at the
/// default samples of `q`.
pub fn duality_maps(u: &UnitaryStructure) -> Result<DualityPair> {
    let g = &u.gram;
    for &q0 in DEFAULT_Q_SAMPLES {
        let (lo, _) = specialized_extremes(g, q0)?;
        if lo.is_nan() || lo <= 0.0 {
            return Err(Error::NonPositiveGram(lo));
        }
    }
    Ok(DualityPair { eval: g.clone(), coeval: mat_inv(g)? })
}

/// `(1 (x) phi)(kappa (x) 1) = 1` is `K g = I`; `(phi (x) 1)(1 (x) kappa) = 1`
/// is `g K = I`.
pub fn snake_identities(d: &DualityPair) -> bool {
    let n = d.eval.len();
    mat_mul(&d.coeval, &d.eval) == identity(n) && mat_mul(&d.eval, &d.coeval) == identity(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;
    use crate::presentations::{catalog, f_matrix, CatalogParams};

    fn uq2() -> Arc<HopfData> {
        catalog("Uq2", &CatalogParams::default()).unwrap().hopf.unwrap()
    }

    fn fundamental(h: &Arc<HopfData>) -> Corep {
        Corep::from_strings(h.clone(), &[&["x11", "x12"], &["x21", "x22"]]).unwrap()
    }

    #[test]
    fn fundamental_and_friends_verify() {
        let h = uq2();
        let x = fundamental(&h);
        assert!(verify_corep(&x).passed());
        assert!(verify_corep(&Corep::trivial(h.clone())).passed());
        let xx = tensor(&x, &x).unwrap();
        assert_eq!(xx.dim(), 4);
        assert!(verify_corep(&xx).passed());
        let xb = conjugate(&x).unwrap();
        assert!(verify_corep(&xb).passed());
        assert_eq!(conjugate(&xb).unwrap().matrix, x.matrix);
        let t = Corep::from_strings(h.clone(), &[&["t"]]).unwrap();
        assert_eq!(tensor(&t, &t).unwrap().matrix[0][0], h.algebra.parse("t*t").unwrap());
        assert_eq!(tensor(&x, &Corep::trivial(h.clone())).unwrap().matrix, x.matrix);
    }

    #[test]
    fn corrupted_corep_fails_coassociativity() {
        let h = catalog("GLq2", &CatalogParams::default()).unwrap().hopf.unwrap();
        let good = Corep::from_strings(h.clone(), &[&["x11", "x12"], &["x21", "x22"]]).unwrap();
        assert!(verify_corep(&good).passed());
        let bad = Corep::from_strings(h, &[&["x11", "x21"], &["x21", "x22"]]).unwrap();
        let r = verify_corep(&bad);
        assert!(r.failures().any(|i| i.desc.starts_with("delta(")), "{r}");
    }

    #[test]
    fn conjugated_fundamental_plus_determinant_is_unitary() {
        let h = uq2();
        let x = fundamental(&h);
        let t = Corep::from_strings(h.clone(), &[&["t"]]).unwrap();
        let v = direct_sum(&x, &t).unwrap();
        assert!(verify_corep(&v).passed());
        let r = unitarity_conjugator(&v, &f_matrix(1)).unwrap();
        assert!(r.passed(), "{r}");
        // Without the conjugator the conjugate is not unitary.
        let r = unitarity_conjugator(&v, &identity(3)).unwrap();
        assert!(!r.passed());
        assert!(matches!(unitarity_conjugator(&v, &vec![vec![CScalar::zero(); 3]; 3]), Err(Error::SingularMatrix)));
    }

    #[test]
    fn extension_block_is_unitary() {
        let z = catalog("Uq2m2", &CatalogParams::default()).unwrap().presentation;
        let w: Vec<Vec<NCPoly>> =
            [["z11", "z12"], ["z21", "z22"]].iter().map(|r| r.iter().map(|g| z.gen(g)).collect()).collect();
        assert!(verify_unitary(&z, &w).unwrap().passed());
    }

    #[test]
    fn diagonal_gram_search() {
        let h = uq2();
        let x = fundamental(&h);
        let u = find_diagonal_gram(&x).unwrap().unwrap();
        assert_eq!(u.gram, identity(2));
        let xb = conjugate(&x).unwrap();
        let u = find_diagonal_gram(&xb).unwrap().unwrap();
        assert!(verify_invariant_gram(&u).unwrap().passed());
        assert!(!u.gram[1][1].is_one());
        let d = duality_maps(&u).unwrap();
        assert!(snake_identities(&d));
    }

    #[test]
    fn snake_identities_for_small_grams() {
        let h = uq2();
        let one = UnitaryStructure { corep: Corep::trivial(h.clone()), gram: identity(1) };
        assert!(snake_identities(&duality_maps(&one).unwrap()));
        let x = fundamental(&h);
        let mut g = identity(2);
        g[1][1] = parse_scalar("q^2").unwrap();
        let d = duality_maps(&UnitaryStructure { corep: x.clone(), gram: g.clone() }).unwrap();
        assert!(snake_identities(&d));
        assert_eq!(d.coeval[1][1], parse_scalar("q^-2").unwrap());
        g[1][1] = CScalar::from_int(-1);
        assert!(matches!(duality_maps(&UnitaryStructure { corep: x, gram: g }), Err(Error::NonPositiveGram(_))));
    }
}
