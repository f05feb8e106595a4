//! Haar functionals on degree truncations.
//!
//! On a Hopf presentation the functional is the unique solution of the
//! invariance system `(J (x) id) delta(b) = J(b) 1`, `J(1) = 1` over the
//! normal words of length at most `d`. On a comodule algebra it is the
//! convolution `mu = (J (x) f) alpha`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::LinearSystem;
use crate::ncpoly::{NCPoly, Word};
use crate::presentations::{CoactionData, HopfData, Presentation};
use crate::report::{Report, Status};
use crate::scalars::CScalar;

pub const DEFAULT_Q_SAMPLES: &[f64] = &[0.5, 0.9, 2.0];

/// Relative tolerance for the smallest Gram eigenvalue.
pub const GRAM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional {
    pub basis: Vec<Word>,
    pub values: BTreeMap<Word, CScalar>,
}

impl LinearFunctional {
    pub fn new(basis: Vec<Word>, values: Vec<CScalar>) -> Self {
        let values = basis.iter().cloned().zip(values).collect();
        LinearFunctional { basis, values }
    }

    /// Longest basis word.
    pub fn degree(&self) -> usize {
        self.basis.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn value_word(&self, w: &Word) -> Result<CScalar> {
        self.values
            .get(w)
            .cloned()
            .ok_or_else(|| Error::TruncationOverflow(format!("no value on a word of length {}", w.len())))
    }

    /// Value on a normal-form polynomial.
    pub fn apply(&self, x: &NCPoly) -> Result<CScalar> {
        let mut acc = CScalar::zero();
        for (w, c) in x.terms() {
            acc = &acc + &(c * &self.value_word(w)?);
        }
        Ok(acc)
    }
}

/// Solves for the Haar functional of `h` on normal words of length `<= d`.
pub fn haar_on_hopf(h: &HopfData, d: usize) -> Result<LinearFunctional> {
    let a = &h.algebra;
    let basis = a.basis(d)?;
    let index: BTreeMap<&Word, usize> = basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let empty = Word::empty();
    let mut sys = LinearSystem::new(basis.len());
    sys.add_equation([(index[&Word::empty()], CScalar::one())], CScalar::one());
    for (k, b) in basis.iter().enumerate() {
        let delta = h.delta.image_word(b);
        // Group by the second leg: sum_u c J(u) is the coefficient of v.
        let mut rows: BTreeMap<&Word, Vec<(usize, CScalar)>> = BTreeMap::new();
        for ((u, v), c) in delta.terms() {
            let j = *index.get(u).ok_or_else(|| Error::TruncationOverflow(a.show_word(u)))?;
            rows.entry(v).or_default().push((j, c.clone()));
        }
        rows.entry(&empty).or_default().push((k, CScalar::from_int(-1)));
        for (_, row) in rows {
            sys.add_equation(row, CScalar::zero());
        }
    }
    Ok(LinearFunctional::new(basis, sys.unique_solution()?))
}

/// `mu = (J (x) coefficient of 1) alpha` on normal words of `Z` up to `d`.
pub fn haar_on_extension(c: &CoactionData, j: &LinearFunctional, d: usize) -> Result<LinearFunctional> {
    haar_on_extension_with(c, j, d, |w| if w.is_empty() { CScalar::one() } else { CScalar::zero() })
}

/// `mu = (J (x) f) alpha` for an auxiliary functional `f` with `f(1) = 1`.
pub fn haar_on_extension_with(
    c: &CoactionData,
    j: &LinearFunctional,
    d: usize,
    f: impl Fn(&Word) -> CScalar,
) -> Result<LinearFunctional> {
    let basis = c.total.basis(d)?;
    let mut values = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut acc = CScalar::zero();
        for ((u, v), k) in c.alpha.image_word(b).terms() {
            let ju = j.value_word(u)?;
            let fv = f(v);
            if !fv.is_zero() {
                acc = &acc + &(&(k * &ju) * &fv);
            }
        }
        values.push(acc);
    }
    Ok(LinearFunctional::new(basis, values))
}

/// Checks `(1 (x) mu) alpha(b) = mu(b) 1` on normal words up to `d`.
pub fn verify_invariance(c: &CoactionData, mu: &LinearFunctional, d: usize) -> Report {
    let mut rep = Report::new(format!("haar invariance({}, d = {d})", c.total.name));
    let basis = match c.total.basis(d) {
        Ok(b) => b,
        Err(e) => {
            rep.push("word basis", Status::Undecided, e.to_string());
            return rep.finish();
        }
    };
    for b in &basis {
        let desc = format!("(1 (x) mu) alpha({})", c.total.show_word(b));
        let mut lhs = NCPoly::zero();
        let mut overflow = None;
        for ((u, v), k) in c.alpha.image_word(b).terms() {
            match mu.value_word(v) {
                Ok(m) => lhs.add_term(u.clone(), k * &m),
                Err(e) => overflow = Some(e),
            }
        }
        if let Some(e) = overflow {
            rep.push(desc, Status::Undecided, e.to_string());
            continue;
        }
        let rhs = match mu.value_word(b) {
            Ok(m) => NCPoly::constant(m),
            Err(e) => {
                rep.push(desc, Status::Undecided, e.to_string());
                continue;
            }
        };
        let diff = &lhs - &rhs;
        rep.check(desc, diff.is_zero(), if diff.is_zero() { String::new() } else { c.base.show(&diff) });
    }
    rep.finish()
}

/// The symbolic Gram matrix `mu(b* w)` over normal words up to `d`.
pub fn gram_matrix(p: &Presentation, mu: &LinearFunctional, d: usize) -> Result<(Vec<Word>, Vec<Vec<CScalar>>)> {
    let basis = p.basis(d)?;
    let stars = basis.iter().map(|b| p.star_of(&NCPoly::monomial(b.clone()))).collect::<Result<Vec<_>>>()?;
    let mut g = Vec::with_capacity(basis.len());
    for sb in &stars {
        let row = basis
            .iter()
            .map(|w| mu.apply(&p.rewrite.mul(sb, &NCPoly::monomial(w.clone()))))
            .collect::<Result<Vec<_>>>()?;
        g.push(row);
    }
    Ok((basis, g))
}

/// Smallest and largest eigenvalue of a Hermitian matrix, through the real
/// symmetric matrix `[[A, -B], [B, A]]` of `A + iB`, whose spectrum is that
/// of `A + iB` with every eigenvalue doubled.
pub fn hermitian_extremes(re: &DMatrix<f64>, im: &DMatrix<f64>) -> (f64, f64) {
    let n = re.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(re);
    m.view_mut((n, n), (n, n)).copy_from(re);
    m.view_mut((n, 0), (n, n)).copy_from(im);
    m.view_mut((0, n), (n, n)).copy_from(&(-im));
    let eig = m.symmetric_eigen().eigenvalues;
    (eig.min(), eig.max())
}

/// Extreme eigenvalues of a symbolic Hermitian matrix specialized at `q0`.
pub fn specialized_extremes(g: &[Vec<CScalar>], q0: f64) -> Result<(f64, f64)> {
    let n = g.len();
    if n == 0 {
        return Ok((0.0, 0.0));
    }
    let mut re = DMatrix::zeros(n, n);
    let mut im = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = g[i][j].eval(q0)?;
            re[(i, j)] = a;
            im[(i, j)] = b;
        }
    }
    Ok(hermitian_extremes(&re, &im))
}

/// Numerical positivity evidence for `mu` at each sample of `q`.
pub fn gram_positivity(p: &Presentation, mu: &LinearFunctional, d: usize, q_samples: &[f64]) -> Result<Report> {
    let mut rep = Report::new(format!("gram positivity({}, d = {d})", p.name));
    let (basis, g) = gram_matrix(p, mu, d)?;
    let n = basis.len();
    let mut symmetric = true;
    let mut witness = String::new();
    'outer: for i in 0..n {
        for j in i..n {
            if g[i][j] != g[j][i].conj() {
                symmetric = false;
                witness = format!("({}, {})", p.show_word(&basis[i]), p.show_word(&basis[j]));
                break 'outer;
            }
        }
    }
    rep.check(format!("gram matrix on {n} words is conjugate-symmetric"), symmetric, witness);
    for &q0 in q_samples {
        let (lo, hi) = specialized_extremes(&g, q0)?;
        let ok = lo >= -GRAM_TOLERANCE * hi.abs().max(1.0);
        rep.check(
            format!("q = {q0}: smallest eigenvalue {lo:.3e}, largest {hi:.3e}"),
            ok,
            if ok { String::new() } else { format!("{lo:e}") },
        );
    }
    rep.note("positivity at finitely many q and one degree is evidence, not proof");
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::regular_coaction;
    use crate::presentations::{catalog, CatalogParams};
    use std::sync::Arc;

    fn hopf(degree: usize) -> Arc<HopfData> {
        catalog("Uq2", &CatalogParams::with_degree(degree)).unwrap().hopf.unwrap()
    }

    #[test]
    fn haar_on_generators_vanishes() {
        let h = hopf(4);
        let j = haar_on_hopf(&h, 1).unwrap();
        assert_eq!(j.basis.len(), 6);
        assert!(j.value_word(&Word::empty()).unwrap().is_one());
        for w in &j.basis[1..] {
            assert!(j.value_word(w).unwrap().is_zero());
        }
    }

    #[test]
    fn haar_degree_two_unitarity_sum() {
        let h = hopf(6);
        let a = &h.algebra;
        let j = haar_on_hopf(&h, 6).unwrap();
        // x11* x11 + x21* x21 = 1, so the values add to 1.
        let s = |src: &str| j.apply(&a.nf(&a.parse(src).unwrap())).unwrap();
        let x11 = s("(x22*t)*x11");
        let x21 = s("(-q*x12*t)*x21");
        assert!((&x11 + &x21).is_one());
        assert!(!x11.is_zero() && !x21.is_zero());
        // Degree-two words of nontrivial type vanish.
        assert!(s("x11*x12").is_zero());
        assert!(s("x11*x11").is_zero());
    }

    #[test]
    fn haar_is_right_invariant_too() {
        let h = hopf(4);
        let a = &h.algebra;
        let j = haar_on_hopf(&h, 3).unwrap();
        for b in &j.basis {
            let mut lhs = NCPoly::zero();
            for ((u, v), c) in h.delta.image_word(b).terms() {
                lhs.add_term(v.clone(), c * &j.value_word(u).unwrap());
            }
            let mut rhs = NCPoly::zero();
            for ((u, v), c) in h.delta.image_word(b).terms() {
                rhs.add_term(u.clone(), c * &j.value_word(v).unwrap());
            }
            assert_eq!(rhs, NCPoly::constant(j.value_word(b).unwrap()), "{}", a.show_word(b));
        }
    }

    #[test]
    fn extension_measure_and_invariance() {
        let params = CatalogParams::with_degree(6);
        let c = catalog("Uq2m2", &params).unwrap().coaction.unwrap();
        let j = haar_on_hopf(&c.hopf, 2).unwrap();
        let mu = haar_on_extension(&c, &j, 2).unwrap();
        assert!(mu.value_word(&Word::empty()).unwrap().is_one());
        for g in ["z11", "z12", "z21", "z22"] {
            assert!(mu.apply(&c.total.gen(g)).unwrap().is_zero());
        }
        let r = verify_invariance(&c, &mu, 2);
        assert!(r.passed(), "{r}");

        let mut bad = mu.clone();
        let z11 = c.total.alphabet.parse_word("z11").unwrap();
        bad.values.insert(z11, CScalar::one());
        let r = verify_invariance(&c, &bad, 2);
        assert!(r.failures().any(|i| i.desc.ends_with("alpha(z11)")), "{r}");
    }

    #[test]
    fn extension_measure_needs_enough_of_j() {
        let c = catalog("Uq2m2", &CatalogParams::with_degree(4)).unwrap().coaction.unwrap();
        let j = haar_on_hopf(&c.hopf, 1).unwrap();
        assert!(matches!(haar_on_extension(&c, &j, 2), Err(Error::TruncationOverflow(_))));
    }

    #[test]
    fn uniqueness_under_other_auxiliary_functional() {
        let c = catalog("Uq2m2", &CatalogParams::with_degree(6)).unwrap().coaction.unwrap();
        let j = haar_on_hopf(&c.hopf, 2).unwrap();
        let mu = haar_on_extension(&c, &j, 2).unwrap();
        // A character-like f: 1 on the empty word, 1 on tau, 0 elsewhere.
        let tau = c.total.alphabet.parse_word("tau").unwrap();
        let other =
            haar_on_extension_with(
                &c,
                &j,
                2,
                |w| {
                    if w.is_empty() || *w == tau {
                        CScalar::one()
                    } else {
                        CScalar::zero()
                    }
                },
            )
            .unwrap();
        assert_eq!(mu, other);
    }

    #[test]
    fn regular_measure_is_invariant() {
        let h = hopf(4);
        let j = haar_on_hopf(&h, 2).unwrap();
        let c = regular_coaction(h);
        assert!(verify_invariance(&c, &j, 2).passed());
    }

    #[test]
    fn gram_is_positive() {
        let c = catalog("Uq2m2", &CatalogParams::with_degree(6)).unwrap().coaction.unwrap();
        let j = haar_on_hopf(&c.hopf, 3).unwrap();
        let mu = haar_on_extension(&c, &j, 3).unwrap();
        let r = gram_positivity(&c.total, &mu, 1, DEFAULT_Q_SAMPLES).unwrap();
        assert!(r.passed(), "{r}");
        let r0 = gram_positivity(&c.total, &mu, 0, &[0.5]).unwrap();
        assert!(r0.passed());

        let h = hopf(6);
        let j = haar_on_hopf(&h, 3).unwrap();
        let (_, g) = gram_matrix(&h.algebra, &j, 1).unwrap();
        let n = g.len();
        let re = DMatrix::from_fn(n, n, |i, k| g[i][k].eval(0.5).unwrap().0);
        let im = DMatrix::from_fn(n, n, |i, k| g[i][k].eval(0.5).unwrap().1);
        let (lo, _) = hermitian_extremes(&re, &im);
        assert!(lo > 1e-6, "faithful at degree one: {lo}");
    }

    #[test]
    fn gram_at_zero_is_a_domain_error() {
        let c = catalog("Uq2m2", &CatalogParams::with_degree(6)).unwrap().coaction.unwrap();
        let j = haar_on_hopf(&c.hopf, 3).unwrap();
        let mu = haar_on_extension(&c, &j, 3).unwrap();
        assert!(matches!(gram_positivity(&c.total, &mu, 1, &[0.0]), Err(Error::Domain(_))));
    }
}
