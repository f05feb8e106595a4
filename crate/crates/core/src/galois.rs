//! The Galois map `beta(x (x) y) = alpha(x)(1 (x) y)` of a comodule algebra
//! and the check that an explicit candidate inverse really inverts it.
//!
//! A [`GaloisWitness`] is an algebra map `delta: A -> Z (x) T` together with
//! an anti-isomorphism `phi: T -> Z`. The candidate inverse is
//! `beta'(a (x) y) = sum z (x) phi(t) y` where `delta(a) = sum z (x) t`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{mat_inv, Matrix};
use crate::ncpoly::{NCPoly, TensorPoly, Word};
use crate::presentations::{catalog, CatalogParams, CoactionData, HopfData, Presentation, TensorAlgebra, TensorMap};
use crate::report::{Report, Status};
use crate::rewrite::CompletionConfig;
use crate::scalars::CScalar;

#[derive(Clone, Debug)]
pub struct GaloisWitness {
    pub companion: Arc<Presentation>,
    pub delta: TensorMap,
    pub phi: Vec<NCPoly>,
    /// `(1 (x) phi) delta`, an algebra map into `Z (x) Z^op`.
    translation: TensorMap,
}

impl GaloisWitness {
    /// Validates the witness invariants against `c` and builds it.
    pub fn new(
        c: &CoactionData,
        companion: Arc<Presentation>,
        delta: Vec<TensorPoly>,
        phi: Vec<NCPoly>,
    ) -> Result<Self> {
        let z = c.total.clone();
        if delta.len() != c.base.ngens() || phi.len() != companion.ngens() {
            return Err(Error::InvalidWitness("wrong number of generator images".into()));
        }
        let delta = TensorMap::new(TensorAlgebra::new(z.clone(), companion.clone()), delta);
        // Images of relations must reduce correctly for validation to mean anything.
        let (d1, d2) = leg_degrees(&delta);
        let k = phi.iter().map(NCPoly::degree).max().unwrap_or(0);
        let ra = c.base.relations.iter().map(NCPoly::degree).max().unwrap_or(0);
        let rt = companion.relations.iter().map(NCPoly::degree).max().unwrap_or(0);
        z.require_degree((d1 * ra).max(k * rt))?;
        companion.require_degree(d2 * ra)?;
        let phi: Vec<NCPoly> = phi.iter().map(|x| z.nf(x)).collect();
        let target = TensorAlgebra { left: z.clone(), right: z.clone(), reverse_right: true };
        let images = delta
            .images()
            .iter()
            .map(|t| {
                t.map_legs(
                    |u| NCPoly::monomial(u.clone()),
                    |v| z.nf(&NCPoly::monomial(v.clone()).substitute(&phi, true)),
                )
            })
            .collect();
        let w = GaloisWitness { translation: TensorMap::new(target, images), companion, delta, phi };
        let report = w.validate(c);
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidWitness(format!("{} ~ {}", bad.desc, bad.witness)));
        }
        Ok(w)
    }

    /// `delta` kills the relations of `A`; `phi` kills those of `T`.
    pub fn validate(&self, c: &CoactionData) -> Report {
        let mut rep = Report::new("galois witness");
        for r in &c.base.relations {
            let img = self.delta.image(r);
            rep.check(
                format!("delta({}) = 0", c.base.show(r)),
                img.is_zero(),
                if img.is_zero() { String::new() } else { self.delta.target.show(&img) },
            );
        }
        for r in &self.companion.relations {
            let img = c.total.nf(&r.substitute(&self.phi, true));
            rep.check(
                format!("phi({}) = 0", self.companion.show(r)),
                img.is_zero(),
                if img.is_zero() { String::new() } else { c.total.show(&img) },
            );
        }
        rep.finish()
    }

    /// Witness for `GLq2m2` (or `Uq2m2`) with companion `GLqm22`.
    pub fn glq2m2(c: &CoactionData, params: &CatalogParams) -> Result<Self> {
        let t = catalog("GLqm22", params)?.presentation;
        let target = TensorAlgebra::new(c.total.clone(), t.clone());
        let mut delta = Vec::new();
        for g in ["x11", "x12", "x21", "x22"] {
            let (i, j) = (&g[1..2], &g[2..3]);
            delta.push(target.parse(&format!("z{i}1 (x) t1{j} + z{i}2 (x) t2{j}"))?);
        }
        delta.push(target.parse("tau (x) xi")?);
        let phi = ["z11*z22 + q^-1*z12*z21", "z22*tau", "q*tau*z12", "q^-1*z21*tau", "tau*z11"]
            .iter()
            .map(|s| c.total.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(c, t, delta, phi)
    }

    /// The Hopf algebra as a Galois extension of itself: `delta` is the
    /// comultiplication and `phi` the antipode.
    pub fn hopf(c: &CoactionData) -> Result<Self> {
        let h = &c.hopf;
        Self::new(c, h.algebra.clone(), h.delta.images().to_vec(), h.antipode.clone())
    }

    /// Witness for `AuFG` over `AuF` with companion the opposite algebra and
    /// `phi` the identity on generators:
    /// `delta(a_ij) = sum_k z_ik (x) z*_kj` and
    /// `delta(abar_ij) = sum_k zbar_ik (x) (G^-1 u* F)_kj` with `u = F zbar G^-1`.
    pub fn aufg(c: &CoactionData, f: &Matrix, g: &Matrix, config: CompletionConfig) -> Result<Self> {
        let (n, p) = (f.len(), g.len());
        let z = &c.total;
        if z.ngens() != 2 * n * p || c.base.ngens() != 2 * n * n {
            return Err(Error::InvalidWitness("matrix sizes do not match the algebras".into()));
        }
        let t = Arc::new(z.opposite(format!("{}op", z.name), config)?);
        let zg = |i: usize, j: usize| NCPoly::generator(i * p + j);
        let zs = |i: usize, j: usize| NCPoly::generator(n * p + i * p + j);
        let ginv = mat_inv(g)?;
        // ustar[m][l] = (u[l][m])* = sum conj(F[l][k]) z[k][r] conj(Ginv[r][m]).
        let mut ustar = vec![vec![NCPoly::zero(); n]; p];
        for m in 0..p {
            for l in 0..n {
                for k in 0..n {
                    for r in 0..p {
                        ustar[m][l].add_scaled(&zg(k, r), &(&f[l][k] * &ginv[r][m]).conj());
                    }
                }
            }
        }
        let mut delta = vec![TensorPoly::zero(); 2 * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..p {
                    delta[i * n + j].add_simple(&zg(i, k), &zs(j, k), &CScalar::one());
                    let mut w = NCPoly::zero();
                    for m in 0..p {
                        for l in 0..n {
                            w.add_scaled(&ustar[m][l], &(&ginv[k][m] * &f[l][j]));
                        }
                    }
                    delta[n * n + i * n + j].add_simple(&zs(i, k), &w, &CScalar::one());
                }
            }
        }
        let phi = (0..z.ngens()).map(NCPoly::generator).collect();
        Self::new(c, t, delta, phi)
    }
}

/// `beta(x (x) y) = alpha(x)(1 (x) y)`, legs in normal form.
pub fn galois_map(x: &NCPoly, y: &NCPoly, c: &CoactionData) -> TensorPoly {
    let ax = c.alpha_of(x);
    let y = c.total.nf(y);
    c.alpha.target.mul(&ax, &TensorPoly::simple(&NCPoly::one(), &y))
}

/// `beta'(a (x) y) = sum z (x) phi(t) y`, legs in normal form.
pub fn galois_inverse(a: &NCPoly, y: &NCPoly, w: &GaloisWitness) -> TensorPoly {
    let ta = w.translation.image(a);
    let z = &w.translation.target.left;
    let y = z.nf(y);
    let mut out = TensorPoly::zero();
    for ((u, v), c) in ta.terms() {
        out.add_simple(&NCPoly::monomial(u.clone()), &z.rewrite.mul(&NCPoly::monomial(v.clone()), &y), c);
    }
    out
}

/// Longest first and second legs among the images of `m`.
fn leg_degrees(m: &TensorMap) -> (usize, usize) {
    m.images().iter().flat_map(|t| t.terms()).fold((0, 0), |(a, b), ((u, v), _)| (a.max(u.len()), b.max(v.len())))
}

fn apply_beta(t: &TensorPoly, c: &CoactionData) -> TensorPoly {
    let mut out = TensorPoly::zero();
    for ((u, v), k) in t.terms() {
        out.add_scaled(&galois_map(&NCPoly::monomial(u.clone()), &NCPoly::monomial(v.clone()), c), k);
    }
    out
}

fn apply_beta_inverse(t: &TensorPoly, w: &GaloisWitness) -> TensorPoly {
    let mut out = TensorPoly::zero();
    for ((u, v), k) in t.terms() {
        out.add_scaled(&galois_inverse(&NCPoly::monomial(u.clone()), &NCPoly::monomial(v.clone()), w), k);
    }
    out
}

/// Checks `beta beta' = id` on `{a (x) 1}` and `beta' beta = id` on
/// `{x (x) 1, 1 (x) x}` for normal words up to length `d`. Both composites
/// are module maps, so these spanning sets suffice on the truncation.
pub fn verify_galois(c: &CoactionData, w: &GaloisWitness, d: usize) -> Report {
    let mut rep = Report::new(format!("galois({} over {}, d = {d})", c.total.name, c.base.name));
    let (a1, a2) = leg_degrees(&c.alpha);
    let (k1, k2) = leg_degrees(&w.translation);
    let need_z = (a2 * k1 * d + k2 * d).max(k2 * a1 * d + a2 * d).max(k1 * a1 * d);
    let need_a = (a1 * k1 * d).max(d);
    for (p, need) in [(&c.total, need_z), (&c.base, need_a)] {
        if let Err(e) = p.require_degree(need) {
            rep.push(
                format!("normal forms of {} certified to degree {need}", p.name),
                Status::Undecided,
                e.to_string(),
            );
            return rep.finish();
        }
    }
    let tens = &c.alpha.target;
    let zz = &w.translation.target;
    let (basis_a, basis_z) = match (c.base.basis(d), c.total.basis(d)) {
        (Ok(a), Ok(z)) => (a, z),
        (Err(e), _) | (_, Err(e)) => {
            rep.push("word bases", Status::Undecided, e.to_string());
            return rep.finish();
        }
    };
    let one = NCPoly::one();
    for a in &basis_a {
        let a_poly = NCPoly::monomial(a.clone());
        let back = apply_beta(&galois_inverse(&a_poly, &one, w), c);
        let mut diff = back;
        diff.add_term(a.clone(), Word::empty(), CScalar::from_int(-1));
        rep.check(
            format!("beta beta'({} (x) 1)", c.base.show_word(a)),
            diff.is_zero(),
            if diff.is_zero() { String::new() } else { tens.show(&diff) },
        );
    }
    for x in &basis_z {
        let x_poly = NCPoly::monomial(x.clone());
        let xs = c.total.show_word(x);
        for left in [true, false] {
            let (l, r) = if left { (&x_poly, &one) } else { (&one, &x_poly) };
            let back = apply_beta_inverse(&galois_map(l, r, c), w);
            let mut diff = back;
            let (u, v) = if left { (x.clone(), Word::empty()) } else { (Word::empty(), x.clone()) };
            diff.add_term(u, v, CScalar::from_int(-1));
            let desc = if left { format!("{xs} (x) 1") } else { format!("1 (x) {xs}") };
            rep.check(
                format!("beta' beta({desc})"),
                diff.is_zero(),
                if diff.is_zero() { String::new() } else { zz.show(&diff) },
            );
        }
    }
    rep.finish()
}

/// `z M = M z = I` for the generator matrix `z` of `GLq2m2` and
/// `M = ((z22 tau, q tau z12), (q^-1 z21 tau, tau z11))`.
pub fn matrix_inverse_identity(z: &Presentation) -> Result<Report> {
    let zm = [["z11", "z12"], ["z21", "z22"]];
    let m = [["z22*tau", "q*tau*z12"], ["q^-1*z21*tau", "tau*z11"]];
    let zp = zm.map(|r| r.map(|g| z.parse(g)));
    let mp = m.map(|r| r.map(|g| z.parse(g)));
    let get = |x: &[[Result<NCPoly>; 2]; 2], i: usize, j: usize| x[i][j].clone();
    let mut rep = Report::new(format!("matrix inverse({})", z.name));
    for i in 0..2 {
        for j in 0..2 {
            for (name, a, b) in [("z M", &zp, &mp), ("M z", &mp, &zp)] {
                let mut acc = if i == j { NCPoly::constant(CScalar::from_int(-1)) } else { NCPoly::zero() };
                for k in 0..2 {
                    acc = &acc + &z.mul(&get(a, i, k)?, &get(b, k, j)?);
                }
                rep.check(
                    format!("({name})_{}{} = {}", i + 1, j + 1, u8::from(i == j)),
                    acc.is_zero(),
                    if acc.is_zero() { String::new() } else { z.show(&acc) },
                );
            }
        }
    }
    Ok(rep.finish())
}

/// The coaction of a Hopf algebra on itself by its comultiplication.
pub fn regular_coaction(h: Arc<HopfData>) -> CoactionData {
    let images = h.delta.images().to_vec();
    CoactionData::new(h.clone(), h.algebra.clone(), images)
}
