//! Characters of a presented algebra through its abelianization: the
//! relations read as commutative polynomials, a Gröbner basis over `Q(q)`
//! (grevlex), and a search for a point when the ideal is proper.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ncpoly::NCPoly;
use crate::presentations::Presentation;
use crate::report::{Report, Status};
use crate::scalars::CScalar;

pub const DEFAULT_DEGREE_CAP: usize = 12;

/// Nodes visited by the witness search before giving up.
const SEARCH_BUDGET: usize = 200_000;

/// Exponent vector, ordered graded reverse lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&o.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Commutative polynomial; the last key is the leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoly(pub BTreeMap<Monomial, CScalar>);

impl CPoly {
    pub fn zero() -> Self {
        CPoly(BTreeMap::new())
    }

    pub fn constant(n: usize, c: CScalar) -> Self {
        let mut p = CPoly::zero();
        p.add(Monomial::one(n), c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.0.len() == 1 && self.0.keys().next().is_some_and(Monomial::is_one)
    }

    pub fn leading(&self) -> Option<(&Monomial, &CScalar)> {
        self.0.iter().next_back()
    }

    fn add(&mut self, m: Monomial, c: CScalar) {
        if c.is_zero() {
            return;
        }
        let s = match self.0.get(&m) {
            Some(x) => x + &c,
            None => c,
        };
        if s.is_zero() {
            self.0.remove(&m);
        } else {
            self.0.insert(m, s);
        }
    }

    /// `self += c m other`.
    fn add_shifted(&mut self, other: &CPoly, c: &CScalar, m: &Monomial) {
        for (k, a) in &other.0 {
            self.add(k.mul(m), a * c);
        }
    }

    fn monic(&self) -> CPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                CPoly(self.0.iter().map(|(k, v)| (k.clone(), v * &inv)).collect())
            }
        }
    }

    /// Value at a point; the polynomial stays a polynomial in `q`.
    pub fn eval(&self, point: &[CScalar]) -> CScalar {
        let mut acc = CScalar::zero();
        for (m, c) in &self.0 {
            let mut t = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                for _ in 0..*e {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> CPolyDisplay<'a> {
        CPolyDisplay { p: self, vars }
    }
}

pub struct CPolyDisplay<'a> {
    p: &'a CPoly,
    vars: &'a [String],
}

impl fmt::Display for CPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .p
            .0
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono: Vec<String> =
                    m.0.iter()
                        .enumerate()
                        .filter(|(_, e)| **e > 0)
                        .map(|(i, e)| if *e == 1 { self.vars[i].clone() } else { format!("{}^{e}", self.vars[i]) })
                        .collect();
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => format!("({c})"),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("({c})*{}", mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub struct CommutativePresentation {
    pub variables: Vec<String>,
    pub ideal_generators: Vec<CPoly>,
}

/// Reads every relation with commuting generators.
pub fn abelianize_poly(x: &NCPoly, n: usize) -> CPoly {
    let mut p = CPoly::zero();
    for (w, c) in x.terms() {
        let mut m = Monomial::one(n);
        for &l in w.letters() {
            m.0[l as usize] += 1;
        }
        p.add(m, c.clone());
    }
    p
}

pub fn abelianization(p: &Presentation) -> CommutativePresentation {
    let n = p.ngens();
    CommutativePresentation {
        variables: p.alphabet.names().to_vec(),
        ideal_generators: p.relations.iter().map(|r| abelianize_poly(r, n)).filter(|r| !r.is_zero()).collect(),
    }
}

/// Full reduction of `f` by `basis` (monic elements).
pub fn reduce(f: &CPoly, basis: &[CPoly]) -> CPoly {
    let mut f = f.clone();
    let mut rem = CPoly::zero();
    while let Some((m, c)) = f.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m))) {
            Some(g) => {
                let lm = g.leading().expect("nonzero").0;
                f.add_shifted(g, &-c, &m.div(lm));
            }
            None => {
                f.0.remove(&m);
                rem.add(m, c);
            }
        }
    }
    rem
}

/// Reduced Gröbner basis by Buchberger's algorithm with the coprime
/// criterion. Pairs whose lcm exceeds `degree_cap` abort the run.
pub fn groebner(cp: &CommutativePresentation, degree_cap: usize) -> Result<Vec<CPoly>> {
    let n = cp.variables.len();
    let mut basis: Vec<CPoly> = Vec::new();
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let push = |g: CPoly, basis: &mut Vec<CPoly>, pairs: &mut BTreeSet<(Monomial, usize, usize)>| {
        let g = g.monic();
        let k = basis.len();
        let lg = g.leading().expect("nonzero").0.clone();
        for (i, b) in basis.iter().enumerate() {
            let lb = b.leading().expect("nonzero").0;
            if !lb.coprime(&lg) {
                pairs.insert((lb.lcm(&lg), i, k));
            }
        }
        basis.push(g);
    };
    for g in &cp.ideal_generators {
        let r = reduce(g, &basis);
        if r.is_unit() {
            return Ok(vec![CPoly::constant(n, CScalar::one())]);
        }
        if !r.is_zero() {
            push(r, &mut basis, &mut pairs);
        }
    }
    while let Some((lcm, i, j)) = pairs.pop_first() {
        if lcm.degree() as usize > degree_cap {
            return Err(Error::DegreeCapExceeded(degree_cap));
        }
        let (gi, gj) = (&basis[i], &basis[j]);
        let mut s = CPoly::zero();
        s.add_shifted(gi, &CScalar::one(), &lcm.div(gi.leading().expect("nonzero").0));
        s.add_shifted(gj, &CScalar::from_int(-1), &lcm.div(gj.leading().expect("nonzero").0));
        let r = reduce(&s, &basis);
        if r.is_unit() {
            return Ok(vec![CPoly::constant(n, CScalar::one())]);
        }
        if !r.is_zero() {
            push(r, &mut basis, &mut pairs);
        }
    }
    // Drop redundant leading terms, then interreduce.
    let mut minimal: Vec<CPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = g.leading().expect("nonzero").0;
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let lh = h.leading().expect("nonzero").0;
            l != k && lh.divides(lg) && (lh != lg || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let reduced = (0..minimal.len())
        .map(|k| {
            let others: Vec<CPoly> =
                minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
            let (lm, _) = minimal[k].leading().expect("nonzero");
            let mut tail = minimal[k].clone();
            tail.0.remove(lm);
            let mut g = reduce(&tail, &others);
            g.add(lm.clone(), CScalar::one());
            g
        })
        .collect::<Vec<_>>();
    let mut reduced = reduced;
    reduced.sort_by(|a, b| a.leading().map(|x| x.0).cmp(&b.leading().map(|x| x.0)));
    Ok(reduced)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Spectrum {
    /// `1` is in the abelianized ideal.
    Empty,
    /// A character, as generator values.
    Point(Vec<CScalar>),
    NonemptyNotEnumerated,
}

/// Depth-first search for a zero of `basis` with coordinates in
/// `candidates`, pruning as soon as a polynomial in assigned variables only
/// evaluates to a nonzero value.
fn search_point(basis: &[CPoly], n: usize, candidates: &[CScalar]) -> Option<Vec<CScalar>> {
    // Last variable each polynomial depends on.
    let last: Vec<usize> = basis
        .iter()
        .map(|g| {
            g.0.keys().flat_map(|m| m.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)).max().unwrap_or(0)
        })
        .collect();
    let mut point = vec![CScalar::zero(); n];
    let mut budget = SEARCH_BUDGET;
    fn go(
        k: usize,
        point: &mut Vec<CScalar>,
        basis: &[CPoly],
        last: &[usize],
        cands: &[CScalar],
        budget: &mut usize,
    ) -> bool {
        if k == point.len() {
            return true;
        }
        for c in cands {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            point[k] = c.clone();
            let ok = basis.iter().zip(last).filter(|(_, &l)| l == k).all(|(g, _)| g.eval(point).is_zero());
            if ok && go(k + 1, point, basis, last, cands, budget) {
                return true;
            }
        }
        false
    }
    go(0, &mut point, basis, &last, candidates, &mut budget).then_some(point)
}

/// Decides whether `p` has a character over `Q(q)`, with a witness
/// when one is found among small candidate values or `hint`.
pub fn spectrum(p: &Presentation, degree_cap: usize, hint: Option<&[CScalar]>) -> Result<Spectrum> {
    let cp = abelianization(p);
    let n = cp.variables.len();
    let gb = groebner(&cp, degree_cap)?;
    if gb.iter().any(CPoly::is_unit) {
        return Ok(Spectrum::Empty);
    }
    if let Some(h) = hint {
        if gb.iter().all(|g| g.eval(h).is_zero()) {
            return Ok(Spectrum::Point(h.to_vec()));
        }
    }
    let candidates = [CScalar::zero(), CScalar::one(), CScalar::from_int(-1), CScalar::q_pow(1), CScalar::q_pow(-1)];
    Ok(match search_point(&gb, n, &candidates) {
        Some(pt) => Spectrum::Point(pt),
        None => Spectrum::NonemptyNotEnumerated,
    })
}

pub fn spectrum_empty(p: &Presentation) -> Result<bool> {
    Ok(spectrum(p, DEFAULT_DEGREE_CAP, None)? == Spectrum::Empty)
}

/// The algebra spectrum bounds the *-spectrum from above.
pub fn star_spectrum_note(p: &Presentation, degree_cap: usize, hint: Option<&[CScalar]>) -> Report {
    let mut rep = Report::new(format!("spectrum({})", p.name));
    match spectrum(p, degree_cap, hint) {
        Ok(Spectrum::Empty) => {
            rep.push("1 lies in the abelianized ideal", Status::Pass, "");
            rep.note("*-spectrum empty (inherited from the algebra spectrum)");
        }
        Ok(Spectrum::Point(pt)) => {
            let w: Vec<String> = p.alphabet.names().iter().zip(&pt).map(|(n, v)| format!("{n} -> {v}")).collect();
            rep.push("algebra spectrum nonempty", Status::Fail, w.join(", "));
            let star_ok = p.star.is_some()
                && (0..p.ngens()).all(|g| {
                    p.star_of(&NCPoly::generator(g))
                        .is_ok_and(|s| abelianize_poly(&s, p.ngens()).eval(&pt) == pt[g].conj())
                });
            rep.note(if star_ok {
                "*-spectrum nonempty: the witness respects the star"
            } else {
                "*-spectrum not decided: no *-character search is performed"
            });
        }
        Ok(Spectrum::NonemptyNotEnumerated) => {
            rep.push("algebra spectrum nonempty, not enumerated", Status::Fail, "");
        }
        Err(e) => rep.push("groebner basis", Status::Undecided, e.to_string()),
    }
    rep.note("decided for generic q only");
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;
    use crate::presentations::{catalog, CatalogParams};

    fn cp(vars: &[&str], gens: Vec<CPoly>) -> CommutativePresentation {
        CommutativePresentation { variables: vars.iter().map(|s| s.to_string()).collect(), ideal_generators: gens }
    }

    fn poly(terms: &[(&[u32], &str)]) -> CPoly {
        let mut p = CPoly::zero();
        for (e, c) in terms {
            p.add(Monomial(e.to_vec()), parse_scalar(c).unwrap());
        }
        p
    }

    #[test]
    fn grevlex_order() {
        // x > y > z on degree one; xz < y^2 in grevlex.
        assert!(Monomial(vec![1, 0, 0]) > Monomial(vec![0, 1, 0]));
        assert!(Monomial(vec![1, 0, 1]) < Monomial(vec![0, 2, 0]));
        assert!(Monomial(vec![0, 0, 2]) > Monomial(vec![1, 0, 0]));
    }

    #[test]
    fn unit_ideal_example() {
        // (1+q) x y and x y t - 1
        let g = groebner(
            &cp(&["x", "y", "t"], vec![poly(&[(&[1, 1, 0], "1+q")]), poly(&[(&[1, 1, 1], "1"), (&[0, 0, 0], "-1")])]),
            12,
        )
        .unwrap();
        assert_eq!(g.len(), 1);
        assert!(g[0].is_unit());
    }

    #[test]
    fn trivial_ideals() {
        assert!(groebner(&cp(&["x"], vec![]), 12).unwrap().is_empty());
        let x1 = poly(&[(&[1], "1"), (&[0], "-1")]);
        assert_eq!(groebner(&cp(&["x"], vec![x1.clone()]), 12).unwrap(), vec![x1]);
    }

    #[test]
    fn membership_is_decided() {
        let gens = vec![poly(&[(&[2, 0], "1"), (&[0, 1], "-q")]), poly(&[(&[1, 1], "1"), (&[0, 0], "-1")])];
        let g = groebner(&cp(&["x", "y"], gens.clone()), 12).unwrap();
        // f = (x + 3) g0 + y^2 g1 is in the ideal.
        let mut f = CPoly::zero();
        f.add_shifted(&gens[0], &CScalar::one(), &Monomial(vec![1, 0]));
        f.add_shifted(&gens[0], &CScalar::from_int(3), &Monomial(vec![0, 0]));
        f.add_shifted(&gens[1], &CScalar::one(), &Monomial(vec![0, 2]));
        assert!(reduce(&f, &g).is_zero());
        assert!(!reduce(&poly(&[(&[1, 0], "1")]), &g).is_zero());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let gens = vec![poly(&[(&[3, 0], "1"), (&[0, 2], "-1")]), poly(&[(&[2, 1], "1"), (&[0, 0], "-1")])];
        assert!(matches!(groebner(&cp(&["x", "y"], gens), 2), Err(Error::DegreeCapExceeded(2))));
    }

    #[test]
    fn catalog_spectra() {
        let params = CatalogParams::default();
        assert!(spectrum_empty(&catalog("GLq2m2", &params).unwrap().presentation).unwrap());
        assert!(spectrum_empty(&catalog("Uq2m2", &params).unwrap().presentation).unwrap());
        let gl = catalog("GLq2", &params).unwrap();
        let h = gl.hopf.unwrap();
        match spectrum(&gl.presentation, 12, Some(&h.counit)).unwrap() {
            Spectrum::Point(pt) => assert_eq!(pt, h.counit),
            other => panic!("{other:?}"),
        }
        let onp = catalog("Onp", &CatalogParams { n: 1, p: 1, ..params.clone() }).unwrap().presentation;
        assert!(matches!(spectrum(&onp, 12, None).unwrap(), Spectrum::Point(_)));
        let onp21 = catalog("Onp", &CatalogParams { n: 2, p: 1, ..params }).unwrap().presentation;
        assert!(spectrum_empty(&onp21).unwrap());
    }

    #[test]
    fn abelianized_relations_reduce_to_zero() {
        let p = catalog("GLq2", &CatalogParams::default()).unwrap().presentation;
        let cp = abelianization(&p);
        let g = groebner(&cp, 12).unwrap();
        for r in &p.relations {
            assert!(reduce(&abelianize_poly(r, p.ngens()), &g).is_zero());
        }
    }

    #[test]
    fn star_notes() {
        let params = CatalogParams::default();
        let r = star_spectrum_note(&catalog("Uq2m2", &params).unwrap().presentation, 12, None);
        assert!(r.passed() && r.notes.iter().any(|n| n.contains("inherited")));
        let u = catalog("Uq2", &params).unwrap();
        let r = star_spectrum_note(&u.presentation, 12, Some(&u.hopf.unwrap().counit));
        assert!(r.notes.iter().any(|n| n.contains("respects the star")), "{r}");
    }
}
