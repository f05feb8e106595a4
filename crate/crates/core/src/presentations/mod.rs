//! Finitely presented *-algebras with Hopf and coaction data, and the
//! structural checks run against them.

mod catalog;
mod dsl;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

pub use catalog::{aufg_to_uq2m2, catalog, f_matrix, CatalogEntry, CatalogParams, CATALOG_NAMES};
pub use dsl::{parse_coaction_file, parse_presentation_file, CoactionFile, PresentationFile};

use crate::error::{Error, Result};
use crate::ncpoly::{nc_star, Alphabet, NCPoly, StarMap, TensorPoly, Word};
use crate::parse::parse_expr;
use crate::report::Report;
use crate::rewrite::{complete_relations, word_basis, CompletionConfig, RewriteSystem};
use crate::scalars::CScalar;

/// Generators, relations, a completed rewrite system and an optional star.
#[derive(Debug)]
pub struct Presentation {
    pub name: String,
    pub alphabet: Alphabet,
    pub relations: Vec<NCPoly>,
    pub rewrite: RewriteSystem,
    pub star: Option<StarMap>,
}

impl Presentation {
    /// Completes `relations` to `config.degree`. The alphabet order is the
    /// generator order of the monomial order.
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        relations: Vec<NCPoly>,
        star: Option<StarMap>,
        config: CompletionConfig,
    ) -> Result<Self> {
        let rewrite = complete_relations(alphabet.len(), &relations, config)?;
        Ok(Presentation { name: name.into(), alphabet, relations, rewrite, star })
    }

    /// Builds a presentation from expression strings. Star images, when
    /// given, are listed in generator order.
    pub fn from_strings(
        name: &str,
        generators: &[&str],
        relations: &[&str],
        star: Option<&[&str]>,
        config: CompletionConfig,
    ) -> Result<Self> {
        let alphabet = Alphabet::new(generators)?;
        let rels = relations.iter().map(|r| parse_expr(r, &alphabet)).collect::<Result<Vec<_>>>()?;
        let star = match star {
            Some(images) => {
                Some(StarMap::new(images.iter().map(|s| parse_expr(s, &alphabet).map(Some)).collect::<Result<_>>()?))
            }
            None => None,
        };
        Self::new(name, alphabet, rels, star, config)
    }

    pub fn ngens(&self) -> usize {
        self.alphabet.len()
    }

    /// The generator called `name`.
    ///
    /// Panics if there is none; use [`Presentation::parse`] for user input.
    pub fn gen(&self, name: &str) -> NCPoly {
        self.alphabet.gen(name)
    }

    pub fn parse(&self, src: &str) -> Result<NCPoly> {
        parse_expr(src, &self.alphabet)
    }

    pub fn nf(&self, x: &NCPoly) -> NCPoly {
        self.rewrite.normal_form(x)
    }

    pub fn mul(&self, x: &NCPoly, y: &NCPoly) -> NCPoly {
        self.rewrite.mul(&self.nf(x), &self.nf(y))
    }

    /// Product of several factors, reduced.
    pub fn product(&self, factors: &[&NCPoly]) -> NCPoly {
        factors.iter().fold(NCPoly::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    /// `nf(x*)`.
    pub fn star_of(&self, x: &NCPoly) -> Result<NCPoly> {
        let s = self.star.as_ref().ok_or_else(|| Error::MissingStarImage(format!("{} has no star", self.name)))?;
        Ok(self.nf(&nc_star(x, s, &self.alphabet)?))
    }

    pub fn certified_degree(&self) -> usize {
        self.rewrite.certified_degree().unwrap_or(0)
    }

    /// Errors unless normal forms are certified unique on words of length `d`.
    pub fn require_degree(&self, d: usize) -> Result<()> {
        let have = self.certified_degree();
        if have < d {
            return Err(Error::ConfluenceNotCertified { needed: d, have });
        }
        Ok(())
    }

    pub fn basis(&self, d: usize) -> Result<Vec<Word>> {
        word_basis(&self.rewrite, d)
    }

    pub fn show(&self, x: &NCPoly) -> String {
        x.display(&self.alphabet).to_string()
    }

    pub fn show_word(&self, w: &Word) -> String {
        self.alphabet.word_to_string(w)
    }

    /// The opposite algebra: same generators, every word read backwards.
    pub fn opposite(&self, name: impl Into<String>, config: CompletionConfig) -> Result<Presentation> {
        let rels = self.relations.iter().map(NCPoly::reversed_words).collect();
        let star = self
            .star
            .as_ref()
            .map(|s| StarMap::new(s.images.iter().map(|i| i.as_ref().map(NCPoly::reversed_words)).collect()));
        Presentation::new(name, self.alphabet.clone(), rels, star, config)
    }
}

/// Tensor product `L (x) R` of two presented algebras, optionally with the
/// opposite multiplication on the right leg.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    pub left: Arc<Presentation>,
    pub right: Arc<Presentation>,
    pub reverse_right: bool,
}

impl TensorAlgebra {
    pub fn new(left: Arc<Presentation>, right: Arc<Presentation>) -> Self {
        TensorAlgebra { left, right, reverse_right: false }
    }

    /// Both legs in normal form.
    pub fn nf(&self, t: &TensorPoly) -> TensorPoly {
        t.map_legs(
            |u| (*self.left.rewrite.normal_form_word(u)).clone(),
            |v| (*self.right.rewrite.normal_form_word(v)).clone(),
        )
    }

    /// Product of two tensors with normal legs.
    pub fn mul(&self, x: &TensorPoly, y: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((u1, v1), a) in x.terms() {
            for ((u2, v2), b) in y.terms() {
                let l = self.left.rewrite.mul_words(u1, u2);
                let r = if self.reverse_right {
                    self.right.rewrite.mul_words(v2, v1)
                } else {
                    self.right.rewrite.mul_words(v1, v2)
                };
                out.add_simple(&l, &r, &(a * b));
            }
        }
        out
    }

    /// Parses `sum exprL (x) exprR`. Coefficients go in the left leg.
    pub fn parse(&self, src: &str) -> Result<TensorPoly> {
        let mut out = TensorPoly::zero();
        for summand in split_tensor_sum(src) {
            let (l, r) = summand
                .split_once("(x)")
                .ok_or_else(|| Error::Invalid(format!("`{summand}` lacks the `(x)` separator")))?;
            let l = self.left.parse(l.trim())?;
            let r = self.right.parse(r.trim())?;
            out.add_simple(&l, &r, &CScalar::one());
        }
        Ok(self.nf(&out))
    }

    pub fn show(&self, t: &TensorPoly) -> String {
        t.display(&self.left.alphabet, &self.right.alphabet)
    }
}

/// Splits `a (x) b + c (x) d` into summands at top-level `+` signs that
/// follow a complete `(x)` pair. A leading `-` stays with its summand.
fn split_tensor_sum(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut seen_sep = false;
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c == '(' && chars.get(k + 1) == Some(&'x') && chars.get(k + 2) == Some(&')') {
            cur.push_str("(x)");
            seen_sep = true;
            k += 3;
            continue;
        }
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let after_caret = cur.trim_end().ends_with('^');
        if depth == 0 && seen_sep && !after_caret && (c == '+' || c == '-') && !cur.trim().is_empty() {
            out.push(std::mem::take(&mut cur));
            seen_sep = false;
            if c == '-' {
                cur.push('-');
            }
            k += 1;
            continue;
        }
        cur.push(c);
        k += 1;
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

/// An algebra map from a presented algebra into a [`TensorAlgebra`],
/// given on generators and extended multiplicatively with memoization.
#[derive(Debug)]
pub struct TensorMap {
    pub target: TensorAlgebra,
    images: Vec<TensorPoly>,
    cache: RwLock<HashMap<Word, Arc<TensorPoly>>>,
}

impl Clone for TensorMap {
    fn clone(&self) -> Self {
        TensorMap::new(self.target.clone(), self.images.clone())
    }
}

impl TensorMap {
    pub fn new(target: TensorAlgebra, images: Vec<TensorPoly>) -> Self {
        let images = images.iter().map(|t| target.nf(t)).collect();
        TensorMap { target, images, cache: RwLock::new(HashMap::new()) }
    }

    pub fn images(&self) -> &[TensorPoly] {
        &self.images
    }

    pub fn image_word(&self, w: &Word) -> Arc<TensorPoly> {
        if let Some(hit) = self.cache.read().unwrap().get(w) {
            return hit.clone();
        }
        let out = match w.letters().split_last() {
            None => TensorPoly::one(),
            Some((&last, init)) => {
                let head = self.image_word(&Word::from_slice(init));
                self.target.mul(&head, &self.images[last as usize])
            }
        };
        let out = Arc::new(out);
        self.cache.write().unwrap().insert(w.clone(), out.clone());
        out
    }

    pub fn image(&self, x: &NCPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.image_word(w), c);
        }
        out
    }
}

/// Comultiplication, counit and antipode, given on generators.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub algebra: Arc<Presentation>,
    pub delta: TensorMap,
    pub counit: Vec<CScalar>,
    pub antipode: Vec<NCPoly>,
}

impl HopfData {
    pub fn new(
        algebra: Arc<Presentation>,
        delta: Vec<TensorPoly>,
        counit: Vec<CScalar>,
        antipode: Vec<NCPoly>,
    ) -> Self {
        let target = TensorAlgebra::new(algebra.clone(), algebra.clone());
        let antipode = antipode.iter().map(|s| algebra.nf(s)).collect();
        HopfData { delta: TensorMap::new(target, delta), algebra, counit, antipode }
    }

    pub fn counit_word(&self, w: &Word) -> CScalar {
        w.letters().iter().fold(CScalar::one(), |acc, &l| &acc * &self.counit[l as usize])
    }

    pub fn counit_of(&self, x: &NCPoly) -> CScalar {
        x.terms().fold(CScalar::zero(), |acc, (w, c)| &acc + &(c * &self.counit_word(w)))
    }

    /// `nf(S(x))`, extending the antipode anti-multiplicatively.
    pub fn antipode_of(&self, x: &NCPoly) -> NCPoly {
        self.algebra.nf(&x.substitute(&self.antipode, true))
    }
}

/// A left coaction `alpha: Z -> A (x) Z` of a Hopf algebra `A`.
#[derive(Clone, Debug)]
pub struct CoactionData {
    pub base: Arc<Presentation>,
    pub hopf: Arc<HopfData>,
    pub total: Arc<Presentation>,
    pub alpha: TensorMap,
}

impl CoactionData {
    pub fn new(hopf: Arc<HopfData>, total: Arc<Presentation>, alpha: Vec<TensorPoly>) -> Self {
        let base = hopf.algebra.clone();
        let target = TensorAlgebra::new(base.clone(), total.clone());
        CoactionData { base, hopf, total, alpha: TensorMap::new(target, alpha) }
    }

    pub fn alpha_of(&self, x: &NCPoly) -> TensorPoly {
        self.alpha.image(x)
    }
}

type Tensor3 = BTreeMap<(Word, Word, Word), CScalar>;

fn add3(t: &mut Tensor3, key: (Word, Word, Word), c: CScalar) {
    let s = match t.get(&key) {
        Some(x) => x + &c,
        None => c,
    };
    if s.is_zero() {
        t.remove(&key);
    } else {
        t.insert(key, s);
    }
}

/// `(f (x) 1) t` for a tensor map `f` on the left leg.
fn expand_left(t: &TensorPoly, f: &TensorMap) -> Tensor3 {
    let mut out = Tensor3::new();
    for ((u, v), c) in t.terms() {
        for ((u1, u2), a) in f.image_word(u).terms() {
            add3(&mut out, (u1.clone(), u2.clone(), v.clone()), a * c);
        }
    }
    out
}

/// `(1 (x) f) t` for a tensor map `f` on the right leg.
fn expand_right(t: &TensorPoly, f: &TensorMap) -> Tensor3 {
    let mut out = Tensor3::new();
    for ((u, v), c) in t.terms() {
        for ((v1, v2), a) in f.image_word(v).terms() {
            add3(&mut out, (u.clone(), v1.clone(), v2.clone()), a * c);
        }
    }
    out
}

fn residual_text(p: &Presentation, x: &NCPoly) -> String {
    if x.is_zero() {
        String::new()
    } else {
        p.show(x)
    }
}

/// Star well-definedness on relations and involutivity on generators.
pub fn verify_star(p: &Presentation) -> Report {
    let mut rep = Report::new(format!("star({})", p.name));
    if p.star.is_none() {
        rep.check("star structure present", false, "");
        return rep.finish();
    }
    for r in &p.relations {
        match p.star_of(r) {
            Ok(s) => rep.check(format!("star({}) = 0", p.show(r)), s.is_zero(), residual_text(p, &s)),
            Err(e) => rep.check(format!("star({})", p.show(r)), false, e.to_string()),
        }
    }
    for g in 0..p.ngens() {
        let x = NCPoly::generator(g);
        let ss = p.star_of(&x).and_then(|s| p.star_of(&s));
        let name = p.alphabet.name(g);
        match ss {
            Ok(ss) => {
                let diff = &ss - &x;
                rep.check(format!("star(star({name})) = {name}"), diff.is_zero(), residual_text(p, &diff));
            }
            Err(e) => rep.check(format!("star(star({name}))"), false, e.to_string()),
        }
    }
    rep.finish()
}

/// Bialgebra and antipode axioms on generators, modulo relations.
pub fn verify_hopf(h: &HopfData) -> Report {
    let a = &h.algebra;
    let mut rep = Report::new(format!("hopf({})", a.name));
    let tens = &h.delta.target;
    for r in &a.relations {
        let d = h.delta.image(r);
        rep.check(
            format!("delta({}) = 0", a.show(r)),
            d.is_zero(),
            if d.is_zero() { String::new() } else { tens.show(&d) },
        );
        let e = h.counit_of(r);
        rep.check(
            format!("eps({}) = 0", a.show(r)),
            e.is_zero(),
            if e.is_zero() { String::new() } else { e.to_string() },
        );
        let s = h.antipode_of(r);
        rep.check(format!("S({}) = 0", a.show(r)), s.is_zero(), residual_text(a, &s));
    }
    for g in 0..a.ngens() {
        let name = a.alphabet.name(g);
        let x = NCPoly::generator(g);
        let d = h.delta.image(&x);
        let lhs = expand_left(&d, &h.delta);
        let rhs = expand_right(&d, &h.delta);
        rep.check(format!("coassociativity on {name}"), lhs == rhs, "");

        let mut left = NCPoly::zero();
        let mut right = NCPoly::zero();
        let mut m_s1 = NCPoly::zero();
        let mut m_1s = NCPoly::zero();
        for ((u, v), c) in d.terms() {
            left.add_term(v.clone(), c * &h.counit_word(u));
            right.add_term(u.clone(), c * &h.counit_word(v));
            let su = h.antipode_of(&NCPoly::monomial(u.clone()));
            let sv = h.antipode_of(&NCPoly::monomial(v.clone()));
            m_s1.add_scaled(&a.mul(&su, &NCPoly::monomial(v.clone())), c);
            m_1s.add_scaled(&a.mul(&NCPoly::monomial(u.clone()), &sv), c);
        }
        let l = &a.nf(&left) - &x;
        let r = &a.nf(&right) - &x;
        rep.check(format!("(eps (x) 1) delta({name}) = {name}"), l.is_zero(), residual_text(a, &l));
        rep.check(format!("(1 (x) eps) delta({name}) = {name}"), r.is_zero(), residual_text(a, &r));
        let unit = NCPoly::constant(h.counit[g].clone());
        let s1 = &m_s1 - &unit;
        let s2 = &m_1s - &unit;
        rep.check(format!("m(S (x) 1) delta({name}) = eps({name})"), s1.is_zero(), residual_text(a, &s1));
        rep.check(format!("m(1 (x) S) delta({name}) = eps({name})"), s2.is_zero(), residual_text(a, &s2));
    }
    rep.finish()
}

/// Algebra-map, coassociativity, counit and, when both algebras carry a
/// star, star compatibility of a coaction.
pub fn verify_coaction(c: &CoactionData) -> Report {
    let z = &c.total;
    let a = &c.base;
    let mut rep = Report::new(format!("coaction({} over {})", z.name, a.name));
    let tens = &c.alpha.target;
    for r in &z.relations {
        let img = c.alpha_of(r);
        rep.check(
            format!("alpha({}) = 0", z.show(r)),
            img.is_zero(),
            if img.is_zero() { String::new() } else { tens.show(&img) },
        );
    }
    let with_star = a.has_star() && z.has_star();
    for g in 0..z.ngens() {
        let name = z.alphabet.name(g);
        let x = NCPoly::generator(g);
        let al = c.alpha_of(&x);
        let lhs = expand_left(&al, &c.hopf.delta);
        let rhs = expand_right(&al, &c.alpha);
        rep.check(format!("coassociativity on {name}"), lhs == rhs, "");
        let mut back = NCPoly::zero();
        for ((u, v), k) in al.terms() {
            back.add_term(v.clone(), k * &c.hopf.counit_word(u));
        }
        let diff = &z.nf(&back) - &x;
        rep.check(format!("(eps (x) 1) alpha({name}) = {name}"), diff.is_zero(), residual_text(z, &diff));
        if with_star {
            let res = star_compat(c, &x);
            match res {
                Ok(d) => rep.check(
                    format!("alpha(star({name})) = (star (x) star) alpha({name})"),
                    d.is_zero(),
                    if d.is_zero() { String::new() } else { tens.show(&d) },
                ),
                Err(e) => rep.check(format!("star compatibility on {name}"), false, e.to_string()),
            }
        }
    }
    rep.finish()
}

fn star_compat(c: &CoactionData, x: &NCPoly) -> Result<TensorPoly> {
    let lhs = c.alpha_of(&c.total.star_of(x)?);
    let mut rhs = TensorPoly::zero();
    for ((u, v), k) in c.alpha_of(x).terms() {
        let su = c.base.star_of(&NCPoly::monomial(u.clone()))?;
        let sv = c.total.star_of(&NCPoly::monomial(v.clone()))?;
        rhs.add_simple(&su, &sv, &k.conj());
    }
    let mut diff = lhs;
    diff.add_scaled(&rhs, &CScalar::from_int(-1));
    Ok(diff)
}

/// Whether `O_{n,p}` can have a finite-dimensional *-representation.
///
/// Checks that the generator images kill every relation of `src`.
pub fn verify_algebra_map(src: &Presentation, target: &Presentation, images: &[NCPoly]) -> Report {
    let mut rep = Report::new(format!("algebra map {} -> {}", src.name, target.name));
    for r in &src.relations {
        let img = target.nf(&r.substitute(images, false));
        rep.check(
            format!("{} -> 0", src.show(r)),
            img.is_zero(),
            if img.is_zero() { String::new() } else { target.show(&img) },
        );
    }
    rep.finish()
}

/// In dimension `d`, `aa* = 1` and `a*a = 1` give traces `nd` and `pd`,
/// and `tr(aa*) = tr(a*a)`, so `n = p` is necessary. For `n = p` any
/// unitary matrix is a representation.
pub fn findim_rep_obstruction(n: usize, p: usize) -> bool {
    n == p
}
