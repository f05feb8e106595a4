//! The free `*`-algebra over `Q(q)[i]` on a finite alphabet.
//!
//! Words are stored as generator indices. The alphabet of a presentation is
//! kept in increasing generator order, so the derived `Ord` on [`Word`]
//! (length first, then lexicographic on indices) is the degree-lexicographic
//! monomial order used throughout.

use std::borrow::Borrow;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalars::{needs_parens, CScalar};

/// A generator of an alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub index: usize,
}

/// An ordered list of uniquely named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut lookup = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::Invalid(format!("`{n}` is not a valid generator name")));
            }
            if matches!(n, "q" | "i") {
                return Err(Error::Invalid(format!("`{n}` is reserved for scalars")));
            }
            if lookup.insert(n.to_string(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate generator `{n}`")));
            }
        }
        if names.len() > u8::MAX as usize {
            return Err(Error::Invalid("too many generators".into()));
        }
        Ok(Alphabet { names: names.iter().map(|n| n.as_ref().to_string()).collect(), lookup })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.names.iter().enumerate().map(|(index, name)| Generator { name: name.clone(), index })
    }

    /// The generator as a degree-one polynomial.
    pub fn gen(&self, name: &str) -> NCPoly {
        let i = self.index(name).unwrap_or_else(|| panic!("no generator `{name}`"));
        NCPoly::generator(i)
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|&l| self.names[l as usize].as_str()).collect::<Vec<_>>().join("*")
    }

    /// Parses a `*`-separated product of generator names (or `1`).
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        let mut w = Word::empty();
        for part in s.split('*') {
            let part = part.trim();
            let i =
                self.index(part).ok_or_else(|| Error::UnknownGenerator { name: part.to_string(), line: 1, col: 1 })?;
            w.push(i);
        }
        Ok(w)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric())
}

/// A monomial: a finite sequence of generator indices. The empty word is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&l| l as u8).collect())
    }

    pub(crate) fn from_slice(s: &[u8]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn letter(g: usize) -> Self {
        Word::from_letters(&[g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn push(&mut self, g: usize) {
        self.0.push(g as u8);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Replaces `self[start..start+len]` by `mid`.
    pub(crate) fn splice(&self, start: usize, len: usize, mid: &Word) -> Word {
        let mut v: SmallVec<[u8; 16]> = SmallVec::with_capacity(self.len() - len + mid.len());
        v.extend_from_slice(&self.0[..start]);
        v.extend_from_slice(&mid.0);
        v.extend_from_slice(&self.0[start + len..]);
        Word(v)
    }
}

impl Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-lexicographic order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Noncommutative polynomial: finitely supported map from words to scalars.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, CScalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(CScalar::one())
    }

    pub fn constant(c: CScalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn generator(g: usize) -> Self {
        Self::monomial(Word::letter(g))
    }

    pub fn monomial(w: Word) -> Self {
        Self::term(w, CScalar::one())
    }

    pub fn term(w: Word, c: CScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &CScalar)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, CScalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> CScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> CScalar {
        self.coeff(&Word::empty())
    }

    /// If the polynomial is `c * 1`, returns `c`.
    pub fn as_scalar(&self) -> Option<CScalar> {
        match self.terms.len() {
            0 => Some(CScalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    /// Largest word under the monomial order and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &CScalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: CScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &NCPoly, c: &CScalar) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &CScalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        NCPoly { terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    /// `u * self * v` for words `u`, `v`.
    pub fn sandwich(&self, u: &Word, v: &Word) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(w, a)| (u.concat(w).concat(v), a.clone())).collect() }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&CScalar) -> CScalar) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), f(a));
        }
        out
    }

    /// Substitutes each generator by a polynomial (an algebra map from the
    /// free algebra). `reverse` gives the anti-multiplicative extension.
    pub fn substitute(&self, images: &[NCPoly], reverse: bool) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPoly::one();
            for &l in w.letters() {
                let img = &images[l as usize];
                acc = if reverse { img * &acc } else { &acc * img };
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// Renames letters through `map` (old index -> new index).
    pub fn relabel(&self, map: &[usize]) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let nw = Word(w.letters().iter().map(|&l| map[l as usize] as u8).collect());
            out.add_term(nw, c.clone());
        }
        out
    }

    /// The same polynomial with every word read backwards.
    pub fn reversed_words(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.reversed(), c.clone());
        }
        out
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, alphabet }
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &CScalar::one());
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &CScalar::from_int(-1));
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&CScalar::from_int(-1))
    }
}

/// Concatenation product, extended bilinearly.
impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

/// Checked product: both operands must live over the same alphabet.
pub fn nc_mul(ax: &Alphabet, x: &NCPoly, ay: &Alphabet, y: &NCPoly) -> Result<NCPoly> {
    if ax != ay {
        return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", ax.names(), ay.names())));
    }
    Ok(x * y)
}

/// Printer for polynomials in the input grammar.
pub struct PolyDisplay<'a> {
    poly: &'a NCPoly,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // Largest word first.
        for (k, (w, c)) in self.poly.terms.iter().rev().enumerate() {
            let (neg, mag) = split_sign(c);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let word = self.alphabet.word_to_string(w);
            if mag.is_one() {
                write!(f, "{word}")?;
            } else {
                let cs = if needs_parens(&mag) { format!("({mag})") } else { mag.to_string() };
                if w.is_empty() {
                    write!(f, "{cs}")?;
                } else {
                    write!(f, "{cs}*{word}")?;
                }
            }
        }
        Ok(())
    }
}

/// Pulls an overall sign out of simple real coefficients for nicer printing.
fn split_sign(c: &CScalar) -> (bool, CScalar) {
    if c.is_real() && c.re.is_laurent() {
        let p = c.re.numer();
        let all_neg = p.terms().all(|(_, r)| num_traits::Signed::is_negative(r));
        if all_neg && p.terms().count() == 1 {
            return (true, -c);
        }
    }
    (false, c.clone())
}

/// Values of a `*`-structure on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct StarMap {
    pub images: Vec<Option<NCPoly>>,
}

impl StarMap {
    pub fn new(images: Vec<Option<NCPoly>>) -> Self {
        StarMap { images }
    }

    /// Images for every generator, or the first missing name.
    pub fn complete_images(&self, alphabet: &Alphabet) -> Result<Vec<NCPoly>> {
        self.images
            .iter()
            .enumerate()
            .map(|(g, img)| img.clone().ok_or_else(|| Error::MissingStarImage(alphabet.name(g).to_string())))
            .collect()
    }
}

/// Antimultiplicative, conjugate-linear extension of `s` applied to `x`.
/// No relation reduction is performed.
pub fn nc_star(x: &NCPoly, s: &StarMap, alphabet: &Alphabet) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    for (w, c) in x.terms() {
        let mut acc = NCPoly::one();
        for &l in w.letters() {
            let img = s
                .images
                .get(l as usize)
                .and_then(|i| i.as_ref())
                .ok_or_else(|| Error::MissingStarImage(alphabet.name(l as usize).to_string()))?;
            acc = img * &acc;
        }
        out.add_scaled(&acc, &c.conj());
    }
    Ok(out)
}

/// Element of a tensor product `X (x) Y`, as a list of simple tensors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tensor2 {
    pub pairs: Vec<(NCPoly, NCPoly)>,
}

impl Tensor2 {
    pub fn new(pairs: Vec<(NCPoly, NCPoly)>) -> Self {
        Tensor2 { pairs }
    }

    pub fn simple(a: NCPoly, b: NCPoly) -> Self {
        Tensor2 { pairs: vec![(a, b)] }
    }

    /// Fully expanded form keyed by word pairs.
    pub fn expand(&self) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (a, b) in &self.pairs {
            for (u, x) in a.terms() {
                for (v, y) in b.terms() {
                    out.add_term(u.clone(), v.clone(), x * y);
                }
            }
        }
        out
    }
}

/// Collects summands over the word basis `basis1` of the first leg.
///
/// The result has pairwise distinct first-leg basis words, sorted by the
/// monomial order, with zero second legs dropped.
pub fn tensor_canon(t: &Tensor2, basis1: &[Word], alphabet1: &Alphabet) -> Result<Tensor2> {
    let allowed: std::collections::HashSet<&Word> = basis1.iter().collect();
    let mut collected: BTreeMap<Word, NCPoly> = BTreeMap::new();
    for (a, b) in &t.pairs {
        for (u, x) in a.terms() {
            if !allowed.contains(u) {
                return Err(Error::BasisIncomplete(alphabet1.word_to_string(u)));
            }
            collected.entry(u.clone()).or_default().add_scaled(b, x);
        }
    }
    Ok(Tensor2 {
        pairs: collected.into_iter().filter(|(_, b)| !b.is_zero()).map(|(u, b)| (NCPoly::monomial(u), b)).collect(),
    })
}

/// Expanded tensor: map from `(first-leg word, second-leg word)` to scalar.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorPoly {
    terms: BTreeMap<(Word, Word), CScalar>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut t = Self::zero();
        t.add_term(Word::empty(), Word::empty(), CScalar::one());
        t
    }

    pub fn simple(a: &NCPoly, b: &NCPoly) -> Self {
        Tensor2::simple(a.clone(), b.clone()).expand()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &CScalar)> + '_ {
        self.terms.iter()
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: CScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((u, v)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &CScalar) {
        for ((u, v), x) in &other.terms {
            self.add_term(u.clone(), v.clone(), x * c);
        }
    }

    /// Adds `c * (a (x) b)`.
    pub fn add_simple(&mut self, a: &NCPoly, b: &NCPoly, c: &CScalar) {
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                self.add_term(u.clone(), v.clone(), &(x * y) * c);
            }
        }
    }

    /// Grouped by first-leg word.
    pub fn by_first_leg(&self) -> BTreeMap<Word, NCPoly> {
        let mut out: BTreeMap<Word, NCPoly> = BTreeMap::new();
        for ((u, v), c) in &self.terms {
            out.entry(u.clone()).or_default().add_term(v.clone(), c.clone());
        }
        out
    }

    pub fn to_tensor2(&self) -> Tensor2 {
        Tensor2 { pairs: self.by_first_leg().into_iter().map(|(u, b)| (NCPoly::monomial(u), b)).collect() }
    }

    /// Applies linear maps to each leg (given on words) and re-expands.
    pub fn map_legs(&self, mut f: impl FnMut(&Word) -> NCPoly, mut g: impl FnMut(&Word) -> NCPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((u, v), c) in &self.terms {
            out.add_simple(&f(u), &g(v), c);
        }
        out
    }

    pub fn display<'a>(&'a self, a1: &'a Alphabet, a2: &'a Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.by_first_leg()
            .into_iter()
            .map(|(u, b)| format!("{} (x) ({})", a1.word_to_string(&u), b.display(a2)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ScalarQ;

    fn alpha() -> Alphabet {
        Alphabet::new(&["x11", "x12", "x21", "x22", "t"]).unwrap()
    }

    #[test]
    fn product_is_concatenation() {
        let a = alpha();
        let p = &a.gen("x11") * &a.gen("x12");
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&Word::from_letters(&[0, 1])), CScalar::one());
        assert_eq!(&NCPoly::one() * &a.gen("t"), a.gen("t"));
        let lhs = &(&a.gen("x11") + &a.gen("x12")) * &a.gen("x21");
        let rhs = &(&a.gen("x11") * &a.gen("x21")) + &(&a.gen("x12") * &a.gen("x21"));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn checked_product_rejects_foreign_alphabet() {
        let a = alpha();
        let b = Alphabet::new(&["z11"]).unwrap();
        assert!(matches!(nc_mul(&a, &a.gen("x11"), &b, &b.gen("z11")), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn star_is_antimultiplicative_and_semilinear() {
        let a = Alphabet::new(&["tau", "z11", "z12", "z21", "z22"]).unwrap();
        let qinv = CScalar::q_pow(-1);
        let q = CScalar::q_pow(1);
        let images = vec![
            None,
            Some(&a.gen("z22") * &a.gen("tau")),
            Some((&a.gen("z21") * &a.gen("tau")).scale(&qinv)),
            Some((&a.gen("tau") * &a.gen("z12")).scale(&q)),
            Some(&a.gen("tau") * &a.gen("z11")),
        ];
        let s = StarMap::new(images);
        let z11 = a.gen("z11");
        assert_eq!(nc_star(&z11, &s, &a).unwrap(), &a.gen("z22") * &a.gen("tau"));
        let prod = &z11 * &a.gen("z12");
        let expected = (&(&a.gen("z21") * &a.gen("tau")) * &(&a.gen("z22") * &a.gen("tau"))).scale(&qinv);
        assert_eq!(nc_star(&prod, &s, &a).unwrap(), expected);
        assert_eq!(nc_star(&NCPoly::one(), &s, &a).unwrap(), NCPoly::one());
        let i_z = z11.scale(&CScalar::i());
        let starred = nc_star(&i_z, &s, &a).unwrap();
        assert_eq!(starred, (&a.gen("z22") * &a.gen("tau")).scale(&-CScalar::i()));
        assert!(matches!(nc_star(&a.gen("tau"), &s, &a), Err(Error::MissingStarImage(n)) if n == "tau"));
    }

    #[test]
    fn tensor_canonical_form_collects_first_legs() {
        let a = alpha();
        let z = Alphabet::new(&["z", "w"]).unwrap();
        let basis = vec![Word::letter(0), Word::letter(1)];
        let t = Tensor2::new(vec![(a.gen("x11"), z.gen("z")), (a.gen("x11"), z.gen("w"))]);
        let c = tensor_canon(&t, &basis, &a).unwrap();
        assert_eq!(c.pairs, vec![(a.gen("x11"), &z.gen("z") + &z.gen("w"))]);

        let zero = Tensor2::simple(NCPoly::zero(), z.gen("z"));
        assert!(tensor_canon(&zero, &basis, &a).unwrap().pairs.is_empty());

        let two = Tensor2::new(vec![(a.gen("x11"), z.gen("z")), (a.gen("x12"), z.gen("z"))]);
        assert_eq!(tensor_canon(&two, &basis, &a).unwrap().pairs.len(), 2);

        let outside = Tensor2::simple(a.gen("t"), z.gen("z"));
        assert!(matches!(tensor_canon(&outside, &basis, &a), Err(Error::BasisIncomplete(_))));
    }

    #[test]
    fn degree_lex_order() {
        let short = Word::from_letters(&[4]);
        let long = Word::from_letters(&[0, 0]);
        assert!(short < long);
        assert!(Word::from_letters(&[1, 0]) > Word::from_letters(&[0, 1]));
    }

    #[test]
    fn display_prints_grammar() {
        let a = alpha();
        let p = &(&a.gen("x12") * &a.gen("x11")) - &(&a.gen("x11") * &a.gen("x12")).scale(&ScalarQ::q().into());
        assert_eq!(p.display(&a).to_string(), "x12*x11 - q*x11*x12");
    }
}
